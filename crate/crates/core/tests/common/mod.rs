#![allow(dead_code)]

use linper_core::{LadderRep, LineId, LineSet, LineSpec, PoleType, Rat, Segment};
use proptest::prelude::*;

pub fn lines() -> LineSet {
    LineSet::new(vec![
        LineSpec::new("triv", 1, "triv", Some(PoleType::Symmetric)).trivial(),
        LineSpec::new("rho2", 2, "rho2", Some(PoleType::Exterior)),
        LineSpec::new("chi", 1, "chibar", None),
        LineSpec::new("chibar", 1, "chi", None),
    ])
    .unwrap()
}

pub fn id(l: &LineSet, name: &str) -> LineId {
    l.lookup(name).unwrap()
}

pub fn seg(l: &LineSet, name: &str, a: Rat, b: Rat) -> Segment {
    Segment::new(id(l, name), a, b).unwrap()
}

/// Ladder from a top segment and per-row (drop of beginning, length).
pub fn build_ladder(line: LineId, top: Rat, rows: &[(i64, u64)], max_len: u64) -> LadderRep {
    let mut segs: Vec<Segment> = Vec::new();
    let mut a = top;
    for &(drop, len) in rows {
        let len = len.clamp(1, max_len) as i64;
        a -= Rat::int(drop.max(1));
        let mut b = a + (len - 1);
        if let Some(prev) = segs.last() {
            if b >= prev.b {
                b = prev.b - 1;
            }
        }
        segs.push(Segment::new(line, a, b).unwrap());
    }
    LadderRep::from_segments(segs).unwrap()
}

/// Random ladders of height at most `h` and segment length at most `len`.
pub fn ladder_strategy(h: usize, len: u64) -> impl Strategy<Value = LadderRep> {
    let l = lines();
    let ids: Vec<LineId> = l.ids().collect();
    (
        prop::sample::select(ids),
        -5i64..=5,
        any::<bool>(),
        prop::collection::vec((1i64..=3, 1u64..=len), 0..=h),
    )
        .prop_map(move |(line, top, half, rows)| {
            let top = Rat::int(top) + if half { Rat::HALF } else { Rat::ZERO };
            build_ladder(line, top + 3, &rows, len)
        })
}

/// Right aligned ladders on a degree one line.
pub fn right_aligned_strategy(h: usize, len: u64) -> impl Strategy<Value = LadderRep> {
    let l = lines();
    let ids: Vec<LineId> = l.ids().filter(|&x| l.degree(x) == 1).collect();
    (
        prop::sample::select(ids),
        -4i64..=4,
        any::<bool>(),
        prop::collection::vec(1u64..=len, 1..=h),
    )
        .prop_map(|(line, end, half, mut lens)| {
            lens.sort();
            let end = Rat::int(end) + if half { Rat::HALF } else { Rat::ZERO };
            let segs = lens
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    let b = end - i as i64;
                    Segment::new(line, b - (n as i64 - 1), b).unwrap()
                })
                .collect();
            LadderRep::from_segments(segs).unwrap()
        })
}

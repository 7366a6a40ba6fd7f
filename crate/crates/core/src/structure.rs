//! Divisions, Jacquet modules, derivatives and standard-module kernels of
//! ladders, plus contingency tables with fixed margins.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::line::LineSet;
use crate::multiseg::{make_speh, LadderRep, Multisegment, SpehDatum};
use crate::rat::Rat;
use crate::segment::Segment;

/// A simultaneous cut of every segment `[a_i,b_i]` at `c_i` into the left
/// piece `[a_i,c_i]` and the right piece `[c_i+1,b_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Division {
    pub cuts: Vec<Rat>,
    pub left: LadderRep,
    pub right: LadderRep,
}

impl Division {
    fn from_cuts(l: &LadderRep, cuts: Vec<Rat>) -> Division {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (s, &c) in l.segments().iter().zip(&cuts) {
            left.push(Segment { line: s.line, a: s.a, b: c });
            right.push(Segment { line: s.line, a: c + 1, b: s.b });
        }
        Division {
            cuts,
            left: LadderRep::from_segments(left).expect("left part of a division is a ladder"),
            right: LadderRep::from_segments(right).expect("right part of a division is a ladder"),
        }
    }
}

/// All divisions in lexicographic order of cut vectors. With
/// `right_degree`, only those whose right part has that degree.
pub fn divisions(lines: &LineSet, l: &LadderRep, right_degree: Option<u64>) -> Vec<Division> {
    let segs = l.segments();
    let unit = l.line().map_or(1, |x| lines.degree(x) as u64);
    let target = match right_degree {
        Some(k) if k % unit != 0 => return Vec::new(),
        Some(k) => Some(k / unit),
        None => None,
    };
    // Maximum right length still available from segments i.. onward.
    let mut tail = vec![0u64; segs.len() + 1];
    for i in (0..segs.len()).rev() {
        tail[i] = tail[i + 1] + segs[i].len();
    }
    let mut out = Vec::new();
    let mut cuts = Vec::with_capacity(segs.len());
    walk(l, segs, &tail, target, 0, &mut cuts, &mut out);
    out
}

fn walk(
    l: &LadderRep,
    segs: &[Segment],
    tail: &[u64],
    target: Option<u64>,
    used: u64,
    cuts: &mut Vec<Rat>,
    out: &mut Vec<Division>,
) {
    let i = cuts.len();
    if i == segs.len() {
        if target.is_none_or(|t| t == used) {
            out.push(Division::from_cuts(l, cuts.clone()));
        }
        return;
    }
    if let Some(t) = target {
        if used > t || used + tail[i] < t {
            return;
        }
    }
    let s = segs[i];
    let mut c = s.a - 1;
    while c <= s.b {
        if cuts.last().is_none_or(|&prev| c < prev) {
            let taken = (s.b - c).numer() as u64;
            cuts.push(c);
            walk(l, segs, tail, target, used + taken, cuts, out);
            cuts.pop();
        }
        c = c + 1;
    }
}

/// Constituents `(right, left)` of the Jacquet module whose first factor
/// has degree `k`.
pub fn jacquet_ladder(lines: &LineSet, l: &LadderRep, k: u64) -> Vec<(LadderRep, LadderRep)> {
    divisions(lines, l, Some(k)).into_iter().map(|d| (d.right, d.left)).collect()
}

/// Jacquet module of a single segment: `([c+1,b], [a,c])` with the first
/// piece of degree `k`, if any.
pub fn jacquet_segment(lines: &LineSet, s: &Segment, k: u64) -> Option<(Segment, Segment)> {
    let d = lines.degree(s.line) as u64;
    if !k.is_multiple_of(d) || k / d > s.len() {
        return None;
    }
    let c = s.b - (k / d) as i64;
    Some((Segment { line: s.line, a: c + 1, b: s.b }, Segment { line: s.line, a: s.a, b: c }))
}

/// Nonnegative integer matrix with prescribed row and column sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatMatrix {
    pub entries: Vec<Vec<u32>>,
}

impl MatMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }
}

pub fn mat_matrices(alpha: &[u32], beta: &[u32]) -> Result<Vec<MatMatrix>> {
    let sa: u64 = alpha.iter().map(|&x| x as u64).sum();
    let sb: u64 = beta.iter().map(|&x| x as u64).sum();
    if sa != sb {
        return Err(Error::Precondition(alloc::format!("margin sums differ: {sa} vs {sb}")));
    }
    let mut out = Vec::new();
    if alpha.is_empty() || beta.is_empty() {
        out.push(MatMatrix { entries: vec![Vec::new(); alpha.len()] });
        return Ok(out);
    }
    let mut m = vec![vec![0u32; beta.len()]; alpha.len()];
    let mut col_left = beta.to_vec();
    fill(alpha, &mut m, &mut col_left, 0, 0, alpha[0], &mut out);
    Ok(out)
}

fn fill(
    alpha: &[u32],
    m: &mut Vec<Vec<u32>>,
    col_left: &mut [u32],
    i: usize,
    j: usize,
    row_left: u32,
    out: &mut Vec<MatMatrix>,
) {
    let cols = col_left.len();
    if i == alpha.len() {
        if col_left.iter().all(|&c| c == 0) {
            out.push(MatMatrix { entries: m.clone() });
        }
        return;
    }
    let (lo, hi) = if j + 1 == cols {
        (row_left, row_left)
    } else {
        (0, row_left.min(col_left[j]))
    };
    if lo > col_left[j] {
        return;
    }
    for v in lo..=hi {
        m[i][j] = v;
        col_left[j] -= v;
        if j + 1 == cols {
            let next = alpha.get(i + 1).copied().unwrap_or(0);
            fill(alpha, m, col_left, i + 1, 0, next, out);
        } else {
            fill(alpha, m, col_left, i, j + 1, row_left - v, out);
        }
        col_left[j] += v;
    }
    m[i][j] = 0;
}

/// Derivative of order `k` of a left aligned ladder, `None` when it
/// vanishes.
pub fn derivative(lines: &LineSet, l: &LadderRep, k: u64) -> Result<Option<LadderRep>> {
    if !l.is_left_aligned() {
        return Err(Error::NotLeftAligned);
    }
    let Some(line) = l.line() else {
        return Ok((k == 0).then(LadderRep::empty));
    };
    let d = lines.degree(line) as u64;
    if !k.is_multiple_of(d) {
        return Ok(None);
    }
    let r = (k / d) as i64;
    let mut segs = l.segments().to_vec();
    let first = segs[0];
    let a = first.a + r;
    if a > first.b + 1 {
        return Ok(None);
    }
    segs[0] = Segment { line, a, b: first.b };
    Ok(Some(LadderRep::from_segments(segs)?))
}

/// The highest derivative of `Sp(delta,k)` twisted by `nu^(1/2)` is
/// `Sp(delta,k-1)`; returns that shift and the smaller datum.
pub fn highest_derivative_speh(d: &SpehDatum) -> (Rat, Option<SpehDatum>) {
    let rest = (d.k > 1).then(|| SpehDatum { delta: d.delta, k: d.k - 1 });
    (Rat::HALF, rest)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KernelTerm {
    Zero,
    /// Factors of the product, in product order.
    Factors(Vec<Segment>),
}

impl KernelTerm {
    pub fn multisegment(&self) -> Option<Multisegment> {
        match self {
            KernelTerm::Zero => None,
            KernelTerm::Factors(f) => Some(Multisegment::new(f.clone())),
        }
    }
}

/// The `t - 1` products whose sum is the kernel of the standard module
/// onto the ladder.
pub fn standard_module_kernel(l: &LadderRep) -> Vec<KernelTerm> {
    let s = l.segments();
    (0..s.len().saturating_sub(1))
        .map(|i| {
            let (x, y) = (s[i], s[i + 1]);
            if x.a > y.b + 1 {
                return KernelTerm::Zero;
            }
            let mut f = s[..i].to_vec();
            f.push(Segment { line: x.line, a: y.a, b: x.b });
            let inner = Segment { line: x.line, a: x.a, b: y.b };
            if !inner.is_empty() {
                f.push(inner);
            }
            f.extend_from_slice(&s[i + 2..]);
            KernelTerm::Factors(f)
        })
        .collect()
}

/// Sufficient condition for `Sp x m2 = m2 x Sp` with `m2` right aligned.
pub fn commutes(m1: &SpehDatum, m2: &LadderRep) -> Result<bool> {
    if !m2.is_right_aligned() {
        return Err(Error::NotRightAligned);
    }
    let Some(last2) = m2.segments().last() else {
        return Ok(true);
    };
    let l1 = make_speh(m1);
    let last1 = l1.segments().last().expect("Speh ladder is nonempty");
    let (t1, t2) = (l1.height(), m2.height());
    Ok(last1.end() == last2.end() && (t2 <= t1 || last1.a <= last2.a))
}

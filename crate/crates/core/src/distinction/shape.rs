use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::line::{dual_point, LineSet};
use crate::multiseg::LadderRep;
use crate::rat::Rat;

/// Length patterns a distinguished right aligned ladder on a degree one
/// line can have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `i1` points, then `i2` segments of length `l > 1`, then `i3` of
    /// length `l + 1`; the end of the last segment is dual to the
    /// beginning of segment `i1 + 1`.
    Form1 { i1: usize, i2: usize, i3: usize, l: u64 },
    /// `i1 > 0` points, then `i2 > 0` segments of length 2; the end of the
    /// last segment is dual to the beginning of the first.
    Form2 { i1: usize, i2: usize },
    None,
}

fn runs(lengths: &[u64]) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for &x in lengths {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

pub fn shape_classify(lines: &LineSet, l: &LadderRep) -> Result<Shape> {
    let Some(line) = l.line() else {
        return Err(Error::Precondition("empty ladder".into()));
    };
    if !l.is_right_aligned() {
        return Err(Error::NotRightAligned);
    }
    if lines.degree(line) != 1 {
        return Err(Error::Precondition("shape classification needs a degree one line".into()));
    }
    let segs = l.segments();
    let lengths: Vec<u64> = segs.iter().map(|s| s.len()).collect();
    let mut r = runs(&lengths);
    let i1 = match r.first() {
        Some(&(1, c)) => {
            r.remove(0);
            c
        }
        _ => 0,
    };
    let last_dual = dual_point(lines, segs[segs.len() - 1].end());
    let dual_to = |i: usize| last_dual == segs[i].begin();
    let form1 = match r.as_slice() {
        [] => Some(Shape::Form1 { i1, i2: 0, i3: 0, l: 2 }),
        [(l, i2)] => dual_to(i1).then_some(Shape::Form1 { i1, i2: *i2, i3: 0, l: *l }),
        [(l, i2), (l1, i3)] if *l1 == l + 1 => dual_to(i1).then_some(Shape::Form1 { i1, i2: *i2, i3: *i3, l: *l }),
        _ => None,
    };
    if let Some(s) = form1 {
        return Ok(s);
    }
    if let [(2, i2)] = r.as_slice() {
        if i1 > 0 && dual_to(0) {
            return Ok(Shape::Form2 { i1, i2: *i2 });
        }
    }
    Ok(Shape::None)
}

/// True when neither `nu^a` nor `nu^-a` lies in the set of points
/// `nu^(-1/2) b(segment)` over the ladder. Only points on the trivial line
/// can be characters `nu^x`.
pub fn pole_set_transfer_check(lines: &LineSet, l: &LadderRep, a: Rat) -> bool {
    let Some(line) = l.line() else {
        return true;
    };
    if !lines.is_trivial(line) {
        return true;
    }
    !l.segments().iter().any(|s| {
        let x = s.a - Rat::HALF;
        x == a || x == -a
    })
}

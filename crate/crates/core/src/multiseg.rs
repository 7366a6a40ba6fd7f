//! Multisegments, ladders and essentially Speh data.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::line::{LineId, LineSet};
use crate::rat::Rat;
use crate::segment::{dual_segment, precedes, Segment};

/// A multiset of nonempty segments, stored in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multisegment(Vec<Segment>);

impl Multisegment {
    /// Drops empty segments and sorts.
    pub fn new(mut segs: Vec<Segment>) -> Self {
        segs.retain(|s| !s.is_empty());
        segs.sort();
        Multisegment(segs)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, lines: &LineSet) -> u64 {
        self.0.iter().map(|s| s.degree(lines)).sum()
    }

    /// Multiset union.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Multisegment::new(v)
    }

    /// Multiset difference, or `None` if `other` is not contained in `self`.
    pub fn minus(&self, other: &Multisegment) -> Option<Multisegment> {
        let mut rest = self.0.clone();
        for s in &other.0 {
            let i = rest.iter().position(|x| x == s)?;
            rest.remove(i);
        }
        Some(Multisegment(rest))
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        SegsDisplay(&self.0, lines)
    }
}

pub(crate) struct SegsDisplay<'a>(pub &'a [Segment], pub &'a LineSet);

impl fmt::Display for SegsDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", s.display(self.1))?;
        }
        Ok(())
    }
}

pub fn dual_multisegment(lines: &LineSet, m: &Multisegment) -> Multisegment {
    Multisegment::new(m.0.iter().map(|s| dual_segment(lines, s)).collect())
}

/// An order in which no segment precedes a later one.
pub fn standard_order(m: &Multisegment) -> Vec<Segment> {
    m.0.clone()
}

/// Checks a standard order, quadratic in the number of segments.
pub fn is_standard_order(segs: &[Segment]) -> bool {
    segs.iter()
        .enumerate()
        .all(|(i, x)| segs[i + 1..].iter().all(|y| !precedes(x, y)))
}

fn ladder_chain(segs: &[Segment]) -> bool {
    let Some(first) = segs.first() else {
        return true;
    };
    segs.iter().all(|s| s.line == first.line && (s.a - first.a).is_integer())
        && segs.windows(2).all(|w| w[0].a > w[1].a && w[0].b > w[1].b)
}

pub fn is_ladder(m: &Multisegment) -> bool {
    ladder_chain(&m.0)
}

pub fn is_left_aligned(m: &Multisegment) -> bool {
    is_ladder(m) && m.0.windows(2).all(|w| w[0].a == w[1].a + 1)
}

pub fn is_right_aligned(m: &Multisegment) -> bool {
    is_ladder(m) && m.0.windows(2).all(|w| w[0].b == w[1].b + 1)
}

pub fn is_ess_speh(m: &Multisegment) -> bool {
    !m.is_empty() && is_left_aligned(m) && is_right_aligned(m)
}

pub fn is_self_dual_rep(lines: &LineSet, m: &Multisegment) -> bool {
    dual_multisegment(lines, m) == *m
}

/// Sum over all cuspidal points of line degree times exponent.
pub fn central_exponent(lines: &LineSet, m: &Multisegment) -> Rat {
    m.0.iter()
        .map(|s| {
            let n = s.len() as i64;
            (s.a + s.b) * n / 2 * lines.degree(s.line) as i64
        })
        .sum()
}

/// A ladder in canonical decreasing order. The empty ladder is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LadderRep(Multisegment);

impl LadderRep {
    pub fn new(m: Multisegment) -> Result<Self> {
        if is_ladder(&m) {
            Ok(LadderRep(m))
        } else {
            Err(Error::NotALadder)
        }
    }

    pub fn from_segments(segs: Vec<Segment>) -> Result<Self> {
        LadderRep::new(Multisegment::new(segs))
    }

    pub fn empty() -> Self {
        LadderRep(Multisegment::default())
    }

    pub fn segments(&self) -> &[Segment] {
        self.0.segments()
    }

    pub fn multisegment(&self) -> &Multisegment {
        &self.0
    }

    pub fn into_multisegment(self) -> Multisegment {
        self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn line(&self) -> Option<LineId> {
        self.segments().first().map(|s| s.line)
    }

    pub fn degree(&self, lines: &LineSet) -> u64 {
        self.0.degree(lines)
    }

    pub fn is_left_aligned(&self) -> bool {
        is_left_aligned(&self.0)
    }

    pub fn is_right_aligned(&self) -> bool {
        is_right_aligned(&self.0)
    }

    pub fn is_ess_speh(&self) -> bool {
        is_ess_speh(&self.0)
    }

    /// Lengths never increase down the ladder.
    pub fn is_decreasing(&self) -> bool {
        self.segments().windows(2).all(|w| w[0].len() >= w[1].len())
    }

    /// Lengths never decrease down the ladder.
    pub fn is_increasing(&self) -> bool {
        self.segments().windows(2).all(|w| w[0].len() <= w[1].len())
    }

    /// A character of some GL(n): a Speh ladder of single points on a
    /// degree one line.
    pub fn is_one_dimensional(&self, lines: &LineSet) -> bool {
        self.is_ess_speh()
            && self.line().is_some_and(|l| lines.degree(l) == 1)
            && self.segments()[0].len() == 1
    }

    pub fn shift(&self, by: Rat) -> LadderRep {
        LadderRep(Multisegment::new(self.segments().iter().map(|s| s.shift(by)).collect()))
    }

    pub fn dual(&self, lines: &LineSet) -> LadderRep {
        LadderRep(dual_multisegment(lines, &self.0))
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        self.0.display(lines)
    }
}

/// `Sp(delta, k)`: `k` shifted copies of `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpehDatum {
    pub delta: Segment,
    pub k: u32,
}

impl SpehDatum {
    pub fn new(delta: Segment, k: u32) -> Result<Self> {
        if delta.is_empty() {
            return Err(Error::Precondition("Speh datum needs a nonempty segment".into()));
        }
        if k == 0 {
            return Err(Error::Precondition("Speh datum needs k >= 1".into()));
        }
        Ok(SpehDatum { delta, k })
    }

    pub fn degree(&self, lines: &LineSet) -> u64 {
        self.delta.degree(lines) * self.k as u64
    }

    /// Recovers the datum of an essentially Speh ladder.
    pub fn recover(l: &LadderRep) -> Option<SpehDatum> {
        if !l.is_ess_speh() {
            return None;
        }
        let k = l.height() as u32;
        let delta = l.segments()[0].shift(-Rat::new(k as i64 - 1, 2));
        Some(SpehDatum { delta, k })
    }

    pub fn dual(&self, lines: &LineSet) -> SpehDatum {
        SpehDatum { delta: dual_segment(lines, &self.delta), k: self.k }
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        SpehDisplay(self, lines)
    }
}

struct SpehDisplay<'a>(&'a SpehDatum, &'a LineSet);

impl fmt::Display for SpehDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp({},{})", self.0.delta.display(self.1), self.0.k)
    }
}

pub fn make_speh(d: &SpehDatum) -> LadderRep {
    let k = d.k as i64;
    let segs = (0..k).map(|j| d.delta.shift(Rat::new(k - 1 - 2 * j, 2))).collect();
    LadderRep(Multisegment::new(segs))
}

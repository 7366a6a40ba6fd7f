//! Segments `[a,b]` on a cuspidal line.

use core::fmt;

use crate::error::{Error, Result};
use crate::line::{CuspidalPoint, LineId, LineSet};
use crate::rat::Rat;

/// The segment of points `a, a+1, ..., b` on `line`. `b = a - 1` is the
/// empty segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub line: LineId,
    pub a: Rat,
    pub b: Rat,
}

impl Segment {
    pub fn new(line: LineId, a: Rat, b: Rat) -> Result<Self> {
        let span = b - a;
        if !span.is_integer() {
            return Err(Error::InvalidSegment(alloc::format!("span {span} from {a} to {b} is not an integer")));
        }
        if span < -1 {
            return Err(Error::InvalidSegment(alloc::format!("end {b} lies below begin {a} minus one")));
        }
        Ok(Segment { line, a, b })
    }

    /// The empty segment starting at `a`.
    pub fn empty(line: LineId, a: Rat) -> Self {
        Segment { line, a, b: a - 1 }
    }

    /// Number of points.
    pub fn len(&self) -> u64 {
        ((self.b - self.a).numer() + 1) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.b < self.a
    }

    pub fn degree(&self, lines: &LineSet) -> u64 {
        self.len() * lines.degree(self.line) as u64
    }

    pub fn begin(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line, self.a)
    }

    pub fn end(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line, self.b)
    }

    pub fn shift(&self, by: Rat) -> Segment {
        Segment { line: self.line, a: self.a + by, b: self.b + by }
    }

    /// Centered segments are the unitary (square-integrable) ones.
    pub fn is_centered(&self) -> bool {
        (self.a + self.b).is_zero()
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        SegDisplay(self, lines)
    }
}

/// Canonical order: line ascending, then beginning and end descending.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.line
            .cmp(&other.line)
            .then(other.a.cmp(&self.a))
            .then(other.b.cmp(&self.b))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct SegDisplay<'a>(&'a Segment, &'a LineSet);

impl fmt::Display for SegDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        write!(f, "[{},{}]@{}", s.a, s.b, self.1.name(s.line))
    }
}

pub fn dual_segment(lines: &LineSet, s: &Segment) -> Segment {
    Segment { line: lines.dual(s.line), a: -s.b, b: -s.a }
}

pub fn is_linked(s1: &Segment, s2: &Segment) -> bool {
    if s1.line != s2.line || s1.is_empty() || s2.is_empty() {
        return false;
    }
    if !(s1.a - s2.a).is_integer() {
        return false;
    }
    let union_is_interval = s2.a <= s1.b + 1 && s1.a <= s2.b + 1;
    let contained = (s1.a <= s2.a && s2.b <= s1.b) || (s2.a <= s1.a && s1.b <= s2.b);
    union_is_interval && !contained
}

/// `s1` precedes `s2` when they are linked and `s2` begins strictly later.
pub fn precedes(s1: &Segment, s2: &Segment) -> bool {
    is_linked(s1, s2) && s2.a > s1.a
}

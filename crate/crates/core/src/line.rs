//! Cuspidal lines and the universe of lines a computation runs in.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoleType {
    Symmetric,
    Exterior,
}

impl PoleType {
    pub fn name(self) -> &'static str {
        match self {
            PoleType::Symmetric => "symmetric",
            PoleType::Exterior => "exterior",
        }
    }
}

/// Index of a line inside its [`LineSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineId(pub u16);

/// Raw description of a line, as read from a universe file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub id: String,
    pub degree: u32,
    pub dual: String,
    pub pole: Option<PoleType>,
    pub trivial: bool,
}

impl LineSpec {
    pub fn new(id: &str, degree: u32, dual: &str, pole: Option<PoleType>) -> Self {
        LineSpec {
            id: id.into(),
            degree,
            dual: dual.into(),
            pole,
            trivial: false,
        }
    }

    pub fn trivial(mut self) -> Self {
        self.trivial = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalLine {
    pub id: String,
    pub degree: u32,
    pub dual: LineId,
    pub pole: Option<PoleType>,
    /// The line through the trivial character of GL(1).
    pub trivial: bool,
}

impl CuspidalLine {
    pub fn is_self_dual(&self, me: LineId) -> bool {
        self.dual == me
    }
}

/// A validated, dual-closed set of cuspidal lines, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LineSet {
    lines: Vec<CuspidalLine>,
}

impl LineSet {
    /// Validates dual pairing, degrees and pole data. A line named `triv`
    /// is treated as the trivial line even without the explicit flag.
    pub fn new(mut specs: Vec<LineSpec>) -> Result<Self> {
        specs.sort_by(|x, y| x.id.cmp(&y.id));
        for w in specs.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidUniverse(alloc::format!("duplicate line `{}`", w[0].id)));
            }
        }
        if specs.len() > u16::MAX as usize {
            return Err(Error::InvalidUniverse("too many lines".into()));
        }
        let find = |name: &str| specs.binary_search_by(|s| s.id.as_str().cmp(name)).ok();
        let mut lines = Vec::with_capacity(specs.len());
        for (i, s) in specs.iter().enumerate() {
            let bad = |msg: &str| Error::InvalidUniverse(alloc::format!("line `{}`: {msg}", s.id));
            if s.id.is_empty() || !s.id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(bad("ids must be nonempty and alphanumeric"));
            }
            if s.degree == 0 {
                return Err(bad("degree must be positive"));
            }
            let j = find(&s.dual).ok_or_else(|| bad("dangling dual id"))?;
            let d = &specs[j];
            if d.dual != s.id {
                return Err(bad("dual of dual is not the line itself"));
            }
            if d.degree != s.degree {
                return Err(bad("degree differs from the degree of its dual"));
            }
            let self_dual = i == j;
            if self_dual && s.pole.is_none() {
                return Err(bad("self-dual line needs a pole type"));
            }
            if !self_dual && s.pole.is_some() {
                return Err(bad("pole type given on a non-self-dual line"));
            }
            let trivial = s.trivial || s.id == "triv";
            if trivial && !(self_dual && s.degree == 1) {
                return Err(bad("the trivial line must have degree 1 and be self-dual"));
            }
            lines.push(CuspidalLine {
                id: s.id.clone(),
                degree: s.degree,
                dual: LineId(j as u16),
                pole: s.pole,
                trivial,
            });
        }
        if lines.iter().filter(|l| l.trivial).count() > 1 {
            return Err(Error::InvalidUniverse("more than one trivial line".into()));
        }
        Ok(LineSet { lines })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LineId> + '_ {
        (0..self.lines.len()).map(|i| LineId(i as u16))
    }

    /// Panics on an id from another set.
    pub fn get(&self, id: LineId) -> &CuspidalLine {
        &self.lines[id.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Result<LineId> {
        self.lines
            .binary_search_by(|l| l.id.as_str().cmp(name))
            .map(|i| LineId(i as u16))
            .map_err(|_| Error::UnknownLine(name.into()))
    }

    pub fn name(&self, id: LineId) -> &str {
        &self.get(id).id
    }

    pub fn degree(&self, id: LineId) -> u32 {
        self.get(id).degree
    }

    pub fn dual(&self, id: LineId) -> LineId {
        self.get(id).dual
    }

    pub fn is_self_dual(&self, id: LineId) -> bool {
        self.get(id).dual == id
    }

    pub fn pole(&self, id: LineId) -> Option<PoleType> {
        self.get(id).pole
    }

    pub fn is_trivial(&self, id: LineId) -> bool {
        self.get(id).trivial
    }

    pub fn trivial_line(&self) -> Option<LineId> {
        self.ids().find(|&i| self.is_trivial(i))
    }

    pub fn specs(&self) -> Vec<LineSpec> {
        self.lines
            .iter()
            .map(|l| LineSpec {
                id: l.id.clone(),
                degree: l.degree,
                dual: self.name(l.dual).into(),
                pole: l.pole,
                trivial: l.trivial,
            })
            .collect()
    }
}

/// The twist `nu^exponent` of the unitary base point of a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalPoint {
    pub line: LineId,
    pub exponent: Rat,
}

impl CuspidalPoint {
    pub fn new(line: LineId, exponent: Rat) -> Self {
        CuspidalPoint { line, exponent }
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        PointDisplay(self, lines)
    }
}

struct PointDisplay<'a>(&'a CuspidalPoint, &'a LineSet);

impl fmt::Display for PointDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.0.exponent, self.1.name(self.0.line))
    }
}

pub fn dual_point(lines: &LineSet, pt: CuspidalPoint) -> CuspidalPoint {
    CuspidalPoint::new(lines.dual(pt.line), -pt.exponent)
}

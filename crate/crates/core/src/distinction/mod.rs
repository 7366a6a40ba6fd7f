//! Decision procedures for `(H_{p,q}, mu_a)`-distinction.
//!
//! `H_{p,q} = GL(p) x GL(q)` sits block diagonally in `GL(p+q)` and
//! `mu_a(h1, h2) = nu(h1)^a nu(h2)^-a`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::line::{LineId, LineSet, PoleType};
use crate::multiseg::{is_self_dual_rep, make_speh, LadderRep, SpehDatum};
use crate::rat::Rat;
use crate::segment::Segment;

mod search;
mod shape;

pub use search::{CaseTag, SearchVerdict, TraceStep};
pub use shape::{pole_set_transfer_check, shape_classify, Shape};

/// The pair `(H_{p,q}, mu_a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub p: u32,
    pub q: u32,
    pub a: Rat,
}

impl Context {
    pub fn new(p: u32, q: u32, a: Rat) -> Self {
        Context { p, q, a }
    }

    pub fn untwisted(m: u32) -> Self {
        Context::new(m, m, Rat::ZERO)
    }

    pub fn n(&self) -> u64 {
        self.p as u64 + self.q as u64
    }

    /// `(q, p, -a)`, which decides the same questions.
    pub fn swapped(&self) -> Self {
        Context::new(self.q, self.p, -self.a)
    }

    fn check(&self, degree: u64) -> Result<()> {
        if degree == self.n() {
            Ok(())
        } else {
            Err(Error::SizeMismatch { expected: self.n(), found: degree })
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.a)
    }
}

/// Which pole of the square L-factors of the cuspidal makes `St(rho, l)`
/// distinguished for odd `l`; even `l` uses the other one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Parity {
    #[default]
    OddExterior,
    OddSymmetric,
}

impl Parity {
    pub fn flipped(self) -> Self {
        match self {
            Parity::OddExterior => Parity::OddSymmetric,
            Parity::OddSymmetric => Parity::OddExterior,
        }
    }

    fn distinguished(self, pole: PoleType, len: u64) -> bool {
        let odd_pole = match self {
            Parity::OddExterior => PoleType::Exterior,
            Parity::OddSymmetric => PoleType::Symmetric,
        };
        (len % 2 == 1) == (pole == odd_pole)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Decision {
    fn from(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }
}

/// A factor of a unitary representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Speh(SpehDatum),
    /// `nu^alpha Sp x nu^-alpha Sp` with `0 < alpha < 1/2`.
    Comp(SpehDatum, Rat),
}

impl Factor {
    pub fn speh(&self) -> &SpehDatum {
        match self {
            Factor::Speh(d) | Factor::Comp(d, _) => d,
        }
    }

    pub fn degree(&self, lines: &LineSet) -> u64 {
        match self {
            Factor::Speh(d) => d.degree(lines),
            Factor::Comp(d, _) => 2 * d.degree(lines),
        }
    }

    pub fn dual(&self, lines: &LineSet) -> Factor {
        match self {
            Factor::Speh(d) => Factor::Speh(d.dual(lines)),
            Factor::Comp(d, x) => Factor::Comp(d.dual(lines), *x),
        }
    }

    /// Ladders whose product realizes the factor.
    pub fn ladders(&self) -> Vec<LadderRep> {
        match self {
            Factor::Speh(d) => alloc::vec![make_speh(d)],
            Factor::Comp(d, x) => {
                let l = make_speh(d);
                alloc::vec![l.shift(*x), l.shift(-*x)]
            }
        }
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        FactorDisplay(self, lines)
    }
}

struct FactorDisplay<'a>(&'a Factor, &'a LineSet);

impl fmt::Display for FactorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Factor::Speh(d) => write!(f, "{}", d.display(self.1)),
            Factor::Comp(d, x) => write!(f, "{}[{}]", d.display(self.1), x),
        }
    }
}

/// A multiset of unitary factors, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UnitaryRep(Vec<Factor>);

impl UnitaryRep {
    pub fn new(mut factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            if !f.speh().delta.is_centered() {
                return Err(Error::Precondition("unitary factors need centered segments".into()));
            }
            if let Factor::Comp(_, x) = f {
                if !(x.is_positive() && *x < Rat::HALF) {
                    return Err(Error::Precondition(alloc::format!("complementary exponent {x} not in (0,1/2)")));
                }
            }
        }
        factors.sort();
        Ok(UnitaryRep(factors))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, lines: &LineSet) -> u64 {
        self.0.iter().map(|f| f.degree(lines)).sum()
    }

    pub fn dual(&self, lines: &LineSet) -> UnitaryRep {
        let mut v: Vec<Factor> = self.0.iter().map(|f| f.dual(lines)).collect();
        v.sort();
        UnitaryRep(v)
    }

    pub fn is_self_dual(&self, lines: &LineSet) -> bool {
        self.dual(lines) == *self
    }

    /// Ladders of all factors, in factor order.
    pub fn ladders(&self) -> Vec<LadderRep> {
        self.0.iter().flat_map(|f| f.ladders()).collect()
    }

    pub fn display<'a>(&'a self, lines: &'a LineSet) -> impl fmt::Display + 'a {
        UnitaryDisplay(self, lines)
    }
}

struct UnitaryDisplay<'a>(&'a UnitaryRep, &'a LineSet);

impl fmt::Display for UnitaryDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.0 .0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{}", x.display(self.1))?;
        }
        Ok(())
    }
}

/// Splits into the Speh factors and the complementary series factors.
pub fn arthur_split(u: &UnitaryRep) -> (UnitaryRep, UnitaryRep) {
    let (ar, comp): (Vec<Factor>, Vec<Factor>) = u.0.iter().partition(|f| matches!(f, Factor::Speh(_)));
    (UnitaryRep(ar), UnitaryRep(comp))
}

/// Entry point for all decisions; carries the universe and the parity
/// convention for discrete series.
#[derive(Clone, Copy, Debug)]
pub struct Decider<'a> {
    pub lines: &'a LineSet,
    pub parity: Parity,
}

impl<'a> Decider<'a> {
    pub fn new(lines: &'a LineSet) -> Self {
        Decider { lines, parity: Parity::default() }
    }

    pub fn with_parity(lines: &'a LineSet, parity: Parity) -> Self {
        Decider { lines, parity }
    }

    /// The character `chi nu^x` of `GL(n)`, where `chi` is the base point
    /// of a degree one line.
    pub fn is_dist_one_dimensional(&self, line: LineId, x: Rat, n: u64, ctx: Context) -> Result<bool> {
        if self.lines.degree(line) != 1 {
            return Err(Error::Precondition("one dimensional characters live on degree one lines".into()));
        }
        ctx.check(n)?;
        let trivial = self.lines.is_trivial(line);
        Ok(match (ctx.p, ctx.q) {
            (_, 0) => trivial && x == ctx.a,
            (0, _) => trivial && x == -ctx.a,
            _ => trivial && ctx.a.is_zero() && x.is_zero(),
        })
    }

    pub fn is_dist_sqint(&self, seg: &Segment, ctx: Context) -> Result<bool> {
        if seg.is_empty() {
            return Err(Error::Precondition("empty segment".into()));
        }
        let deg = seg.degree(self.lines);
        ctx.check(deg)?;
        if deg == 1 {
            return self.is_dist_one_dimensional(seg.line, seg.a, 1, ctx);
        }
        if ctx.p != ctx.q || !self.lines.is_self_dual(seg.line) || !seg.is_centered() || deg % 2 == 1 {
            return Ok(false);
        }
        let pole = self
            .lines
            .pole(seg.line)
            .ok_or_else(|| Error::MissingPole(self.lines.name(seg.line).into()))?;
        Ok(self.parity.distinguished(pole, seg.len()))
    }

    /// Tri-state decision for an essentially Speh representation.
    /// `Unknown` only occurs for twisted contexts where the pole set check
    /// fails.
    pub fn decide_ess_speh(&self, d: &SpehDatum, ctx: Context) -> Result<Decision> {
        let lines = self.lines;
        ctx.check(d.degree(lines))?;
        let delta = d.delta;
        if lines.degree(delta.line) == 1 && delta.len() == 1 {
            let center = delta.a;
            return self.is_dist_one_dimensional(delta.line, center, d.k as u64, ctx).map(Decision::from);
        }
        if ctx.p == 0 || ctx.q == 0 || ctx.p != ctx.q {
            return Ok(Decision::No);
        }
        let ladder = make_speh(d);
        if !is_self_dual_rep(lines, ladder.multisegment()) {
            return Ok(Decision::No);
        }
        let dd = delta.degree(lines);
        let base = dd.is_multiple_of(2) && self.is_dist_sqint(&delta, Context::untwisted((dd / 2) as u32))?;
        if ctx.a.is_zero() {
            return Ok(base.into());
        }
        if !base && ctx.a.abs() == Rat::HALF {
            return Ok(Decision::No);
        }
        if pole_set_transfer_check(lines, &ladder, ctx.a) && pole_set_transfer_check(lines, &ladder, Rat::ZERO) {
            return Ok(base.into());
        }
        Ok(Decision::Unknown)
    }

    pub fn is_dist_ess_speh(&self, d: &SpehDatum, ctx: Context) -> Result<bool> {
        match self.decide_ess_speh(d, ctx)? {
            Decision::Yes => Ok(true),
            Decision::No => Ok(false),
            Decision::Unknown => Err(Error::Undecided(alloc::format!(
                "{} at {ctx}: the pole set check fails",
                d.display(self.lines)
            ))),
        }
    }

    /// Whether a Speh factor is distinguished at its own `(m,m,0)`; odd
    /// degree counts as not distinguished.
    pub fn speh_self_distinguished(&self, d: &SpehDatum) -> bool {
        let n = d.degree(self.lines);
        n.is_multiple_of(2)
            && self
                .decide_ess_speh(d, Context::untwisted((n / 2) as u32))
                .is_ok_and(|x| x == Decision::Yes)
    }

    /// Untwisted distinction at `(n,n,0)` of a unitary representation of
    /// `GL(2n)`.
    pub fn is_dist_unitary(&self, u: &UnitaryRep) -> Result<bool> {
        let n = u.degree(self.lines);
        if n % 2 == 1 {
            return Err(Error::OddDegree(n));
        }
        if !u.is_self_dual(self.lines) {
            return Ok(false);
        }
        let mut mult: BTreeMap<SpehDatum, u32> = BTreeMap::new();
        for f in u.factors() {
            if let Factor::Speh(d) = f {
                *mult.entry(*d).or_default() += 1;
            }
        }
        for (d, m) in mult {
            let self_dual = d.dual(self.lines) == d;
            if self_dual && m % 2 == 1 && !self.speh_self_distinguished(&d) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

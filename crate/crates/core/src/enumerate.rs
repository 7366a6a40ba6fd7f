//! Generators and brute-force oracles for checking the closed-form
//! criteria.

use alloc::vec::Vec;

use crate::distinction::{Context, Decider, Decision, Factor, UnitaryRep};
use crate::error::{Error, Result};
use crate::line::{LineId, LineSet};
use crate::multiseg::{make_speh, LadderRep, SpehDatum};
use crate::rat::Rat;
use crate::segment::Segment;

/// A line set together with caps bounding every generator.
#[derive(Clone, Debug)]
pub struct Universe {
    pub lines: LineSet,
    pub window: (Rat, Rat),
    pub max_len: u64,
    pub max_height: usize,
}

impl Universe {
    pub fn new(lines: LineSet, window: (Rat, Rat), max_len: u64, max_height: usize) -> Result<Self> {
        if window.0 > window.1 {
            return Err(Error::InvalidUniverse(alloc::format!("empty window [{}, {}]", window.0, window.1)));
        }
        Ok(Universe { lines, window, max_len, max_height })
    }

    fn inside(&self, l: &LadderRep) -> bool {
        l.segments().iter().all(|s| self.window.0 <= s.a && s.b <= self.window.1)
    }

    /// Speh atoms with centered segments, at most `degree`, in sorted order.
    pub fn speh_atoms(&self, degree: u64) -> Vec<SpehDatum> {
        let mut out = Vec::new();
        for line in self.lines.ids() {
            let d = self.lines.degree(line) as u64;
            for len in 1..=self.max_len {
                let h = Rat::new(len as i64 - 1, 2);
                let Ok(delta) = Segment::new(line, -h, h) else { continue };
                for k in 1..=self.max_height as u32 {
                    if d * len * k as u64 > degree {
                        break;
                    }
                    let sp = SpehDatum::new(delta, k).expect("nonempty segment");
                    if self.inside(&make_speh(&sp)) {
                        out.push(sp);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Multisets of `atoms` with total degree `degree`, in lexicographic order
/// of atom indices.
fn multisets(lines: &LineSet, atoms: &[Factor], degree: u64) -> Vec<UnitaryRep> {
    fn go(
        lines: &LineSet,
        atoms: &[Factor],
        from: usize,
        left: u64,
        cur: &mut Vec<Factor>,
        out: &mut Vec<UnitaryRep>,
    ) {
        if left == 0 {
            out.push(UnitaryRep::new(cur.clone()).expect("atoms are valid factors"));
            return;
        }
        for i in from..atoms.len() {
            let d = atoms[i].degree(lines);
            if d <= left {
                cur.push(atoms[i]);
                go(lines, atoms, i, left - d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(lines, atoms, 0, degree, &mut Vec::new(), &mut out);
    out
}

/// All products of Speh factors of total degree `degree`.
pub fn gen_arthur_reps(u: &Universe, degree: u64) -> Vec<UnitaryRep> {
    let atoms: Vec<Factor> = u.speh_atoms(degree).into_iter().map(Factor::Speh).collect();
    multisets(&u.lines, &atoms, degree)
}

/// Like [`gen_arthur_reps`], also allowing complementary series factors
/// with exponents from `alphas`.
pub fn gen_unitary_reps(u: &Universe, degree: u64, alphas: &[Rat]) -> Result<Vec<UnitaryRep>> {
    let mut atoms: Vec<Factor> = Vec::new();
    for sp in u.speh_atoms(degree) {
        atoms.push(Factor::Speh(sp));
        for &x in alphas {
            if !(x.is_positive() && x < Rat::HALF) {
                return Err(Error::Precondition(alloc::format!("complementary exponent {x} not in (0,1/2)")));
            }
            atoms.push(Factor::Comp(sp, x));
        }
    }
    atoms.sort();
    Ok(multisets(&u.lines, &atoms, degree))
}

/// Whether the Speh factors can be split into pairs `{s, dual(s)}` and
/// singletons distinguished at their own `(m,m,0)`.
pub fn brute_force_form_match(dec: &Decider<'_>, u: &UnitaryRep) -> bool {
    fn single(dec: &Decider<'_>, d: &SpehDatum) -> bool {
        let n = d.degree(dec.lines);
        n.is_multiple_of(2)
            && dec
                .decide_ess_speh(d, Context::untwisted((n / 2) as u32))
                .is_ok_and(|x| x == Decision::Yes)
    }
    fn go(dec: &Decider<'_>, rest: &mut Vec<SpehDatum>) -> bool {
        let Some(first) = rest.pop() else {
            return true;
        };
        if single(dec, &first) && go(dec, rest) {
            rest.push(first);
            return true;
        }
        let dual = first.dual(dec.lines);
        let mut ok = false;
        for i in 0..rest.len() {
            if rest[i] == dual && (i == 0 || rest[i - 1] != dual) {
                let partner = rest.remove(i);
                ok = go(dec, rest);
                rest.insert(i, partner);
                if ok {
                    break;
                }
            }
        }
        rest.push(first);
        ok
    }
    let mut spehs: Vec<SpehDatum> = u
        .factors()
        .iter()
        .filter_map(|f| match f {
            Factor::Speh(d) => Some(*d),
            Factor::Comp(..) => None,
        })
        .collect();
    go(dec, &mut spehs)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeCount {
    pub degree: u64,
    pub reps: usize,
    pub self_dual: usize,
    pub distinguished: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub rep: UnitaryRep,
    pub criterion: Option<bool>,
    pub oracle: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub counts: Vec<DegreeCount>,
    /// Criterion and oracle disagree, or the criterion errored.
    pub discrepancies: Vec<Discrepancy>,
    /// Distinguished, but the necessity search found no branch.
    pub search_failures: Vec<UnitaryRep>,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty() && self.search_failures.is_empty()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|c| c.reps).sum()
    }
}

/// Compares the closed-form criterion with the pairing oracle and the
/// necessity search over every product of Speh factors of even degree
/// up to `max_degree`.
pub fn crosscheck(u: &Universe, dec: &Decider<'_>, max_degree: u64) -> CrosscheckReport {
    let mut report = CrosscheckReport::default();
    for degree in (2..=max_degree).step_by(2) {
        let reps = gen_arthur_reps(u, degree);
        if reps.is_empty() {
            continue;
        }
        let mut count = DegreeCount { degree, reps: reps.len(), ..Default::default() };
        for rep in reps {
            let self_dual = rep.is_self_dual(&u.lines);
            count.self_dual += self_dual as usize;
            let oracle = self_dual && brute_force_form_match(dec, &rep);
            let claim = dec.is_dist_unitary(&rep).ok();
            if claim != Some(oracle) {
                report.discrepancies.push(Discrepancy { rep: rep.clone(), criterion: claim, oracle });
            }
            if claim == Some(true) {
                count.distinguished += 1;
                let ctx = Context::untwisted((degree / 2) as u32);
                let possible = dec.nec_search_speh_products(&rep.ladders(), ctx).is_ok_and(|v| v.possible);
                if !possible {
                    report.search_failures.push(rep);
                }
            }
        }
        report.counts.push(count);
    }
    report
}

/// Every ladder on `line` inside the universe caps whose exponents are
/// congruent to `offset` modulo one.
pub fn ladders_on(u: &Universe, line: LineId, offset: Rat) -> Vec<LadderRep> {
    fn go(
        u: &Universe,
        line: LineId,
        pts: &[Rat],
        prev: Option<(usize, usize)>,
        cur: &mut Vec<Segment>,
        out: &mut Vec<LadderRep>,
    ) {
        out.push(LadderRep::from_segments(cur.clone()).expect("strictly decreasing by construction"));
        if cur.len() == u.max_height {
            return;
        }
        let (amax, bmax) = match prev {
            Some((i, j)) => (i, j),
            None => (pts.len(), pts.len()),
        };
        for i in 0..amax {
            for j in i..bmax.min(i + u.max_len as usize) {
                cur.push(Segment::new(line, pts[i], pts[j]).expect("integral span"));
                go(u, line, pts, Some((i, j)), cur, out);
                cur.pop();
            }
        }
    }
    let mut x = Rat::int((u.window.0 - offset).floor()) + offset;
    if x < u.window.0 {
        x += Rat::ONE;
    }
    let mut pts = Vec::new();
    while x <= u.window.1 {
        pts.push(x);
        x += Rat::ONE;
    }
    let mut out = Vec::new();
    go(u, line, &pts, None, &mut Vec::new(), &mut out);
    out
}

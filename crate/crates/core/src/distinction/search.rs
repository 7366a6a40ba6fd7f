//! Necessary-condition searches over products, following the case
//! analysis the geometric lemma forces on the last factor.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{shape_classify, Context, Decider, Decision, Shape};
use crate::error::{Error, Result};
use crate::line::{dual_point, LineSet};
use crate::multiseg::{LadderRep, Multisegment, SpehDatum};
use crate::orbits::enumerate_orbits;
use crate::rat::Rat;
use crate::segment::{dual_segment, Segment};
use crate::structure::divisions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    A1,
    A2,
    B1,
    B2,
    A,
    B,
    C,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::A1 => "A1",
            CaseTag::A2 => "A2",
            CaseTag::B1 => "B1",
            CaseTag::B2 => "B2",
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One branch choice: the case, the cuts of the last factor, the cuts of
/// the earlier factors that absorb the dual piece, and the context the
/// remaining product must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub case: CaseTag,
    pub factor: usize,
    pub cuts: Vec<Rat>,
    pub partners: Vec<(usize, Vec<Rat>)>,
    pub next: Context,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchVerdict {
    pub possible: bool,
    /// Branch reaching a satisfied leaf, empty when impossible.
    pub trace: Vec<TraceStep>,
}

type Memo<K> = BTreeMap<(K, Context), Option<Vec<TraceStep>>>;

impl Decider<'_> {
    /// Search over products of segments.
    pub fn nec_search_segments(&self, prod: &[Segment], ctx: Context) -> Result<SearchVerdict> {
        if prod.iter().any(|s| s.is_empty()) {
            return Err(Error::Precondition("empty factor".into()));
        }
        let n: u64 = prod.iter().map(|s| s.degree(self.lines)).sum();
        ctx.check(n)?;
        let mut memo = Memo::new();
        Ok(verdict(self.seg_search(prod.to_vec(), ctx, &mut memo)))
    }

    /// Search over products of ladders, in product order.
    pub fn nec_search_speh_products(&self, prod: &[LadderRep], ctx: Context) -> Result<SearchVerdict> {
        let prod: Vec<LadderRep> = prod.iter().filter(|l| !l.is_empty()).cloned().collect();
        let n: u64 = prod.iter().map(|l| l.degree(self.lines)).sum();
        ctx.check(n)?;
        let mut memo = Memo::new();
        Ok(verdict(self.ladder_search(prod, ctx, &mut memo)))
    }

    fn seg_search(&self, prod: Vec<Segment>, ctx: Context, memo: &mut Memo<Vec<Segment>>) -> Option<Vec<TraceStep>> {
        let key = (prod, ctx);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let (prod, _) = &key;
        let found = self.seg_step(prod, ctx, memo);
        memo.insert(key, found.clone());
        found
    }

    fn seg_step(&self, prod: &[Segment], ctx: Context, memo: &mut Memo<Vec<Segment>>) -> Option<Vec<TraceStep>> {
        let lines = self.lines;
        let Some((&last, rest)) = prod.split_last() else {
            return (ctx.p == 0 && ctx.q == 0).then(Vec::new);
        };
        let t = prod.len() - 1;
        let (p, q, a) = (ctx.p as i64, ctx.q as i64, ctx.a);
        let nt = last.degree(lines) as i64;
        let x1 = a + Rat::new(q - p + 1, 2);
        let x2 = -a + Rat::new(p - q + 1, 2);
        let trivial = lines.is_trivial(last.line);
        let is_char = |s: &Segment, x: Rat| trivial && s.len() == 1 && s.a == x;

        let end_dual = dual_point(lines, last.end());
        let filter = is_char(&last, x1) || is_char(&last, x2) || prod.iter().any(|s| s.begin() == end_dual);
        if !filter {
            return None;
        }

        let try_branch = |case: CaseTag,
                              cut: Rat,
                              partner: Option<(usize, Rat)>,
                              next: (i64, i64, Rat),
                              memo: &mut Memo<Vec<Segment>>|
         -> Option<Vec<TraceStep>> {
            let (np, nq, na) = next;
            if np < 0 || nq < 0 {
                return None;
            }
            let next = Context::new(np as u32, nq as u32, na);
            let mut rem = rest.to_vec();
            if let Some((i, c)) = partner {
                let s = rem[i];
                let tail = Segment { line: s.line, a: c + 1, b: s.b };
                if tail.is_empty() {
                    rem.remove(i);
                } else {
                    rem[i] = tail;
                }
            }
            let mut tr = self.seg_search(rem, next, memo)?;
            let step = TraceStep {
                case,
                factor: t,
                cuts: alloc::vec![cut],
                partners: partner.map(|(i, c)| alloc::vec![(i, alloc::vec![c])]).unwrap_or_default(),
                next,
            };
            tr.insert(0, step);
            Some(tr)
        };

        // Earlier segments [a_i, c_i] equal to a given segment.
        let partners = |target: Segment| -> Vec<(usize, Rat)> {
            rest.iter()
                .enumerate()
                .filter(|(_, s)| s.line == target.line && s.a == target.a && target.b <= s.b)
                .map(|(i, _)| (i, target.b))
                .collect()
        };

        // A1: a single point split off the beginning.
        if trivial && last.len() > 1 {
            let tail = Segment { line: last.line, a: last.a + 1, b: last.b };
            for pt in partners(dual_segment(lines, &tail)) {
                if last.a == x1 {
                    if let Some(tr) = try_branch(CaseTag::A1, last.a, Some(pt), (p - nt, 1 + q - nt, a + Rat::HALF), memo) {
                        return Some(tr);
                    }
                }
                if last.a == x2 {
                    if let Some(tr) = try_branch(CaseTag::A1, last.a, Some(pt), (1 + p - nt, q - nt, a - Rat::HALF), memo) {
                        return Some(tr);
                    }
                }
            }
        }

        // A2: a distinguished proper beginning.
        let d = lines.degree(last.line) as i64;
        let mut c = last.a;
        while c < last.b {
            let head = Segment { line: last.line, a: last.a, b: c };
            let n1 = head.degree(lines) as i64;
            let is_point = d == 1 && c == last.a;
            if !is_point && n1 % 2 == 0 && self.is_dist_sqint(&head, Context::untwisted((n1 / 2) as u32)).unwrap_or(false) {
                let tail = Segment { line: last.line, a: c + 1, b: last.b };
                for pt in partners(dual_segment(lines, &tail)) {
                    let next = (p - nt + n1 / 2, q - nt + n1 / 2, a);
                    if let Some(tr) = try_branch(CaseTag::A2, c, Some(pt), next, memo) {
                        return Some(tr);
                    }
                }
            }
            c = c + 1;
        }

        // B1: the whole factor is a character.
        if is_char(&last, x1) {
            if let Some(tr) = try_branch(CaseTag::B1, last.b, None, (p - 1, q, a + Rat::HALF), memo) {
                return Some(tr);
            }
        }
        if is_char(&last, x2) {
            if let Some(tr) = try_branch(CaseTag::B1, last.b, None, (p, q - 1, a - Rat::HALF), memo) {
                return Some(tr);
            }
        }

        // B2: the whole factor is distinguished.
        if nt % 2 == 0 && self.is_dist_sqint(&last, Context::untwisted((nt / 2) as u32)).unwrap_or(false) {
            if let Some(tr) = try_branch(CaseTag::B2, last.b, None, (p - nt / 2, q - nt / 2, a), memo) {
                return Some(tr);
            }
        }

        // C: the whole factor cancels against an earlier beginning.
        for pt in partners(dual_segment(lines, &last)) {
            if let Some(tr) = try_branch(CaseTag::C, last.a - 1, Some(pt), (p - nt, q - nt, a), memo) {
                return Some(tr);
            }
        }
        None
    }

    fn ladder_search(
        &self,
        prod: Vec<LadderRep>,
        ctx: Context,
        memo: &mut Memo<Vec<LadderRep>>,
    ) -> Option<Vec<TraceStep>> {
        let key = (prod, ctx);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let (prod, _) = &key;
        let found = self.ladder_step(prod, ctx, memo);
        memo.insert(key, found.clone());
        found
    }

    fn ladder_step(&self, prod: &[LadderRep], ctx: Context, memo: &mut Memo<Vec<LadderRep>>) -> Option<Vec<TraceStep>> {
        let lines = self.lines;
        let Some((last, rest)) = prod.split_last() else {
            return (ctx.p == 0 && ctx.q == 0).then(Vec::new);
        };
        let t = prod.len() - 1;
        let n = ctx.n();
        let k = (n - last.degree(lines)) as u32;
        let (p, q) = (ctx.p as i64, ctx.q as i64);
        for div in divisions(lines, last, None) {
            let d = div.right.degree(lines) as u32;
            let case = if div.right.is_empty() {
                CaseTag::B
            } else if div.left.is_empty() {
                CaseTag::C
            } else {
                CaseTag::A
            };
            let target = div.right.dual(lines).into_multisegment();
            let mut absorbs = Vec::new();
            absorb(lines, rest, 0, target, &mut Vec::new(), &mut absorbs);
            if absorbs.is_empty() {
                continue;
            }
            for orbit in enumerate_orbits(k, ctx.p, ctx.q).into_iter().filter(|o| o.defect == d) {
                let (r0, s0, ki) = (orbit.r as i64, orbit.s as i64, k as i64);
                let head_ctx = Context::new(
                    (p + s0 - ki) as u32,
                    (q + r0 - ki) as u32,
                    ctx.a + Rat::new(s0 - r0, 2),
                );
                if !self.leaf_screen(&div.left, head_ctx) {
                    continue;
                }
                let next = Context::new(orbit.r, orbit.s, ctx.a + Rat::new(p - q + s0 - r0, 2));
                for choice in &absorbs {
                    let mut rem = Vec::with_capacity(rest.len());
                    let mut partners = Vec::new();
                    for (j, (f, pick)) in rest.iter().zip(choice).enumerate() {
                        match pick {
                            None => rem.push(f.clone()),
                            Some(pd) => {
                                partners.push((j, pd.cuts.clone()));
                                if !pd.right.is_empty() {
                                    rem.push(pd.right.clone());
                                }
                            }
                        }
                    }
                    if let Some(mut tr) = self.ladder_search(rem, next, memo) {
                        tr.insert(0, TraceStep { case, factor: t, cuts: div.cuts.clone(), partners, next });
                        return Some(tr);
                    }
                }
            }
        }
        None
    }

    /// Necessary conditions for a single ladder to be distinguished.
    pub fn leaf_screen(&self, l: &LadderRep, ctx: Context) -> bool {
        let lines = self.lines;
        let Some(line) = l.line() else {
            return ctx.p == 0 && ctx.q == 0;
        };
        if l.degree(lines) != ctx.n() {
            return false;
        }
        if l.is_one_dimensional(lines) {
            let center = l.segments()[0].a - Rat::new(l.height() as i64 - 1, 2);
            return self.is_dist_one_dimensional(line, center, ctx.n(), ctx).unwrap_or(false);
        }
        if ctx.p == 0 || ctx.q == 0 {
            return false;
        }
        if let Some(d) = SpehDatum::recover(l) {
            return self.decide_ess_speh(&d, ctx).is_ok_and(|x| x != Decision::No);
        }
        let half = Rat::new(ctx.p as i64 - ctx.q as i64, 2);
        if (l.is_left_aligned() && ctx.a == half) || (l.is_right_aligned() && ctx.a == -half) {
            return false;
        }
        if lines.degree(line) == 1 {
            if l.is_right_aligned() {
                return shape_classify(lines, l).is_ok_and(|s| s != Shape::None);
            }
            if l.is_left_aligned() {
                return shape_classify(lines, &l.dual(lines)).is_ok_and(|s| s != Shape::None);
            }
            return true;
        }
        if l.is_decreasing() || l.is_increasing() {
            let len = l.segments()[0].len();
            return l.segments().iter().all(|s| s.len() == len) && *l == l.dual(lines);
        }
        true
    }
}

fn verdict(found: Option<Vec<TraceStep>>) -> SearchVerdict {
    match found {
        Some(trace) => SearchVerdict { possible: true, trace },
        None => SearchVerdict { possible: false, trace: Vec::new() },
    }
}

/// Ways to choose a division of each earlier factor so that the left
/// parts together equal `target`. `None` leaves a factor untouched.
fn absorb(
    lines: &LineSet,
    rest: &[LadderRep],
    j: usize,
    target: Multisegment,
    picked: &mut Vec<Option<crate::structure::Division>>,
    out: &mut Vec<Vec<Option<crate::structure::Division>>>,
) {
    if target.is_empty() {
        let mut full = picked.clone();
        full.resize(rest.len(), None);
        out.push(full);
        return;
    }
    if j == rest.len() {
        return;
    }
    picked.push(None);
    absorb(lines, rest, j + 1, target.clone(), picked, out);
    picked.pop();
    let f = &rest[j];
    if f.line().is_some_and(|x| target.segments().iter().any(|s| s.line == x)) {
        for div in divisions(lines, f, None) {
            if div.left.is_empty() {
                continue;
            }
            if let Some(left) = target.minus(div.left.multisegment()) {
                picked.push(Some(div));
                absorb(lines, rest, j + 1, left, picked, out);
                picked.pop();
            }
        }
    }
}

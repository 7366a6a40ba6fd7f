//! Parabolic orbits on `GL(p+q) / GL(p) x GL(q)` and the exponents of
//! their modulus characters.

use alloc::vec;
use alloc::vec::Vec;

use crate::distinction::Context;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// An orbit `(r,s)` for the maximal parabolic of type `(k, p+q-k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitDatum {
    pub r: u32,
    pub s: u32,
    pub defect: u32,
}

pub fn is_orbit(r: u32, s: u32, k: u32, p: u32, q: u32) -> bool {
    r + s <= k && k <= p + s && k <= q + r
}

/// Orbits ordered by `s`, then `r`.
pub fn enumerate_orbits(k: u32, p: u32, q: u32) -> Vec<OrbitDatum> {
    let mut out = Vec::new();
    for s in 0..=k {
        for r in 0..=k - s {
            if is_orbit(r, s, k, p, q) {
                out.push(OrbitDatum { r, s, defect: k - r - s });
            }
        }
    }
    out
}

/// The distinction requirements an orbit imposes on a tensor product
/// `rho1 x rho2 x rho3 x rho4` of the two Jacquet modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitContexts {
    /// Context for the factor of degree `r + s`.
    pub first: Context,
    /// Degree of the two middle factors, which must be contragredient.
    pub middle_degree: u32,
    /// Context for the factor of degree `p + q - k - d`.
    pub last: Context,
}

pub fn general_orbit_exponents(r: u32, s: u32, k: u32, p: u32, q: u32, a: Rat) -> Result<OrbitContexts> {
    if !is_orbit(r, s, k, p, q) {
        return Err(Error::NotAnOrbit);
    }
    let (ri, si, pi, qi) = (r as i64, s as i64, p as i64, q as i64);
    Ok(OrbitContexts {
        first: Context::new(r, s, a + Rat::new(pi + si - qi - ri, 2)),
        middle_degree: k - r - s,
        last: Context::new(p + s - k, q + r - k, a + Rat::new(si - ri, 2)),
    })
}

/// An involution `tau` of the blocks with `n_i = n_tau(i)`, and a sign
/// split `(n_+, n_-)` at each fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleDatum {
    /// Zero-based images.
    pub tau: Vec<usize>,
    /// `Some` exactly at the fixed points of `tau`.
    pub splits: Vec<Option<(u32, u32)>>,
}

impl AdmissibleDatum {
    pub fn validate(&self, nbar: &[u32], p: u32, q: u32) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.into()));
        let t = nbar.len();
        if self.tau.len() != t || self.splits.len() != t {
            return bad("datum length differs from composition length");
        }
        let (mut sp, mut sq) = (0u64, 0u64);
        for i in 0..t {
            let j = self.tau[i];
            if j >= t || self.tau[j] != i {
                return bad("tau is not an involution");
            }
            if nbar[i] != nbar[j] {
                return bad("tau does not preserve block sizes");
            }
            match (i == j, self.splits[i]) {
                (true, Some((x, y))) => {
                    if x + y != nbar[i] {
                        return bad("split does not add up to the block size");
                    }
                    sp += x as u64;
                    sq += y as u64;
                }
                (false, None) => {
                    if i < j {
                        sp += nbar[i] as u64;
                        sq += nbar[i] as u64;
                    }
                }
                _ => return bad("splits must be given exactly at fixed points"),
            }
        }
        if sp != p as u64 || sq != q as u64 {
            return bad("signature sums differ from (p,q)");
        }
        Ok(())
    }
}

/// All admissible data, ordered by involution then splits.
pub fn enumerate_admissible(nbar: &[u32], p: u32, q: u32) -> Result<Vec<AdmissibleDatum>> {
    let n: u64 = nbar.iter().map(|&x| x as u64).sum();
    if n != p as u64 + q as u64 {
        return Err(Error::SizeMismatch { expected: p as u64 + q as u64, found: n });
    }
    let mut out = Vec::new();
    for tau in involutions(nbar) {
        let paired: u32 = (0..nbar.len()).filter(|&i| tau[i] > i).map(|i| nbar[i]).sum();
        if paired > p || paired > q {
            continue;
        }
        let fixed: Vec<usize> = (0..nbar.len()).filter(|&i| tau[i] == i).collect();
        let mut splits = vec![None; nbar.len()];
        split_walk(nbar, &fixed, 0, p - paired, &tau, &mut splits, &mut out);
    }
    Ok(out)
}

fn split_walk(
    nbar: &[u32],
    fixed: &[usize],
    idx: usize,
    plus_left: u32,
    tau: &[usize],
    splits: &mut Vec<Option<(u32, u32)>>,
    out: &mut Vec<AdmissibleDatum>,
) {
    if idx == fixed.len() {
        if plus_left == 0 {
            out.push(AdmissibleDatum { tau: tau.to_vec(), splits: splits.clone() });
        }
        return;
    }
    let i = fixed[idx];
    for plus in (0..=nbar[i].min(plus_left)).rev() {
        splits[i] = Some((plus, nbar[i] - plus));
        split_walk(nbar, fixed, idx + 1, plus_left - plus, tau, splits, out);
    }
    splits[i] = None;
}

/// Involutions of `0..t` that preserve `nbar`, identity first.
pub fn involutions(nbar: &[u32]) -> Vec<Vec<usize>> {
    let t = nbar.len();
    let mut out = Vec::new();
    let mut tau: Vec<Option<usize>> = vec![None; t];
    inv_walk(nbar, &mut tau, &mut out);
    out
}

fn inv_walk(nbar: &[u32], tau: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
    let Some(i) = tau.iter().position(|x| x.is_none()) else {
        out.push(tau.iter().map(|x| x.unwrap()).collect());
        return;
    };
    tau[i] = Some(i);
    inv_walk(nbar, tau, out);
    for j in i + 1..nbar.len() {
        if tau[j].is_none() && nbar[j] == nbar[i] {
            tau[i] = Some(j);
            tau[j] = Some(i);
            inv_walk(nbar, tau, out);
            tau[j] = None;
        }
    }
    tau[i] = None;
}

/// Block variable of the stabilizer Levi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockLabel {
    Plus(usize),
    Minus(usize),
    Block(usize),
}

/// Exponent of `nu` on each block variable. Fixed points contribute a
/// `Plus` and a `Minus` entry, other indices a `Block` entry; indices are
/// zero-based.
pub fn admissible_exponents(d: &AdmissibleDatum, nbar: &[u32]) -> Vec<(BlockLabel, Rat)> {
    let t = nbar.len();
    let fixed = |i: usize| d.tau[i] == i;
    let split = |i: usize| d.splits[i].unwrap_or((0, 0));
    let mut plus = vec![Rat::ZERO; t];
    let mut minus = vec![Rat::ZERO; t];
    let mut block = vec![Rat::ZERO; t];
    for i in 0..t {
        for j in i + 1..t {
            if fixed(i) && fixed(j) {
                let (ip, im) = split(i);
                let (jp, jm) = split(j);
                let (ip, im, jp, jm) = (ip as i64, im as i64, jp as i64, jm as i64);
                plus[i] += Rat::new(jp - jm, 2);
                minus[i] += Rat::new(jm - jp, 2);
                plus[j] += Rat::new(im - ip, 2);
                minus[j] += Rat::new(ip - im, 2);
            }
            if d.tau[i] > d.tau[j] {
                let (ni, nj) = (nbar[i] as i64, nbar[j] as i64);
                let mut add = |k: usize, x: Rat| {
                    if fixed(k) {
                        plus[k] += x;
                        minus[k] += x;
                    } else {
                        block[k] += x;
                    }
                };
                add(i, Rat::new(-nj, 2));
                add(j, Rat::new(ni, 2));
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..t {
        if fixed(i) {
            out.push((BlockLabel::Plus(i), plus[i]));
            out.push((BlockLabel::Minus(i), minus[i]));
        } else {
            out.push((BlockLabel::Block(i), block[i]));
        }
    }
    out
}

//! Exact combinatorics for segments, multisegments and ladder
//! representations of p-adic `GL(n)`, the parabolic orbit data of the
//! linear symmetric space `GL(p+q) / GL(p) x GL(q)`, and decision
//! procedures for twisted linear periods.
//!
//! Everything is exact: exponents are [`Rat`] values and no floating point
//! arithmetic is used. The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod distinction;
pub mod enumerate;
pub mod error;
pub mod line;
pub mod multiseg;
pub mod orbits;
pub mod rat;
pub mod segment;
pub mod structure;

pub use error::{Error, Result};
pub use line::{dual_point, CuspidalLine, CuspidalPoint, LineId, LineSet, LineSpec, PoleType};
pub use multiseg::{LadderRep, Multisegment, SpehDatum};
pub use rat::Rat;
pub use segment::Segment;

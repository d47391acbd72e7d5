//! Exact and numerical verification of closed and extremally Ricci-pinched
//! G2-structures on 7-dimensional Lie algebras of the form μ = λ + μ_A.

// Index loops mirror the component formulas.
#![allow(clippy::needless_range_loop)]

pub mod deform;
pub mod exterior;
pub mod formats;
pub mod g2core;
pub mod liealg;
pub mod linalg;
pub mod quad;
pub mod scalars;
pub mod search;

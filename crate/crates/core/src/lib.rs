//! Exact computation and verification for the vector-valued mock theta
//! functions H_c attached to the rank-one lattice L(c) = (ℤ, −12c²xy).
//!
//! The crate is organised bottom-up:
//!
//! - [`cyclotomic`]: exact arithmetic in ℚ(ζ_n)
//! - [`qseries`]: truncated Laurent–Puiseux series in q
//! - [`special`]: the Eulerian and Appell–Lerch series, rank generating
//!   function, fifth order mock theta functions and holomorphic parts
//! - [`weil`]: the Weil representation of Mp₂(ℤ) on ℂ[ℤ/12c²ℤ]
//! - [`theorem`]: the coefficient table α_h(a,b), β_h(a,b) and exact checks
//!   of every transformation identity
//! - [`discovery`]: the floating-point constraint system that recovers the
//!   coefficients numerically
//! - [`cli`]: report types and dispatch for the `mocktheta` binary

pub mod cyclotomic;
pub mod error;
pub mod qseries;
pub mod special;
pub mod weil;
pub mod theorem;
pub mod discovery;
pub mod cli;

pub use cyclotomic::{kronecker_12, CycNumber};
pub use error::{Error, Result};

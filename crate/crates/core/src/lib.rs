//! Exact-arithmetic machinery for Koba-Nielsen hyperplane arrangements:
//! rational linear programming and polyhedral queries, dense-edge
//! enumeration, convergence conditions, polar-locus decisions, and
//! independence witnesses.
//!
//! Everything in this crate is exact: coefficients are arbitrary-precision
//! rationals and no floating point appears anywhere. Floating-point
//! validation (Gamma functions, Monte-Carlo integration) lives in the
//! companion `kn-polar` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arrangement;
pub mod error;
pub mod rat;
pub mod ratpoly;
pub mod zeta;

pub use error::Error;
pub use rat::Rational;

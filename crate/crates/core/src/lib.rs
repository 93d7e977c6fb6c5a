//! Exact computations on the Harish-Chandra modules of SU(1,1).
//!
//! The crate realizes the principal series and point-supported modules on
//! explicit weight bases, computes their Hodge and weight filtrations, and
//! evaluates the invariant hermitian forms by exact meromorphic continuation
//! of a Beta-type integral. Every sign decision is made over the rationals;
//! floating point appears only in magnitudes and in the quadrature cross-check.

pub mod analysis;
pub mod error;
pub mod exact;
pub mod filtrations;
pub mod forms;
pub mod modules;

pub use error::{Error, Result};
pub use exact::{rat, HalfInt, Quadrature, Rational, Sign};
pub use modules::{
    act, basis_window, constituents, theta, BasisVector, ConstituentPart, Generator, LinComb,
    ModuleSpec, Orbit, Parity, PrincipalSeries,
};

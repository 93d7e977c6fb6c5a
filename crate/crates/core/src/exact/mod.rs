//! Exact arithmetic kernel: rationals, half-integers, signs, and the two
//! independent routes to the Beta integral (log-Gamma and quadrature).

mod halfint;
mod quadrature;
mod rational;
mod sign;
mod special;

pub use halfint::HalfInt;
pub use quadrature::{quadrature_integral, Quadrature};
pub use rational::{rat, Rational};
pub use sign::Sign;
pub use special::{beta_value, ln_gamma};

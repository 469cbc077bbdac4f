//! Exact rational arithmetic and piecewise-polynomial calculus.
//!
//! Nothing in this crate touches floating point except display helpers;
//! every invariant is computed and compared as an exact rational.

pub mod linalg;
mod piecewise;
mod poly;
mod rat;

pub use piecewise::{PieceReport, PiecewisePoly};
pub use poly::Poly;
pub use rat::{gcd, Rat};

use crate::error::Result;

/// Exact `∫_a^b p(t) dt`.
pub fn poly_integrate(p: &Poly, a: &Rat, b: &Rat) -> Result<Rat> {
    p.integrate(a, b)
}

/// Exact integral of a piecewise polynomial over `[a, b]`.
pub fn piecewise_integrate(pp: &PiecewisePoly, a: &Rat, b: &Rat) -> Result<Rat> {
    pp.integrate(a, b)
}

pub fn poly_eval(p: &Poly, t: &Rat) -> Rat {
    p.eval(t)
}

/// Shorthand for building rationals in tests and catalog code.
pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

//! Exact computation of K-stability invariants of log del Pezzo surfaces.
//!
//! Every quantity is an exact rational. Surfaces are presented by their
//! Picard lattice (Gram matrix, canonical class, Mori cone generators),
//! singularities by resolution graphs or cyclic quotient data, and cubic
//! surfaces by their defining forms.

pub mod azflag;
pub mod error;
pub mod exactnum;
pub mod gitcubic;
pub mod lattice;
pub mod localvol;
pub mod positivity;
pub mod valuative;

pub use error::{Error, Result};
pub use exactnum::Rat;

//! Picard-lattice models of rational surfaces: the intersection pairing,
//! Mori cone generators, `(-1)`-curve enumeration, and the built-in catalog.

mod catalog;
mod class;
mod enumerate;
pub mod format;
mod model;

pub use catalog::{catalog, weighted_plane, Catalog, CatalogEntry};
pub use class::{BoundaryComponent, Curve, DivClass};
pub use enumerate::{curve_label, enumerate_neg_curves, enumerate_with_bound, labelled_neg_curves, DEFAULT_BOUND};
pub use model::{intersect, is_nef, Extraction, SingPoint, SurfaceModel};

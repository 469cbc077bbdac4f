//! Discrepancies, log canonical thresholds, and the valuative invariants
//! `A`, `S`, `β`, `δ` of prime divisors over a surface.

mod disc;
mod graph;
mod invariants;
mod lct;

pub use disc::{classify, discrepancies, SingClass, SingKind};
pub use graph::{ResolutionGraph, StrictTransform, Vertex};
pub use invariants::{
    a_value, beta, catalogued_divisors, extraction_log_discrepancy, place, profile_for, s_value,
    unstable_certificate, Beta, DivisorSpec, Placed,
};
pub use lct::{lct_newton, PlaneCurveGerm};

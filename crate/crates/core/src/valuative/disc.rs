use std::fmt;

use serde::Serialize;

use super::graph::ResolutionGraph;
use crate::error::{Error, Result};
use crate::exactnum::{linalg, Rat};

/// Discrepancies `a_i` of the exceptional curves, from
/// `(K_Y + Δ_Y)·E_j = Σ_i a_i (E_i·E_j)` and adjunction on each `E_j`.
pub fn discrepancies(g: &ResolutionGraph) -> Result<Vec<Rat>> {
    if g.vertices.is_empty() {
        return Ok(Vec::new());
    }
    for st in &g.strict_transforms {
        if st.coefficient.is_negative() || st.coefficient > Rat::one() {
            return Err(Error::InvalidInput(format!(
                "boundary coefficient {} outside [0, 1]",
                st.coefficient
            )));
        }
    }
    let m = g.intersection_matrix()?;
    if !linalg::is_negative_definite(&m) {
        return Err(Error::NotNegativeDefinite);
    }
    linalg::solve(&m, &g.adjunction_rhs()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingKind {
    Terminal,
    Canonical,
    Klt,
    PltBoundary,
    Lc,
    NotLc,
}

impl fmt::Display for SingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingKind::Terminal => "terminal",
            SingKind::Canonical => "canonical",
            SingKind::Klt => "klt",
            SingKind::PltBoundary => "plt-boundary",
            SingKind::Lc => "lc",
            SingKind::NotLc => "not-lc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingClass {
    pub kind: SingKind,
    /// `discrep(X, Δ)` when the pair is lc, otherwise the most negative
    /// exceptional discrepancy.
    pub witness: Rat,
    pub discrepancies: Vec<Rat>,
}

/// Classification from one log resolution with smooth `Δ_Y`:
/// `discrep = min(min a_i, min(1 − b_j), 1)` once every `a_i ≥ −1`.
pub fn classify(g: &ResolutionGraph) -> Result<SingClass> {
    let a = discrepancies(g)?;
    let min_a = Rat::min_of(&a);
    if let Some(m) = &min_a {
        if *m < Rat::int(-1) {
            return Ok(SingClass { kind: SingKind::NotLc, witness: m.clone(), discrepancies: a });
        }
    }
    let one = Rat::one();
    let mut d = one.clone();
    if let Some(m) = min_a {
        d = d.min(m);
    }
    let mut max_b = Rat::zero();
    for st in &g.strict_transforms {
        d = d.min(&one - &st.coefficient);
        max_b = max_b.max(st.coefficient.clone());
    }
    let minus_one = Rat::int(-1);
    let kind = if d.is_positive() {
        SingKind::Terminal
    } else if !d.is_negative() {
        SingKind::Canonical
    } else if d > minus_one && max_b < one {
        SingKind::Klt
    } else if d > minus_one {
        SingKind::PltBoundary
    } else {
        SingKind::Lc
    };
    Ok(SingClass { kind, witness: d, discrepancies: a })
}

use std::fmt;

use serde::Serialize;

use super::disc::discrepancies;
use super::graph::StrictTransform;
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::lattice::{DivClass, Extraction, SurfaceModel};
use crate::positivity::{volume_profile, volume_profile_class, VolumeProfile};

/// A prime divisor over `X`: a curve on `X` or a catalogued extraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum DivisorSpec {
    Curve(String),
    Exceptional(String),
    /// A raw class on `X`, taken as a prime curve outside the boundary.
    Class(DivClass),
}

impl DivisorSpec {
    /// Resolves a name against the model: extraction labels first, then
    /// curve labels.
    pub fn named(m: &SurfaceModel, name: &str) -> Result<DivisorSpec> {
        if m.extraction(name).is_some() {
            Ok(DivisorSpec::Exceptional(name.to_string()))
        } else if m.curve(name).is_some() {
            Ok(DivisorSpec::Curve(name.to_string()))
        } else {
            Err(Error::UnknownDivisor { model: m.name.clone(), divisor: name.to_string() })
        }
    }

    pub fn label(&self) -> String {
        match self {
            DivisorSpec::Curve(l) | DivisorSpec::Exceptional(l) => l.clone(),
            DivisorSpec::Class(c) => format!(
                "[{}]",
                c.coeffs().iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

impl fmt::Display for DivisorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `E` placed on the model where it is a curve, together with the pulled
/// back `L = −K_X − Δ`.
#[derive(Clone, Debug)]
pub struct Placed<'a> {
    pub model: &'a SurfaceModel,
    pub l: DivClass,
    pub e: DivClass,
    pub e_label: String,
    pub extraction: Option<&'a Extraction>,
}

pub fn place<'a>(m: &'a SurfaceModel, spec: &DivisorSpec) -> Result<Placed<'a>> {
    let unknown = |d: &str| Error::UnknownDivisor { model: m.name.clone(), divisor: d.to_string() };
    match spec {
        DivisorSpec::Curve(label) => Ok(Placed {
            model: m,
            l: m.log_anticanonical(),
            e: m.curve(label).ok_or_else(|| unknown(label))?,
            e_label: label.clone(),
            extraction: None,
        }),
        DivisorSpec::Class(c) => {
            m.check_rank(c)?;
            Ok(Placed { model: m, l: m.log_anticanonical(), e: c.clone(), e_label: spec.label(), extraction: None })
        }
        DivisorSpec::Exceptional(label) => {
            let x = m.extraction(label).ok_or_else(|| unknown(label))?;
            let y = x.target.as_ref();
            Ok(Placed {
                model: y,
                l: x.pull_back(&m.log_anticanonical()),
                e: y.curve(&x.exceptional).ok_or_else(|| unknown(&x.exceptional))?,
                e_label: x.exceptional.clone(),
                extraction: Some(x),
            })
        }
    }
}

/// Log discrepancy of an extraction for the pair `(X, Δ)`. Boundary
/// components without incidence data are taken to miss the centre.
pub fn extraction_log_discrepancy(m: &SurfaceModel, x: &Extraction) -> Result<Rat> {
    let mut graph = x.graph.clone();
    for b in &m.boundary {
        if b.coefficient.is_zero() {
            continue;
        }
        if let Some((_, inc)) = x.boundary_incidence.iter().find(|(l, _)| *l == b.label) {
            graph.strict_transforms.push(StrictTransform {
                coefficient: b.coefficient.clone(),
                incidences: inc.iter().enumerate().filter(|(_, &k)| k > 0).map(|(v, &k)| (v, k)).collect(),
            });
        }
    }
    let a = discrepancies(&graph)?;
    let ai = a.get(x.exceptional_vertex).ok_or_else(|| {
        Error::InvalidModel { model: m.name.clone(), reason: format!("extraction {} has no vertex", x.label) }
    })?;
    Ok(Rat::one() + ai)
}

/// `A_{(X,Δ)}(E)`.
pub fn a_value(m: &SurfaceModel, spec: &DivisorSpec) -> Result<Rat> {
    match spec {
        DivisorSpec::Curve(label) => {
            if m.curve(label).is_none() {
                return Err(Error::UnknownDivisor { model: m.name.clone(), divisor: label.clone() });
            }
            Ok(Rat::one() - m.boundary_coefficient(label))
        }
        DivisorSpec::Class(c) => {
            m.check_rank(c)?;
            let b = m.boundary.iter().find(|b| &b.class == c).map(|b| b.coefficient.clone());
            Ok(Rat::one() - b.unwrap_or_else(Rat::zero))
        }
        DivisorSpec::Exceptional(label) => {
            let x = m.extraction(label).ok_or_else(|| Error::UnknownDivisor {
                model: m.name.clone(),
                divisor: label.clone(),
            })?;
            extraction_log_discrepancy(m, x)
        }
    }
}

/// The volume profile `t ↦ vol(L − tE)` on the model carrying `E`.
pub fn profile_for(m: &SurfaceModel, spec: &DivisorSpec) -> Result<VolumeProfile> {
    let p = place(m, spec)?;
    match spec {
        DivisorSpec::Class(_) => volume_profile_class(p.model, &p.l, &p.e),
        _ => volume_profile(p.model, &p.l, &p.e, &p.e_label),
    }
}

/// `S(E) = (1/L²)·∫₀^τ vol(L − tE) dt`.
pub fn s_value(m: &SurfaceModel, spec: &DivisorSpec) -> Result<Rat> {
    let vp = profile_for(m, spec)?;
    let l2 = vp.profile.eval(&Rat::zero())?;
    Ok(vp.profile.integrate_all() / l2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Beta {
    pub a: Rat,
    pub s: Rat,
    pub beta: Rat,
    /// `δ(E) = A/S`.
    pub delta: Rat,
}

pub fn beta(m: &SurfaceModel, spec: &DivisorSpec) -> Result<Beta> {
    let a = a_value(m, spec)?;
    let s = s_value(m, spec)?;
    Ok(Beta { beta: &a - &s, delta: &a / &s, a, s })
}

/// The candidate with the most negative `β`, earliest on ties; absent if
/// every `β ≥ 0`.
pub fn unstable_certificate(
    m: &SurfaceModel,
    candidates: &[DivisorSpec],
) -> Result<Option<(DivisorSpec, Rat)>> {
    let mut worst: Option<(DivisorSpec, Rat)> = None;
    for c in candidates {
        let b = beta(m, c)?.beta;
        if b.is_negative() && worst.as_ref().is_none_or(|(_, w)| b < *w) {
            worst = Some((c.clone(), b));
        }
    }
    Ok(worst)
}

/// Every catalogued prime divisor of the model: cone generators, named
/// curves, boundary components, then extractions.
pub fn catalogued_divisors(m: &SurfaceModel) -> Vec<DivisorSpec> {
    m.curve_labels()
        .into_iter()
        .map(DivisorSpec::Curve)
        .chain(m.extractions.iter().map(|x| DivisorSpec::Exceptional(x.label.clone())))
        .collect()
}

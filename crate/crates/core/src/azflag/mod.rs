//! Adjunction bounds for `δ_p` of a log del Pezzo pair from a flag
//! `p ∈ E`: the quotient `A(E)/S(E)` and the restricted invariant
//! `S(W^E; p)` computed from the Zariski chambers of `L − uE`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Poly, Rat};
use crate::lattice::{Catalog, SurfaceModel};
use crate::positivity::{volume_profile, Chamber};
use crate::valuative::{a_value, catalogued_divisors, place, unstable_certificate, DivisorSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySetting {
    pub label: String,
    pub coefficient: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    /// A general point of `E`.
    Generic,
    /// A point in the support of the different `Δ_E`.
    Different,
    /// A point lying on the negative part `N(u)` for some `u`.
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagPoint {
    pub label: String,
    pub kind: PointKind,
    /// Local intersection multiplicity at the point of `E` with each curve
    /// of the negative part passing through it.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub incidences: Vec<(String, Rat)>,
    /// Point classes of the surface represented by this point.
    #[serde(default)]
    pub covers: Vec<String>,
}

/// A flag `p ∈ E` over a pair `(X, Δ)` with its precomputed chamber data.
///
/// `base` is the model carrying `E` as a curve: `X` itself or the target
/// of the extraction. Chamber classes are written in its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagSpec {
    pub name: String,
    pub surface: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<BoundarySetting>,
    pub divisor: String,
    pub base: String,
    pub a_e: Rat,
    pub vol_l: Rat,
    pub tau: Rat,
    pub chambers: Vec<Chamber>,
    /// Coefficients of the different `Δ_E` at labelled points.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub different: Vec<(String, Rat)>,
    pub points: Vec<FlagPoint>,
    /// The caller vouches that `E` is of plt type.
    #[serde(default)]
    pub plt_asserted: bool,
}

/// The pair `(X, Δ)` a flag lives on.
pub fn flag_surface(cat: &Catalog, surface: &str, boundary: &[BoundarySetting]) -> Result<SurfaceModel> {
    let mut m = (*cat.model(surface)?).clone();
    for b in boundary {
        m = m.with_boundary(&b.label, b.coefficient.clone())?;
    }
    Ok(m)
}

impl FlagSpec {
    /// Builds the chamber data from the positivity module.
    pub fn derive(
        cat: &Catalog,
        name: &str,
        surface: &str,
        boundary: Vec<BoundarySetting>,
        divisor: &str,
        different: Vec<(String, Rat)>,
        points: Vec<FlagPoint>,
    ) -> Result<FlagSpec> {
        let x = flag_surface(cat, surface, &boundary)?;
        let spec = DivisorSpec::named(&x, divisor)?;
        let placed = place(&x, &spec)?;
        let vp = volume_profile(placed.model, &placed.l, &placed.e, &placed.e_label)?;
        let flag = FlagSpec {
            name: name.to_string(),
            surface: x.name.clone(),
            boundary,
            divisor: divisor.to_string(),
            base: placed.model.name.clone(),
            a_e: a_value(&x, &spec)?,
            vol_l: vp.l_squared(),
            tau: vp.tau,
            chambers: vp.chambers,
            different,
            points,
            plt_asserted: true,
        };
        flag.check()?;
        Ok(flag)
    }

    /// Structural invariants of the flag data.
    pub fn check(&self) -> Result<()> {
        let bad = |r: String| Err(Error::InvalidInput(format!("flag {}: {r}", self.name)));
        if !self.a_e.is_positive() {
            return bad(format!("A_E = {} is not positive", self.a_e));
        }
        if !self.vol_l.is_positive() {
            return bad("vol(L) must be positive".into());
        }
        for (p, c) in &self.different {
            if c.is_negative() || *c >= Rat::one() {
                return bad(format!("different coefficient {c} at {p} outside [0, 1)"));
            }
        }
        let mut at = Rat::zero();
        for ch in &self.chambers {
            if ch.from != at || ch.to <= ch.from {
                return bad(format!("chambers are not contiguous at {at}"));
            }
            for u in [&ch.from, &ch.to] {
                if ch.e_degree.eval(u).is_negative() {
                    return bad(format!("P(u).E < 0 at u = {u}"));
                }
                if ch.negative.iter().any(|n| n.coeff.eval(u).is_negative()) {
                    return bad(format!("negative N(u) coefficient at u = {u}"));
                }
            }
            at = ch.to.clone();
        }
        if at != self.tau {
            return bad(format!("chambers end at {at}, not at tau = {}", self.tau));
        }
        if self.mass() != self.vol_l {
            return bad(format!("2∫P(u)·E du = {} differs from vol(L) = {}", self.mass(), self.vol_l));
        }
        Ok(())
    }

    /// `2∫₀^τ P(u)·E du`, which equals `vol(L)`.
    pub fn mass(&self) -> Rat {
        let total: Rat = self
            .chambers
            .iter()
            .map(|c| c.e_degree.integrate(&c.from, &c.to).expect("ordered chamber"))
            .sum();
        Rat::int(2) * total
    }

    /// `S(E) = (2/vol L)·∫₀^τ u·(P(u)·E) du`, by parts from the profile.
    pub fn s_e(&self) -> Rat {
        let u = Poly::linear(Rat::zero(), Rat::one());
        let total: Rat = self
            .chambers
            .iter()
            .map(|c| (&u * &c.e_degree).integrate(&c.from, &c.to).expect("ordered chamber"))
            .sum();
        Rat::int(2) * total / &self.vol_l
    }

    pub fn point(&self, label: &str) -> Result<&FlagPoint> {
        self.points.iter().find(|p| p.label == label).ok_or_else(|| {
            Error::InvalidInput(format!("flag {} has no point {label}", self.name))
        })
    }

    /// `ord_p Δ_E`.
    pub fn different_at(&self, label: &str) -> Rat {
        self.different.iter().find(|(p, _)| p == label).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Copy with every negative-part correction at points removed.
    pub fn without_negative_correction(&self) -> FlagSpec {
        let mut f = self.clone();
        for p in &mut f.points {
            p.incidences.clear();
            if p.kind == PointKind::Negative {
                p.kind = PointKind::Generic;
            }
        }
        f
    }
}

/// `S(W^E; p) = (2/vol L)·Σ ∫ [d(u)·ord_p(N(u)|_E) + d(u)²/2] du` with
/// `d(u) = P(u)·E`.
pub fn restricted_s(flag: &FlagSpec, p: &str) -> Result<Rat> {
    let pt = flag.point(p)?;
    if pt.kind == PointKind::Negative {
        let touches = flag
            .chambers
            .iter()
            .flat_map(|c| &c.negative)
            .any(|n| pt.incidences.iter().any(|(l, _)| *l == n.label));
        if !touches {
            return Err(Error::MissingNegativeRestriction(p.to_string()));
        }
    }
    let half = Rat::new(1, 2);
    let mut total = Rat::zero();
    for c in &flag.chambers {
        let d = &c.e_degree;
        let mut ord_n = Poly::zero();
        for n in &c.negative {
            if let Some((_, mult)) = pt.incidences.iter().find(|(l, _)| *l == n.label) {
                ord_n = &ord_n + &n.coeff.scale(mult);
            }
        }
        let integrand = &(d * &ord_n) + &(d * d).scale(&half);
        total += integrand.integrate(&c.from, &c.to)?;
    }
    Ok(Rat::int(2) * total / &flag.vol_l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointBound {
    pub flag: String,
    pub point: String,
    pub a_over_s: Rat,
    pub numerator: Rat,
    pub s_w: Rat,
    pub bound: Rat,
}

/// `δ_p ≥ min(A_E/S(E), (1 − ord_p Δ_E)/S(W^E; p))`.
pub fn delta_p_lower_bound(flag: &FlagSpec, p: &str) -> Result<PointBound> {
    let a_over_s = &flag.a_e / &flag.s_e();
    let numerator = Rat::one() - flag.different_at(p);
    let s_w = restricted_s(flag, p)?;
    let second = &numerator / &s_w;
    Ok(PointBound {
        flag: flag.name.clone(),
        point: p.to_string(),
        bound: a_over_s.clone().min(second),
        a_over_s,
        numerator,
        s_w,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassBound {
    pub point_class: String,
    pub best: PointBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemistableReport {
    pub surface: String,
    pub semistable: bool,
    /// A divisor with `β < 0`, if one was found among the catalogued ones.
    pub destabilizer: Option<(String, Rat)>,
    pub classes: Vec<ClassBound>,
    pub assumptions: Vec<String>,
}

/// K-semistability via flags: fails fast on a catalogued destabilizer,
/// otherwise needs a flag point covering each point class with bound `≥ 1`.
pub fn semistable_via_flags(m: &SurfaceModel, flags: &[&FlagSpec]) -> Result<SemistableReport> {
    if let Some((spec, beta)) = unstable_certificate(m, &catalogued_divisors(m))? {
        return Ok(SemistableReport {
            surface: m.name.clone(),
            semistable: false,
            destabilizer: Some((spec.label(), beta)),
            classes: Vec::new(),
            assumptions: Vec::new(),
        });
    }
    for f in flags {
        let matches = f.boundary.iter().all(|b| m.boundary_coefficient(&b.label) == b.coefficient)
            && m.boundary.iter().all(|b| {
                b.coefficient.is_zero()
                    || f.boundary.iter().any(|s| s.label == b.label && s.coefficient == b.coefficient)
            });
        if !matches {
            return Err(Error::InvalidInput(format!("flag {} is for a different boundary", f.name)));
        }
    }
    let mut assumptions = Vec::new();
    let mut classes = Vec::new();
    if m.point_classes.is_empty() {
        return Err(Error::UncoveredPointClass(format!("{} declares no point classes", m.name)));
    }
    for pc in &m.point_classes {
        let mut best: Option<PointBound> = None;
        for f in flags {
            for p in f.points.iter().filter(|p| p.covers.contains(pc)) {
                let b = delta_p_lower_bound(f, &p.label)?;
                assumptions.push(format!("{pc}: covered by {} at {} (coverage asserted)", f.name, p.label));
                if best.as_ref().is_none_or(|cur| b.bound > cur.bound) {
                    best = Some(b);
                }
            }
        }
        let best = best.ok_or_else(|| Error::UncoveredPointClass(pc.clone()))?;
        classes.push(ClassBound { point_class: pc.clone(), best });
    }
    for f in flags {
        if !f.plt_asserted {
            assumptions.push(format!("{}: plt type of {} not asserted; bound used at user risk", f.name, f.divisor));
        }
    }
    Ok(SemistableReport {
        surface: m.name.clone(),
        semistable: classes.iter().all(|c| c.best.bound >= Rat::one()),
        destabilizer: None,
        classes,
        assumptions,
    })
}

use serde::{Deserialize, Serialize};

use super::zariski::{germ_zariski, AffineClass, NegTerm};
use crate::error::{Error, Result};
use crate::exactnum::{PieceReport, PiecewisePoly, Poly, Rat};
use crate::lattice::{is_nef, DivClass, SurfaceModel};

/// One interval of constant negative-part support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub from: Rat,
    pub to: Rat,
    /// `P(t)·E`, linear in `t`.
    pub e_degree: Poly,
    pub positive: AffineClass,
    pub negative: Vec<NegTerm>,
}

impl Chamber {
    pub fn support(&self) -> Vec<&str> {
        self.negative.iter().map(|n| n.label.as_str()).collect()
    }
}

/// `t ↦ vol(L − tE)` on `[0, τ]`, zero beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeProfile {
    pub profile: PiecewisePoly,
    pub tau: Rat,
    pub chambers: Vec<Chamber>,
}

#[derive(Serialize)]
pub struct ProfileReport<'a> {
    pub pieces: Vec<PieceReport>,
    pub tau: &'a Rat,
    pub chambers: Vec<ChamberReport>,
}

#[derive(Serialize)]
pub struct ChamberReport {
    pub from: Rat,
    pub to: Rat,
    pub negative_support: Vec<String>,
}

impl VolumeProfile {
    pub fn volume_at(&self, t: &Rat) -> Result<Rat> {
        if t.is_negative() {
            return Err(Error::Domain(format!("t = {t} < 0")));
        }
        if t > &self.tau {
            return Ok(Rat::zero());
        }
        self.profile.eval(t)
    }

    pub fn l_squared(&self) -> Rat {
        self.profile.eval(&Rat::zero()).expect("0 in domain")
    }

    pub fn report(&self) -> ProfileReport<'_> {
        ProfileReport {
            pieces: self.profile.to_report(),
            tau: &self.tau,
            chambers: self
                .chambers
                .iter()
                .map(|c| ChamberReport {
                    from: c.from.clone(),
                    to: c.to.clone(),
                    negative_support: c.support().into_iter().map(String::from).collect(),
                })
                .collect(),
        }
    }
}

/// Exact profile of `vol(L − tE)` for `E` a catalogued curve on `m`.
pub fn volume_profile(m: &SurfaceModel, l: &DivClass, e: &DivClass, e_label: &str) -> Result<VolumeProfile> {
    match m.curve(e_label) {
        Some(c) if &c == e => {}
        Some(_) => {
            return Err(Error::InvalidInput(format!("class given for {e_label} differs from the catalogue")));
        }
        None => {
            return Err(Error::UnknownDivisor { model: m.name.clone(), divisor: e_label.to_string() });
        }
    }
    volume_profile_class(m, l, e)
}

/// As [`volume_profile`] for an arbitrary effective class `E`.
pub fn volume_profile_class(m: &SurfaceModel, l: &DivClass, e: &DivClass) -> Result<VolumeProfile> {
    m.check_rank(l)?;
    m.check_rank(e)?;
    let l2 = m.intersect(l, l)?;
    if !is_nef(m, l) || !l2.is_positive() {
        return Err(Error::NotBigAndNef(m.format_class(l)));
    }
    if e.is_zero() {
        return Err(Error::InvalidInput("E is the zero class".into()));
    }
    if m.rank() == 1 {
        return rank_one_profile(m, l, e, l2);
    }
    chamber_walk(m, l, e)
}

/// Rank one: `L − tE` is a multiple of the generator, so
/// `vol = (1 − t/τ)²·L²` with `τ = L/E`.
fn rank_one_profile(m: &SurfaceModel, l: &DivClass, e: &DivClass, l2: Rat) -> Result<VolumeProfile> {
    let (lc, ec) = (&l.coeffs()[0], &e.coeffs()[0]);
    if !ec.is_positive() {
        return Err(Error::InvalidInput(format!("{} is not effective", m.format_class(e))));
    }
    let tau = lc / ec;
    // L²(1 − t/τ)²
    let inv = tau.recip().expect("tau > 0");
    let piece = Poly::new(vec![l2.clone(), Rat::int(-2) * &l2 * &inv, &l2 * inv.pow(2)]);
    let positive = AffineClass::ray(l, e);
    let chamber = Chamber {
        from: Rat::zero(),
        to: tau.clone(),
        e_degree: positive.pair(m, e),
        positive,
        negative: Vec::new(),
    };
    Ok(VolumeProfile {
        profile: PiecewisePoly::single(Rat::zero(), tau.clone(), piece)?,
        tau,
        chambers: vec![chamber],
    })
}

/// Smallest root `> t0` of a linear function decreasing through zero.
fn next_root(p: &Poly, t0: &Rat) -> Option<Rat> {
    let (a, b) = (p.coeff(0), p.coeff(1));
    if !b.is_negative() {
        return None;
    }
    let r = -a / b;
    (r > *t0).then_some(r)
}

fn chamber_walk(m: &SurfaceModel, l: &DivClass, e: &DivClass) -> Result<VolumeProfile> {
    let family = AffineClass::ray(l, e);
    let mut t0 = Rat::zero();
    let mut chambers: Vec<Chamber> = Vec::new();
    let cap = 4 * (m.neg_curves.len() + m.extra_generators.len()) + 8;
    loop {
        if chambers.len() > cap {
            return Err(Error::ConeDataIncomplete(format!("chamber walk on {} did not terminate", m.name)));
        }
        let germ = match germ_zariski(m, &family, &t0) {
            Ok(g) => g,
            Err(Error::NotPseudoEffective(_)) => break,
            Err(err) => return Err(err),
        };
        let in_support = |label: &str| germ.negative.iter().any(|n| n.label == label);
        let mut events: Vec<Rat> = m
            .cone_generators()
            .filter(|c| !in_support(&c.label))
            .filter_map(|c| next_root(&germ.positive.pair(m, &c.class), &t0))
            .collect();
        events.extend(germ.negative.iter().filter_map(|n| next_root(&n.coeff, &t0)));
        let Some(t1) = events.into_iter().min() else {
            return Err(Error::ConeDataIncomplete(format!(
                "{} minus multiples of {} stays pseudoeffective",
                m.format_class(l),
                m.format_class(e)
            )));
        };
        chambers.push(Chamber {
            from: t0.clone(),
            to: t1.clone(),
            e_degree: germ.positive.pair(m, e),
            positive: germ.positive,
            negative: germ.negative,
        });
        t0 = t1;
    }
    if chambers.is_empty() {
        return Err(Error::NotBigAndNef(m.format_class(l)));
    }
    let chambers = merge(chambers);
    let mut breakpoints = vec![chambers[0].from.clone()];
    let mut pieces = Vec::new();
    for c in &chambers {
        breakpoints.push(c.to.clone());
        pieces.push(c.positive.square(m));
    }
    Ok(VolumeProfile { profile: PiecewisePoly::new(breakpoints, pieces)?, tau: t0, chambers })
}

/// Joins neighbours that only differ by a spurious breakpoint.
fn merge(chambers: Vec<Chamber>) -> Vec<Chamber> {
    let mut out: Vec<Chamber> = Vec::new();
    for c in chambers {
        if let Some(prev) = out.last_mut() {
            if prev.positive == c.positive && prev.negative == c.negative {
                prev.to = c.to;
                continue;
            }
        }
        out.push(c);
    }
    out
}

/// `τ(L, E)`, the pseudoeffective threshold.
pub fn pseff_threshold(m: &SurfaceModel, l: &DivClass, e: &DivClass, e_label: &str) -> Result<Rat> {
    Ok(volume_profile(m, l, e, e_label)?.tau)
}

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, PseffCertificate, Result};
use crate::exactnum::{linalg, Poly, Rat};
use crate::lattice::{DivClass, SurfaceModel};

/// The class `constant + t·slope`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineClass {
    pub constant: DivClass,
    pub slope: DivClass,
}

impl AffineClass {
    pub fn fixed(d: DivClass) -> Self {
        let slope = DivClass::zero(d.rank());
        AffineClass { constant: d, slope }
    }

    /// `l − t·e`.
    pub fn ray(l: &DivClass, e: &DivClass) -> Self {
        AffineClass { constant: l.clone(), slope: -e }
    }

    pub fn at(&self, t: &Rat) -> DivClass {
        self.constant.add_scaled(&self.slope, t)
    }

    /// `(self·c)(t)` as a polynomial of degree at most one.
    pub fn pair(&self, m: &SurfaceModel, c: &DivClass) -> Poly {
        Poly::linear(m.dot(&self.constant, c), m.dot(&self.slope, c))
    }

    /// `self(t)²` as a polynomial of degree at most two.
    pub fn square(&self, m: &SurfaceModel) -> Poly {
        let (c, s) = (&self.constant, &self.slope);
        Poly::new(vec![m.dot(c, c), Rat::int(2) * m.dot(c, s), m.dot(s, s)])
    }
}

/// A component of a negative part with coefficient linear in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegTerm {
    pub label: String,
    pub class: DivClass,
    pub coeff: Poly,
}

/// Zariski decomposition of an affine family, valid on `[t₀, t₀ + ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermDecomp {
    pub positive: AffineClass,
    pub negative: Vec<NegTerm>,
}

fn germ_negative(p: &Poly, t0: &Rat) -> bool {
    p.right_sign(t0) == Ordering::Less
}

fn not_pseff(c: PseffCertificate) -> Error {
    Error::NotPseudoEffective(c)
}

/// Iterative Zariski decomposition of `d(t)` for `t` just to the right of
/// `t0`, comparing linear functions by their right germs. With a constant
/// family this is the ordinary decomposition at any `t0`.
pub fn germ_zariski(m: &SurfaceModel, d: &AffineClass, t0: &Rat) -> Result<GermDecomp> {
    m.check_rank(&d.constant)?;
    m.check_rank(&d.slope)?;
    let curves = &m.neg_curves;
    let mut support: Vec<usize> = Vec::new();
    let mut positive = d.clone();
    let mut coeffs: Vec<Poly> = Vec::new();
    let cap = curves.len() + 1;
    let mut converged = false;
    for _ in 0..cap {
        if !support.is_empty() {
            let gram: linalg::Matrix = support
                .iter()
                .map(|&i| support.iter().map(|&j| m.dot(&curves[i].class, &curves[j].class)).collect())
                .collect();
            if !linalg::is_negative_definite(&gram) {
                return Err(not_pseff(PseffCertificate::IndefiniteSupport {
                    curves: support.iter().map(|&i| curves[i].label.clone()).collect(),
                }));
            }
            let r0: Vec<Rat> = support.iter().map(|&i| m.dot(&d.constant, &curves[i].class)).collect();
            let r1: Vec<Rat> = support.iter().map(|&i| m.dot(&d.slope, &curves[i].class)).collect();
            let x0 = linalg::solve(&gram, &r0)?;
            let x1 = linalg::solve(&gram, &r1)?;
            let mut c = d.constant.clone();
            let mut s = d.slope.clone();
            coeffs.clear();
            for (k, &i) in support.iter().enumerate() {
                c = c.add_scaled(&curves[i].class, &-&x0[k]);
                s = s.add_scaled(&curves[i].class, &-&x1[k]);
                coeffs.push(Poly::linear(x0[k].clone(), x1[k].clone()));
            }
            positive = AffineClass { constant: c, slope: s };
        }
        let fresh: Vec<usize> = (0..curves.len())
            .filter(|i| !support.contains(i))
            .filter(|&i| germ_negative(&positive.pair(m, &curves[i].class), t0))
            .collect();
        if fresh.is_empty() {
            converged = true;
            break;
        }
        support.extend(fresh);
    }
    if !converged {
        return Err(Error::ConeDataIncomplete(format!(
            "Zariski iteration on {} did not settle within {cap} rounds",
            m.name
        )));
    }
    for (k, &i) in support.iter().enumerate() {
        if germ_negative(&coeffs[k], t0) {
            return Err(not_pseff(PseffCertificate::NegativeCoefficient {
                curve: curves[i].label.clone(),
                value: coeffs[k].eval(t0),
            }));
        }
    }
    for c in &m.extra_generators {
        let v = positive.pair(m, &c.class);
        if germ_negative(&v, t0) {
            return Err(not_pseff(PseffCertificate::NefCurve { curve: c.label.clone(), value: v.eval(t0) }));
        }
    }
    let negative = support
        .iter()
        .zip(coeffs)
        .map(|(&i, coeff)| NegTerm { label: curves[i].label.clone(), class: curves[i].class.clone(), coeff })
        .collect();
    Ok(GermDecomp { positive, negative })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZariskiDecomp {
    pub positive: DivClass,
    pub negative: Vec<(String, Rat)>,
    pub gram_cert: linalg::Matrix,
}

impl ZariskiDecomp {
    pub fn negative_class(&self, m: &SurfaceModel) -> DivClass {
        self.negative.iter().fold(DivClass::zero(m.rank()), |acc, (l, c)| {
            acc.add_scaled(&m.curve(l).expect("catalogued support"), c)
        })
    }
}

/// `d = P + N` with `P` nef, `N ≥ 0` on a negative definite support and
/// `P·N_i = 0`.
pub fn zariski(m: &SurfaceModel, d: &DivClass) -> Result<ZariskiDecomp> {
    let g = germ_zariski(m, &AffineClass::fixed(d.clone()), &Rat::zero())?;
    let negative: Vec<(String, Rat)> = g
        .negative
        .iter()
        .map(|n| (n.label.clone(), n.coeff.eval(&Rat::zero())))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let classes: Vec<DivClass> = negative.iter().map(|(l, _)| m.curve(l).expect("support")).collect();
    let gram_cert = classes.iter().map(|a| classes.iter().map(|b| m.dot(a, b)).collect()).collect();
    let positive = d - &g.negative.iter().fold(DivClass::zero(m.rank()), |acc, n| {
        acc.add_scaled(&n.class, &n.coeff.eval(&Rat::zero()))
    });
    Ok(ZariskiDecomp { positive, negative, gram_cert })
}

/// Independent re-check of a decomposition against its input.
pub fn verify_zariski(m: &SurfaceModel, d: &DivClass, z: &ZariskiDecomp) -> Result<(), String> {
    if &(&z.positive + &z.negative_class(m)) != d {
        return Err("P + N differs from the input".into());
    }
    for c in m.cone_generators() {
        if m.dot(&z.positive, &c.class).is_negative() {
            return Err(format!("P.{} < 0", c.label));
        }
    }
    for (l, coeff) in &z.negative {
        if coeff.is_negative() {
            return Err(format!("negative coefficient on {l}"));
        }
        let c = m.curve(l).ok_or_else(|| format!("unknown support curve {l}"))?;
        if !m.dot(&z.positive, &c).is_zero() {
            return Err(format!("P.{l} != 0"));
        }
    }
    let classes: Vec<DivClass> = z.negative.iter().map(|(l, _)| m.curve(l).expect("checked")).collect();
    let gram: linalg::Matrix = classes.iter().map(|a| classes.iter().map(|b| m.dot(a, b)).collect()).collect();
    if gram != z.gram_cert {
        return Err("gram certificate does not match the support".into());
    }
    if !gram.is_empty() && !linalg::is_negative_definite(&gram) {
        return Err("support is not negative definite".into());
    }
    Ok(())
}

/// `vol(d) = P²`, and `0` off the pseudoeffective cone.
pub fn volume(m: &SurfaceModel, d: &DivClass) -> Result<Rat> {
    match zariski(m, d) {
        Ok(z) => Ok(m.dot(&z.positive, &z.positive)),
        Err(Error::NotPseudoEffective(_)) => Ok(Rat::zero()),
        Err(e) => Err(e),
    }
}

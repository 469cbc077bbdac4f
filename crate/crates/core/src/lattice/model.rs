use std::sync::Arc;

use super::class::{BoundaryComponent, Curve, DivClass};
use crate::error::{Error, Result};
use crate::exactnum::{linalg, Rat};
use crate::localvol::QuotientSing;
use crate::valuative::ResolutionGraph;

/// A quotient singularity at a named location of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingPoint {
    pub location: String,
    pub sing: QuotientSing,
}

/// A divisor over `X` extracted on another catalogued model `Y → X`.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub label: String,
    pub target: Arc<SurfaceModel>,
    /// Image of each basis element of `X` under pullback, in `Y`'s basis.
    pub pullback: Vec<DivClass>,
    /// Label of the extracted curve on the target model.
    pub exceptional: String,
    /// Dual graph of the exceptional locus of `Y → X`.
    pub graph: ResolutionGraph,
    pub exceptional_vertex: usize,
    /// Intersection numbers of each boundary component's strict transform
    /// with the exceptional vertices.
    pub boundary_incidence: Vec<(String, Vec<u32>)>,
}

impl Extraction {
    pub fn pull_back(&self, d: &DivClass) -> DivClass {
        let rank = self.target.rank();
        d.coeffs()
            .iter()
            .zip(&self.pullback)
            .fold(DivClass::zero(rank), |acc, (c, img)| acc.add_scaled(img, c))
    }

    /// A single smooth rational `(-1)`-curve: the blow-up of a smooth point.
    pub fn is_smooth_point_blowup(&self) -> bool {
        let v = &self.graph.vertices;
        v.len() == 1 && v[0].genus == 0 && v[0].self_int == -1
    }
}

/// Picard-lattice model of a surface (or pair).
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub name: String,
    pub aliases: Vec<String>,
    pub basis: Vec<String>,
    pub gram: linalg::Matrix,
    pub canonical: DivClass,
    /// Negative curves among the Mori cone generators.
    pub neg_curves: Vec<Curve>,
    /// Mori cone generators of nonnegative self-intersection (fibers,
    /// rulings, lines).
    pub extra_generators: Vec<Curve>,
    /// Further prime curves that may serve as divisors `E`.
    pub named_curves: Vec<Curve>,
    pub boundary: Vec<BoundaryComponent>,
    pub sings: Vec<SingPoint>,
    pub point_classes: Vec<String>,
    pub extractions: Vec<Extraction>,
    /// Number of general points blown up, for del Pezzo blow-ups of the plane.
    pub del_pezzo_points: Option<usize>,
}

impl SurfaceModel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn check_rank(&self, d: &DivClass) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: d.rank() });
        }
        Ok(())
    }

    pub fn intersect(&self, a: &DivClass, b: &DivClass) -> Result<Rat> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(linalg::bilinear(a.coeffs(), &self.gram, b.coeffs()))
    }

    pub(crate) fn dot(&self, a: &DivClass, b: &DivClass) -> Rat {
        linalg::bilinear(a.coeffs(), &self.gram, b.coeffs())
    }

    pub fn anticanonical(&self) -> DivClass {
        -&self.canonical
    }

    pub fn boundary_class(&self) -> DivClass {
        self.boundary
            .iter()
            .fold(DivClass::zero(self.rank()), |acc, b| acc.add_scaled(&b.class, &b.coefficient))
    }

    /// `L = -K_X - Δ`.
    pub fn log_anticanonical(&self) -> DivClass {
        &self.anticanonical() - &self.boundary_class()
    }

    /// Generators of the Mori cone.
    pub fn cone_generators(&self) -> impl Iterator<Item = &Curve> {
        self.neg_curves.iter().chain(&self.extra_generators)
    }

    /// Any catalogued prime curve by label.
    pub fn curve(&self, label: &str) -> Option<DivClass> {
        self.cone_generators()
            .chain(&self.named_curves)
            .find(|c| c.label == label)
            .map(|c| c.class.clone())
            .or_else(|| {
                self.boundary
                    .iter()
                    .find(|b| b.label == label)
                    .map(|b| b.class.clone())
            })
    }

    pub fn curve_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for l in self
            .cone_generators()
            .chain(&self.named_curves)
            .map(|c| c.label.clone())
            .chain(self.boundary.iter().map(|b| b.label.clone()))
        {
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }

    pub fn extraction(&self, label: &str) -> Option<&Extraction> {
        self.extractions.iter().find(|e| e.label == label)
    }

    pub fn boundary_coefficient(&self, label: &str) -> Rat {
        self.boundary
            .iter()
            .find(|b| b.label == label)
            .map(|b| b.coefficient.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Copy of the model with `label` (a named curve or existing boundary
    /// component) carried in the boundary with the given coefficient.
    pub fn with_boundary(&self, label: &str, coefficient: Rat) -> Result<SurfaceModel> {
        if coefficient.is_negative() || coefficient >= Rat::one() {
            return Err(Error::InvalidInput(format!(
                "boundary coefficient {coefficient} outside [0, 1)"
            )));
        }
        let class = self.curve(label).ok_or_else(|| Error::UnknownDivisor {
            model: self.name.clone(),
            divisor: label.to_string(),
        })?;
        let mut m = self.clone();
        match m.boundary.iter_mut().find(|b| b.label == label) {
            Some(b) => b.coefficient = coefficient,
            None => m.boundary.push(BoundaryComponent { label: label.to_string(), class, coefficient }),
        }
        Ok(m)
    }

    /// Renders a class as a linear expression in the basis labels.
    pub fn format_class(&self, d: &DivClass) -> String {
        let mut out = String::new();
        for (c, label) in d.coeffs().iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != Rat::one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Every violated structural invariant, as human-readable strings.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let rho = self.rank();
        if rho == 0 {
            v.push("rank must be positive".into());
            return v;
        }
        if self.gram.len() != rho || !linalg::is_square(&self.gram) {
            v.push(format!("gram must be {rho}x{rho}"));
            return v;
        }
        if !linalg::is_symmetric(&self.gram) {
            v.push("gram is not symmetric".into());
        } else {
            match linalg::signature(&self.gram) {
                Ok((1, n, 0)) if n == rho - 1 => {}
                Ok(sig) => v.push(format!("gram signature {sig:?} is not (1, {}, 0)", rho - 1)),
                Err(e) => v.push(e.to_string()),
            }
        }
        let mut classes: Vec<(&str, &DivClass)> = vec![("canonical", &self.canonical)];
        classes.extend(self.cone_generators().chain(&self.named_curves).map(|c| (c.label.as_str(), &c.class)));
        classes.extend(self.boundary.iter().map(|b| (b.label.as_str(), &b.class)));
        for (label, c) in &classes {
            if c.rank() != rho {
                v.push(format!("class {label} has rank {} (expected {rho})", c.rank()));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for c in &self.neg_curves {
            let sq = self.dot(&c.class, &c.class);
            if !sq.is_negative() {
                v.push(format!("negative curve {} has self-intersection {sq}", c.label));
            }
        }
        if let Some(k) = self.del_pezzo_points {
            let ak = self.anticanonical();
            let deg = self.dot(&ak, &ak);
            if deg != Rat::int(9 - k as i64) {
                v.push(format!("degree {deg} != 9 - {k}"));
            }
            for c in &self.neg_curves {
                let kc = self.dot(&ak, &c.class);
                let sq = self.dot(&c.class, &c.class);
                if kc != Rat::one() || sq != Rat::int(-1) {
                    v.push(format!("{} is not a (-1)-curve (-K.C = {kc}, C^2 = {sq})", c.label));
                }
            }
        }
        for b in &self.boundary {
            if b.coefficient.is_negative() || b.coefficient >= Rat::one() {
                v.push(format!("boundary {} coefficient {} outside [0,1)", b.label, b.coefficient));
            }
        }
        for s in &self.sings {
            if let Err(e) = s.sing.validate() {
                v.push(format!("singularity at {}: {e}", s.location));
            }
        }
        for x in &self.extractions {
            v.extend(self.extraction_violations(x));
        }
        v
    }

    fn extraction_violations(&self, x: &Extraction) -> Vec<String> {
        let mut v = Vec::new();
        let y = &x.target;
        if x.pullback.len() != self.rank() || x.pullback.iter().any(|d| d.rank() != y.rank()) {
            v.push(format!("extraction {}: pullback has wrong shape", x.label));
            return v;
        }
        let Some(e) = y.curve(&x.exceptional) else {
            v.push(format!("extraction {}: {} not on {}", x.label, x.exceptional, y.name));
            return v;
        };
        for i in 0..self.rank() {
            let pi = &x.pullback[i];
            if !y.dot(pi, &e).is_zero() {
                v.push(format!("extraction {}: pullback of {} meets the exceptional", x.label, self.basis[i]));
            }
            for j in 0..self.rank() {
                if y.dot(pi, &x.pullback[j]) != self.gram[i][j] {
                    v.push(format!(
                        "extraction {}: pullback does not preserve {}.{}",
                        x.label, self.basis[i], self.basis[j]
                    ));
                }
            }
        }
        match x.graph.vertices.get(x.exceptional_vertex) {
            Some(vx) if Rat::int(vx.self_int) == y.dot(&e, &e) => {}
            _ => v.push(format!("extraction {}: graph vertex does not match E^2", x.label)),
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel { model: self.name.clone(), reason: v.join("; ") })
        }
    }
}

/// `d1 · d2` on `m`.
pub fn intersect(m: &SurfaceModel, d1: &DivClass, d2: &DivClass) -> Result<Rat> {
    m.intersect(d1, d2)
}

/// True iff `d · C >= 0` for every listed Mori cone generator.
pub fn is_nef(m: &SurfaceModel, d: &DivClass) -> bool {
    m.cone_generators().all(|c| !m.dot(d, &c.class).is_negative())
}

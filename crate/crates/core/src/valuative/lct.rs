use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{gcd, Poly, Rat};

/// Germ of a plane curve `f = Σ c_{ij} x^i y^j` at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneCurveGerm {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl PlaneCurveGerm {
    /// Drops zero coefficients; rejects an empty support and germs that do
    /// not vanish at the origin.
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert_with(Rat::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut Rat| !c.is_zero());
        if map.is_empty() {
            return Err(Error::InvalidInput("germ has empty support".into()));
        }
        if map.contains_key(&(0, 0)) {
            return Err(Error::InvalidInput("germ does not vanish at the origin".into()));
        }
        Ok(PlaneCurveGerm { terms: map })
    }

    pub fn from_ints(terms: &[((u32, u32), i64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(e, c)| (e, Rat::int(c))))
    }

    /// `xⁿ − yⁿ`, the generic configuration of `n` lines through the origin.
    pub fn lines(n: u32) -> Self {
        Self::from_ints(&[((n, 0), 1), ((0, n), -1)]).expect("n >= 1")
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, k: &Rat) -> Result<Self> {
        Self::new(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    /// Support multiplied by `k`, coefficients kept.
    pub fn dilate(&self, k: u32) -> Self {
        PlaneCurveGerm {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i * k, j * k), c.clone())).collect(),
        }
    }

    /// Vertices of the compact part of the Newton polygon, ordered by
    /// increasing `i` (and strictly decreasing `j`).
    pub fn newton_vertices(&self) -> Vec<(u32, u32)> {
        let mut lowest: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, j) in self.support() {
            let e = lowest.entry(i).or_insert(j);
            *e = (*e).min(j);
        }
        let (&end_i, &end_j) = lowest.iter().min_by_key(|(&i, &j)| (j, i)).expect("nonempty");
        let pts: Vec<(i64, i64)> = lowest
            .iter()
            .filter(|(&i, _)| i <= end_i)
            .map(|(&i, &j)| (i as i64, j as i64))
            .collect();
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        debug_assert_eq!(hull.last(), Some(&(end_i as i64, end_j as i64)));
        hull.into_iter().map(|(i, j)| (i as u32, j as u32)).collect()
    }

    /// Diagonal parameter `t₀`: the least `t` with `(t, t)` in the Newton
    /// polyhedron, as `max_w min_{s ∈ supp} (w·s)/(w₁ + w₂)` over the
    /// coordinate weights and the normals of descending pairs of support
    /// points.
    pub fn diagonal_t0(&self) -> Rat {
        let pts: Vec<(u32, u32)> = self.support().collect();
        let mut weights: Vec<(i64, i64)> = vec![(1, 0), (0, 1)];
        for &(i1, j1) in &pts {
            for &(i2, j2) in &pts {
                if i1 < i2 && j1 > j2 {
                    let (w1, w2) = ((j1 - j2) as i64, (i2 - i1) as i64);
                    let g = gcd(w1, w2);
                    weights.push((w1 / g, w2 / g));
                }
            }
        }
        weights.sort_unstable();
        weights.dedup();
        weights
            .into_iter()
            .map(|(w1, w2)| {
                let m = pts.iter().map(|&(i, j)| w1 * i as i64 + w2 * j as i64).min().expect("nonempty");
                Rat::new(m, w1 + w2)
            })
            .max()
            .expect("candidate weights")
    }

    /// Newton nondegeneracy: the restriction of `f` to every compact edge
    /// of its Newton polygon is squarefree on the torus.
    pub fn is_newton_nondegenerate(&self) -> bool {
        let v = self.newton_vertices();
        v.windows(2).all(|w| {
            let ((i1, j1), (i2, j2)) = (w[0], w[1]);
            let (di, dj) = (i2 - i1, j1 - j2);
            let g = gcd(di as i64, dj as i64) as u32;
            let (si, sj) = (di / g, dj / g);
            let coeffs: Vec<Rat> = (0..=g)
                .map(|k| self.terms.get(&(i1 + k * si, j1 - k * sj)).cloned().unwrap_or_else(Rat::zero))
                .collect();
            let h = Poly::new(coeffs);
            h.gcd(&h.derivative()).degree() == Some(0)
        })
    }
}

/// `min(1, 1/t₀)` by the Newton-polygon rule. Degenerate germs are
/// rejected unless `allow_degenerate` is set, since the rule can then
/// overestimate the threshold.
pub fn lct_newton(f: &PlaneCurveGerm, allow_degenerate: bool) -> Result<Rat> {
    if !allow_degenerate && !f.is_newton_nondegenerate() {
        return Err(Error::NewtonDegenerate);
    }
    let t0 = f.diagonal_t0();
    Ok(Rat::one().min(t0.recip().expect("t0 > 0 for a germ vanishing at the origin")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(t: &[((u32, u32), i64)]) -> PlaneCurveGerm {
        PlaneCurveGerm::from_ints(t).unwrap()
    }

    #[test]
    fn classical_values() {
        assert_eq!(lct_newton(&germ(&[((0, 2), 1), ((3, 0), -1)]), false).unwrap(), Rat::new(5, 6));
        assert_eq!(lct_newton(&germ(&[((1, 1), 1)]), false).unwrap(), Rat::one());
        assert_eq!(lct_newton(&germ(&[((0, 2), 1), ((4, 0), -1)]), false).unwrap(), Rat::new(3, 4));
        assert_eq!(lct_newton(&PlaneCurveGerm::lines(1), false).unwrap(), Rat::one());
        for n in 2..7 {
            assert_eq!(lct_newton(&PlaneCurveGerm::lines(n), false).unwrap(), Rat::new(2, n as i64));
        }
        assert_eq!(lct_newton(&germ(&[((2, 0), 1)]), false).unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn degenerate_germ_needs_override() {
        // (y − x²)²: the rule gives 3/4, the true threshold is 1/2.
        let f = germ(&[((0, 2), 1), ((2, 1), -2), ((4, 0), 1)]);
        assert!(!f.is_newton_nondegenerate());
        assert_eq!(lct_newton(&f, false), Err(Error::NewtonDegenerate));
        assert_eq!(lct_newton(&f, true).unwrap(), Rat::new(3, 4));
    }

    #[test]
    fn newton_vertices_skip_interior_points() {
        let f = germ(&[((0, 4), 1), ((1, 3), 1), ((2, 2), 1), ((4, 0), 1), ((3, 3), 1)]);
        assert_eq!(f.newton_vertices(), vec![(0, 4), (4, 0)]);
        let g = germ(&[((0, 5), 1), ((1, 1), 1), ((5, 0), 1)]);
        assert_eq!(g.newton_vertices(), vec![(0, 5), (1, 1), (5, 0)]);
    }

    #[test]
    fn invalid_germs() {
        assert!(PlaneCurveGerm::from_ints(&[]).is_err());
        assert!(PlaneCurveGerm::from_ints(&[((0, 0), 1), ((1, 0), 1)]).is_err());
        assert!(PlaneCurveGerm::from_ints(&[((1, 0), 1), ((1, 0), -1)]).is_err());
    }
}

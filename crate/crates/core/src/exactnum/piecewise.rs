use serde::{Deserialize, Serialize};

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// A continuous function on `[b_0, b_k]` given by one polynomial per
/// interval `[b_i, b_{i+1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
}

/// One interval of a piecewise polynomial in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub from: Rat,
    pub to: Rat,
    pub coeffs: Vec<Rat>,
}

impl PiecewisePoly {
    /// Breakpoints must be strictly increasing, with exactly one piece per
    /// interval, and adjacent pieces must agree at the shared breakpoint.
    pub fn new(breakpoints: Vec<Rat>, pieces: Vec<Poly>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Domain("need at least two breakpoints".into()));
        }
        if pieces.len() != breakpoints.len() - 1 {
            return Err(Error::DimensionMismatch {
                expected: breakpoints.len() - 1,
                found: pieces.len(),
            });
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("breakpoints must be strictly increasing".into()));
        }
        for (i, w) in pieces.windows(2).enumerate() {
            let b = &breakpoints[i + 1];
            if w[0].eval(b) != w[1].eval(b) {
                return Err(Error::Discontinuous(b.clone()));
            }
        }
        Ok(PiecewisePoly { breakpoints, pieces })
    }

    pub fn single(from: Rat, to: Rat, piece: Poly) -> Result<Self> {
        PiecewisePoly::new(vec![from, to], vec![piece])
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    /// `(from, to, piece)` triples in order.
    pub fn intervals(&self) -> impl Iterator<Item = (&Rat, &Rat, &Poly)> {
        self.breakpoints
            .windows(2)
            .zip(&self.pieces)
            .map(|(w, p)| (&w[0], &w[1], p))
    }

    pub fn start(&self) -> &Rat {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &Rat {
        self.breakpoints.last().expect("nonempty")
    }

    fn check_domain(&self, t: &Rat) -> Result<()> {
        if t < self.start() || t > self.end() {
            return Err(Error::Domain(format!(
                "{t} outside [{}, {}]",
                self.start(),
                self.end()
            )));
        }
        Ok(())
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        self.check_domain(t)?;
        let (_, _, p) = self
            .intervals()
            .find(|(_, to, _)| t <= *to)
            .expect("t within domain");
        Ok(p.eval(t))
    }

    /// Exact integral over `[a, b]`, summed over the intersected pieces.
    pub fn integrate(&self, a: &Rat, b: &Rat) -> Result<Rat> {
        if a > b {
            return Err(Error::Domain(format!("integration bounds reversed: [{a}, {b}]")));
        }
        self.check_domain(a)?;
        self.check_domain(b)?;
        let mut total = Rat::zero();
        for (from, to, p) in self.intervals() {
            let lo = if a > from { a } else { from };
            let hi = if b < to { b } else { to };
            if lo < hi {
                total += p.integrate(lo, hi)?;
            }
        }
        Ok(total)
    }

    pub fn integrate_all(&self) -> Rat {
        self.intervals()
            .map(|(a, b, p)| p.integrate(a, b).expect("ordered breakpoints"))
            .sum()
    }

    /// Piecewise derivative (may be discontinuous, so returned as raw pieces).
    pub fn derivative_pieces(&self) -> Vec<(Rat, Rat, Poly)> {
        self.intervals()
            .map(|(a, b, p)| (a.clone(), b.clone(), p.derivative()))
            .collect()
    }

    pub fn to_report(&self) -> Vec<PieceReport> {
        self.intervals()
            .map(|(from, to, p)| PieceReport {
                from: from.clone(),
                to: to.clone(),
                coeffs: p.coeffs().to_vec(),
            })
            .collect()
    }

    pub fn from_report(pieces: &[PieceReport]) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::Domain("empty piecewise report".into()))?;
        let mut breakpoints = vec![first.from.clone()];
        for (i, p) in pieces.iter().enumerate() {
            if i > 0 && p.from != pieces[i - 1].to {
                return Err(Error::Domain("pieces are not contiguous".into()));
            }
            breakpoints.push(p.to.clone());
        }
        let polys = pieces.iter().map(|p| Poly::new(p.coeffs.clone())).collect();
        PiecewisePoly::new(breakpoints, polys)
    }
}

//! Normalized volumes of surface quotient singularities and the
//! constraints they put on K-semistable degenerations of del Pezzo
//! surfaces.

mod markov;
mod pair;
mod sing;

pub use markov::{markov_tree, MarkovTriple};
pub use pair::{weighted_pair_report, WeightedPairReport};
pub use sing::{is_t_singularity, nvol_quotient, singularity_budget, QuotientSing};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{gcd, Rat};

/// `(1 + 1/2)² = 9/4`, the surface constant of the local-to-global bound.
pub fn local_global_constant() -> Rat {
    Rat::new(9, 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalGlobal {
    pub pass: bool,
    pub volume: Rat,
    pub min_nvol: Rat,
    /// `(9/4)·min n̂vol`.
    pub bound: Rat,
    /// `vol − bound`; the check passes iff this is `≤ 0`.
    pub margin: Rat,
    /// Tag of the singularity attaining the minimum.
    pub worst: String,
}

/// `(−K)² ≤ (9/4)·n̂vol(x)` at every point; a smooth point is always
/// included.
pub fn local_global_check(vol: &Rat, sings: &[QuotientSing]) -> Result<LocalGlobal> {
    let mut worst = QuotientSing::smooth();
    let mut min_nvol = nvol_quotient(&worst)?;
    for s in sings {
        let v = nvol_quotient(s)?;
        if v < min_nvol {
            min_nvol = v;
            worst = s.clone();
        }
    }
    let bound = local_global_constant() * &min_nvol;
    let margin = vol - &bound;
    Ok(LocalGlobal {
        pass: !margin.is_positive(),
        volume: vol.clone(),
        min_nvol,
        bound,
        margin,
        worst: worst.tag(),
    })
}

/// `(−K)²` of the well-formed plane `P(a, b, c)`: `(a+b+c)²/(abc)`.
pub fn wps_volume(a: u64, b: u64, c: u64) -> Result<Rat> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::Domain("weights must be positive".into()));
    }
    let (ai, bi, ci) = (a as i64, b as i64, c as i64);
    if gcd(ai, bi) != 1 || gcd(ai, ci) != 1 || gcd(bi, ci) != 1 {
        return Err(Error::Domain(format!("P({a},{b},{c}) weights are not pairwise coprime")));
    }
    let s = Rat::int(ai + bi + ci);
    Ok(s.pow(2) / (Rat::int(ai) * Rat::int(bi) * Rat::int(ci)))
}

/// `A(v)²·vol(v) = (w₁ + w₂)²/(w₁w₂)` for the monomial valuation with
/// weights `(w₁, w₂)` at a smooth surface point.
pub fn monomial_nvol(w1: &Rat, w2: &Rat) -> Result<Rat> {
    if !w1.is_positive() || !w2.is_positive() {
        return Err(Error::Domain("monomial weights must be positive".into()));
    }
    Ok((w1 + w2).pow(2) / (w1 * w2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_global_examples() {
        let r = local_global_check(&Rat::int(8), &[QuotientSing::a_type(1)]).unwrap();
        assert!(!r.pass);
        assert_eq!(r.bound, Rat::new(9, 2));
        assert_eq!(r.margin, Rat::new(7, 2));
        let r = local_global_check(&Rat::int(9), &[]).unwrap();
        assert!(r.pass);
        assert!(r.margin.is_zero());
        let r = local_global_check(&Rat::int(3), &[QuotientSing::a_type(2)]).unwrap();
        assert!(r.pass);
        assert_eq!(r.bound, Rat::int(3));
    }

    #[test]
    fn wps_volumes() {
        assert_eq!(wps_volume(1, 1, 1).unwrap(), Rat::int(9));
        assert_eq!(wps_volume(1, 1, 2).unwrap(), Rat::int(8));
        assert_eq!(wps_volume(1, 4, 25).unwrap(), Rat::int(9));
        assert!(wps_volume(2, 2, 1).is_err());
    }

    #[test]
    fn monomial_values() {
        assert_eq!(monomial_nvol(&Rat::one(), &Rat::one()).unwrap(), Rat::int(4));
        assert_eq!(monomial_nvol(&Rat::one(), &Rat::int(2)).unwrap(), Rat::new(9, 2));
        assert!(monomial_nvol(&Rat::zero(), &Rat::one()).is_err());
    }
}

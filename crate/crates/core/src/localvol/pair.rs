use serde::Serialize;

use super::{local_global_check, QuotientSing};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::lattice::{catalog, DivClass};
use crate::positivity::volume_profile;
use crate::valuative::{discrepancies, StrictTransform};

/// Worked analysis of `(P(1,1,4), cD)` with `D ∈ |O(4d)|`.
///
/// With `m = D̃·e` on the minimal resolution (the multiplicity of `D` at
/// the vertex in the orbifold chart, so `m ∈ {0, 4, …, 4d}`):
/// * `m > 0`: `β(e) = A(e) − S(e)` from the exact volume profile on `F₄`;
/// * `m = 0`: the local-to-global bound at the vertex, which holds iff
///   `c ≥ 3/(4d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedPairReport {
    pub d: u32,
    pub c: Rat,
    pub m: u32,
    pub volume: Rat,
    pub a_e: Rat,
    pub s_e: Rat,
    pub beta_e: Rat,
    pub unstable_by_beta: bool,
    pub index_bound_min_c: Rat,
    pub index_bound_pass: Option<bool>,
}

pub fn weighted_pair_report(d: u32, c: &Rat, m: u32) -> Result<WeightedPairReport> {
    if d == 0 {
        return Err(Error::Domain("d must be positive".into()));
    }
    if !m.is_multiple_of(4) || m > 4 * d {
        return Err(Error::Domain(format!("multiplicity {m} must be a multiple of 4 in 0..={}", 4 * d)));
    }
    let dd = Rat::from(d);
    let fano_limit = Rat::new(3, 2) / &dd;
    if c.is_negative() || *c >= fano_limit {
        return Err(Error::Domain(format!("c = {c} outside [0, {fano_limit})")));
    }
    let x = catalog("P(1,1,4)")?;
    let ext = x
        .extraction("exceptional")
        .ok_or_else(|| Error::UnknownDivisor { model: x.name.clone(), divisor: "exceptional".into() })?;
    let y = &ext.target;

    // L = −K − cD = O(6 − 4cd).
    let l_x = DivClass::new(vec![Rat::int(6) - Rat::int(4) * c * &dd]);
    let volume = x.intersect(&l_x, &l_x)?;
    let l_y = ext.pull_back(&l_x);
    let e = y.curve(&ext.exceptional).expect("validated extraction");
    let profile = volume_profile(y, &l_y, &e, &ext.exceptional)?;
    let s_e = profile.profile.integrate_all() / &volume;

    let mut graph = ext.graph.clone();
    if m > 0 {
        graph.strict_transforms.push(StrictTransform {
            coefficient: c.clone(),
            incidences: vec![(ext.exceptional_vertex, m)],
        });
    }
    let a_e = Rat::one() + &discrepancies(&graph)?[ext.exceptional_vertex];
    let beta_e = &a_e - &s_e;

    let vertex = QuotientSing::cone(4);
    let index_bound_pass = if m == 0 {
        Some(local_global_check(&volume, &[vertex])?.pass)
    } else {
        None
    };
    Ok(WeightedPairReport {
        d,
        c: c.clone(),
        m,
        volume,
        a_e,
        unstable_by_beta: beta_e.is_negative(),
        s_e,
        beta_e,
        index_bound_min_c: Rat::new(3, 4) / &dd,
        index_bound_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_closed_form() {
        // β(e) = −1/2 + c(2d/3 − m/4)
        for d in 1..4u32 {
            for m in (4..=4 * d).step_by(4) {
                for c in [Rat::new(1, 10), Rat::new(1, 3), Rat::new(1, 2 * d as i64)] {
                    let r = weighted_pair_report(d, &c, m).unwrap();
                    let expect = Rat::new(-1, 2)
                        + &c * (Rat::new(2 * d as i64, 3) - Rat::new(m as i64, 4));
                    assert_eq!(r.beta_e, expect, "d={d} m={m} c={c}");
                }
            }
        }
    }

    #[test]
    fn index_bound_threshold() {
        for d in 1..4u32 {
            let t = Rat::new(3, 4 * d as i64);
            assert_eq!(weighted_pair_report(d, &t, 0).unwrap().index_bound_pass, Some(true));
            let below = &t - Rat::new(1, 100);
            assert_eq!(weighted_pair_report(d, &below, 0).unwrap().index_bound_pass, Some(false));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(weighted_pair_report(1, &Rat::new(1, 4), 3).is_err());
        assert!(weighted_pair_report(1, &Rat::new(3, 2), 4).is_err());
        assert!(weighted_pair_report(1, &Rat::new(1, 4), 8).is_err());
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{gcd, Rat};

/// Cyclic quotient surface singularity `1/n(a, b)`.
///
/// `n = 1` is a smooth point. The action is free in codimension one, so
/// both weights must be units mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientSing {
    pub index: u32,
    pub weights: (u32, u32),
}

impl QuotientSing {
    pub fn new(index: u32, a: u32, b: u32) -> Result<Self> {
        let s = QuotientSing { index, weights: (a, b) };
        s.validate()?;
        Ok(s)
    }

    pub fn smooth() -> Self {
        QuotientSing { index: 1, weights: (1, 1) }
    }

    /// `A_k = 1/(k+1)(1, k)`.
    pub fn a_type(k: u32) -> Self {
        QuotientSing { index: k + 1, weights: (1, k.max(1)) }
    }

    /// `1/n(1, 1)`, the cone over the rational normal curve of degree `n`.
    pub fn cone(n: u32) -> Self {
        QuotientSing { index: n, weights: (1, 1) }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.index as i64;
        if n < 1 {
            return Err(Error::Domain("quotient index must be at least 1".into()));
        }
        if n == 1 {
            return Ok(());
        }
        let (a, b) = (self.weights.0 as i64, self.weights.1 as i64);
        if gcd(a, n) != 1 || gcd(b, n) != 1 {
            return Err(Error::Domain(format!(
                "1/{n}({a},{b}) is not free in codimension 1: weights must be coprime to {n}"
            )));
        }
        Ok(())
    }

    pub fn is_smooth(&self) -> bool {
        self.index == 1
    }

    /// Normal form `(n, q)` with `1/n(a, b) ≅ 1/n(1, q)`, taking the smaller
    /// of `q` and `q⁻¹ mod n` (swapping the coordinates inverts `q`).
    pub fn normal_form(&self) -> (u32, u32) {
        let n = self.index as i64;
        if n == 1 {
            return (1, 0);
        }
        let a_inv = mod_inverse(self.weights.0 as i64, n).expect("validated weight");
        let q = (a_inv * self.weights.1 as i64).rem_euclid(n);
        let q_inv = mod_inverse(q, n).expect("unit");
        (n as u32, q.min(q_inv) as u32)
    }

    pub fn equivalent(&self, other: &QuotientSing) -> bool {
        self.normal_form() == other.normal_form()
    }

    /// Du Val type `A_{n-1}` iff `q ≡ -1 mod n`.
    pub fn is_a_type(&self) -> bool {
        let (n, q) = self.normal_form();
        n > 1 && (q + 1) % n == 0
    }

    pub fn tag(&self) -> String {
        let (n, q) = self.normal_form();
        if n == 1 {
            "smooth".into()
        } else if self.is_a_type() {
            format!("A{}", n - 1)
        } else {
            format!("1/{n}(1,{q})")
        }
    }
}

impl fmt::Display for QuotientSing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

pub(crate) fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(n), n);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n))
}

/// Normalized volume `4/n` of `1/n(a, b)`.
pub fn nvol_quotient(s: &QuotientSing) -> Result<Rat> {
    s.validate()?;
    Ok(Rat::new(4, s.index as i64))
}

/// T-singularity test against `1/(dn²)(1, dna − 1)` with `gcd(n, a) = 1`.
pub fn is_t_singularity(s: &QuotientSing) -> bool {
    if s.validate().is_err() {
        return false;
    }
    let (big_n, q) = s.normal_form();
    if big_n == 1 {
        return true;
    }
    let big_n = big_n as i64;
    let mut n = 1i64;
    while n * n <= big_n {
        if big_n % (n * n) == 0 {
            let d = big_n / (n * n);
            for a in 1..=n {
                if gcd(a, n) != 1 {
                    continue;
                }
                let cand = QuotientSing {
                    index: big_n as u32,
                    weights: (1, ((d * n * a - 1).rem_euclid(big_n)) as u32),
                };
                if cand.validate().is_ok() && cand.normal_form().1 == q {
                    return true;
                }
            }
        }
        n += 1;
    }
    false
}

/// Cyclic quotient singularities that may appear on a K-semistable
/// degeneration of a degree `d` del Pezzo surface: order at most
/// `floor(9/d)` and smoothable (T-singularities). Sorted by `(n, q)`.
pub fn singularity_budget(d: u32) -> Result<Vec<QuotientSing>> {
    if !(1..=9).contains(&d) {
        return Err(Error::Domain(format!("degree {d} outside 1..=9")));
    }
    let max_order = 9 / d;
    let mut out = vec![QuotientSing::smooth()];
    for n in 2..=max_order {
        let mut seen = Vec::new();
        for q in 1..n {
            let Ok(s) = QuotientSing::new(n, 1, q) else { continue };
            let nf = s.normal_form();
            if seen.contains(&nf) {
                continue;
            }
            seen.push(nf);
            if is_t_singularity(&s) {
                out.push(QuotientSing { index: nf.0, weights: (1, nf.1) });
            }
        }
    }
    Ok(out)
}

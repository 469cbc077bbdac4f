//! Hilbert–Mumford numerics for cubic surfaces with respect to the
//! diagonal torus of `PGL₄`.
//!
//! A weight vector `λ` (integers summing to zero) destabilizes `f` when
//! `⟨λ, e⟩ > 0` for every exponent `e` in the support, i.e. `t^λ · f → 0`.
//! Such a `λ` exists iff the barycenter `(3/4, 3/4, 3/4, 3/4)` lies outside
//! the convex hull of the support; this is decided exactly as the
//! feasibility of `Σλ = 0, ⟨λ, e⟩ ≥ 1`.
//!
//! Brute-force search over `|λ_i| ≤ 9` is used as a test oracle: exponents
//! lie in `{0,…,3}`, so a vertex of the feasibility polyhedron is cut out
//! by small integer systems and its primitive scaling is short.

mod simplex;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use simplex::feasible_point;

use crate::error::{Error, Result};
use crate::exactnum::{linalg, Rat};

pub type Exponent = [u8; 4];

const VARS: [&str; 4] = ["x", "y", "z", "w"];

/// Homogeneous cubic in `x, y, z, w`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct CubicForm {
    terms: BTreeMap<Exponent, Rat>,
}

impl CubicForm {
    /// Zero coefficients are dropped; exponents must have degree three.
    pub fn new(terms: impl IntoIterator<Item = (Exponent, Rat)>) -> Result<Self> {
        let mut map: BTreeMap<Exponent, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.iter().map(|&k| k as u32).sum::<u32>() != 3 {
                return Err(Error::InvalidInput(format!("exponent {e:?} does not have degree 3")));
            }
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::InvalidInput("cubic form has no terms".into()));
        }
        Ok(CubicForm { terms: map })
    }

    pub fn from_ints(terms: &[(Exponent, i64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(e, c)| (e, Rat::int(c))))
    }

    pub fn fermat() -> Self {
        Self::from_ints(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 3, 0], 1), ([0, 0, 0, 3], 1)])
            .expect("valid")
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rat> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn eval(&self, p: &[Rat; 4]) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for i in 0..4 {
                    v *= p[i].pow(e[i] as u32);
                }
                v
            })
            .sum()
    }

    /// Coordinates permuted: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: [usize; 4]) -> Self {
        CubicForm {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut n = [0u8; 4];
                    for i in 0..4 {
                        n[perm[i]] = e[i];
                    }
                    (n, c.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest exponent of x first.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != Rat::one() {
                factors.push(mag.to_string());
            }
            for i in 0..4 {
                match e[i] {
                    0 => {}
                    1 => factors.push(VARS[i].to_string()),
                    p => factors.push(format!("{}^{p}", VARS[i])),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubicForm({self})")
    }
}

/// Integer weights on `x, y, z, w` summing to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OnePS {
    pub weights: [i64; 4],
}

impl OnePS {
    pub fn new(weights: [i64; 4]) -> Result<Self> {
        if weights.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidInput(format!("weights {weights:?} do not sum to zero")));
        }
        Ok(OnePS { weights })
    }

    pub fn trivial() -> Self {
        OnePS { weights: [0; 4] }
    }

    pub fn negate(&self) -> Self {
        OnePS { weights: self.weights.map(|w| -w) }
    }

    pub fn pairing(&self, e: &Exponent) -> i64 {
        self.weights.iter().zip(e).map(|(w, &k)| w * k as i64).sum()
    }
}

impl fmt::Display for OnePS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weights;
        write!(f, "({},{},{},{})", w[0], w[1], w[2], w[3])
    }
}

/// `min_{e ∈ supp f} ⟨λ, e⟩`; positive means `λ` destabilizes `f`.
pub fn hm_weight(f: &CubicForm, lam: &OnePS) -> Rat {
    Rat::int(f.support().map(|e| lam.pairing(e)).min().expect("nonempty support"))
}

/// A destabilizing weight vector for the diagonal torus, if any. The
/// witness is primitive and re-verified before it is returned.
pub fn torus_destabilizer(f: &CubicForm) -> Option<OnePS> {
    // λ = p − q with p, q ≥ 0; rows: Σλ = 0 and ⟨λ, e⟩ − s_e = 1.
    let supp: Vec<&Exponent> = f.support().collect();
    let n = 8 + supp.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut row = vec![Rat::zero(); n];
    for i in 0..4 {
        row[i] = Rat::one();
        row[4 + i] = Rat::int(-1);
    }
    a.push(row);
    b.push(Rat::zero());
    for (k, e) in supp.iter().enumerate() {
        let mut row = vec![Rat::zero(); n];
        for i in 0..4 {
            row[i] = Rat::int(e[i] as i64);
            row[4 + i] = Rat::int(-(e[i] as i64));
        }
        row[8 + k] = Rat::int(-1);
        a.push(row);
        b.push(Rat::one());
    }
    let x = feasible_point(&a, &b)?;
    let lam: Vec<Rat> = (0..4).map(|i| &x[i] - &x[4 + i]).collect();
    let witness = OnePS { weights: primitive_integer(&lam) };
    assert!(hm_weight(f, &witness).is_positive(), "simplex witness failed re-verification");
    Some(witness)
}

fn primitive_integer(v: &[Rat]) -> [i64; 4] {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    let mut out = [0i64; 4];
    for (o, x) in out.iter_mut().zip(&ints) {
        *o = if g == num_bigint::BigInt::from(0) { 0 } else { (x / &g).to_i64().expect("small weights") };
    }
    out
}

/// `f(M·v)`: each variable `x_i` replaced by `Σ_j M[i][j] x_j`, expanded.
pub fn apply_coordinate_change(f: &CubicForm, m: &[Vec<Rat>]) -> Result<CubicForm> {
    if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
        return Err(Error::DimensionMismatch { expected: 4, found: m.len() });
    }
    if linalg::determinant(m)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let linear: Vec<BTreeMap<Exponent, Rat>> = (0..4)
        .map(|i| {
            (0..4)
                .filter(|&j| !m[i][j].is_zero())
                .map(|j| {
                    let mut e = [0u8; 4];
                    e[j] = 1;
                    (e, m[i][j].clone())
                })
                .collect()
        })
        .collect();
    let mut out: BTreeMap<Exponent, Rat> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut acc: BTreeMap<Exponent, Rat> = BTreeMap::from([([0u8; 4], c.clone())]);
        for i in 0..4 {
            for _ in 0..e[i] {
                acc = multiply(&acc, &linear[i]);
            }
        }
        for (k, v) in acc {
            *out.entry(k).or_insert_with(Rat::zero) += v;
        }
    }
    CubicForm::new(out)
}

fn multiply(a: &BTreeMap<Exponent, Rat>, b: &BTreeMap<Exponent, Rat>) -> BTreeMap<Exponent, Rat> {
    let mut out: BTreeMap<Exponent, Rat> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            *out.entry(e).or_insert_with(Rat::zero) += ca * cb;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub form: String,
    pub torus_semistable: bool,
    pub destabilizer: Option<OnePS>,
    pub literature: &'static str,
}

/// Shipped normal forms, with the torus verdict recomputed on each call.
/// Smooth-form stability relies on the literature for the quantifier over
/// all coordinate systems.
pub fn catalog_verdicts() -> Vec<Verdict> {
    let entries: Vec<(&'static str, CubicForm, &'static str)> = vec![
        ("Fermat", CubicForm::fermat(), "K-stable (smooth cubic); GIT stable"),
        (
            "xyz - w^3",
            CubicForm::from_ints(&[([1, 1, 1, 0], 1), ([0, 0, 0, 3], -1)]).expect("valid"),
            "strictly semistable in literature (polystable, 3A2)",
        ),
        (
            "cone over a plane cubic",
            CubicForm::from_ints(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 3, 0], 1)]).expect("valid"),
            "unstable (not log terminal)",
        ),
    ];
    entries
        .into_iter()
        .map(|(name, f, literature)| {
            let d = torus_destabilizer(&f);
            Verdict { name, form: f.to_string(), torus_semistable: d.is_none(), destabilizer: d, literature }
        })
        .collect()
}

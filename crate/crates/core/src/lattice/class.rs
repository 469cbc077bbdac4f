use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::exactnum::Rat;

/// A divisor class written against the basis of its owning
/// [`SurfaceModel`](super::SurfaceModel).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivClass(Vec<Rat>);

impl DivClass {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        DivClass(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivClass(coeffs.iter().map(|&c| Rat::int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivClass(vec![Rat::zero(); rank])
    }

    /// The `i`-th basis vector.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![Rat::zero(); rank];
        v[i] = Rat::one();
        DivClass(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> DivClass {
        DivClass(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &DivClass, k: &Rat) -> DivClass {
        DivClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b * k).collect())
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        DivClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        DivClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass(self.0.iter().map(|a| -a).collect())
    }
}

/// A labelled curve class.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Curve {
    pub label: String,
    pub class: DivClass,
}

impl Curve {
    pub fn new(label: impl Into<String>, class: DivClass) -> Self {
        Curve { label: label.into(), class }
    }
}

/// A boundary component `coefficient · D` of a pair `(X, Δ)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub label: String,
    pub class: DivClass,
    pub coefficient: Rat,
}

//! Small dense exact linear algebra over [`Rat`]: solving, determinants,
//! definiteness and signature of symmetric forms.

use super::{Poly, Rat};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn is_square(m: &[Vec<Rat>]) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

pub fn is_symmetric(m: &[Vec<Rat>]) -> bool {
    is_square(m) && (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `aᵀ · m · b`.
pub fn bilinear(a: &[Rat], m: &[Vec<Rat>], b: &[Rat]) -> Rat {
    a.iter()
        .zip(m)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, row)| x * dot(row, b))
        .sum()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Solves `m x = rhs` by Gaussian elimination with exact pivoting.
/// `row[target] -= factor · row[pivot]` on columns `from..`.
fn sub_row(m: &mut [Vec<Rat>], target: usize, pivot: usize, factor: &Rat, from: usize) {
    let p = m[pivot][from..].to_vec();
    for (x, y) in m[target][from..].iter_mut().zip(&p) {
        *x -= factor * y;
    }
}

pub fn solve(m: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let n = m.len();
    if !is_square(m) {
        return Err(Error::Domain("solve needs a square matrix".into()));
    }
    if rhs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rhs.len() });
    }
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip().expect("nonzero pivot");
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                sub_row(&mut aug, r, col, &factor, col);
            }
        }
    }
    Ok(aug.into_iter().map(|mut row| row.pop().expect("augmented")).collect())
}

pub fn determinant(m: &[Vec<Rat>]) -> Result<Rat> {
    if !is_square(m) {
        return Err(Error::Domain("determinant needs a square matrix".into()));
    }
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rat::zero());
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            sub_row(&mut a, r, col, &factor, col);
        }
    }
    Ok(det)
}

/// True iff the symmetric matrix is negative definite. Uses symmetric
/// elimination without row exchange: every pivot of `-m` must be positive.
pub fn is_negative_definite(m: &[Vec<Rat>]) -> bool {
    if !is_symmetric(m) {
        return false;
    }
    let n = m.len();
    let mut a: Matrix = m.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &a[k][k];
            sub_row(&mut a, i, k, &factor, k);
        }
    }
    true
}

/// Characteristic polynomial `det(x I - m)` by the Faddeev–LeVerrier
/// recursion, lowest degree first.
pub fn charpoly(m: &[Vec<Rat>]) -> Result<Poly> {
    if !is_square(m) {
        return Err(Error::Domain("charpoly needs a square matrix".into()));
    }
    let n = m.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = identity(n); // M_0 = 0 handled by starting from M_1 = I
    for k in 1..=n {
        let am = mat_mul(m, &mk);
        let trace: Rat = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -trace / Rat::int(k as i64);
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    Ok(Poly::new(coeffs))
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix,
/// read off the characteristic polynomial by Descartes' rule (exact because
/// all roots are real).
pub fn signature(m: &[Vec<Rat>]) -> Result<(usize, usize, usize)> {
    if !is_symmetric(m) {
        return Err(Error::Domain("signature needs a symmetric matrix".into()));
    }
    let p = charpoly(m)?;
    let zero = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let sign_changes = |cs: &[Rat]| {
        let signs: Vec<_> = cs.iter().filter(|c| !c.is_zero()).map(Rat::sign).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = sign_changes(p.coeffs());
    let flipped: Vec<Rat> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
        .collect();
    let neg = sign_changes(&flipped);
    Ok((pos, neg, zero))
}

use super::class::{Curve, DivClass};
use crate::error::{Error, Result};

/// Default bound on the hyperplane coefficient; every `(-1)`-class on a
/// blow-up of at most eight points has `c₀ ≤ 6`.
pub const DEFAULT_BOUND: i64 = 6;

/// All classes `C = c₀H − Σ cᵢEᵢ` on the blow-up of `k` points with
/// `C² = −1`, `K·C = −1`, `0 ≤ c₀ ≤ 6`, in canonical order.
pub fn enumerate_neg_curves(k: usize) -> Result<Vec<DivClass>> {
    enumerate_with_bound(k, DEFAULT_BOUND)
}

/// Bounded brute force over the Diophantine system
/// `Σcᵢ = 3c₀ − 1`, `Σcᵢ² = c₀² + 1`.
pub fn enumerate_with_bound(k: usize, bound: i64) -> Result<Vec<DivClass>> {
    if k > 8 {
        return Err(Error::Domain(format!("blow-up of {k} points is not del Pezzo (k <= 8)")));
    }
    let mut found: Vec<(i64, Vec<i64>)> = Vec::new();
    for c0 in 0..=bound {
        let target_sum = 3 * c0 - 1;
        let target_sq = c0 * c0 + 1;
        let mut cur = Vec::with_capacity(k);
        search(k, target_sum, target_sq, &mut cur, &mut |ci| found.push((c0, ci.to_vec())));
    }
    found.sort_by(|(a0, a), (b0, b)| {
        let abs = |v: &[i64]| v.iter().map(|x| x.abs()).collect::<Vec<_>>();
        a0.cmp(b0)
            .then_with(|| abs(b).cmp(&abs(a)))
            .then_with(|| b.cmp(a))
    });
    Ok(found
        .into_iter()
        .map(|(c0, ci)| {
            let mut coeffs = vec![c0];
            coeffs.extend(ci.iter().map(|c| -c));
            DivClass::from_ints(&coeffs)
        })
        .collect())
}

fn search(
    slots: usize,
    sum: i64,
    sq: i64,
    cur: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if slots == 0 {
        if sum == 0 && sq == 0 {
            emit(cur);
        }
        return;
    }
    // Cauchy–Schwarz: sum² ≤ slots · sq, and |sum| ≤ sq for integers.
    if sq < 0 || sum * sum > slots as i64 * sq || sum.abs() > sq {
        return;
    }
    let m = (sq as f64).sqrt() as i64 + 1;
    for c in -m..=m {
        let rest = sq - c * c;
        if rest < 0 {
            continue;
        }
        cur.push(c);
        search(slots - 1, sum - c, rest, cur, emit);
        cur.pop();
    }
}

/// Conventional label for a `(-1)`-class in the basis `H, E1, …, Ek`:
/// `E3`, `L12` (line through two points), `Q12345` (conic through five),
/// otherwise `D<c₀>[c₁,…,c_k]`.
pub fn curve_label(class: &DivClass) -> String {
    let c: Vec<i64> = class
        .coeffs()
        .iter()
        .map(|x| x.to_i64().expect("integral class"))
        .collect();
    let c0 = c[0];
    let ci: Vec<i64> = c[1..].iter().map(|x| -x).collect();
    let ones = || {
        ci.iter()
            .enumerate()
            .filter(|(_, &x)| x == 1)
            .map(|(i, _)| (i + 1).to_string())
            .collect::<String>()
    };
    match c0 {
        0 => format!("E{}", ci.iter().position(|&x| x == -1).map_or(0, |i| i + 1)),
        1 => format!("L{}", ones()),
        2 => format!("Q{}", ones()),
        _ => format!(
            "D{c0}[{}]",
            ci.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
        ),
    }
}

pub fn labelled_neg_curves(k: usize) -> Result<Vec<Curve>> {
    Ok(enumerate_neg_curves(k)?
        .into_iter()
        .map(|c| Curve::new(curve_label(&c), c))
        .collect())
}

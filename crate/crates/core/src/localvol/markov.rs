use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Sorted positive solution of `a² + b² + c² = 3abc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkovTriple(pub u64, pub u64, pub u64);

impl MarkovTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        let t = MarkovTriple(v[0], v[1], v[2]);
        if !t.satisfies_equation() {
            return Err(Error::Domain(format!("({a},{b},{c}) is not a Markov triple")));
        }
        Ok(t)
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.0, self.1, self.2]
    }

    pub fn satisfies_equation(&self) -> bool {
        let [a, b, c] = self.as_array().map(u128::from);
        a > 0 && a * a + b * b + c * c == 3 * a * b * c
    }

    pub fn pairwise_coprime(&self) -> bool {
        let g = |x: u64, y: u64| num_integer::gcd(x, y);
        g(self.0, self.1) == 1 && g(self.0, self.2) == 1 && g(self.1, self.2) == 1
    }

    /// Vieta involution at coordinate `i` (of the sorted triple):
    /// the entry `c` becomes `3ab − c`. Fails once entries leave `u64`.
    pub fn mutate(&self, i: usize) -> Result<MarkovTriple> {
        let mut v = self.as_array();
        let (x, y) = match i {
            0 => (v[1], v[2]),
            1 => (v[0], v[2]),
            _ => (v[0], v[1]),
        };
        let k = i.min(2);
        v[k] = 3u64
            .checked_mul(x)
            .and_then(|p| p.checked_mul(y))
            .map(|p| p - v[k])
            .ok_or_else(|| Error::Domain(format!("mutation of {self:?} overflows 64 bits")))?;
        v.sort_unstable();
        Ok(MarkovTriple(v[0], v[1], v[2]))
    }
}

/// Breadth-first closure of `(1,1,1)` under single mutations, to `depth`
/// mutation steps. Returned sorted.
pub fn markov_tree(depth: u32) -> Result<Vec<MarkovTriple>> {
    let root = MarkovTriple(1, 1, 1);
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([(root, 0u32)]);
    while let Some((t, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for i in 0..3 {
            let m = t.mutate(i)?;
            if seen.insert(m) {
                queue.push_back((m, d + 1));
            }
        }
    }
    Ok(seen.into_iter().collect())
}

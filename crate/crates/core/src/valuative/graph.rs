use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{linalg, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    pub genus: u32,
    pub self_int: i64,
}

/// Strict transform of a boundary component: its coefficient and its
/// intersection numbers with exceptional vertices, as `[vertex, mult]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictTransform {
    pub coefficient: Rat,
    #[serde(default)]
    pub incidences: Vec<(usize, u32)>,
}

/// Dual graph of the exceptional locus of a log resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionGraph {
    pub vertices: Vec<Vertex>,
    /// `[i, j, multiplicity]` intersection data between distinct vertices.
    #[serde(default)]
    pub edges: Vec<(usize, usize, u32)>,
    #[serde(default)]
    pub strict_transforms: Vec<StrictTransform>,
}

impl ResolutionGraph {
    pub fn single(label: &str, genus: u32, self_int: i64) -> Self {
        ResolutionGraph {
            vertices: vec![Vertex { label: label.into(), genus, self_int }],
            edges: Vec::new(),
            strict_transforms: Vec::new(),
        }
    }

    /// A chain of `n` smooth rational `(-2)`-curves: the `A_n` graph.
    pub fn a_chain(n: usize) -> Self {
        ResolutionGraph {
            vertices: (0..n)
                .map(|i| Vertex { label: format!("E{}", i + 1), genus: 0, self_int: -2 })
                .collect(),
            edges: (1..n).map(|i| (i - 1, i, 1)).collect(),
            strict_transforms: Vec::new(),
        }
    }

    pub fn with_strict_transform(mut self, st: StrictTransform) -> Self {
        self.strict_transforms.push(st);
        self
    }

    pub fn intersection_matrix(&self) -> Result<linalg::Matrix> {
        let n = self.vertices.len();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = Rat::int(v.self_int);
        }
        for &(i, j, mult) in &self.edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidInput(format!("bad edge ({i}, {j})")));
            }
            m[i][j] += Rat::from(mult);
            m[j][i] += Rat::from(mult);
        }
        Ok(m)
    }

    /// Right-hand side of the adjunction system:
    /// `2g_j − 2 − e_j + Σ b·(D̃·E_j)`.
    pub fn adjunction_rhs(&self) -> Result<Vec<Rat>> {
        let n = self.vertices.len();
        let mut rhs: Vec<Rat> = self
            .vertices
            .iter()
            .map(|v| Rat::int(2 * v.genus as i64 - 2 - v.self_int))
            .collect();
        for st in &self.strict_transforms {
            for &(j, mult) in &st.incidences {
                if j >= n {
                    return Err(Error::InvalidInput(format!("incidence with missing vertex {j}")));
                }
                rhs[j] += &st.coefficient * Rat::from(mult);
            }
        }
        Ok(rhs)
    }
}

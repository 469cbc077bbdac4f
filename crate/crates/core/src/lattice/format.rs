//! Declarative model files.

use serde::{Deserialize, Serialize};

use super::class::{BoundaryComponent, Curve, DivClass};
use crate::exactnum::Rat;
use crate::valuative::ResolutionGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingFile {
    pub location: String,
    pub index: u32,
    pub weights: [u32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceFile {
    pub label: String,
    /// Intersection with each exceptional vertex of the graph, in order.
    pub incidences: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionFile {
    pub label: String,
    /// Name of the catalogued model on which the divisor is a curve.
    pub target: String,
    pub pullback: Vec<DivClass>,
    pub exceptional: String,
    pub graph: ResolutionGraph,
    #[serde(default)]
    pub exceptional_vertex: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary_incidence: Vec<IncidenceFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub basis: Vec<String>,
    /// Row-major.
    pub gram: Vec<Rat>,
    pub canonical: DivClass,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub neg_curves: Vec<Curve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_generators: Vec<Curve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub named_curves: Vec<Curve>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<BoundaryComponent>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sings: Vec<SingFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub point_classes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extractions: Vec<ExtractionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub del_pezzo_points: Option<usize>,
}

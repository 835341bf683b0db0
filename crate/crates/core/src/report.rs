//! Serializable analysis records.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::{self, Graph, GraphError};
use crate::periodicity::{PeriodicityVerdict, WalkKind};
use crate::spectral::EigenphaseSet;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    #[default]
    None,
    Subdivide,
    DoubleCover,
}

impl Transform {
    pub fn apply(self, g: &Graph) -> Result<Graph, GraphError> {
        Ok(match self {
            Transform::None => g.clone(),
            Transform::Subdivide => graph::subdivision(g).0,
            Transform::DoubleCover => {
                if g.is_bipartite() {
                    return Err(GraphError::InvalidParameters(
                        "double cover of a bipartite graph is disconnected".into(),
                    ));
                }
                graph::bipartite_double_cover(g)?.0
            }
        })
    }
}

/// SHA-256 of the canonical edge-list text, hex encoded.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(g.to_edge_list().as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub graph_hash: String,
    pub vertices: usize,
    pub edges: usize,
    pub kind: WalkKind,
    pub transform: Transform,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<EigenphaseSet>,
    pub verdict: PeriodicityVerdict,
    /// Comparison against a period supplied by the caller.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<Expectation>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub period: u64,
    pub matches: bool,
}

impl Expectation {
    pub fn compare(period: u64, verdict: &PeriodicityVerdict) -> Self {
        Expectation {
            period,
            matches: verdict.period == Some(period),
        }
    }
}

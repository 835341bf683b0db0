//! Inputs shared by the benchmarks.

use qwalk_core::graph::{self, complete_bipartite, cycle};
use qwalk_core::{fixtures, Graph};

/// Named graphs covering small, medium and transformed inputs.
pub fn workload() -> Vec<(&'static str, Graph)> {
    vec![
        ("k33", complete_bipartite(3, 3).unwrap()),
        ("c12", cycle(12).unwrap()),
        ("heawood", fixtures::heawood()),
        ("s_cayley10", graph::subdivision(&fixtures::cayley10()).0),
        ("figure7_cover", graph::bipartite_double_cover(&fixtures::figure7()).unwrap().0),
    ]
}

//! Discrete quantum walks on graphs: bipartite walks `(2P−I)(2Q−I)` on the
//! edges of a bipartite graph, Grover walks on arcs, and exact periodicity
//! certification.
//!
//! ```
//! use qwalk_core::{build_bipartite_walk, exact_period_oracle, graph, OracleOutcome};
//!
//! let c6 = graph::cycle(6).unwrap();
//! let w = build_bipartite_walk(&c6).unwrap();
//! assert_eq!(exact_period_oracle(&w.u, 100).unwrap(), OracleOutcome::Periodic { period: 3 });
//! ```

pub mod exact;
pub mod graph;
pub mod periodicity;
pub mod report;
pub mod scan;
pub mod spectral;
pub mod walk;

pub use exact::{
    char_poly, eval_at_quadratic, roots_degree_le2, IntPolynomial, LinalgError, QuadraticValue,
    Rational, RationalMatrix, Root, RootFactorization,
};
pub use graph::{fixtures, Arc, Bipartition, DegreeProfile, Graph, GraphError, Side};
pub use periodicity::{
    analyze, exact_period_oracle, grover_period_doubling, grover_regular_test,
    period_from_phases, spectral_test_biregular, state_periodicity, trace_test, AllowedValueTable,
    AnalysisOptions, Method, OracleOutcome, Periodicity, PeriodicityError, PeriodicityVerdict,
    WalkKind,
};
pub use report::{graph_hash, AnalysisReport, Expectation, Transform};
pub use scan::{enumerate_biregular, ScanEntry};
pub use spectral::{
    complex_eigenprojection, eigenvalue_support, line_graph_spectrum, pm1_eigenspace_dims,
    subdivision_spectrum, sym_eig, walk_phases_from_graph, EigenphaseSet, SpectralDecomposition,
    SpectralError,
};
pub use walk::{
    block_identity_check, build_bipartite_walk, build_grover_walk,
    grover_equals_bipartite_on_subdivision, ArcWalkOperator, EdgePartition, WalkError,
    WalkOperator,
};

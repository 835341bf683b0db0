//! Walk operators: the bipartite walk `U = (2P−I)(2Q−I)` on the edges of a
//! bipartite graph, and the Grover walk `R(2K−I)` on the arcs of any graph,
//! where `K = D*D` is kept as an exact rational matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{LinalgError, Rational, RationalMatrix};
use crate::graph::{self, Arc, Bipartition, DegreeProfile, Graph, GraphError, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("walk operator invariant violated: {0}")]
    Invariant(&'static str),
    #[error("invalid operator document: {0}")]
    Document(String),
}

/// Edge cells keyed by the vertices of one color class: the cell of `v`
/// holds the indices of the edges incident to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePartition {
    pub side: Side,
    pub vertices: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
}

impl EdgePartition {
    pub fn edge_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cell_of(&self, v: usize) -> Option<&[usize]> {
        let i = self.vertices.iter().position(|&x| x == v)?;
        Some(&self.cells[i])
    }

    /// 0/1 characteristic matrix, edges by cells.
    pub fn characteristic(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.edge_count(), self.cells.len());
        for (c, cell) in self.cells.iter().enumerate() {
            for &e in cell {
                m.set(e, c, Rational::one());
            }
        }
        m
    }

    /// Orthogonal projection onto functions constant on each cell:
    /// entry `1/|cell|` for two edges in the same cell.
    pub fn projection(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.edge_count(), self.edge_count());
        for cell in &self.cells {
            let w = Rational::new(BigInt::one(), BigInt::from(cell.len()));
            for &e in cell {
                for &f in cell {
                    m.set(e, f, w.clone());
                }
            }
        }
        m
    }
}

pub fn build_partitions(g: &Graph, b: &Bipartition) -> (EdgePartition, EdgePartition) {
    let incident = g.incident_edges();
    let make = |side: Side| EdgePartition {
        side,
        vertices: b.class(side).to_vec(),
        cells: b.class(side).iter().map(|&v| incident[v].clone()).collect(),
    };
    (make(Side::C0), make(Side::C1))
}

pub fn projections(pi0: &EdgePartition, pi1: &EdgePartition) -> (RationalMatrix, RationalMatrix) {
    (pi0.projection(), pi1.projection())
}

fn check_projection(m: &RationalMatrix, what: &'static str) -> Result<(), WalkError> {
    if !m.is_symmetric() || m.mul(m)? != *m {
        return Err(WalkError::Invariant(what));
    }
    Ok(())
}

fn is_orthogonal(u: &RationalMatrix) -> Result<bool, LinalgError> {
    Ok(u.mul(&u.transpose())?.is_identity())
}

/// Bipartite walk operator with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkOperator {
    pub graph: Graph,
    pub bipartition: Bipartition,
    pub profile: DegreeProfile,
    /// Row/column `j` of every matrix is edge `edges[j]`.
    pub edges: Vec<(usize, usize)>,
    pub p: RationalMatrix,
    pub q: RationalMatrix,
    pub u: RationalMatrix,
}

impl WalkOperator {
    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn partitions(&self) -> (EdgePartition, EdgePartition) {
        build_partitions(&self.graph, &self.bipartition)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator serializes")
    }

    /// Parses an operator document and re-checks `U = (2P−I)(2Q−I)`.
    pub fn from_json(text: &str) -> Result<Self, WalkError> {
        let w: WalkOperator =
            serde_json::from_str(text).map_err(|e| WalkError::Document(e.to_string()))?;
        if w.edges != w.graph.edges() {
            return Err(WalkError::Document("edge map does not match graph".into()));
        }
        if w.p.reflection()?.mul(&w.q.reflection()?)? != w.u {
            return Err(WalkError::Invariant("U = (2P-I)(2Q-I)"));
        }
        Ok(w)
    }
}

/// Bipartite walk on a connected bipartite graph with its canonical
/// bipartition.
pub fn build_bipartite_walk(g: &Graph) -> Result<WalkOperator, WalkError> {
    let b = graph::bipartition(g)?;
    build_bipartite_walk_with(g, &b)
}

/// Bipartite walk for an explicit bipartition; `P` comes from the cells at
/// `c0`, `Q` from the cells at `c1`.
pub fn build_bipartite_walk_with(g: &Graph, b: &Bipartition) -> Result<WalkOperator, WalkError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let b = Bipartition::from_classes(g, b.c0.clone(), b.c1.clone())?;
    let (pi0, pi1) = build_partitions(g, &b);
    let (p, q) = projections(&pi0, &pi1);
    check_projection(&p, "P is a symmetric idempotent")?;
    check_projection(&q, "Q is a symmetric idempotent")?;
    let u = p.reflection()?.mul(&q.reflection()?)?;
    if !is_orthogonal(&u)? {
        return Err(WalkError::Invariant("U is orthogonal"));
    }
    Ok(WalkOperator {
        graph: g.clone(),
        profile: DegreeProfile::of(g, &b),
        bipartition: b,
        edges: g.edges().to_vec(),
        p,
        q,
        u,
    })
}

/// Grover walk operator on the arcs of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcWalkOperator {
    pub graph: Graph,
    /// Arc `j` is `(head u, tail v)` for canonical edge `j = (u, v)`; arc
    /// `j + |E|` is its reversal.
    pub arcs: Vec<Arc>,
    /// `reversal[α]` is the index of the reversed arc.
    pub reversal: Vec<usize>,
    /// `K = D*D`: `1/deg(t(α))` when `α`, `β` share a tail.
    pub k: RationalMatrix,
    pub u: RationalMatrix,
}

impl ArcWalkOperator {
    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    pub fn reversal_matrix(&self) -> RationalMatrix {
        let n = self.reversal.len();
        let mut r = RationalMatrix::zeros(n, n);
        for (a, &b) in self.reversal.iter().enumerate() {
            r.set(a, b, Rational::one());
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, WalkError> {
        let w: ArcWalkOperator =
            serde_json::from_str(text).map_err(|e| WalkError::Document(e.to_string()))?;
        if w.reversal_matrix().mul(&w.k.reflection()?)? != w.u {
            return Err(WalkError::Invariant("U = R(2K-I)"));
        }
        Ok(w)
    }
}

pub fn grover_arcs(g: &Graph) -> Vec<Arc> {
    let forward = g.edges().iter().map(|&(u, v)| Arc { head: u, tail: v });
    let backward = g.edges().iter().map(|&(u, v)| Arc { head: v, tail: u });
    forward.chain(backward).collect()
}

pub fn build_grover_walk(g: &Graph) -> Result<ArcWalkOperator, WalkError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let m = g.edge_count();
    let arcs = grover_arcs(g);
    let reversal: Vec<usize> = (0..2 * m).map(|a| (a + m) % (2 * m)).collect();
    let deg = g.degrees();
    let k = RationalMatrix::from_fn(2 * m, 2 * m, |a, b| {
        if arcs[a].tail == arcs[b].tail {
            Rational::new(BigInt::one(), BigInt::from(deg[arcs[a].tail]))
        } else {
            Rational::zero()
        }
    });
    check_projection(&k, "K is a symmetric idempotent")?;
    let mut w = ArcWalkOperator {
        graph: g.clone(),
        arcs,
        reversal,
        k,
        u: RationalMatrix::zeros(0, 0),
    };
    let r = w.reversal_matrix();
    if !r.mul(&r)?.is_identity() {
        return Err(WalkError::Invariant("R is an involution"));
    }
    w.u = r.mul(&w.k.reflection()?)?;
    if !is_orthogonal(&w.u)? {
        return Err(WalkError::Invariant("U_GW is orthogonal"));
    }
    Ok(w)
}

/// Result of comparing `U_GW(g)` with `U_BW(S(g))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionEquality {
    pub equal: bool,
    /// `permutation[α]` is the subdivision edge carrying arc `α`.
    pub permutation: Vec<usize>,
}

/// Arc `(u, v)` of `g` corresponds to the edge `{n + j, v}` of the
/// subdivision, where `j` is the index of `{u, v}`.
pub fn arc_to_subdivision_edge(g: &Graph, s: &Graph) -> Vec<usize> {
    let n = g.n();
    let m = g.edge_count();
    grover_arcs(g)
        .iter()
        .enumerate()
        .map(|(a, arc)| {
            s.edge_index(arc.tail, n + a % m)
                .expect("subdivision contains the half edge")
        })
        .collect()
}

pub fn grover_equals_bipartite_on_subdivision(g: &Graph) -> Result<SubdivisionEquality, WalkError> {
    let grover = build_grover_walk(g)?;
    let (s, b) = graph::subdivision(g);
    let bw = build_bipartite_walk_with(&s, &b)?;
    let permutation = arc_to_subdivision_edge(g, &s);
    let equal = bw.u.permuted(&permutation) == grover.u;
    Ok(SubdivisionEquality { equal, permutation })
}

/// Arc order with the arcs whose tail lies in `c1` first, each half sorted
/// by edge index. Entry `i` is the index of the arc placed at position `i`.
pub fn c1_tail_first_order(g: &Graph, b: &Bipartition) -> Vec<usize> {
    let m = g.edge_count();
    let arcs = grover_arcs(g);
    let pick = |side: Side| -> Vec<usize> {
        (0..m)
            .map(|e| if b.side(arcs[e].tail) == side { e } else { e + m })
            .collect()
    };
    let mut order = pick(Side::C1);
    order.extend(pick(Side::C0));
    order
}

/// Checks `U_GW^{2k} = diag(U_BW^k, (U_BWᵀ)^k)` exactly, with arcs ordered
/// tail-in-`c1` first.
pub fn block_identity_check(g: &Graph, k: u64) -> Result<bool, WalkError> {
    let bw = build_bipartite_walk(g)?;
    let gw = build_grover_walk(g)?;
    let order = c1_tail_first_order(g, &bw.bipartition);
    let lhs = gw.u.permuted(&order).pow(2 * k)?;
    let uk = bw.u.pow(k)?;
    let rhs = RationalMatrix::block_diagonal(&uk, &uk.transpose());
    Ok(lhs == rhs)
}

//! Simple undirected graphs with a canonical edge order, plus the graph
//! transformations used by the walk constructions: subdivision, bipartite
//! double cover and line graph.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. The
//! position of an edge in that list is its *edge index*; every matrix whose
//! rows or columns are edges uses it.

use std::collections::VecDeque;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        Graph::new(raw.n, raw.edges)
    }
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)` and sorting.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph { n, edges: list })
    }

    /// Parses the edge-list text format: first non-comment line is `n`, then
    /// one `u v` pair per nonempty line. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_field = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Malformed {
                    line: line_no,
                    reason: format!("expected a non-negative integer, found {s:?}"),
                })
            };
            match (n, fields.as_slice()) {
                (None, [count]) => n = Some(parse_field(count)?),
                (None, _) => {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        reason: "first line must hold the vertex count".into(),
                    })
                }
                (Some(_), [u, v]) => pairs.push((parse_field(u)?, parse_field(v)?)),
                (Some(_), _) => {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        reason: format!("expected \"u v\", found {line:?}"),
                    })
                }
            }
        }
        let n = n.ok_or(GraphError::Malformed {
            line: 0,
            reason: "empty document".into(),
        })?;
        Graph::new(n, pairs)
    }

    /// Canonical edge-list text (inverse of [`Graph::parse`]).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Sorted neighbor lists.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Edge indices incident to each vertex, in increasing order.
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(j);
            inc[v].push(j);
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Common degree, when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn is_bipartite(&self) -> bool {
        two_coloring(self).is_ok()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    C0,
    C1,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::C0 => Side::C1,
            Side::C1 => Side::C0,
        }
    }
}

/// The two color classes of a connected bipartite graph.
///
/// Canonical form puts vertex 0 in `c1`, so the bipartition of a subdivision
/// graph (original vertices in `c1`) is the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBipartition")]
pub struct Bipartition {
    pub c0: Vec<usize>,
    pub c1: Vec<usize>,
    #[serde(skip)]
    side: Vec<Option<Side>>,
}

impl Bipartition {
    /// Builds a bipartition from explicit classes and checks it against `g`.
    pub fn from_classes(g: &Graph, c0: Vec<usize>, c1: Vec<usize>) -> Result<Self, GraphError> {
        let mut side = vec![None; g.n()];
        for (class, tag) in [(&c0, Side::C0), (&c1, Side::C1)] {
            for &v in class {
                if v >= g.n() {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
                }
                if side[v].replace(tag).is_some() {
                    return Err(GraphError::InvalidParameters(format!(
                        "vertex {v} listed twice in bipartition"
                    )));
                }
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(GraphError::InvalidParameters(format!(
                "vertex {v} missing from bipartition"
            )));
        }
        for &(u, v) in g.edges() {
            if side[u] == side[v] {
                return Err(GraphError::NotBipartite(u));
            }
        }
        let mut c0 = c0;
        let mut c1 = c1;
        c0.sort_unstable();
        c1.sort_unstable();
        Ok(Bipartition { c0, c1, side })
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v].expect("vertex covered by bipartition")
    }

    pub fn class(&self, side: Side) -> &[usize] {
        match side {
            Side::C0 => &self.c0,
            Side::C1 => &self.c1,
        }
    }

    /// Position of `v` inside its own class list.
    pub fn position(&self, v: usize) -> usize {
        let class = self.class(self.side(v));
        class.binary_search(&v).expect("vertex in its class")
    }

    /// Endpoint of edge `(u, v)` lying in `side`.
    pub fn endpoint(&self, edge: (usize, usize), side: Side) -> usize {
        if self.side(edge.0) == side {
            edge.0
        } else {
            edge.1
        }
    }
}

#[derive(Deserialize)]
struct RawBipartition {
    c0: Vec<usize>,
    c1: Vec<usize>,
}

impl TryFrom<RawBipartition> for Bipartition {
    type Error = GraphError;

    /// Checks only that the classes partition `0..n`; edges are not known here.
    fn try_from(raw: RawBipartition) -> Result<Self, GraphError> {
        let n = raw.c0.len() + raw.c1.len();
        let empty = Graph::new(n, [])?;
        Bipartition::from_classes(&empty, raw.c0, raw.c1)
    }
}

fn two_coloring(g: &Graph) -> Result<Vec<Option<Side>>, GraphError> {
    let adj = g.adjacency_lists();
    let mut color: Vec<Option<Side>> = vec![None; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(Side::C1);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].expect("queued vertices are colored");
            for &y in &adj[x] {
                match color[y] {
                    None => {
                        color[y] = Some(cx.other());
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return Err(GraphError::NotBipartite(y)),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color)
}

/// Breadth-first 2-coloring from vertex 0 (which lands in `c1`).
pub fn bipartition(g: &Graph) -> Result<Bipartition, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let color = two_coloring(g)?;
    let (mut c0, mut c1) = (Vec::new(), Vec::new());
    for (v, c) in color.iter().enumerate() {
        match c.expect("connected graph fully colored") {
            Side::C0 => c0.push(v),
            Side::C1 => c1.push(v),
        }
    }
    Ok(Bipartition {
        c0,
        c1,
        side: color,
    })
}

/// Per-class common degrees; a class whose degrees differ gets `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub d0: Option<usize>,
    pub d1: Option<usize>,
}

impl DegreeProfile {
    pub fn of(g: &Graph, b: &Bipartition) -> Self {
        let deg = g.degrees();
        let common = |class: &[usize]| {
            let first = deg[*class.first()?];
            class.iter().all(|&v| deg[v] == first).then_some(first)
        };
        DegreeProfile {
            d0: common(&b.c0),
            d1: common(&b.c1),
        }
    }

    pub fn biregular(&self) -> Option<(usize, usize)> {
        Some((self.d0?, self.d1?))
    }
}

pub fn degree_profile(g: &Graph, b: &Bipartition) -> DegreeProfile {
    DegreeProfile::of(g, b)
}

/// Directed arc `(head, tail)`; the Grover coin acts on arcs sharing a tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub head: usize,
    pub tail: usize,
}

impl Arc {
    pub fn reversed(self) -> Arc {
        Arc {
            head: self.tail,
            tail: self.head,
        }
    }
}

/// Inserts a new vertex `n + j` in the middle of edge `j`. The returned
/// bipartition has the subdivision vertices in `c0` and the original vertices
/// in `c1`.
pub fn subdivision(g: &Graph) -> (Graph, Bipartition) {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (j, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + j));
        edges.push((v, n + j));
    }
    let s = Graph::new(n + g.edge_count(), edges).expect("subdivision of a simple graph is simple");
    let c0 = (n..n + g.edge_count()).collect();
    let c1 = (0..n).collect();
    let b = Bipartition::from_classes(&s, c0, c1).expect("subdivision is bipartite");
    (s, b)
}

/// Kronecker product `g × K2`: `(v, 0) ↦ v`, `(v, 1) ↦ n + v`.
pub fn bipartite_double_cover(g: &Graph) -> Result<(Graph, Bipartition), GraphError> {
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, n + v), (v, n + u)]);
    let cover = Graph::new(2 * n, edges)?;
    if !cover.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let b = Bipartition::from_classes(&cover, (n..2 * n).collect(), (0..n).collect())?;
    Ok((cover, b))
}

/// Vertices are the canonical edge indices of `g`; adjacent iff the edges
/// share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let inc = g.incident_edges();
    let mut edges = Vec::new();
    for list in &inc {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    // Two distinct simple edges share at most one endpoint, so no duplicates.
    Graph::new(g.edge_count(), edges).expect("line graph is simple")
}

pub fn cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameters(format!("cycle needs k >= 3, got {k}")));
    }
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)))
}

pub fn path(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameters("path needs at least one vertex".into()));
    }
    Graph::new(k, (1..k).map(|i| (i - 1, i)))
}

/// `K_{a,b}` with the `a`-side on vertices `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameters(format!(
            "complete_bipartite needs positive sides, got ({a}, {b})"
        )));
    }
    Graph::new(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameters("complete graph needs n >= 1".into()));
    }
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `K_{1,k}` with the center at vertex 0.
pub fn star(k: usize) -> Result<Graph, GraphError> {
    complete_bipartite(1, k)
}

/// Cayley graph of `Z_n` with the given connection set. The set must exclude
/// 0 (mod n) and be closed under negation.
pub fn circulant(n: usize, connection: &[i64]) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameters(format!("circulant needs n >= 2, got {n}")));
    }
    let modulus = n as i64;
    let set: std::collections::BTreeSet<i64> =
        connection.iter().map(|s| s.rem_euclid(modulus)).collect();
    if set.contains(&0) {
        return Err(GraphError::InvalidParameters(
            "connection set must not contain 0".into(),
        ));
    }
    if let Some(s) = set.iter().find(|&&s| !set.contains(&((modulus - s) % modulus))) {
        return Err(GraphError::InvalidParameters(format!(
            "connection set not closed under negation: {s} present, {} missing",
            modulus - s
        )));
    }
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..modulus {
        for &s in &set {
            let j = (i + s) % modulus;
            edges.insert((i.min(j) as usize, i.max(j) as usize));
        }
    }
    Graph::new(n, edges)
}

/// Circulant with the connection set `{±s : s ∈ reps}`.
pub fn circulant_symmetric(n: usize, reps: &[i64]) -> Result<Graph, GraphError> {
    let set: Vec<i64> = reps.iter().flat_map(|&s| [s, -s]).collect();
    circulant(n, &set)
}

/// Connected graph on `n` vertices from a seeded generator: a random spanning
/// tree plus each remaining pair with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameters("random graph needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Dense symmetric 0/1 adjacency matrix in vertex order.
pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = 1;
        a[v][u] = 1;
    }
    a
}

/// Adjacency matrix with rows and columns ordered `c0` then `c1`, so the
/// off-diagonal blocks are the biadjacency matrix and its transpose.
pub fn adjacency_matrix_ordered(g: &Graph, b: &Bipartition) -> Vec<Vec<i64>> {
    let order: Vec<usize> = b.c0.iter().chain(b.c1.iter()).copied().collect();
    let a = adjacency_matrix(g);
    order
        .iter()
        .map(|&r| order.iter().map(|&c| a[r][c]).collect())
        .collect()
}

/// Biadjacency block `C` with rows indexed by `c1` and columns by `c0`
/// (`C[y][x] = 1` iff `xy` is an edge).
pub fn biadjacency(g: &Graph, b: &Bipartition) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; b.c0.len()]; b.c1.len()];
    for &e in g.edges() {
        let x = b.endpoint(e, Side::C0);
        let y = b.endpoint(e, Side::C1);
        c[b.position(y)][b.position(x)] = 1;
    }
    c
}

/// Named graphs used throughout the tests and the CLI.
pub mod fixtures {
    use super::*;

    /// The 8-vertex tree on which the bipartite walk is worked out by hand.
    pub fn figure1() -> Graph {
        Graph::new(8, [(0, 1), (0, 5), (1, 2), (1, 4), (2, 3), (5, 6), (6, 7)]).unwrap()
    }

    /// 5-vertex bipartite graph used for the Grover/subdivision equality.
    pub fn figure4a() -> Graph {
        Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3)]).unwrap()
    }

    /// 4-regular graph on 8 vertices with spectrum {−(1+√5), −2, 0, √5−1, 4}.
    pub fn figure7() -> Graph {
        Graph::new(
            8,
            [
                (0, 3),
                (0, 4),
                (0, 5),
                (0, 6),
                (1, 4),
                (1, 5),
                (1, 6),
                (1, 7),
                (2, 4),
                (2, 5),
                (2, 6),
                (2, 7),
                (3, 5),
                (3, 6),
                (3, 7),
                (4, 7),
            ],
        )
        .unwrap()
    }

    /// Incidence graph of the Fano plane.
    pub fn heawood() -> Graph {
        let lines = [
            [0, 1, 3],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 0],
            [5, 6, 1],
            [6, 0, 2],
        ];
        let edges = lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, 7 + l)));
        Graph::new(14, edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// `Cayley(Z_10, {±1, ±4})`.
    pub fn cayley10() -> Graph {
        circulant_symmetric(10, &[1, 4]).unwrap()
    }
}

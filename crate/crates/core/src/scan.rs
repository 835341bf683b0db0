//! Exhaustive enumeration of connected biregular bipartite graphs, one per
//! isomorphism class.
//!
//! A graph is given by its `a × b` biadjacency matrix with row sums `d_a` and
//! column sums `d_b`. Matrices are generated row by row with rows and
//! columns in nonincreasing lexicographic order (every matrix can be brought
//! to that form by permuting rows and columns), then deduplicated by a
//! canonical form.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub const MAX_SCAN_EDGES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("edge bound {0} exceeds the exhaustive limit {MAX_SCAN_EDGES}")]
    BoundExceeded(usize),
}

/// One enumerated graph. Vertices `0..a` form the side of degree `d_a`,
/// vertices `a..a+b` the side of degree `d_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub a: usize,
    pub b: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub graph: Graph,
}

/// Side sizes and degrees `(a, b, d_a, d_b)` with `a ≤ b` and
/// `a·d_a = b·d_b = m` that admit a connected graph.
pub fn profiles(m: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=m {
        if m % a != 0 {
            continue;
        }
        let d_a = m / a;
        for b in a..=m {
            if m % b != 0 {
                continue;
            }
            let d_b = m / b;
            if d_a <= b && d_b <= a && m + 1 >= a + b {
                out.push((a, b, d_a, d_b));
            }
        }
    }
    out
}

/// Bitmask rows; bit `b − 1 − j` is column `j`, so numeric order on rows is
/// lexicographic order with column 0 most significant.
struct Search {
    a: usize,
    b: usize,
    d_b: usize,
    rows: Vec<u32>,
    col_sums: Vec<usize>,
    candidates: Vec<u32>,
    found: Vec<Vec<u32>>,
}

impl Search {
    fn run(&mut self, i: usize, prev: u32) {
        if i == self.a {
            if self.col_sums.iter().all(|&s| s == self.d_b) && self.columns_ordered() {
                self.found.push(self.rows.clone());
            }
            return;
        }
        let remaining = self.a - i - 1;
        for idx in 0..self.candidates.len() {
            let row = self.candidates[idx];
            if row > prev {
                continue;
            }
            let ok = (0..self.b).all(|j| {
                let s = self.col_sums[j] + self.bit(row, j);
                s <= self.d_b && s + remaining >= self.d_b
            });
            if !ok {
                continue;
            }
            for j in 0..self.b {
                self.col_sums[j] += self.bit(row, j);
            }
            self.rows.push(row);
            self.run(i + 1, row);
            self.rows.pop();
            for j in 0..self.b {
                self.col_sums[j] -= self.bit(row, j);
            }
        }
    }

    fn bit(&self, row: u32, j: usize) -> usize {
        ((row >> (self.b - 1 - j)) & 1) as usize
    }

    fn columns_ordered(&self) -> bool {
        let cols = columns(&self.rows, self.b);
        cols.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Columns as bitmasks over rows, row 0 most significant.
fn columns(rows: &[u32], b: usize) -> Vec<u64> {
    (0..b)
        .map(|j| {
            rows.iter()
                .fold(0u64, |acc, &r| (acc << 1) | ((r >> (b - 1 - j)) & 1) as u64)
        })
        .collect()
}

fn subsets_desc(b: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..(1 << b)).filter(|m| m.count_ones() as usize == k).collect();
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Canonical form of a biadjacency matrix under row and column
/// permutations: the largest, over row orders, of the matrix with its
/// columns sorted in decreasing order.
fn canonical_sides(m: &[Vec<bool>], perms: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let b = m.first().map_or(0, Vec::len);
    let mut best: Option<Vec<Vec<bool>>> = None;
    for p in perms {
        let mut cols: Vec<Vec<bool>> = (0..b).map(|j| p.iter().map(|&i| m[i][j]).collect()).collect();
        cols.sort_unstable_by(|x, y| y.cmp(x));
        if best.as_ref().is_none_or(|bst| cols > *bst) {
            best = Some(cols);
        }
    }
    best.unwrap_or_default()
}

fn to_bool(rows: &[u32], b: usize) -> Vec<Vec<bool>> {
    rows.iter()
        .map(|&r| (0..b).map(|j| (r >> (b - 1 - j)) & 1 == 1).collect())
        .collect()
}

fn transpose(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let b = m.first().map_or(0, Vec::len);
    (0..b).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Canonical form; when both sides have the same size and degree the two
/// orientations are compared as well.
pub fn canonical_form(m: &[Vec<bool>], symmetric_sides: bool) -> Vec<Vec<bool>> {
    let perms = permutations(m.len());
    let c = canonical_sides(m, &perms);
    if symmetric_sides {
        let t = transpose(m);
        let perms_t = permutations(t.len());
        c.max(canonical_sides(&t, &perms_t))
    } else {
        c
    }
}

fn graph_of(rows: &[Vec<bool>], a: usize) -> Graph {
    let edges = rows.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, &x)| x)
            .map(move |(j, _)| (i, a + j))
    });
    let b = rows.first().map_or(0, Vec::len);
    Graph::new(a + b, edges).expect("biadjacency matrices give simple graphs")
}

/// Connected `(d_a, d_b)`-biregular graphs with sides `a`, `b`, one per
/// isomorphism class.
pub fn enumerate_profile(a: usize, b: usize, d_a: usize, d_b: usize) -> Vec<ScanEntry> {
    let mut search = Search {
        a,
        b,
        d_b,
        rows: Vec::with_capacity(a),
        col_sums: vec![0; b],
        candidates: subsets_desc(b, d_a),
        found: Vec::new(),
    };
    search.run(0, u32::MAX);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rows in search.found {
        let m = to_bool(&rows, b);
        let canon = canonical_form(&m, a == b && d_a == d_b);
        if !seen.insert(canon) {
            continue;
        }
        let graph = graph_of(&m, a);
        if graph.is_connected() {
            out.push(ScanEntry { a, b, d_a, d_b, graph });
        }
    }
    out
}

/// Every connected biregular bipartite graph with at most `max_edges` edges,
/// ordered by edge count, then side sizes.
pub fn enumerate_biregular(max_edges: usize) -> Result<Vec<ScanEntry>, ScanError> {
    if max_edges > MAX_SCAN_EDGES {
        return Err(ScanError::BoundExceeded(max_edges));
    }
    let mut out = Vec::new();
    for m in 1..=max_edges {
        for (a, b, d_a, d_b) in profiles(m) {
            out.extend(enumerate_profile(a, b, d_a, d_b));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{self, complete_bipartite, cycle};

    fn count(a: usize, b: usize, d_a: usize, d_b: usize) -> usize {
        enumerate_profile(a, b, d_a, d_b).len()
    }

    #[test]
    fn trees_are_stars() {
        for d in 1..=8 {
            let found = enumerate_profile(1, d, d, 1);
            assert_eq!(found.len(), 1);
            assert_eq!(found[0].graph, complete_bipartite(1, d).unwrap());
        }
    }

    #[test]
    fn two_regular_graphs_are_even_cycles() {
        for k in 2..=6 {
            let found = enumerate_profile(k, k, 2, 2);
            assert_eq!(found.len(), 1, "k = {k}");
            let g = &found[0].graph;
            assert_eq!(g.edge_count(), 2 * k);
            assert_eq!(g.regular_degree(), Some(2));
            assert!(g.is_connected());
            let _ = cycle(2 * k).unwrap();
        }
    }

    #[test]
    fn known_class_counts() {
        // Complete bipartite graphs are unique in their profile.
        assert_eq!(count(2, 3, 3, 2), 1);
        assert_eq!(count(3, 3, 3, 3), 1);
        // 3-regular bipartite graphs on 8 vertices: the cube and K_{4,4}
        // minus a perfect matching coincide, so there is one.
        assert_eq!(count(4, 4, 3, 3), 1);
        // (2,3)-biregular on 4 + 6 vertices are subdivided cubic multigraphs
        // on 4 vertices: K4, and the 4-cycle with two opposite edges doubled.
        assert_eq!(count(4, 6, 3, 2), 2);
    }

    #[test]
    fn profiles_respect_connectivity() {
        assert_eq!(profiles(4), vec![(1, 4, 4, 1), (2, 2, 2, 2)]);
        assert!(profiles(6).contains(&(2, 3, 3, 2)));
        assert!(profiles(6).contains(&(3, 3, 2, 2)));
    }

    #[test]
    fn output_is_biregular_and_distinct() {
        let all = enumerate_biregular(9).unwrap();
        for e in &all {
            let b = graph::bipartition(&e.graph).unwrap();
            let prof = graph::degree_profile(&e.graph, &b);
            assert!(prof.biregular().is_some());
            assert_eq!(e.graph.edge_count(), e.a * e.d_a);
        }
        let canon: HashSet<_> = all
            .iter()
            .map(|e| {
                let m: Vec<Vec<bool>> = (0..e.a)
                    .map(|i| (0..e.b).map(|j| e.graph.edge_index(i, e.a + j).is_some()).collect())
                    .collect();
                (e.a, e.b, canonical_form(&m, e.a == e.b && e.d_a == e.d_b))
            })
            .collect();
        assert_eq!(canon.len(), all.len());
        assert!(enumerate_biregular(13).is_err());
    }

    #[test]
    fn includes_small_named_graphs() {
        let all = enumerate_biregular(9).unwrap();
        let has = |g: &Graph| all.iter().any(|e| &e.graph == g);
        assert!(has(&complete_bipartite(2, 2).unwrap()));
        assert!(has(&complete_bipartite(2, 3).unwrap()));
        assert!(has(&complete_bipartite(3, 3).unwrap()));
        assert!(all.iter().any(|e| e.graph.edge_count() == 6 && e.graph.regular_degree() == Some(2)));
    }
}

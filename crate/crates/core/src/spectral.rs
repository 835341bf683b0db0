//! Numeric eigenanalysis of graphs and walk operators, and the exact map from
//! the spectrum of a biregular bipartite graph to the spectrum of its walk.
//!
//! Eigenvalues of `U` are `e^{±iθ}` with `cos θ = 2μ − 1`, where `μ` runs over
//! the eigenvalues of `ĈĈᵀ` and `Ĉ[y][x] = 1/√(deg x · deg y)` for every
//! edge `xy`, `x ∈ C0`, `y ∈ C1`. For a `(d0, d1)`-biregular graph
//! `μ = λ²/(d0 d1)` with `λ` an adjacency eigenvalue.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    char_poly, roots_degree_le2, LinalgError, QuadraticValue, Rational, RationalMatrix,
    RootFactorization,
};
use crate::graph::{self, adjacency_matrix, biadjacency, Bipartition, Graph, GraphError, Side};
use crate::walk::{build_bipartite_walk, WalkError, WalkOperator};

pub type Complex64 = Complex<f64>;

/// Grouping tolerance for eigenvalues and support membership.
pub const GROUP_TOL: f64 = 1e-8;
/// Bound on `‖A − VΛVᵀ‖_max` for a decomposition to be accepted.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("eigendecomposition reconstruction error {0:e} exceeds tolerance")]
    Reconstruction(f64),
    #[error("graph is not biregular bipartite")]
    NotBiregular,
    #[error("{0} is not an interior eigenvalue of the normalized biadjacency Gram matrix")]
    NotInterior(f64),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A cluster of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    /// First column of the group in the sorted eigenvector matrix.
    pub start: usize,
}

/// Eigendecomposition of a real symmetric matrix, eigenvalues sorted in
/// decreasing order.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
    pub groups: Vec<EigenGroup>,
    pub tolerance: f64,
}

impl SpectralDecomposition {
    /// Orthogonal projection onto the eigenspace of group `g`.
    pub fn projector(&self, g: usize) -> DMatrix<f64> {
        let grp = &self.groups[g];
        let v = self.eigenvectors.columns(grp.start, grp.multiplicity);
        &v * v.transpose()
    }

    /// Index of the group whose value is within `tol` of `x`.
    pub fn find_group(&self, x: f64, tol: f64) -> Option<usize> {
        self.groups.iter().position(|g| (g.value - x).abs() <= tol)
    }

    pub fn distinct(&self) -> Vec<(f64, usize)> {
        self.groups.iter().map(|g| (g.value, g.multiplicity)).collect()
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Groups a decreasing sequence into runs whose consecutive gaps are ≤ `tol`.
fn group_sorted(values: &[f64], tol: f64) -> Vec<EigenGroup> {
    let mut groups: Vec<EigenGroup> = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (values[i - 1] - x).abs() <= tol => {
                g.value = (g.value * g.multiplicity as f64 + x) / (g.multiplicity + 1) as f64;
                g.multiplicity += 1;
            }
            _ => groups.push(EigenGroup {
                value: x,
                multiplicity: 1,
                start: i,
            }),
        }
    }
    groups
}

pub fn sym_eig(a: &DMatrix<f64>) -> Result<SpectralDecomposition, SpectralError> {
    let asym = max_abs(&(a - a.transpose()));
    if !a.is_square() || asym > SYMMETRY_TOL {
        return Err(SpectralError::NotSymmetric(asym));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            eigenvectors: DMatrix::zeros(0, 0),
            groups: vec![],
            tolerance: GROUP_TOL,
        });
    }
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&eigenvalues));
    let err = max_abs(&(a - &eigenvectors * lambda * eigenvectors.transpose()));
    if err > RECONSTRUCTION_TOL {
        return Err(SpectralError::Reconstruction(err));
    }
    let groups = group_sorted(&eigenvalues, GROUP_TOL);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        groups,
        tolerance: GROUP_TOL,
    })
}

pub fn integer_matrix_f64(m: &[Vec<i64>]) -> DMatrix<f64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, cols, |r, c| m[r][c] as f64)
}

pub fn adjacency_spectrum(g: &Graph) -> Result<SpectralDecomposition, SpectralError> {
    sym_eig(&integer_matrix_f64(&adjacency_matrix(g)))
}

/// One conjugate pair `e^{±iθ}`, `0 < θ < π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub theta: f64,
    pub cos: f64,
    /// Multiplicity of `e^{iθ}` (equal to that of `e^{−iθ}`).
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_cos: Option<QuadraticValue>,
}

/// Spectrum of a real orthogonal operator: the `±1` multiplicities and the
/// conjugate pairs, sorted by increasing `θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenphaseSet {
    pub plus_one: usize,
    pub minus_one: usize,
    pub phases: Vec<Phase>,
}

impl EigenphaseSet {
    pub fn dimension(&self) -> usize {
        self.plus_one + self.minus_one + 2 * self.phases.iter().map(|p| p.multiplicity).sum::<usize>()
    }

    /// Full eigenvalue multiset.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(1.0, 0.0); self.plus_one];
        out.extend(std::iter::repeat(Complex64::new(-1.0, 0.0)).take(self.minus_one));
        for p in &self.phases {
            for _ in 0..p.multiplicity {
                out.push(Complex64::from_polar(1.0, p.theta));
                out.push(Complex64::from_polar(1.0, -p.theta));
            }
        }
        out
    }

    /// Same `±1` counts and the same pairs with cosines within `tol`.
    pub fn matches(&self, other: &EigenphaseSet, tol: f64) -> bool {
        self.plus_one == other.plus_one
            && self.minus_one == other.minus_one
            && self.phases.len() == other.phases.len()
            && self
                .phases
                .iter()
                .zip(&other.phases)
                .all(|(a, b)| a.multiplicity == b.multiplicity && (a.cos - b.cos).abs() <= tol)
    }

    fn sort(&mut self) {
        self.phases.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    }
}

fn bipartite_parts(g: &Graph) -> Result<(Bipartition, usize, usize), SpectralError> {
    let b = graph::bipartition(g)?;
    let (d0, d1) = graph::degree_profile(g, &b)
        .biregular()
        .ok_or(SpectralError::NotBiregular)?;
    Ok((b, d0, d1))
}

/// `C Cᵀ` for the `|C1| × |C0|` biadjacency matrix `C`.
pub fn gram_c1(g: &Graph, b: &Bipartition) -> Vec<Vec<i64>> {
    let c = biadjacency(g, b);
    let rows = c.len();
    (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| c[i].iter().zip(&c[j]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

/// Exact eigenvalues of `C Cᵀ` (the squares `λ²` of the adjacency
/// eigenvalues, one block), when they all have degree at most two.
pub fn squared_spectrum_exact(g: &Graph, b: &Bipartition) -> Result<RootFactorization, SpectralError> {
    let p = char_poly(&gram_c1(g, b))?;
    Ok(roots_degree_le2(&p)?)
}

/// `cos θ = 2λ²/(d0 d1) − 1`.
pub fn cos_from_lambda_sq(lambda_sq: &QuadraticValue, d0: usize, d1: usize) -> QuadraticValue {
    let k = Rational::new(BigInt::from(2), BigInt::from(d0 * d1));
    &lambda_sq.scale(&k) - &QuadraticValue::integer(1)
}

/// Walk spectrum predicted from the adjacency spectrum of a biregular
/// bipartite graph. Interior phases come from `λ² ∈ (0, d0 d1)`; the `±1`
/// multiplicities come from [`pm1_eigenspace_dims`].
pub fn walk_phases_from_graph(g: &Graph) -> Result<EigenphaseSet, SpectralError> {
    let (b, d0, d1) = bipartite_parts(g)?;
    let top = (d0 * d1) as f64;
    let gram = sym_eig(&integer_matrix_f64(&gram_c1(g, &b)))?;
    let exact = squared_spectrum_exact(g, &b)?;
    let mut set = EigenphaseSet {
        plus_one: 0,
        minus_one: 0,
        phases: Vec::new(),
    };
    for grp in &gram.groups {
        let mu = grp.value / top;
        if mu <= GROUP_TOL || mu >= 1.0 - GROUP_TOL {
            continue;
        }
        let cos = 2.0 * mu - 1.0;
        let exact_cos = exact
            .roots()
            .iter()
            .find(|r| (r.value.to_f64() - grp.value).abs() <= 1e-6)
            .map(|r| cos_from_lambda_sq(&r.value, d0, d1));
        set.phases.push(Phase {
            theta: cos.clamp(-1.0, 1.0).acos(),
            cos: exact_cos.as_ref().map_or(cos, QuadraticValue::to_f64),
            multiplicity: grp.multiplicity,
            exact_cos,
        });
    }
    let w = build_bipartite_walk(g)?;
    let (plus, minus) = pm1_eigenspace_dims(&w)?;
    set.plus_one = plus;
    set.minus_one = minus;
    set.sort();
    Ok(set)
}

/// Dimensions of the `+1` and `−1` eigenspaces of `U` for a connected graph:
/// `|E| − |C0| − |C1| + 2` and `|C0| + |C1| − 2 rank(C)`.
pub fn pm1_eigenspace_dims(w: &WalkOperator) -> Result<(usize, usize), SpectralError> {
    if !w.graph.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let c0 = w.bipartition.c0.len();
    let c1 = w.bipartition.c1.len();
    let rank = RationalMatrix::from_integers(&biadjacency(&w.graph, &w.bipartition)).rank();
    Ok((w.dim() + 2 - c0 - c1, c0 + c1 - 2 * rank))
}

/// `Ĉ`, `|C1| × |C0|`.
pub fn normalized_biadjacency(w: &WalkOperator) -> DMatrix<f64> {
    let g = &w.graph;
    let b = &w.bipartition;
    let mut m = DMatrix::zeros(b.c1.len(), b.c0.len());
    for &edge in g.edges() {
        let x = b.endpoint(edge, Side::C0);
        let y = b.endpoint(edge, Side::C1);
        m[(b.position(y), b.position(x))] = 1.0 / ((g.degree(x) * g.degree(y)) as f64).sqrt();
    }
    m
}

/// `P̂_1`, `|E| × |C1|`, with entry `1/√deg y` for an edge at `y ∈ C1`.
fn normalized_characteristic_c1(w: &WalkOperator) -> DMatrix<f64> {
    let g = &w.graph;
    let b = &w.bipartition;
    let mut m = DMatrix::zeros(g.edge_count(), b.c1.len());
    for (e, &edge) in g.edges().iter().enumerate() {
        let y = b.endpoint(edge, Side::C1);
        m[(e, b.position(y))] = 1.0 / (g.degree(y) as f64).sqrt();
    }
    m
}

/// Decomposition of `ĈĈᵀ`.
pub fn gram_decomposition(w: &WalkOperator) -> Result<SpectralDecomposition, SpectralError> {
    let c = normalized_biadjacency(w);
    let gram = &c * c.transpose();
    // Exact symmetry is lost to rounding in the product.
    let sym = (&gram + gram.transpose()) * 0.5;
    sym_eig(&sym)
}

/// Eigenvalues of `ĈĈᵀ` strictly inside `(0, 1)`, with multiplicities.
pub fn interior_mus(w: &WalkOperator) -> Result<Vec<(f64, usize)>, SpectralError> {
    Ok(gram_decomposition(w)?
        .distinct()
        .into_iter()
        .filter(|&(mu, _)| mu > GROUP_TOL && mu < 1.0 - GROUP_TOL)
        .collect())
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// The `e^{iθ}` and `e^{−iθ}` spectral idempotents of `U` for an interior
/// eigenvalue `μ` of `ĈĈᵀ`, where `cos θ = 2μ − 1`.
///
/// With `W = P̂_1 E_μ P̂_1ᵀ`:
/// `F = [(cos θ + 1)W − (e^{iθ} + 1)PW − (e^{−iθ} + 1)WP + 2PWP] / sin²θ`.
pub fn complex_eigenprojection(
    w: &WalkOperator,
    mu: f64,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>), SpectralError> {
    if mu <= GROUP_TOL || mu >= 1.0 - GROUP_TOL {
        return Err(SpectralError::NotInterior(mu));
    }
    let gram = gram_decomposition(w)?;
    let g = gram.find_group(mu, 1e-6).ok_or(SpectralError::NotInterior(mu))?;
    complex_pair(w, &gram.projector(g), gram.groups[g].value)
}

fn complex_pair(
    w: &WalkOperator,
    e_mu: &DMatrix<f64>,
    mu: f64,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>), SpectralError> {
    let p1 = normalized_characteristic_c1(w);
    let wm = &p1 * e_mu * p1.transpose();
    let p = w.p.to_f64();
    let pw = to_complex(&(&p * &wm));
    let wp = to_complex(&(&wm * &p));
    let pwp = to_complex(&(&p * &wm * &p));
    let wc = to_complex(&wm);
    let c = 2.0 * mu - 1.0;
    let s2 = 1.0 - c * c;
    let s = s2.sqrt();
    let one = Complex64::new(1.0, 0.0);
    let build = |e: Complex64| {
        (&wc * Complex64::new(c + 1.0, 0.0) - &pw * (e + one) - &wp * (e.conj() + one)
            + &pwp * Complex64::new(2.0, 0.0))
            / Complex64::new(s2, 0.0)
    };
    Ok((build(Complex64::new(c, s)), build(Complex64::new(c, -s))))
}

/// A spectral idempotent of `U` for the eigenvalue `e^{iθ}`, `θ ∈ (−π, π]`.
#[derive(Debug, Clone)]
pub struct SpectralIdempotent {
    pub theta: f64,
    pub matrix: DMatrix<Complex64>,
}

impl SpectralIdempotent {
    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

fn symmetric_part(u: &RationalMatrix) -> DMatrix<f64> {
    let m = u.to_f64();
    (&m + m.transpose()) * 0.5
}

/// All spectral idempotents of `U`: the `±1` projectors (eigenspaces of
/// `(U + Uᵀ)/2` at `±1`) and one conjugate pair per interior `μ`.
pub fn spectral_idempotents(w: &WalkOperator) -> Result<Vec<SpectralIdempotent>, SpectralError> {
    let h = sym_eig(&symmetric_part(&w.u))?;
    let mut out = Vec::new();
    if let Some(g) = h.find_group(1.0, GROUP_TOL) {
        out.push(SpectralIdempotent {
            theta: 0.0,
            matrix: to_complex(&h.projector(g)),
        });
    }
    if let Some(g) = h.find_group(-1.0, GROUP_TOL) {
        out.push(SpectralIdempotent {
            theta: std::f64::consts::PI,
            matrix: to_complex(&h.projector(g)),
        });
    }
    let gram = gram_decomposition(w)?;
    for (g, grp) in gram.groups.iter().enumerate() {
        let mu = grp.value;
        if mu <= GROUP_TOL || mu >= 1.0 - GROUP_TOL {
            continue;
        }
        let (f, fbar) = complex_pair(w, &gram.projector(g), mu)?;
        let theta = (2.0 * mu - 1.0).clamp(-1.0, 1.0).acos();
        out.push(SpectralIdempotent { theta, matrix: f });
        out.push(SpectralIdempotent {
            theta: -theta,
            matrix: fbar,
        });
    }
    Ok(out)
}

/// Phase pairs `(θ_r, θ_s)` with `E_r D_a E_s ≠ 0`, `D_a = e_a e_aᵀ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSupport {
    pub edge: usize,
    pub pairs: Vec<(f64, f64)>,
}

impl EigenvalueSupport {
    /// Distinct phases occurring in some pair.
    pub fn phases(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &(r, s) in &self.pairs {
            for t in [r, s] {
                if !out.iter().any(|&x| (x - t).abs() <= GROUP_TOL) {
                    out.push(t);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

pub fn eigenvalue_support(w: &WalkOperator, edge: usize) -> Result<EigenvalueSupport, SpectralError> {
    if edge >= w.dim() {
        return Err(SpectralError::EdgeOutOfRange(edge));
    }
    let idem = spectral_idempotents(w)?;
    // E_r D_a E_s is the outer product of column a of E_r and row a of E_s.
    let col_norm: Vec<f64> = idem
        .iter()
        .map(|e| e.matrix.column(edge).iter().fold(0.0f64, |m, z| m.max(z.norm())))
        .collect();
    let row_norm: Vec<f64> = idem
        .iter()
        .map(|e| e.matrix.row(edge).iter().fold(0.0f64, |m, z| m.max(z.norm())))
        .collect();
    let mut pairs = Vec::new();
    for (r, er) in idem.iter().enumerate() {
        for (s, es) in idem.iter().enumerate() {
            if col_norm[r] * row_norm[s] > GROUP_TOL {
                pairs.push((er.theta, es.theta));
            }
        }
    }
    Ok(EigenvalueSupport { edge, pairs })
}

/// Spectrum of a real orthogonal matrix, read from its symmetric part: an
/// eigenvalue `c` of `(U + Uᵀ)/2` is `cos θ` for the pair `e^{±iθ}`, and
/// interior values occur with even multiplicity.
pub fn orthogonal_spectrum(u: &RationalMatrix) -> Result<EigenphaseSet, SpectralError> {
    let h = sym_eig(&symmetric_part(u))?;
    let mut set = EigenphaseSet {
        plus_one: 0,
        minus_one: 0,
        phases: Vec::new(),
    };
    for grp in &h.groups {
        if (grp.value - 1.0).abs() <= GROUP_TOL {
            set.plus_one = grp.multiplicity;
        } else if (grp.value + 1.0).abs() <= GROUP_TOL {
            set.minus_one = grp.multiplicity;
        } else {
            set.phases.push(Phase {
                theta: grp.value.clamp(-1.0, 1.0).acos(),
                cos: grp.value,
                multiplicity: grp.multiplicity / 2,
                exact_cos: None,
            });
        }
    }
    set.sort();
    Ok(set)
}

fn regular_degree(g: &Graph) -> Result<usize, SpectralError> {
    g.regular_degree().ok_or(GraphError::NotRegular.into())
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Adjacency spectrum of `S(g)` for `d`-regular `g`: `±√(λ + d)` for each
/// `λ ∈ spec(g)` and `|E| − |V|` further zeros.
pub fn subdivision_spectrum(g: &Graph) -> Result<Vec<f64>, SpectralError> {
    let d = regular_degree(g)? as f64;
    let spec = adjacency_spectrum(g)?;
    let mut out = Vec::with_capacity(g.n() + g.edge_count());
    for &l in &spec.eigenvalues {
        let shifted = l + d;
        let r = if shifted <= GROUP_TOL { 0.0 } else { shifted.sqrt() };
        out.push(r);
        out.push(-r);
    }
    out.extend(std::iter::repeat(0.0).take(g.edge_count() - g.n()));
    Ok(sorted_desc(out))
}

/// Adjacency spectrum of the line graph of `d`-regular `g`:
/// `λ + d − 2` for each `λ ∈ spec(g)`, adjusted by `|E| − |V|` copies of `−2`.
pub fn line_graph_spectrum(g: &Graph) -> Result<Vec<f64>, SpectralError> {
    let d = regular_degree(g)? as f64;
    let spec = adjacency_spectrum(g)?;
    let mut out: Vec<f64> = spec.eigenvalues.iter().map(|l| l + d - 2.0).collect();
    let (e, n) = (g.edge_count(), g.n());
    if e >= n {
        out.extend(std::iter::repeat(-2.0).take(e - n));
    } else {
        for _ in 0..n - e {
            let i = out
                .iter()
                .position(|x| (x + 2.0).abs() <= GROUP_TOL)
                .expect("(x + 2)^(n - e) divides the shifted polynomial");
            out.remove(i);
        }
    }
    Ok(sorted_desc(out))
}

/// Largest pairwise difference between two sorted multisets, or `None` when
/// their sizes differ.
pub fn multiset_distance(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, fixtures, line_graph, star};

    fn close(a: &[f64], b: &[f64]) -> bool {
        multiset_distance(a, b).is_some_and(|d| d <= 1e-8)
    }

    #[test]
    fn k22_and_c6_adjacency() {
        let s = adjacency_spectrum(&complete_bipartite(2, 2).unwrap()).unwrap();
        assert!(close(&s.eigenvalues, &[2.0, 0.0, 0.0, -2.0]));
        assert_eq!(s.groups.len(), 3);
        let s = adjacency_spectrum(&cycle(6).unwrap()).unwrap();
        assert!(close(&s.eigenvalues, &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0]));
    }

    #[test]
    fn figure7_distinct_values() {
        let s = adjacency_spectrum(&fixtures::figure7()).unwrap();
        let r5 = 5f64.sqrt();
        let distinct: Vec<f64> = s.groups.iter().map(|g| g.value).collect();
        assert!(close(&distinct, &[4.0, r5 - 1.0, 0.0, -2.0, -(1.0 + r5)]));
        assert_eq!(s.groups.iter().map(|g| g.multiplicity).sum::<usize>(), 8);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(sym_eig(&m), Err(SpectralError::NotSymmetric(_))));
    }

    #[test]
    fn pm1_dims_examples() {
        let dims = |g: Graph| pm1_eigenspace_dims(&build_bipartite_walk(&g).unwrap()).unwrap();
        assert_eq!(dims(complete_bipartite(2, 2).unwrap()), (2, 2));
        assert_eq!(dims(cycle(6).unwrap()), (2, 0));
        assert_eq!(dims(complete_bipartite(1, 1).unwrap()), (1, 0));
    }

    #[test]
    fn c6_phase_is_two_thirds_pi() {
        let set = walk_phases_from_graph(&cycle(6).unwrap()).unwrap();
        assert_eq!(set.phases.len(), 1);
        let p = &set.phases[0];
        assert!((p.theta - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        assert_eq!(p.exact_cos.as_ref().unwrap().to_string(), "-1/2");
        assert_eq!(set.dimension(), 6);
    }

    #[test]
    fn cayley10_subdivision_phase() {
        let (s, _) = graph::subdivision(&fixtures::cayley10());
        let set = walk_phases_from_graph(&s).unwrap();
        let cosines: Vec<String> = set
            .phases
            .iter()
            .map(|p| p.exact_cos.as_ref().unwrap().to_string())
            .collect();
        assert!(cosines.contains(&"-1/4+1/4*sqrt(5)".to_string()), "{cosines:?}");
        let fifth = set.phases.iter().find(|p| (p.cos - (5f64.sqrt() - 1.0) / 4.0).abs() < 1e-12);
        assert!((fifth.unwrap().theta - 2.0 * std::f64::consts::PI / 5.0).abs() < 1e-9);
    }

    #[test]
    fn k22_only_real_eigenvalues() {
        let set = walk_phases_from_graph(&complete_bipartite(2, 2).unwrap()).unwrap();
        assert!(set.phases.is_empty());
        assert_eq!((set.plus_one, set.minus_one), (2, 2));
    }

    #[test]
    fn c6_complex_projection() {
        let w = build_bipartite_walk(&cycle(6).unwrap()).unwrap();
        let mus = interior_mus(&w).unwrap();
        assert_eq!(mus.len(), 1);
        assert!((mus[0].0 - 0.25).abs() < 1e-12);
        let (f, fbar) = complex_eigenprojection(&w, 0.25).unwrap();
        let u = to_complex(&w.u.to_f64());
        let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((&u * &f - &f * e).iter().all(|z| z.norm() < 1e-8));
        assert!((&u * &fbar - &fbar * e.conj()).iter().all(|z| z.norm() < 1e-8));
        assert!((&f * &f - &f).iter().all(|z| z.norm() < 1e-8));
        let trace: Complex64 = f.diagonal().iter().sum();
        assert!((trace.re - 2.0).abs() < 1e-8);
        assert!((&f + &fbar).iter().all(|z| z.im.abs() < 1e-12));
    }

    #[test]
    fn k23_has_no_interior_mu() {
        let w = build_bipartite_walk(&complete_bipartite(2, 3).unwrap()).unwrap();
        assert!(interior_mus(&w).unwrap().is_empty());
        assert!(matches!(
            complex_eigenprojection(&w, 1.0),
            Err(SpectralError::NotInterior(_))
        ));
        assert!(complex_eigenprojection(&w, 0.5).is_err());
    }

    #[test]
    fn idempotents_resolve_identity() {
        for g in [fixtures::figure1(), cycle(8).unwrap(), fixtures::heawood()] {
            let w = build_bipartite_walk(&g).unwrap();
            let idem = spectral_idempotents(&w).unwrap();
            let n = w.dim();
            let sum = idem
                .iter()
                .fold(DMatrix::<Complex64>::zeros(n, n), |acc, e| acc + &e.matrix);
            let id = DMatrix::<Complex64>::identity(n, n);
            assert!((sum - id).iter().all(|z| z.norm() < 1e-8));
            let u = to_complex(&w.u.to_f64());
            for e in &idem {
                assert!((&u * &e.matrix - &e.matrix * e.eigenvalue()).iter().all(|z| z.norm() < 1e-8));
            }
        }
    }

    #[test]
    fn supports() {
        let w = build_bipartite_walk(&complete_bipartite(1, 1).unwrap()).unwrap();
        assert_eq!(eigenvalue_support(&w, 0).unwrap().pairs, vec![(0.0, 0.0)]);

        let w = build_bipartite_walk(&complete_bipartite(2, 2).unwrap()).unwrap();
        for a in 0..4 {
            let s = eigenvalue_support(&w, a).unwrap();
            assert_eq!(s.pairs.len(), 4);
            assert_eq!(s.phases(), vec![0.0, std::f64::consts::PI]);
        }
        assert!(eigenvalue_support(&w, 4).is_err());
    }

    #[test]
    fn orthogonal_spectrum_matches_prediction() {
        for g in [cycle(6).unwrap(), complete_bipartite(2, 3).unwrap(), fixtures::heawood()] {
            let predicted = walk_phases_from_graph(&g).unwrap();
            let numeric = orthogonal_spectrum(&build_bipartite_walk(&g).unwrap().u).unwrap();
            assert!(predicted.matches(&numeric, 1e-8), "{predicted:?} vs {numeric:?}");
        }
    }

    #[test]
    fn subdivision_spectra() {
        let r2 = 2f64.sqrt();
        let s = subdivision_spectrum(&cycle(4).unwrap()).unwrap();
        assert!(close(&s, &[2.0, r2, r2, 0.0, 0.0, -r2, -r2, -2.0]));
        let s = subdivision_spectrum(&complete(4).unwrap()).unwrap();
        let r6 = 6f64.sqrt();
        assert!(close(&s, &[r6, r2, r2, r2, 0.0, 0.0, -r2, -r2, -r2, -r6]));
        for g in [cycle(4).unwrap(), complete(4).unwrap(), fixtures::petersen()] {
            let direct = adjacency_spectrum(&graph::subdivision(&g).0).unwrap();
            assert!(close(&subdivision_spectrum(&g).unwrap(), &direct.eigenvalues));
        }
        assert!(subdivision_spectrum(&star(3).unwrap()).is_err());
    }

    #[test]
    fn line_graph_spectra() {
        assert!(close(&line_graph_spectrum(&cycle(4).unwrap()).unwrap(), &[2.0, 0.0, 0.0, -2.0]));
        assert!(close(
            &line_graph_spectrum(&complete(4).unwrap()).unwrap(),
            &[4.0, 0.0, 0.0, 0.0, -2.0, -2.0]
        ));
        let k33 = complete_bipartite(3, 3).unwrap();
        let mut expected = vec![4.0, 1.0, 1.0, 1.0, 1.0];
        expected.extend([-2.0; 4]);
        assert!(close(&line_graph_spectrum(&k33).unwrap(), &expected));
        let k2 = complete_bipartite(1, 1).unwrap();
        assert!(close(&line_graph_spectrum(&k2).unwrap(), &[0.0]));
        for g in [k33, fixtures::petersen(), fixtures::cayley10()] {
            let direct = adjacency_spectrum(&line_graph(&g)).unwrap();
            assert!(close(&line_graph_spectrum(&g).unwrap(), &direct.eigenvalues));
        }
    }
}

//! Periodicity of walk operators.
//!
//! Three independent deciders are cross-checked against each other:
//!
//! * the exact oracle, which multiplies `U` until it reaches `I`;
//! * the spectral characterization for biregular bipartite graphs, which
//!   checks every `λ²` against a finite table of admissible values;
//! * phase arithmetic, which reads the order of each `e^{iθ}` off the table
//!   and takes the least common multiple.
//!
//! The oracle is the ground truth.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    char_poly, char_poly_rational, roots_degree_le2, IntPolynomial, LinalgError, QuadraticValue,
    Rational, RationalMatrix, RootFactorization,
};
use crate::graph::{self, adjacency_matrix, biadjacency, Graph, GraphError};
use crate::spectral::{self, eigenvalue_support, walk_phases_from_graph, SpectralError};
use crate::walk::{build_bipartite_walk, build_grover_walk, WalkError, WalkOperator};

pub const DEFAULT_CAP: u64 = 10_000;
pub const DEFAULT_TRACE_K: u64 = 12;
/// Largest continued-fraction denominator accepted for `θ/π`.
pub const CF_MAX_DENOMINATOR: u64 = 48;
const PHASE_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodicityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("graph is not biregular bipartite")]
    NotBiregular,
    #[error("spectral test did not certify periodicity")]
    NotCertified,
    #[error("{0} walk: period exceeds cap {1}")]
    CapExceeded(&'static str, u64),
    #[error("method disagreement: {0}")]
    Disagreement(String),
}

/// Order of `e^{iθ}` for each `cos θ` of algebraic degree at most two that is
/// a rational multiple of π (Niven's list).
pub fn niven_values() -> Vec<(QuadraticValue, u64)> {
    let q = QuadraticValue::from_parts;
    vec![
        (q(1, 0, 1, 1), 1),
        (q(-1, 0, 1, 1), 2),
        (q(1, 0, 1, 2), 6),
        (q(-1, 0, 1, 2), 3),
        (q(0, 0, 1, 1), 4),
        (q(0, 1, 2, 2), 8),
        (q(0, -1, 2, 2), 8),
        (q(0, 1, 3, 2), 12),
        (q(0, -1, 3, 2), 12),
        (q(-1, 1, 5, 4), 5),
        (q(1, -1, 5, 4), 10),
        (q(1, 1, 5, 4), 10),
        (q(-1, -1, 5, 4), 5),
    ]
}

/// Order of `e^{iθ}` when `cos θ` equals a Niven value exactly.
pub fn order_of_cos(cos: &QuadraticValue) -> Option<u64> {
    niven_values()
        .into_iter()
        .find(|(v, _)| v == cos)
        .map(|(_, n)| n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowedEntry {
    /// Admissible `λ²`.
    pub value: QuadraticValue,
    /// `cos θ = 2λ²/(d0 d1) − 1`.
    pub cos: QuadraticValue,
    pub order: u64,
}

/// Admissible `λ²` values for a `(d0, d1)`-biregular bipartite graph whose
/// walk is periodic: `(1 + cos θ)/2 · d0 d1` over the Niven cosines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowedValueTable {
    pub d0: usize,
    pub d1: usize,
    pub entries: Vec<AllowedEntry>,
}

impl AllowedValueTable {
    pub fn new(d0: usize, d1: usize) -> Self {
        let top = Rational::from_integer(BigInt::from(d0 * d1));
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let entries = niven_values()
            .into_iter()
            .map(|(cos, order)| {
                let value = (&cos + &QuadraticValue::integer(1)).scale(&(&half * &top));
                AllowedEntry { value, cos, order }
            })
            .collect();
        AllowedValueTable { d0, d1, entries }
    }

    pub fn lookup(&self, lambda_sq: &QuadraticValue) -> Option<&AllowedEntry> {
        self.entries.iter().find(|e| &e.value == lambda_sq)
    }

    pub fn rational_entries(&self) -> impl Iterator<Item = &AllowedEntry> {
        self.entries.iter().filter(|e| e.value.is_rational())
    }

    pub fn quadratic_entries(&self) -> impl Iterator<Item = &AllowedEntry> {
        self.entries.iter().filter(|e| !e.value.is_rational())
    }
}

/// Evidence that `U` has no finite period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonPeriodicCertificate {
    /// The characteristic polynomial of `U` has a non-integer coefficient.
    NonIntegralCharPoly { coefficient: usize, value: String },
    /// The characteristic polynomial has a factor that is not cyclotomic.
    NonCyclotomicFactor { residual: String },
    /// `tr(U^k)` is not an integer.
    NonIntegralTrace { k: u64, trace: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OracleOutcome {
    Periodic { period: u64 },
    NotPeriodic { certificate: NonPeriodicCertificate },
    ExceedsCap { cap: u64 },
}

impl OracleOutcome {
    pub fn period(&self) -> Option<u64> {
        match self {
            OracleOutcome::Periodic { period } => Some(*period),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub cap: u64,
    /// Factor the characteristic polynomial into cyclotomic polynomials
    /// before multiplying. A failure certifies non-periodicity and the lcm of
    /// the cyclotomic indices bounds the search.
    pub screen: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_CAP,
            screen: true,
        }
    }
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Multiset of cyclotomic indices `n` with `p = ∏ Φ_n`, or the first
/// non-cyclotomic residual.
pub fn cyclotomic_factorization(p: &IntPolynomial) -> Result<Vec<u64>, IntPolynomial> {
    let mut rest = p.clone();
    let mut indices = Vec::new();
    let deg = p.degree().unwrap_or(0) as u64;
    // φ(n) ≥ √(n/2), so only n ≤ 2·deg² can contribute.
    let bound = 2 * deg * deg + 2;
    let mut n = 1;
    while rest.degree().unwrap_or(0) > 0 && n <= bound {
        if totient(n) <= rest.degree().unwrap_or(0) as u64 {
            let phi = IntPolynomial::cyclotomic(n);
            while let Some(q) = rest.divide_exact(&phi) {
                rest = q;
                indices.push(n);
            }
        }
        n += 1;
    }
    if rest.degree().unwrap_or(0) > 0 || rest.coeff(0) != BigInt::one() {
        return Err(rest);
    }
    Ok(indices)
}

/// Necessary period from the characteristic polynomial: `Ok(lcm)` when it
/// factors into cyclotomics, `Err(certificate)` otherwise.
pub fn cyclotomic_screen(u: &RationalMatrix) -> Result<Result<BigInt, NonPeriodicCertificate>, LinalgError> {
    let coeffs = char_poly_rational(u)?;
    if let Some((i, c)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_integer()) {
        return Ok(Err(NonPeriodicCertificate::NonIntegralCharPoly {
            coefficient: i,
            value: c.to_string(),
        }));
    }
    let p = IntPolynomial::from_rationals(&coeffs).expect("integral coefficients");
    Ok(match cyclotomic_factorization(&p) {
        Ok(indices) => Ok(indices
            .iter()
            .fold(BigInt::one(), |acc, &n| acc.lcm(&BigInt::from(n)))),
        Err(residual) => Err(NonPeriodicCertificate::NonCyclotomicFactor {
            residual: residual.to_string(),
        }),
    })
}

/// Minimal `τ ≤ cap` with `U^τ = I`, by iterated exact multiplication.
pub fn exact_period_oracle(u: &RationalMatrix, cap: u64) -> Result<OracleOutcome, LinalgError> {
    exact_period_oracle_with(u, OracleOptions { cap, screen: true })
}

pub fn exact_period_oracle_with(u: &RationalMatrix, opts: OracleOptions) -> Result<OracleOutcome, LinalgError> {
    if !u.is_square() {
        return Err(LinalgError::NotSquare(u.rows(), u.cols()));
    }
    let mut limit = opts.cap;
    if opts.screen {
        match cyclotomic_screen(u)? {
            Err(certificate) => return Ok(OracleOutcome::NotPeriodic { certificate }),
            Ok(bound) => match bound.to_u64() {
                Some(b) if b <= opts.cap => limit = b,
                _ => return Ok(OracleOutcome::ExceedsCap { cap: opts.cap }),
            },
        }
    }
    let mut power = u.clone();
    for k in 1..=limit {
        if power.is_identity() {
            return Ok(OracleOutcome::Periodic { period: k });
        }
        let tr = power.trace();
        if !tr.is_integer() {
            return Ok(OracleOutcome::NotPeriodic {
                certificate: NonPeriodicCertificate::NonIntegralTrace {
                    k,
                    trace: tr.to_string(),
                },
            });
        }
        if k < limit {
            power = power.mul(u)?;
        }
    }
    Ok(OracleOutcome::ExceedsCap { cap: opts.cap })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TraceTestResult {
    Pass { k_max: u64 },
    Fail { k: u64, trace: String },
}

impl TraceTestResult {
    pub fn passed(&self) -> bool {
        matches!(self, TraceTestResult::Pass { .. })
    }
}

/// Checks `tr(U^k) ∈ ℤ` for `k = 1..=k_max`. A failure certifies that `U` is
/// not periodic.
pub fn trace_test(u: &RationalMatrix, k_max: u64) -> Result<TraceTestResult, LinalgError> {
    if !u.is_square() {
        return Err(LinalgError::NotSquare(u.rows(), u.cols()));
    }
    let mut power = u.clone();
    for k in 1..=k_max {
        let tr = power.trace();
        if !tr.is_integer() {
            return Ok(TraceTestResult::Fail {
                k,
                trace: tr.to_string(),
            });
        }
        if k < k_max {
            power = power.mul(u)?;
        }
    }
    Ok(TraceTestResult::Pass { k_max })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Periodicity {
    Periodic,
    NonPeriodic,
    Inconclusive,
}

/// Classification of one exact eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueClass {
    pub value: QuadraticValue,
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cos: Option<QuadraticValue>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u64>,
    pub allowed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralVerdict {
    pub verdict: Periodicity,
    pub d0: usize,
    pub d1: usize,
    /// Eigenvalues of `C Cᵀ` (the values `λ²`).
    pub values: Vec<ValueClass>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    pub notes: Vec<String>,
}

fn conjugates_paired(values: &[ValueClass]) -> bool {
    values.iter().all(|v| {
        v.value.is_rational()
            || values
                .iter()
                .any(|w| w.value == v.value.conjugate() && w.multiplicity == v.multiplicity)
    })
}

fn classify(
    f: &RootFactorization,
    table: &AllowedValueTable,
) -> (Vec<ValueClass>, Option<String>) {
    let values = f
        .roots()
        .iter()
        .map(|r| {
            let entry = table.lookup(&r.value);
            ValueClass {
                value: r.value.clone(),
                multiplicity: r.multiplicity,
                cos: entry.map(|e| e.cos.clone()),
                order: entry.map(|e| e.order),
                allowed: entry.is_some(),
            }
        })
        .collect();
    let residual = match f {
        RootFactorization::Complete(_) => None,
        RootFactorization::HigherDegreeFactor { residual, .. } => Some(residual.to_string()),
    };
    (values, residual)
}

fn verdict_of(values: &[ValueClass], residual: &Option<String>, notes: &mut Vec<String>) -> Periodicity {
    if values.iter().any(|v| !v.allowed) {
        return Periodicity::NonPeriodic;
    }
    if residual.is_some() {
        notes.push("eigenvalue of degree greater than two; outside the characterization".into());
        return Periodicity::Inconclusive;
    }
    if !conjugates_paired(values) {
        notes.push("quadratic eigenvalue without its conjugate".into());
        return Periodicity::NonPeriodic;
    }
    Periodicity::Periodic
}

/// Periodicity of the bipartite walk on a connected biregular bipartite
/// graph from the exact eigenvalues of `C Cᵀ`.
///
/// A root outside the admissible table already rules out periodicity, even
/// when another factor has degree above two: the walk would have an
/// eigenvalue whose cosine is a quadratic irrational or rational outside
/// Niven's list. Only when every found root is admissible does a higher
/// degree factor make the verdict inconclusive.
pub fn spectral_test_biregular(g: &Graph) -> Result<SpectralVerdict, PeriodicityError> {
    let b = graph::bipartition(g)?;
    let (d0, d1) = graph::degree_profile(g, &b)
        .biregular()
        .ok_or(PeriodicityError::NotBiregular)?;
    let f = spectral::squared_spectrum_exact(g, &b)?;
    let table = AllowedValueTable::new(d0, d1);
    let (values, residual) = classify(&f, &table);
    let mut notes = Vec::new();
    let verdict = verdict_of(&values, &residual, &mut notes);
    Ok(SpectralVerdict {
        verdict,
        d0,
        d1,
        values,
        residual,
        notes,
    })
}

fn lcm_all(orders: impl IntoIterator<Item = u64>) -> u64 {
    orders.into_iter().fold(1, |acc, n| acc.lcm(&n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasePeriod {
    pub period: u64,
    /// Distinct eigenvalue orders that occur.
    pub orders: Vec<u64>,
}

/// Period of the bipartite walk as the lcm of the orders of its eigenvalues,
/// read from the admissible table. Requires a periodic spectral verdict.
pub fn period_from_phases(g: &Graph) -> Result<PhasePeriod, PeriodicityError> {
    let sv = spectral_test_biregular(g)?;
    if sv.verdict != Periodicity::Periodic {
        return Err(PeriodicityError::NotCertified);
    }
    let w = build_bipartite_walk(g)?;
    let (plus, minus) = spectral::pm1_eigenspace_dims(&w)?;
    let top = QuadraticValue::integer((sv.d0 * sv.d1) as i64);
    let zero = QuadraticValue::integer(0);
    let mut orders = BTreeSet::new();
    for v in &sv.values {
        if v.value != zero && v.value != top {
            orders.insert(v.order.expect("allowed values carry an order"));
        }
    }
    if plus > 0 {
        orders.insert(1);
    }
    if minus > 0 {
        orders.insert(2);
    }
    Ok(PhasePeriod {
        period: lcm_all(orders.iter().copied()),
        orders: orders.into_iter().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverVerdict {
    pub verdict: Periodicity,
    pub degree: usize,
    /// Adjacency eigenvalues `λ` of the graph.
    pub values: Vec<ValueClass>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    /// Period of the Grover walk, when periodic.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub period: Option<u64>,
    pub notes: Vec<String>,
}

/// Periodicity of the Grover walk on a connected `d`-regular graph, which is
/// the bipartite walk on its `(2, d)`-biregular subdivision. Each adjacency
/// eigenvalue `λ` must satisfy `λ + d ∈` table`(2, d)`, that is
/// `λ ∈ {0, ±d, ±d/2}` or `λ/d ∈ {±√2/2, ±√3/2, (±1 ± √5)/4}`; then
/// `cos θ = λ/d`.
pub fn grover_regular_test(g: &Graph) -> Result<GroverVerdict, PeriodicityError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let d = g.regular_degree().ok_or(GraphError::NotRegular)?;
    let p = char_poly(&adjacency_matrix(g))?;
    let f = roots_degree_le2(&p)?;
    let table = AllowedValueTable::new(2, d);
    let shift = QuadraticValue::integer(d as i64);
    let values: Vec<ValueClass> = f
        .roots()
        .iter()
        .map(|r| {
            let entry = table.lookup(&(&r.value + &shift));
            ValueClass {
                value: r.value.clone(),
                multiplicity: r.multiplicity,
                cos: entry.map(|e| e.cos.clone()),
                order: entry.map(|e| e.order),
                allowed: entry.is_some(),
            }
        })
        .collect();
    let residual = match &f {
        RootFactorization::Complete(_) => None,
        RootFactorization::HigherDegreeFactor { residual, .. } => Some(residual.to_string()),
    };
    let mut notes = Vec::new();
    let verdict = verdict_of(&values, &residual, &mut notes);
    let period = if verdict == Periodicity::Periodic {
        let (s, sb) = graph::subdivision(g);
        let rank = RationalMatrix::from_integers(&biadjacency(&s, &sb)).rank();
        let minus = s.n() - 2 * rank;
        let dminus = QuadraticValue::integer(-(d as i64));
        let mut orders: BTreeSet<u64> = values
            .iter()
            .filter(|v| v.value != shift && v.value != dminus)
            .filter_map(|v| v.order)
            .collect();
        orders.insert(1);
        if minus > 0 {
            orders.insert(2);
        }
        Some(lcm_all(orders))
    } else {
        None
    };
    Ok(GroverVerdict {
        verdict,
        degree: d,
        values,
        residual,
        period,
        notes,
    })
}

/// Smallest `q ≤ max_den` with `|x − p/q| ≤ tol` among the continued
/// fraction convergents of `x`.
pub fn small_denominator(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i64;
        let h = ai * h1 + h0;
        let k = ai as u64 * k1 + k0;
        if k > max_den {
            return None;
        }
        if (x - h as f64 / k as f64).abs() <= tol {
            return Some((h, k));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCheck {
    pub theta: f64,
    /// How the phase was recognized: "exact", "niven", "continued_fraction",
    /// or "irrational".
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatePeriodicity {
    pub edge: usize,
    pub periodic: bool,
    pub phases: Vec<PhaseCheck>,
}

/// Periodicity of the state `D_a`: every phase in its eigenvalue support must
/// be a rational multiple of π.
pub fn state_periodicity(w: &WalkOperator, edge: usize) -> Result<StatePeriodicity, PeriodicityError> {
    let support = eigenvalue_support(w, edge)?;
    let exact: Vec<(f64, QuadraticValue)> = if w.profile.biregular().is_some() {
        walk_phases_from_graph(&w.graph)?
            .phases
            .into_iter()
            .filter_map(|p| p.exact_cos.map(|c| (p.theta, c)))
            .collect()
    } else {
        Vec::new()
    };
    let niven = niven_values();
    let mut phases = Vec::new();
    for theta in support.phases() {
        let c = theta.cos();
        let check = if let Some((_, cos)) = exact
            .iter()
            .find(|(t, _)| (t - theta.abs()).abs() <= PHASE_TOL)
        {
            let order = order_of_cos(cos);
            PhaseCheck {
                theta,
                method: if order.is_some() { "exact" } else { "irrational" }.into(),
                order,
            }
        } else if let Some((_, n)) = niven.iter().find(|(v, _)| (v.to_f64() - c).abs() <= PHASE_TOL) {
            PhaseCheck {
                theta,
                method: "niven".into(),
                order: Some(*n),
            }
        } else if let Some((p, q)) =
            small_denominator(theta.abs() / std::f64::consts::PI, CF_MAX_DENOMINATOR, PHASE_TOL)
        {
            // θ = pπ/q has order 2q/gcd(p, 2q).
            let two_q = 2 * q;
            PhaseCheck {
                theta,
                method: "continued_fraction".into(),
                order: Some(two_q / (p.unsigned_abs()).gcd(&two_q).max(1)),
            }
        } else {
            PhaseCheck {
                theta,
                method: "irrational".into(),
                order: None,
            }
        };
        phases.push(check);
    }
    Ok(StatePeriodicity {
        edge,
        periodic: phases.iter().all(|p| p.order.is_some()),
        phases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DoublingOutcome {
    Periodic { bipartite: u64, grover: u64 },
    NotPeriodic,
}

/// Runs the oracle on the bipartite and Grover walks of a bipartite graph
/// and checks `τ_GW = 2 τ_BW`.
pub fn grover_period_doubling(g: &Graph, cap: u64) -> Result<DoublingOutcome, PeriodicityError> {
    let bw = build_bipartite_walk(g)?;
    let gw = build_grover_walk(g)?;
    let a = exact_period_oracle(&bw.u, cap)?;
    let b = exact_period_oracle(&gw.u, cap.saturating_mul(2))?;
    match (&a, &b) {
        (OracleOutcome::ExceedsCap { .. }, _) => Err(PeriodicityError::CapExceeded("bipartite", cap)),
        (_, OracleOutcome::ExceedsCap { cap }) => Err(PeriodicityError::CapExceeded("grover", *cap)),
        (OracleOutcome::Periodic { period: t }, OracleOutcome::Periodic { period: s }) => {
            if s % 2 == 1 {
                return Err(PeriodicityError::Disagreement(format!("odd Grover period {s}")));
            }
            if *s != 2 * t {
                return Err(PeriodicityError::Disagreement(format!(
                    "Grover period {s} is not twice the bipartite period {t}"
                )));
            }
            Ok(DoublingOutcome::Periodic {
                bipartite: *t,
                grover: *s,
            })
        }
        (OracleOutcome::NotPeriodic { .. }, OracleOutcome::NotPeriodic { .. }) => {
            Ok(DoublingOutcome::NotPeriodic)
        }
        _ => Err(PeriodicityError::Disagreement(format!(
            "bipartite oracle {a:?} vs Grover oracle {b:?}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    Bipartite,
    Grover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    Spectral,
    Phases,
    Trace,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Oracle, Method::Spectral, Method::Phases, Method::Trace];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub methods: BTreeSet<Method>,
    pub cap: u64,
    pub trace_k: u64,
    pub screen: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            methods: Method::ALL.into_iter().collect(),
            cap: DEFAULT_CAP,
            trace_k: DEFAULT_TRACE_K,
            screen: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<TraceTestResult>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectral: Option<SpectralVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grover: Option<GroverVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase_period: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicityVerdict {
    pub periodic: Periodicity,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub period: Option<u64>,
    pub evidence: Evidence,
    /// True when two methods contradict each other.
    pub disagreement: bool,
    pub notes: Vec<String>,
}

/// Runs the selected methods on the walk of `kind` over `g` and combines
/// them. The oracle decides whenever it completes; the other methods are
/// checked against it.
pub fn analyze(g: &Graph, kind: WalkKind, opts: &AnalysisOptions) -> Result<PeriodicityVerdict, PeriodicityError> {
    let u = match kind {
        WalkKind::Bipartite => build_bipartite_walk(g)?.u,
        WalkKind::Grover => build_grover_walk(g)?.u,
    };
    let mut ev = Evidence::default();
    let mut notes = Vec::new();
    let has = |m| opts.methods.contains(&m);

    if has(Method::Trace) {
        ev.trace = Some(trace_test(&u, opts.trace_k)?);
    }
    if has(Method::Oracle) {
        let o = OracleOptions {
            cap: opts.cap,
            screen: opts.screen,
        };
        ev.oracle = Some(exact_period_oracle_with(&u, o)?);
    }
    let mut spectral_periodicity = None;
    match kind {
        WalkKind::Bipartite => {
            let b = graph::bipartition(g)?;
            let biregular = graph::degree_profile(g, &b).biregular().is_some();
            if biregular && has(Method::Spectral) {
                let sv = spectral_test_biregular(g)?;
                spectral_periodicity = Some(sv.verdict);
                ev.spectral = Some(sv);
            } else if has(Method::Spectral) {
                notes.push("spectral test skipped: graph is not biregular".into());
            }
            if biregular && has(Method::Phases) {
                match period_from_phases(g) {
                    Ok(p) => ev.phase_period = Some(p.period),
                    Err(PeriodicityError::NotCertified) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        WalkKind::Grover => {
            let regular = g.regular_degree().is_some();
            if regular && (has(Method::Spectral) || has(Method::Phases)) {
                let gv = grover_regular_test(g)?;
                spectral_periodicity = Some(gv.verdict);
                if has(Method::Phases) {
                    ev.phase_period = gv.period;
                }
                ev.grover = Some(gv);
            } else if has(Method::Spectral) {
                notes.push("spectral test skipped: graph is not regular".into());
            }
        }
    }

    let mut disagreement = false;
    let oracle_periodicity = ev.oracle.as_ref().and_then(|o| match o {
        OracleOutcome::Periodic { .. } => Some(Periodicity::Periodic),
        OracleOutcome::NotPeriodic { .. } => Some(Periodicity::NonPeriodic),
        OracleOutcome::ExceedsCap { cap } => {
            notes.push(format!("oracle reached cap {cap} without finding a period"));
            None
        }
    });
    let oracle_period = ev.oracle.as_ref().and_then(OracleOutcome::period);
    if let (Some(a), Some(b)) = (oracle_period, ev.phase_period) {
        if a != b {
            disagreement = true;
            notes.push(format!("oracle period {a} differs from phase period {b}"));
        }
    }
    if let (Some(o), Some(s)) = (oracle_periodicity, spectral_periodicity) {
        if s != Periodicity::Inconclusive && o != s {
            disagreement = true;
            notes.push(format!("oracle says {o:?}, spectral test says {s:?}"));
        }
    }
    if let Some(TraceTestResult::Fail { k, trace }) = &ev.trace {
        if oracle_periodicity == Some(Periodicity::Periodic) {
            disagreement = true;
            notes.push(format!("periodic operator failed the trace test at k={k} ({trace})"));
        }
    }

    let trace_failed = ev.trace.as_ref().is_some_and(|t| !t.passed());
    let (periodic, period) = if let Some(o) = oracle_periodicity {
        (o, oracle_period)
    } else if trace_failed {
        (Periodicity::NonPeriodic, None)
    } else {
        match spectral_periodicity {
            Some(Periodicity::Periodic) => (Periodicity::Periodic, ev.phase_period),
            Some(Periodicity::NonPeriodic) => (Periodicity::NonPeriodic, None),
            _ => (Periodicity::Inconclusive, None),
        }
    };
    Ok(PeriodicityVerdict {
        periodic,
        period,
        evidence: ev,
        disagreement,
        notes,
    })
}

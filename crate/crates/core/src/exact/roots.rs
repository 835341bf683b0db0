use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{IntPolynomial, LinalgError, QuadraticValue, Rational};

/// Candidate searches beyond this root bound are abandoned and the residual
/// is reported as a higher-degree factor.
const MAX_ROOT_BOUND: i64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Root {
    pub value: QuadraticValue,
    pub multiplicity: usize,
}

/// Outcome of factoring a monic integer polynomial into linear and quadratic
/// factors over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootFactorization {
    Complete(Vec<Root>),
    /// `residual` has no rational root and no monic quadratic factor.
    HigherDegreeFactor {
        roots: Vec<Root>,
        residual: IntPolynomial,
    },
}

impl RootFactorization {
    pub fn roots(&self) -> &[Root] {
        match self {
            RootFactorization::Complete(r) => r,
            RootFactorization::HigherDegreeFactor { roots, .. } => roots,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, RootFactorization::Complete(_))
    }
}

/// Horner evaluation of `p` at `v`, reducing `(√m)² = m`.
pub fn eval_at_quadratic(p: &IntPolynomial, v: &QuadraticValue) -> QuadraticValue {
    p.coeffs().iter().rev().fold(QuadraticValue::integer(0), |acc, c| {
        &(&acc * v) + &QuadraticValue::rational(Rational::from_integer(c.clone()))
    })
}

/// Upper bound on the modulus of every root of a monic polynomial
/// (Fujiwara): `2·max_k |c_{n−k}|^{1/k}`.
fn root_bound(p: &IntPolynomial) -> f64 {
    let n = p.degree().unwrap_or(0);
    let mut best: f64 = 0.0;
    for k in 1..=n {
        let c = p.coeff(n - k);
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let ln = mag
            .to_f64()
            .filter(|x| x.is_finite())
            .map(f64::ln)
            .unwrap_or_else(|| mag.bits() as f64 * std::f64::consts::LN_2);
        let mut scale = (ln / k as f64).exp();
        if k == n {
            // the constant term enters with an extra factor 1/2
            scale *= 0.5f64.powf(1.0 / k as f64);
        }
        best = best.max(scale);
    }
    2.0 * best
}

fn bound_as_int(p: &IntPolynomial) -> Option<i64> {
    let b = root_bound(p).ceil() + 1.0;
    (b <= MAX_ROOT_BOUND as f64).then_some(b as i64)
}

fn strip_root(p: &mut IntPolynomial, r: &BigInt) -> usize {
    let lin = IntPolynomial::linear(r);
    let mut count = 0;
    while let Some(q) = p.divide_exact(&lin) {
        *p = q;
        count += 1;
    }
    count
}

fn push_root(roots: &mut Vec<Root>, value: QuadraticValue, multiplicity: usize) {
    if multiplicity == 0 {
        return;
    }
    if let Some(r) = roots.iter_mut().find(|r| r.value == value) {
        r.multiplicity += multiplicity;
    } else {
        roots.push(Root { value, multiplicity });
    }
}

/// Roots of a monic integer polynomial whose irreducible factors all have
/// degree at most two.
///
/// Rational roots are integers dividing the constant term (rational-root
/// test for monic polynomials) and bounded by the root bound `B`. A monic
/// quadratic factor `x² + βx + γ` has integer coefficients (Gauss), with
/// `|β| ≤ 2B`, `|γ| ≤ B²` and `γ` dividing the constant term; each candidate
/// is tried by exact division. Whatever survives is a factor of degree
/// greater than two.
pub fn roots_degree_le2(p: &IntPolynomial) -> Result<RootFactorization, LinalgError> {
    if !p.is_monic() {
        return Err(LinalgError::NotMonic);
    }
    let mut roots = Vec::new();
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    push_root(&mut roots, QuadraticValue::integer(0), zeros);
    let mut rest = IntPolynomial::new(p.coeffs()[zeros..].to_vec());

    let finish = |mut roots: Vec<Root>, rest: IntPolynomial| {
        roots.sort_by(|x, y| x.value.numeric_cmp(&y.value));
        if rest.degree().unwrap_or(0) == 0 {
            RootFactorization::Complete(roots)
        } else {
            RootFactorization::HigherDegreeFactor {
                roots,
                residual: rest,
            }
        }
    };

    if rest.degree().unwrap_or(0) == 0 {
        return Ok(finish(roots, rest));
    }
    let Some(bound) = bound_as_int(&rest) else {
        return Ok(finish(roots, rest));
    };

    // Linear factors.
    let c0 = rest.coeff(0);
    for d in 1..=bound {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let d = BigInt::from(d);
        if !(&c0 % &d).is_zero() {
            continue;
        }
        for r in [d.clone(), -d] {
            let k = strip_root(&mut rest, &r);
            push_root(&mut roots, QuadraticValue::rational(Rational::from_integer(r)), k);
        }
    }

    // Irreducible quadratic factors.
    'search: while rest.degree().unwrap_or(0) >= 2 {
        let Some(bound) = bound_as_int(&rest) else {
            break;
        };
        let c0 = rest.coeff(0);
        let gamma_max = bound.saturating_mul(bound);
        let mut gammas = Vec::new();
        for g in 1..=gamma_max.min(c0.abs().to_i64().unwrap_or(i64::MAX)) {
            if (&c0 % BigInt::from(g)).is_zero() {
                gammas.push(g);
                gammas.push(-g);
            }
        }
        for &gamma in &gammas {
            for beta in -2 * bound..=2 * bound {
                let quad = IntPolynomial::from_i64(&[gamma, beta, 1]);
                let disc = beta * beta - 4 * gamma;
                let root_disc = (disc.unsigned_abs() as f64).sqrt().round() as i64;
                if disc >= 0 && root_disc * root_disc == disc {
                    continue; // reducible, its roots would be rational
                }
                let mut k = 0;
                while let Some(q) = rest.divide_exact(&quad) {
                    rest = q;
                    k += 1;
                }
                if k > 0 {
                    let half = Rational::new(BigInt::one(), BigInt::from(2));
                    let centre = Rational::new(BigInt::from(-beta), BigInt::from(2));
                    push_root(&mut roots, QuadraticValue::new(centre.clone(), half.clone(), disc), k);
                    push_root(&mut roots, QuadraticValue::new(centre, -half, disc), k);
                    continue 'search;
                }
            }
        }
        break;
    }
    Ok(finish(roots, rest))
}

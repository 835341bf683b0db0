use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LinalgError, Rational, RationalMatrix};

/// Polynomial with big-integer coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x − r`
    pub fn linear(root: &BigInt) -> Self {
        Self::new(vec![-root, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Division by a monic divisor; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self), LinalgError> {
        if !divisor.is_monic() {
            return Err(LinalgError::NotMonic);
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &lead * c;
            }
            quot[k] = lead;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient when `divisor` divides `self`.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// `p(x + c)` via repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// The `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic index must be positive");
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n as usize] = BigInt::one();
        let mut p = Self::new(coeffs);
        for d in 1..n {
            if n % d == 0 {
                p = p
                    .divide_exact(&Self::cyclotomic(d))
                    .expect("x^n - 1 is divisible by every lower cyclotomic factor");
            }
        }
        p
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI − M)` of a square integer matrix.
///
/// Berkowitz's division-free recurrence: the polynomial of the leading
/// `(k+1)×(k+1)` block is a lower-triangular Toeplitz matrix applied to that
/// of the leading `k×k` block. Only ring operations are used, so the result
/// is exact. `O(n^4)` multiplications.
pub fn char_poly(m: &[Vec<i64>]) -> Result<IntPolynomial, LinalgError> {
    let n = m.len();
    if let Some(row) = m.iter().find(|row| row.len() != n) {
        return Err(LinalgError::NotSquare(n, row.len()));
    }
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Ok(berkowitz(&a))
}

pub(crate) fn berkowitz(a: &[Vec<BigInt>]) -> IntPolynomial {
    let n = a.len();
    // Descending coefficients of the current leading block's polynomial.
    let mut poly = vec![BigInt::one(), -&a[0][0]];
    for k in 1..n {
        // items = [1, -a_kk, R·C, R·A·C, …, R·A^{k-1}·C] with R = -row, C = column.
        let mut items = Vec::with_capacity(k + 2);
        items.push(BigInt::one());
        items.push(-&a[k][k]);
        let mut col: Vec<BigInt> = (0..k).map(|i| a[i][k].clone()).collect();
        for step in 0..k {
            let dot: BigInt = (0..k).map(|j| &a[k][j] * &col[j]).sum();
            items.push(-dot);
            if step + 1 < k {
                col = (0..k)
                    .map(|i| (0..k).map(|j| &a[i][j] * &col[j]).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (r, slot) in next.iter_mut().enumerate() {
            for (c, p) in poly.iter().enumerate().take(r + 1) {
                let t = &items[r - c];
                if !t.is_zero() && !p.is_zero() {
                    *slot += t * p;
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    IntPolynomial::new(poly)
}

/// Evaluates `p` at a square rational matrix by Horner's rule.
pub fn eval_at_matrix(p: &IntPolynomial, m: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut acc = RationalMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m)?;
        let shift = RationalMatrix::identity(n).scale(&BigRational::from_integer(c.clone()));
        acc = acc.add(&shift)?;
    }
    Ok(acc)
}

/// Characteristic polynomial of a square rational matrix, ascending
/// coefficients. With `L` the common denominator and `M = L·A` integral,
/// `det(xI − A) = L^{−n} det(LxI − M)`, so coefficient `i` is `m_i / L^{n−i}`.
pub fn char_poly_rational(a: &RationalMatrix) -> Result<Vec<BigRational>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(vec![BigRational::one()]);
    }
    let (ints, l) = a.scaled_integers();
    let rows: Vec<Vec<BigInt>> = ints.chunks(n).map(<[BigInt]>::to_vec).collect();
    let p = berkowitz(&rows);
    let mut scale = BigInt::one();
    let mut out = vec![BigRational::zero(); n + 1];
    for i in (0..=n).rev() {
        out[i] = BigRational::new(p.coeff(i), scale.clone());
        scale *= &l;
    }
    Ok(out)
}

impl IntPolynomial {
    /// The polynomial with the given rational coefficients, if all are integers.
    pub fn from_rationals(coeffs: &[BigRational]) -> Option<Self> {
        coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinalgError, Rational};

/// Splits `n ≥ 1` as `s·f²` with `s` square-free, by trial division.
pub fn square_free_part(n: u64) -> (u64, u64) {
    assert!(n >= 1, "square_free_part needs a positive integer");
    let (mut s, mut f) = (1u64, 1u64);
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s * rest, f)
}

/// Exact number `a + b√m` with rational `a, b` and square-free `m ≠ 0`.
///
/// Normal form: `m = 1` encodes rationals and forces `b = 0`; `b = 0` forces
/// `m = 1`. Equality is componentwise on the normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticValue {
    a: Rational,
    b: Rational,
    m: i64,
}

impl QuadraticValue {
    /// `a + b√r` for any nonzero integer radicand `r`; the square part of `r`
    /// is folded into `b`.
    pub fn new(a: Rational, b: Rational, radicand: i64) -> Self {
        assert!(radicand != 0, "radicand must be nonzero");
        let (s, f) = square_free_part(radicand.unsigned_abs());
        let m = if radicand < 0 { -(s as i64) } else { s as i64 };
        let b = b * Rational::from_integer(BigInt::from(f));
        if b.is_zero() {
            return Self::rational(a);
        }
        if m == 1 {
            return Self::rational(a + b);
        }
        QuadraticValue { a, b, m }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticValue {
            a,
            b: Rational::zero(),
            m: 1,
        }
    }

    pub fn integer(a: i64) -> Self {
        Self::rational(Rational::from_integer(a.into()))
    }

    /// `(num/den)` as a value.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(Rational::new(num.into(), den.into()))
    }

    /// `(a_num + b_num·√m) / den`
    pub fn from_parts(a_num: i64, b_num: i64, m: i64, den: i64) -> Self {
        let d = BigInt::from(den);
        Self::new(
            Rational::new(a_num.into(), d.clone()),
            Rational::new(b_num.into(), d),
            m,
        )
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.a.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadraticValue {
            a: self.a.clone(),
            b: -&self.b,
            m: self.m,
        }
    }

    /// Real part for negative radicands.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.m > 0 {
            a + self.b.to_f64().unwrap_or(f64::NAN) * (self.m as f64).sqrt()
        } else {
            a
        }
    }

    /// Whether the value lies in the ring of integers of `Q(√m)`: plain
    /// integers when `m = 1`; `p + q√m` when `m ≡ 2, 3 (mod 4)`;
    /// `p + q(1+√m)/2` when `m ≡ 1 (mod 4)`.
    pub fn is_algebraic_integer(&self) -> bool {
        let int = |x: &Rational| x.is_integer();
        if self.is_rational() {
            return int(&self.a);
        }
        match self.m.rem_euclid(4) {
            1 => {
                let q = &self.b * Rational::from_integer(2.into());
                let p = &self.a - &self.b;
                int(&q) && int(&p)
            }
            _ => int(&self.a) && int(&self.b),
        }
    }

    fn field(&self, other: &Self) -> Option<i64> {
        match (self.m, other.m) {
            (1, m) | (m, 1) => Some(m),
            (m, n) if m == n => Some(m),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let m = self.field(other)?;
        Some(Self::assemble(&self.a + &other.a, &self.b + &other.b, m))
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let m = self.field(other)?;
        let mr = Rational::from_integer(m.into());
        let a = &self.a * &other.a + &self.b * &other.b * mr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(Self::assemble(a, b, m))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::assemble(&self.a * k, &self.b * k, self.m)
    }

    fn assemble(a: Rational, b: Rational, m: i64) -> Self {
        if b.is_zero() || m == 1 {
            // m == 1 implies b == 0 for normalized inputs.
            Self::rational(a)
        } else {
            QuadraticValue { a, b, m }
        }
    }

    /// Numeric ordering for real values; ties broken by the exact parts.
    pub fn numeric_cmp(&self, other: &Self) -> Ordering {
        self.to_f64()
            .partial_cmp(&other.to_f64())
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl Add for &QuadraticValue {
    type Output = QuadraticValue;

    fn add(self, rhs: Self) -> QuadraticValue {
        self.checked_add(rhs).expect("operands from the same quadratic field")
    }
}

impl Sub for &QuadraticValue {
    type Output = QuadraticValue;

    fn sub(self, rhs: Self) -> QuadraticValue {
        self.checked_add(&-rhs).expect("operands from the same quadratic field")
    }
}

impl Mul for &QuadraticValue {
    type Output = QuadraticValue;

    fn mul(self, rhs: Self) -> QuadraticValue {
        self.checked_mul(rhs).expect("operands from the same quadratic field")
    }
}

impl Neg for &QuadraticValue {
    type Output = QuadraticValue;

    fn neg(self) -> QuadraticValue {
        QuadraticValue {
            a: -&self.a,
            b: -&self.b,
            m: self.m,
        }
    }
}

impl fmt::Display for QuadraticValue {
    /// `6+2*sqrt(5)`, `-1/2*sqrt(3)`, `sqrt(2)`, `7/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let has_a = !self.a.is_zero();
        if has_a {
            write!(f, "{}", self.a)?;
        }
        let neg = self.b.is_negative();
        let mag = self.b.abs();
        match (neg, has_a) {
            (true, _) => f.write_str("-")?,
            (false, true) => f.write_str("+")?,
            (false, false) => {}
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "sqrt({})", self.m)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational, LinalgError> {
    let s = s.strip_prefix('+').unwrap_or(s);
    Rational::from_str(s).map_err(|_| LinalgError::Parse(whole.to_string()))
}

impl FromStr for QuadraticValue {
    type Err = LinalgError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || LinalgError::Parse(text.to_string());
        let Some(idx) = s.find("sqrt(") else {
            return Ok(Self::rational(parse_rational(&s, text)?));
        };
        let radicand = s[idx + 5..].strip_suffix(')').ok_or_else(err)?;
        let m: i64 = radicand.parse().map_err(|_| err())?;
        if m == 0 {
            return Err(err());
        }
        let head = &s[..idx];
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_part, b_part) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_part.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_part, text)?
        };
        let b = match b_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other, text)?,
        };
        Ok(Self::new(a, b, m))
    }
}

impl Serialize for QuadraticValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadraticValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

//! Exact arithmetic in ℚ and in real quadratic fields ℚ(√p).
//!
//! A [`QuadExt`] carries its own radicand. Values with vanishing irrational
//! part are normalised to radicand 1, so a rational number compares equal no
//! matter which field it came from, and combining a rational with an element
//! of ℚ(√p) always works. Combining √p and √q for p ≠ q is an error.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QfError {
    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) in one expression")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} is not square-free")]
    NotSquareFree(u64),
    #[error("precision must be at least 53 bits, got {0}")]
    Precision(u32),
    #[error("cannot parse quadratic number: {0}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a + b·√radicand`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    radicand: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, radicand: u64) -> Result<Self, QfError> {
        if radicand == 0 || !arith::is_squarefree(radicand) {
            return Err(QfError::NotSquareFree(radicand));
        }
        Ok(Self::normalized(a, b, radicand))
    }

    fn normalized(a: Rational, b: Rational, radicand: u64) -> Self {
        if radicand == 1 {
            Self { a: a + b, b: Rational::zero(), radicand: 1 }
        } else if b.is_zero() {
            Self { a, b, radicand: 1 }
        } else {
            Self { a, b, radicand }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), radicand: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√p` for square-free `p`.
    pub fn sqrt(p: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), p).expect("square-free radicand")
    }

    /// `b·√p`.
    pub fn surd(b: Rational, p: u64) -> Self {
        Self::new(Rational::zero(), b, p).expect("square-free radicand")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational integer.
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Returns the integer value when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// Galois conjugate `a - b√p`.
    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone(), radicand: self.radicand }
    }

    /// Field norm `a² - p b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat_int(self.radicand as i64)
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, QfError> {
        match (self.radicand, other.radicand) {
            (1, r) | (r, 1) => Ok(r),
            (r, s) if r == s => Ok(r),
            (r, s) => Err(QfError::RadicandMismatch(r, s)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, QfError> {
        let r = self.common_radicand(other)?;
        Ok(Self::normalized(&self.a + &other.a, &self.b + &other.b, r))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, QfError> {
        let r = self.common_radicand(other)?;
        Ok(Self::normalized(&self.a - &other.a, &self.b - &other.b, r))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, QfError> {
        let r = self.common_radicand(other)?;
        let p = rat_int(r as i64);
        let a = &self.a * &other.a + &self.b * &other.b * p;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(a, b, r))
    }

    pub fn inverse(&self) -> Result<Self, QfError> {
        if self.is_zero() {
            return Err(QfError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::normalized(&self.a / &n, -(&self.b / &n), self.radicand))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, QfError> {
        self.common_radicand(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(&self.a * c, &self.b * c, self.radicand)
    }

    /// Real embedding with `√p > 0`, as the nearest `f64` (error at most one ulp).
    pub fn embed_real(&self, precision_bits: u32) -> Result<f64, QfError> {
        if precision_bits < 53 {
            return Err(QfError::Precision(precision_bits));
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        if self.is_rational() {
            return Ok(rational_to_f64(&self.a));
        }
        let target = precision_bits as i64 + 10;
        let mut k: i64 = target;
        loop {
            let (approx, _) = self.fixed_point(k);
            let bits = approx.bits() as i64;
            if bits >= target {
                return Ok(scaled_to_f64(&approx, k));
            }
            k += target - bits + 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.embed_real(53).expect("53 bits is valid")
    }

    /// Integer `I` with `|self·2^k − I| < 2`.
    fn fixed_point(&self, k: i64) -> (BigInt, i64) {
        let scale = |r: &Rational| -> Rational {
            if k >= 0 {
                r * Rational::from_integer(BigInt::one() << (k as usize))
            } else {
                r / Rational::from_integer(BigInt::one() << ((-k) as usize))
            }
        };
        let a_part = scale(&self.a).floor().to_integer();
        let b2p = &self.b * &self.b * rat_int(self.radicand as i64);
        let b2p_scaled = if k >= 0 {
            b2p * Rational::from_integer(BigInt::one() << (2 * k as usize))
        } else {
            b2p / Rational::from_integer(BigInt::one() << (2 * (-k) as usize))
        };
        let root = b2p_scaled.floor().to_integer().sqrt();
        let b_part = if self.b.is_negative() { -root - 1 } else { root };
        (a_part + b_part, k)
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Shift so the quotient carries 80 significant bits, then round once.
    let shift = 80 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 { (n << (shift as usize)) / d } else { n / (d << ((-shift) as usize)) };
    scaled_to_f64(&q, shift)
}

fn scaled_to_f64(i: &BigInt, k: i64) -> f64 {
    let (sign, mag) = (i.sign(), i.magnitude());
    let bits = mag.bits() as i64;
    // Keep 64 leading bits; the remaining ones only act as a sticky bit.
    let (top, exp) = if bits > 64 {
        let drop = bits - 64;
        let top = (mag >> (drop as usize)).to_u64().unwrap();
        let sticky = mag.trailing_zeros().is_some_and(|tz| (tz as i64) < drop);
        (top | sticky as u64, drop - k)
    } else {
        (mag.to_u64().unwrap(), -k)
    };
    let v = (top as f64) * 2f64.powi(exp as i32);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

/// Exact arithmetic with explicit error reporting.
pub fn quad_arith(x: &QuadExt, y: &QuadExt, op: QuadOp) -> Result<QuadExt, QfError> {
    match op {
        QuadOp::Add => x.try_add(y),
        QuadOp::Sub => x.try_sub(y),
        QuadOp::Mul => x.try_mul(y),
        QuadOp::Div => x.try_div(y),
    }
}

pub fn embed_real(x: &QuadExt, precision_bits: u32) -> Result<f64, QfError> {
    x.embed_real(precision_bits)
}

// Operator sugar panics on radicand mismatch; use the `try_*` forms to recover.
macro_rules! forward_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$f(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        Self { a: -self.a, b: -self.b, radicand: self.radicand }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

fn fmt_rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl QuadExt {
    /// `a/b+c/d*sqrt(p)` with an explicit radicand, used when a whole matrix
    /// is printed against one field.
    pub fn to_text(&self, radicand: u64) -> String {
        let p = if self.radicand == 1 { radicand } else { self.radicand };
        format!("{}+{}*sqrt({})", fmt_rat(&self.a), fmt_rat(&self.b), p)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(self.radicand))
    }
}

fn parse_rat(s: &str) -> Result<Rational, QfError> {
    let err = || QfError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl FromStr for QuadExt {
    type Err = QfError;

    fn from_str(s: &str) -> Result<Self, QfError> {
        let err = || QfError::Parse(s.to_string());
        let t = s.trim();
        let Some(star) = t.find("*sqrt(") else {
            return Ok(Self::from_rational(parse_rat(t)?));
        };
        let head = &t[..star];
        let p: u64 = t[star + 6..].trim_end_matches(')').trim().parse().map_err(|_| err())?;
        // split "a+b" at the last sign that directly follows a digit
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .rfind(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit())
            .ok_or_else(err)?;
        let a = parse_rat(&head[..split])?;
        let b_str = head[split..].trim_start_matches('+');
        let b = parse_rat(b_str)?;
        Self::new(a, b, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, p: u64) -> QuadExt {
        QuadExt::new(rat_int(a), rat_int(b), p).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(q(1, 1, 5) * q(1, -1, 5), QuadExt::from_int(-4));
        assert_eq!(QuadExt::one() / q(2, 1, 5), q(-2, 1, 5));
        assert_eq!(QuadExt::sqrt(5) * QuadExt::sqrt(5), QuadExt::from_int(5));
    }

    #[test]
    fn mixed_radicands_fail() {
        let e = QuadExt::sqrt(2).try_add(&QuadExt::sqrt(3)).unwrap_err();
        assert_eq!(e, QfError::RadicandMismatch(2, 3));
        assert!(QuadExt::sqrt(2).try_add(&QuadExt::from_int(7)).is_ok());
        assert_eq!(QuadExt::zero().inverse().unwrap_err(), QfError::DivisionByZero);
        assert!(QuadExt::new(rat_int(1), rat_int(1), 12).is_err());
    }

    #[test]
    fn embeddings() {
        assert_eq!(q(1, 1, 2).embed_real(53).unwrap(), 1.0 + std::f64::consts::SQRT_2);
        assert_eq!(QuadExt::from_rational(rat(3, 4)).embed_real(80).unwrap(), 0.75);
        assert_eq!((QuadExt::sqrt(5) * QuadExt::sqrt(5)).embed_real(64).unwrap(), 5.0);
        let golden = QuadExt::new(rat(1, 2), rat(1, 2), 5).unwrap();
        assert_eq!(golden.to_f64(), (1.0 + 5f64.sqrt()) / 2.0);
        let tiny = q(-2, 1, 5);
        assert_eq!(tiny.to_f64(), 0.236_067_977_499_789_7);
        assert!(QuadExt::one().embed_real(52).is_err());
        assert_eq!(QuadExt::from_rational(rat(-1, 3)).to_f64(), -1.0 / 3.0);
    }

    #[test]
    fn text_round_trip() {
        let x = QuadExt::new(rat(-3, 4), rat(5, 7), 13).unwrap();
        assert_eq!(x.to_string(), "-3/4+5/7*sqrt(13)");
        assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x);
        let y = QuadExt::new(rat(2, 1), rat(-1, 3), 5).unwrap();
        assert_eq!(y.to_string().parse::<QuadExt>().unwrap(), y);
        assert_eq!("7/2".parse::<QuadExt>().unwrap(), QuadExt::from_rational(rat(7, 2)));
    }
}

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::{parse_term, phi_enclosure, push_term, split_terms, ExactField, Rational};
use crate::error::{Error, Result};

/// An element a + b·φ of Q(φ), φ = (1+√5)/2, in the basis {1, φ}.
///
/// The reduction φ² = φ + 1 is applied by every operation, so the
/// representation is unique.  The basis {1, φ} (rather than {1, √5}) keeps
/// the coefficients of all solus recurrences integral over the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElement {
    a: Rational,
    b: Rational,
}

impl QuadElement {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadElement { a, b }
    }

    /// The generator φ itself.
    pub fn phi() -> Self {
        QuadElement::new(Rational::zero(), Rational::from_integer(1.into()))
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadElement::new(a, Rational::zero())
    }

    pub(crate) fn from_rational_ref(a: &Rational) -> Self {
        Self::from_rational(a.clone())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    /// Rational part (coefficient of 1).
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of φ.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Field norm N(a + bφ) = (a + bφ)(a + bφ̄) = a² + ab − b², where
    /// φ̄ = 1 − φ is the conjugate root.  Zero only at zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Galois conjugate a + b(1 − φ) = (a + b) − bφ.
    pub fn conjugate(&self) -> Self {
        QuadElement::new(&self.a + &self.b, -self.b.clone())
    }

    /// Multiplicative inverse, via the conjugate and the rational norm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let conj = self.conjugate();
        Ok(QuadElement::new(conj.a / &n, conj.b / &n))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// x^n for any integer n (negative n inverts first).
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow_u64(n as u64))
        } else {
            Ok(self.inverse()?.pow_u64((-n) as u64))
        }
    }

    /// Exact sign of the real number a + bφ.
    ///
    /// Writing 2(a + bφ) = (2a + b) + b√5, the sign reduces to comparing
    /// squares of rationals; no numerical approximation is involved.
    pub fn signum(&self) -> i32 {
        let s = &self.a + &self.a + &self.b; // 2a + b
        let t = &self.b;
        let sign = |r: &Rational| -> i32 {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        };
        match (sign(&s), sign(t)) {
            (0, ts) => ts,
            (ss, 0) => ss,
            (1, 1) => 1,
            (-1, -1) => -1,
            (ss, _) => {
                // opposite signs: compare s^2 with 5 t^2
                let s2 = &s * &s;
                let t2 = t * t * Rational::from_integer(5.into());
                match (s2.cmp(&t2), ss) {
                    (std::cmp::Ordering::Greater, 1) => 1,
                    (std::cmp::Ordering::Greater, _) => -1,
                    (std::cmp::Ordering::Less, 1) => -1,
                    (std::cmp::Ordering::Less, _) => 1,
                    (std::cmp::Ordering::Equal, _) => 0,
                }
            }
        }
    }

    /// Rational interval of width at most `width` containing the value.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let scale = self.b.abs() + Rational::from_integer(1.into());
        let phi_width = width / scale;
        let (lo, hi) = phi_enclosure(&phi_width);
        let iv = Interval::point(&self.a).add(&Interval::new(lo, hi).scale(&self.b));
        (iv.lo, iv.hi)
    }
}

impl ExactField for QuadElement {
    fn field_zero() -> Self {
        QuadElement::new(Rational::zero(), Rational::zero())
    }
    fn field_one() -> Self {
        QuadElement::from_int(1)
    }
    fn from_rational(r: &Rational) -> Self {
        QuadElement::from_rational_ref(r)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn divide(&self, other: &Self) -> Result<Self> {
        self.try_div(other)
    }
}

impl Add for &QuadElement {
    type Output = QuadElement;
    fn add(self, rhs: &QuadElement) -> QuadElement {
        QuadElement::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadElement {
    type Output = QuadElement;
    fn sub(self, rhs: &QuadElement) -> QuadElement {
        QuadElement::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: &QuadElement) -> QuadElement {
        // (a1 + b1 φ)(a2 + b2 φ) with φ² = φ + 1.
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        let sq = &self.b * &rhs.b;
        QuadElement::new(&self.a * &rhs.a + &sq, cross + sq)
    }
}

impl Div for &QuadElement {
    type Output = QuadElement;
    fn div(self, rhs: &QuadElement) -> QuadElement {
        self.try_div(rhs).expect("division by zero in Q(phi)")
    }
}

impl Neg for &QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        QuadElement::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $($trait:ident :: $m:ident),+) => {$(
        impl $trait for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { $trait::$m(&self, &rhs) }
        }
    )+};
}
forward_owned_binop!(QuadElement, Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        -&self
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        push_term(&mut out, &self.a, "", true);
        push_term(&mut out, &self.b, "phi", self.a.is_zero());
        write!(f, "{out}")
    }
}

impl FromStr for QuadElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            input: s.to_string(),
            expected: "quadratic element a+b*phi",
        };
        let s = s.trim();
        if s == "0" {
            return Ok(ExactField::field_zero());
        }
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for term in split_terms(s) {
            let (coeff, power) = parse_term(&term, "phi").map_err(|_| err())?;
            match power {
                0 => a += coeff,
                1 => b += coeff,
                _ => return Err(err()),
            }
        }
        Ok(QuadElement::new(a, b))
    }
}

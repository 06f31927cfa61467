//! Rational generating functions P(z)/Q(z) over exact rationals, with
//! coefficient extraction through the linear recurrence induced by the
//! denominator:
//!
//! c_k = (p_k − Σ_{j≥1} q_j c_{k−j}) / q₀.
//!
//! Extraction costs O(n · deg Q) exact operations, which easily covers
//! the series lengths used anywhere in this crate (n ≤ a few thousand).
//! Numerator/denominator pairs are kept exactly as constructed — no
//! GCD normalisation — so every displayed generating function in the
//! literature maps one-to-one onto a constructor call here.

use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::exact::{rat_int, ExactField, Rational};

/// Dense polynomial over Q; index = power of z; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::new(vec![Rational::one()])
    }

    pub fn monomial(coeff: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = coeff;
        Poly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// Degree; the zero polynomial has degree −1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Horner evaluation at a point of any exact coefficient field.
    pub fn eval<F: ExactField>(&self, x: &F) -> F {
        let mut acc = F::field_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(&F::from_rational(c));
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Exact truncated power series; `coeffs.len() == truncation_order + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        Series { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// Truncation of a polynomial to a series of the given order.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series {
            coeffs: (0..=order).map(|k| p.coeff(k)).collect(),
        }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    fn zip_with(&self, rhs: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
        let order = self.truncation_order().min(rhs.truncation_order());
        Series {
            coeffs: (0..=order).map(|k| f(&self.coeffs[k], &rhs.coeffs[k])).collect(),
        }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.truncation_order().min(rhs.truncation_order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }
}

/// A rational generating function P(z)/Q(z) with Q(0) ≠ 0, stored exactly
/// as constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalGF {
    num: Poly,
    den: Poly,
}

impl RationalGF {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(RationalGF { num, den })
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Coefficients [z^0] .. [z^n_max] of P/Q, exactly.
    pub fn coefficients(&self, n_max: usize) -> Series {
        if let Some(ints) = self.integer_coefficients(n_max) {
            return Series {
                coeffs: ints.into_iter().map(Rational::from_integer).collect(),
            };
        }
        let q0 = self.den.coeff(0);
        let deg_q = self.den.degree().max(0) as usize;
        let mut out: Vec<Rational> = Vec::with_capacity(n_max + 1);
        for k in 0..=n_max {
            let mut acc = self.num.coeff(k);
            for j in 1..=deg_q.min(k) {
                let qj = self.den.coeff(j);
                if !qj.is_zero() {
                    acc -= qj * &out[k - j];
                }
            }
            out.push(acc / &q0);
        }
        Series { coeffs: out }
    }

    /// Integer fast path for the common case of integral numerator and
    /// denominator with Q(0) = ±1: the recurrence then never leaves the
    /// integers, and skipping per-term rational normalisation makes long
    /// extractions (thousands of coefficients) dramatically cheaper.
    pub fn integer_coefficients(&self, n_max: usize) -> Option<Vec<num_bigint::BigInt>> {
        use num_bigint::BigInt;
        let all_int = |p: &Poly| p.coeffs().iter().all(|c| c.is_integer());
        if !all_int(&self.num) || !all_int(&self.den) {
            return None;
        }
        let q0 = self.den.coeff(0).to_integer();
        let negate = if q0 == BigInt::from(1) {
            false
        } else if q0 == BigInt::from(-1) {
            true
        } else {
            return None;
        };
        let deg_q = self.den.degree().max(0) as usize;
        let qs: Vec<BigInt> = (0..=deg_q).map(|j| self.den.coeff(j).to_integer()).collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        for k in 0..=n_max {
            let mut acc = self.num.coeff(k).to_integer();
            for (j, qj) in qs.iter().enumerate().take(deg_q.min(k) + 1).skip(1) {
                if !Zero::is_zero(qj) {
                    acc -= qj * &out[k - j];
                }
            }
            if negate {
                acc = -acc;
            }
            out.push(acc);
        }
        Some(out)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn int_coeffs(s: &Series) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer coefficient {c}");
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn powers_of_two() {
        let gf = RationalGF::from_ints(&[1], &[1, -2]).unwrap();
        assert_eq!(int_coeffs(&gf.coefficients(5)), vec![1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn fibonacci_counts() {
        let gf = RationalGF::from_ints(&[1, 1], &[1, -1, -1]).unwrap();
        assert_eq!(int_coeffs(&gf.coefficients(6)), vec![1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn solus_bitsum_numerator() {
        let den = Poly::from_ints(&[1, -1, -1]);
        let gf = RationalGF::new(Poly::from_ints(&[0, 1]), &den * &den).unwrap();
        assert_eq!(int_coeffs(&gf.coefficients(5)), vec![0, 1, 2, 5, 10, 20]);
    }

    #[test]
    fn second_upper_fibonacci() {
        // unrolled: f_k = 2f_{k−1} − f_{k−2} + f_{k−3}, read f_2..f_7
        let gf = RationalGF::from_ints(&[1, -1, 1], &[1, -2, 1, -1]).unwrap();
        assert_eq!(int_coeffs(&gf.coefficients(5)), vec![1, 1, 2, 4, 7, 12]);
    }

    #[test]
    fn zero_constant_term_rejected() {
        assert_eq!(
            RationalGF::from_ints(&[1], &[0, 1]).unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn series_ops() {
        let one_plus_z = Series::from_poly(&Poly::from_ints(&[1, 1]), 4);
        let one_minus_z = Series::from_poly(&Poly::from_ints(&[1, -1]), 4);
        assert_eq!(
            (&one_plus_z + &one_minus_z).coeffs(),
            Series::from_poly(&Poly::from_ints(&[2]), 4).coeffs()
        );
        assert_eq!(
            (&one_plus_z * &one_plus_z).coeffs(),
            Series::from_poly(&Poly::from_ints(&[1, 2, 1]), 4).coeffs()
        );
        // telescoping: series(1/(1−z)) · (1−z) = 1
        let geo = RationalGF::from_ints(&[1], &[1, -1]).unwrap().coefficients(6);
        let prod = &geo * &Series::from_poly(&Poly::from_ints(&[1, -1]), 6);
        assert_eq!(prod, Series::from_poly(&Poly::one(), 6));
    }

    #[test]
    fn extraction_inverts_multiplication() {
        // For several GFs: coefficients(P/Q) * Q == P through the order.
        let cases: Vec<RationalGF> = vec![
            RationalGF::from_ints(&[1], &[1, -2]).unwrap(),
            RationalGF::from_ints(&[0, 1, -1], &[1, -3, 1, 5]).unwrap(),
            RationalGF::from_ints(&[2, 0, 7], &[3, 1, -1, 0, 2]).unwrap(),
        ];
        for gf in cases {
            let order = 24;
            let c = gf.coefficients(order);
            let back = &c * &Series::from_poly(gf.denominator(), order);
            assert_eq!(back, Series::from_poly(gf.numerator(), order), "{gf}");
        }
    }

    #[test]
    fn extraction_is_linear() {
        let q = Poly::from_ints(&[1, -1, -2, 3]);
        let p1 = Poly::from_ints(&[1, 4, 2]);
        let p2 = Poly::from_ints(&[0, -3, 0, 9]);
        let sum = RationalGF::new(&p1 + &p2, q.clone()).unwrap().coefficients(16);
        let c1 = RationalGF::new(p1, q.clone()).unwrap().coefficients(16);
        let c2 = RationalGF::new(p2, q).unwrap().coefficients(16);
        assert_eq!(sum, &c1 + &c2);
    }

    #[test]
    fn poly_eval_in_extension_field() {
        use crate::exact::QuadElement;
        // (z² − z − 1) at φ is zero
        let p = Poly::from_ints(&[-1, -1, 1]);
        assert_eq!(p.eval(&QuadElement::phi()), QuadElement::field_zero());
        assert_eq!(p.eval(&rat(2, 1)), rat(1, 1));
    }

    #[test]
    fn derivative_and_display() {
        let p = Poly::from_ints(&[1, -2, 1, -1]);
        assert_eq!(p.derivative(), Poly::from_ints(&[-2, 2, -3]));
        assert_eq!(p.to_string(), "1 - 2*z + z^2 - z^3");
    }
}

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::{parse_term, psi_enclosure, push_term, split_terms, ExactField, Rational};
use crate::error::{Error, Result};

/// An element a + b·ψ + c·ψ² of Q(ψ) in the basis {1, ψ, ψ²}, where ψ is
/// the real root of x³ − 2x² + x − 1 (the growth rate of multus string
/// counts, ψ = 1.7548776662...).
///
/// The reduction ψ³ = 2ψ² − ψ + 1 is applied by every operation.  The
/// minimal polynomial is irreducible over Q, so Q(ψ) is a field and every
/// nonzero element has an inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicElement {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl CubicElement {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        CubicElement { a, b, c }
    }

    /// The generator ψ itself.
    pub fn psi() -> Self {
        CubicElement::new(
            Rational::zero(),
            Rational::from_integer(1.into()),
            Rational::zero(),
        )
    }

    pub fn from_rational(a: Rational) -> Self {
        CubicElement::new(a, Rational::zero(), Rational::zero())
    }

    pub(crate) fn from_rational_ref(a: &Rational) -> Self {
        Self::from_rational(a.clone())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Multiplication by ψ in the basis: (a, b, c) ↦ (c, a − c, b + 2c).
    fn shift(&self) -> Self {
        CubicElement::new(
            self.c.clone(),
            &self.a - &self.c,
            &self.b + &(&self.c + &self.c),
        )
    }

    /// Field norm: determinant of the multiplication-by-x matrix.
    pub fn norm(&self) -> Rational {
        let m = self.mul_matrix();
        det3(&m)
    }

    /// Columns are x·1, x·ψ, x·ψ² in the basis {1, ψ, ψ²}.
    fn mul_matrix(&self) -> [[Rational; 3]; 3] {
        let c0 = self.clone();
        let c1 = self.shift();
        let c2 = c1.shift();
        [
            [c0.a.clone(), c1.a.clone(), c2.a.clone()],
            [c0.b.clone(), c1.b.clone(), c2.b.clone()],
            [c0.c.clone(), c1.c.clone(), c2.c.clone()],
        ]
    }

    /// Multiplicative inverse via the exact 3×3 linear system
    /// (mul-by-x matrix applied to y equals 1), solved by Cramer's rule.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.mul_matrix();
        let det = det3(&m);
        debug_assert!(!det.is_zero(), "irreducible minimal polynomial");
        let e = [Rational::from_integer(1.into()), Rational::zero(), Rational::zero()];
        let mut cols = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (j, col) in cols.iter_mut().enumerate() {
            let mut mj = m.clone();
            for i in 0..3 {
                mj[i][j] = e[i].clone();
            }
            *col = det3(&mj) / &det;
        }
        let [a, b, c] = cols;
        Ok(CubicElement::new(a, b, c))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow_u64(n as u64))
        } else {
            Ok(self.inverse()?.pow_u64((-n) as u64))
        }
    }

    /// Rational interval of width at most `width` containing the value.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        if self.b.is_zero() && self.c.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        // First-order width estimate |b| w + |c| (2ψ + w) w with ψ < 2;
        // iterate with exact interval arithmetic until the target is met.
        let mut psi_width = {
            let scale = self.b.abs() + self.c.abs() * Rational::from_integer(6.into())
                + Rational::from_integer(1.into());
            width / scale
        };
        loop {
            let iv = self.interval(&psi_width);
            if &iv.width() <= width {
                return (iv.lo, iv.hi);
            }
            psi_width /= Rational::from_integer(4.into());
        }
    }

    fn interval(&self, psi_width: &Rational) -> Interval {
        let (lo, hi) = psi_enclosure(psi_width);
        let ipsi = Interval::new(lo, hi);
        let ipsi2 = ipsi.mul(&ipsi);
        Interval::point(&self.a)
            .add(&ipsi.scale(&self.b))
            .add(&ipsi2.scale(&self.c))
    }

    /// Exact sign of the real number a + bψ + cψ².
    ///
    /// Interval refinement decides almost immediately; the norm bound
    /// |x| ≥ |N(x)| / (|a|+|b|+|c|)² certifies termination for nonzero x
    /// because the two conjugate roots lie inside the unit circle.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let s = self.a.abs() + self.b.abs() + self.c.abs();
        let floor = self.norm().abs() / (&s * &s);
        debug_assert!(floor.is_positive());
        let mut w = super::rat(1, 1024);
        loop {
            let iv = self.interval(&w);
            if iv.lo.is_positive() {
                return 1;
            }
            if iv.hi.is_negative() {
                return -1;
            }
            assert!(
                iv.width() > floor,
                "nonzero cubic element with undecidable sign"
            );
            w /= Rational::from_integer(16.into());
        }
    }
}

impl ExactField for CubicElement {
    fn field_zero() -> Self {
        CubicElement::new(Rational::zero(), Rational::zero(), Rational::zero())
    }
    fn field_one() -> Self {
        CubicElement::from_int(1)
    }
    fn from_rational(r: &Rational) -> Self {
        CubicElement::from_rational_ref(r)
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

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl Add for &CubicElement {
    type Output = CubicElement;
    fn add(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c)
    }
}

impl Sub for &CubicElement {
    type Output = CubicElement;
    fn sub(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c)
    }
}

impl Mul for &CubicElement {
    type Output = CubicElement;
    fn mul(self, rhs: &CubicElement) -> CubicElement {
        // Convolve, then reduce ψ³ = 2ψ² − ψ + 1, ψ⁴ = 3ψ² − ψ + 2.
        let z0 = &self.a * &rhs.a;
        let z1 = &self.a * &rhs.b + &self.b * &rhs.a;
        let z2 = &self.a * &rhs.c + &self.b * &rhs.b + &self.c * &rhs.a;
        let z3 = &self.b * &rhs.c + &self.c * &rhs.b;
        let z4 = &self.c * &rhs.c;
        CubicElement::new(
            z0 + &z3 + &(&z4 + &z4),
            z1 - &z3 - &z4,
            z2 + &(&z3 + &z3) + &(&z4 + &z4) + &z4,
        )
    }
}

impl Div for &CubicElement {
    type Output = CubicElement;
    fn div(self, rhs: &CubicElement) -> CubicElement {
        self.try_div(rhs).expect("division by zero in Q(psi)")
    }
}

impl Neg for &CubicElement {
    type Output = CubicElement;
    fn neg(self) -> CubicElement {
        CubicElement::new(-self.a.clone(), -self.b.clone(), -self.c.clone())
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
forward_owned_binop!(CubicElement, Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for CubicElement {
    type Output = CubicElement;
    fn neg(self) -> CubicElement {
        -&self
    }
}

impl fmt::Display for CubicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        push_term(&mut out, &self.a, "", true);
        push_term(&mut out, &self.b, "psi", self.a.is_zero());
        push_term(
            &mut out,
            &self.c,
            "psi^2",
            self.a.is_zero() && self.b.is_zero(),
        );
        write!(f, "{out}")
    }
}

impl FromStr for CubicElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            input: s.to_string(),
            expected: "cubic element a+b*psi+c*psi^2",
        };
        let s = s.trim();
        if s == "0" {
            return Ok(ExactField::field_zero());
        }
        let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
        for term in split_terms(s) {
            let (coeff, power) = parse_term(&term, "psi").map_err(|_| err())?;
            coeffs[power as usize] += coeff;
        }
        let [a, b, c] = coeffs;
        Ok(CubicElement::new(a, b, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn psi_cubed_in_basis() {
        // ψ·ψ·ψ = 1 − ψ + 2ψ², the characteristic reduction.
        let psi = CubicElement::psi();
        let cube = &(&psi * &psi) * &psi;
        assert_eq!(cube, CubicElement::new(rat(1, 1), rat(-1, 1), rat(2, 1)));
    }

    #[test]
    fn inverse_axiom() {
        let x = CubicElement::new(rat(1, 1), rat(1, 1), rat(0, 1)); // 1 + ψ
        assert_eq!(&x * &x.inverse().unwrap(), ExactField::field_one());
        let y = CubicElement::new(rat(-3, 7), rat(2, 5), rat(11, 4));
        assert_eq!(&y * &y.inverse().unwrap(), ExactField::field_one());
    }

    #[test]
    fn additive_identity() {
        let psi = CubicElement::psi();
        assert_eq!(&psi + &ExactField::field_zero(), psi);
    }

    #[test]
    fn signs() {
        // ψ² − ψ − 1 > 0 because ψ > φ.
        let x = CubicElement::new(rat(-1, 1), rat(-1, 1), rat(1, 1));
        assert_eq!(x.signum(), 1);
        // 2 − ψ > 0, ψ − 2 < 0
        assert_eq!(CubicElement::new(rat(2, 1), rat(-1, 1), rat(0, 1)).signum(), 1);
        assert_eq!(CubicElement::new(rat(-2, 1), rat(1, 1), rat(0, 1)).signum(), -1);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "psi", "-1+psi", "1-psi+2*psi^2", "psi^2", "1/3-2/7*psi^2"] {
            let x: CubicElement = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }
}

//! Exact arithmetic: arbitrary-precision rationals, the quadratic field
//! Q(φ) and the cubic field Q(ψ), and controlled-precision decimal
//! rendering.
//!
//! φ = (1+√5)/2 is the golden mean, the root of x² − x − 1 above 1; it is
//! the growth rate of solus string counts.  ψ ≈ 1.7548776662 is the real
//! root of x³ − 2x² + x − 1, the growth rate of multus string counts.
//! Every quantity attached to the solus (resp. multus) ensemble lives in
//! Q(φ) (resp. Q(ψ)), so all recurrences in this crate run in exact field
//! arithmetic; floating point only ever appears in clearly marked
//! large-index diagnostic paths.

mod cubic;
mod decimal;
mod interval;
mod quad;

pub use cubic::CubicElement;
pub use decimal::{approximate, phi_enclosure, psi_enclosure, DecimalApprox};
pub use quad::QuadElement;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand rational constructor, mostly for tests and constants.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p" as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse {
        input: s.to_string(),
        expected: "rational p/q",
    })
}

/// x^n for signed n (n < 0 requires x != 0).
pub fn rational_pow(x: &Rational, n: i64) -> Rational {
    let e = i32::try_from(n).expect("pow exponent fits in i32");
    x.pow(e)
}

/// The common interface of the three exact coefficient domains.
///
/// This is the minimal field vocabulary the generating-function and
/// residue machinery needs; it is not a general algebra framework.  The
/// method names deliberately avoid the `num_traits` and `std::ops`
/// vocabulary so the trait can coexist with them in scope.
pub trait ExactField: Clone + PartialEq + fmt::Debug {
    fn field_zero() -> Self;
    fn field_one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn divide(&self, other: &Self) -> Result<Self>;

    fn negate(&self) -> Self {
        Self::field_zero().minus(self)
    }

    /// x^n for n >= 0 by repeated squaring.
    fn pow_u64(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::field_one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            n >>= 1;
        }
        acc
    }
}

impl ExactField for Rational {
    fn field_zero() -> Self {
        Rational::zero()
    }
    fn field_one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
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
        if Zero::is_zero(other) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
}

/// An exact value from any of the three coefficient domains.
///
/// Result tables are heterogeneous across ensembles (rationals for the
/// Cantor distribution, Q(φ) for solus, Q(ψ) for multus); this enum is the
/// uniform carrier used by tables and the CLI.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactValue {
    Rational(Rational),
    Quad(QuadElement),
    Cubic(CubicElement),
}

impl ExactValue {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExactValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_quad(&self) -> Option<&QuadElement> {
        match self {
            ExactValue::Quad(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_cubic(&self) -> Option<&CubicElement> {
        match self {
            ExactValue::Cubic(c) => Some(c),
            _ => None,
        }
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            ExactValue::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            ExactValue::Quad(q) => q.signum(),
            ExactValue::Cubic(c) => c.signum(),
        }
    }

    /// Exact comparison through the embeddings into the reals.
    pub fn cmp_exact(&self, other: &ExactValue) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let diff = self.sub_value(other);
        match diff.signum() {
            x if x < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    fn sub_value(&self, other: &ExactValue) -> ExactValue {
        use ExactValue::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Rational(a - b),
            (Quad(a), Quad(b)) => Quad(a - b),
            (Cubic(a), Cubic(b)) => Cubic(a - b),
            (Rational(a), Quad(b)) => Quad(&QuadElement::from_rational_ref(a) - b),
            (Quad(a), Rational(b)) => Quad(a - &QuadElement::from_rational_ref(b)),
            (Rational(a), Cubic(b)) => Cubic(&CubicElement::from_rational_ref(a) - b),
            (Cubic(a), Rational(b)) => Cubic(a - &CubicElement::from_rational_ref(b)),
            // Q(phi) and Q(psi) only meet through the rationals.
            _ => panic!("cannot compare Q(phi) and Q(psi) elements"),
        }
    }

    /// Enclosing interval with rational endpoints of width at most `width`.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        match self {
            ExactValue::Rational(r) => (r.clone(), r.clone()),
            ExactValue::Quad(q) => q.enclosure(width),
            ExactValue::Cubic(c) => c.enclosure(width),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let w = rat(1, 1_000_000_000_000_000);
        let (lo, hi) = self.enclosure(&w);
        let mid = (lo + hi) / rat_int(2);
        rational_to_f64(&mid)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rational(r) => write!(f, "{r}"),
            ExactValue::Quad(q) => write!(f, "{q}"),
            ExactValue::Cubic(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for ExactValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains("psi") {
            Ok(ExactValue::Cubic(s.parse()?))
        } else if s.contains("phi") {
            Ok(ExactValue::Quad(s.parse()?))
        } else {
            Ok(ExactValue::Rational(parse_rational(s)?))
        }
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::Rational(r)
    }
}

impl From<QuadElement> for ExactValue {
    fn from(q: QuadElement) -> Self {
        ExactValue::Quad(q)
    }
}

impl From<CubicElement> for ExactValue {
    fn from(c: CubicElement) -> Self {
        ExactValue::Cubic(c)
    }
}

/// Lossy conversion for diagnostics and Monte Carlo code.
pub fn rational_to_f64(r: &Rational) -> f64 {
    // num-rational's to_f64 handles magnitudes beyond f64 range poorly in
    // older releases; shifting by the bit-length difference is robust.
    use num_traits::ToPrimitive;
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    let scaled = if shift > 0 {
        Rational::new(num.clone(), den << shift as u64)
    } else {
        Rational::new(num << (-shift) as u64, den.clone())
    };
    let x = scaled.to_f64().unwrap_or(0.0);
    x * 2f64.powi(shift as i32)
}

/// Format a rational term with a symbol suffix, used by the canonical
/// string forms "a+b*phi" and "a+b*psi+c*psi^2".
pub(crate) fn push_term(out: &mut String, coeff: &Rational, symbol: &str, first: bool) {
    if coeff.is_zero() {
        return;
    }
    let mag = coeff.abs();
    if coeff.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let mag_one = mag.is_one();
    if symbol.is_empty() {
        out.push_str(&mag.to_string());
    } else if mag_one {
        out.push_str(symbol);
    } else {
        out.push_str(&mag.to_string());
        out.push('*');
        out.push_str(symbol);
    }
}

/// Split "a+b*phi"-style canonical strings into signed terms.
pub(crate) fn split_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() && !cur.ends_with('/') {
            terms.push(std::mem::take(&mut cur));
        }
        if ch == '+' && cur.is_empty() && !terms.is_empty() {
            continue; // separator, sign is implicit
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    terms
}

pub(crate) fn parse_term(
    term: &str,
    symbol: &str,
) -> std::result::Result<(Rational, u32), ()> {
    // Returns (coefficient, power of the symbol: 0, 1 or 2).
    let t = term.trim();
    let (body, power) = if let Some(stripped) = t.strip_suffix(&format!("{symbol}^2")) {
        (stripped, 2)
    } else if let Some(stripped) = t.strip_suffix(symbol) {
        (stripped, 1)
    } else {
        (t, 0)
    };
    let body = body.strip_suffix('*').unwrap_or(body).trim();
    let coeff = if power > 0 && (body.is_empty() || body == "+") {
        Rational::one()
    } else if power > 0 && body == "-" {
        -Rational::one()
    } else {
        Rational::from_str(body).map_err(|_| ())?
    };
    Ok((coeff, power))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_roundtrip() {
        let x = parse_rational("33/230").unwrap();
        assert_eq!(x, rat(33, 230));
        assert_eq!(x.to_string(), "33/230");
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn rational_to_f64_handles_large_exponents() {
        use num_traits::Pow;
        let big = rat(1, 2).pow(2000i32); // far below f64 range
        assert_eq!(rational_to_f64(&big), 0.0);
        let x = rat(355, 113);
        assert!((rational_to_f64(&x) - 3.14159292).abs() < 1e-7);
    }
}

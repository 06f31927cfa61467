//! Arbitrary-precision binary floating point over `BigInt` mantissas,
//! value = mant · 2^exp, with explicit precision arguments on every
//! rounding operation.
//!
//! This is deliberately small: just what the asymptotic-constant
//! evaluations and the large-index recurrence diagnostics need — field
//! operations, square and cube roots, exp/ln/pow, and π.  Exponents are
//! i64, so quantities like binomial(4096, 2048) or φ^(-4096) that
//! overflow f64 are routine here.
//!
//! Every operation rounds to `prec` mantissa bits (round half away from
//! zero), so a computation carried out at `prec = target + guard` bits
//! has forward relative error well below 2^(−target) after the usual
//! handful of operations per term; callers size the guard accordingly.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        BigFloat {
            mant: BigInt::from(n),
            exp: 0,
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        BigFloat { mant: n, exp: 0 }
    }

    /// num/den rounded to prec bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let s = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let shift = s.max(0) as u64;
        let q = (num << shift) / den;
        BigFloat {
            mant: q,
            exp: -(shift as i64),
        }
        .round(prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Position of the leading bit: value magnitude is in [2^(top−1), 2^top).
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Round to `prec` mantissa bits, half away from zero.
    pub fn round(&self, prec: u32) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let (sign, mag) = (self.mant.sign(), self.mant.magnitude());
        let half = BigUint::from(1u32) << (shift - 1);
        let rounded = (mag + half) >> shift;
        let mant = match sign {
            Sign::Minus => -BigInt::from(rounded),
            _ => BigInt::from(rounded),
        };
        BigFloat {
            mant,
            exp: self.exp + shift as i64,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return other.round(prec);
        }
        if other.is_zero() {
            return self.round(prec);
        }
        let (hi, lo) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        // When the summands' scales are too far apart to interact within
        // prec bits, the small one only matters as a sticky bit.
        if hi.top() - lo.top() > prec as i64 + 8 {
            return hi.round(prec);
        }
        let e = hi.exp.min(lo.exp);
        let mant = (&hi.mant << (hi.exp - e) as u64) + (&lo.mant << (lo.exp - e) as u64);
        BigFloat { mant, exp: e }.round(prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        BigFloat {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .round(prec)
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let mut q = Self::from_ratio(&self.mant, &other.mant, prec + 2);
        q.exp += self.exp - other.exp;
        q.round(prec)
    }

    pub fn recip(&self, prec: u32) -> Self {
        Self::from_i64(1).div(self, prec)
    }

    /// Square root (argument must be nonnegative).
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative BigFloat");
        if self.is_zero() {
            return Self::zero();
        }
        // scale so the exponent is even and the mantissa has 2*prec+8 bits
        let want = 2 * prec as u64 + 8;
        let bits = self.mant.bits();
        let mut shift = want.saturating_sub(bits) as i64;
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled: BigInt = &self.mant << shift as u64;
        let root = scaled.sqrt();
        BigFloat {
            mant: root,
            exp: (self.exp - shift) / 2,
        }
        .round(prec)
    }

    /// Cube root (any sign).
    pub fn cbrt(&self, prec: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let want = 3 * prec as u64 + 12;
        let bits = self.mant.bits();
        let mut shift = want.saturating_sub(bits) as i64;
        while (self.exp - shift).rem_euclid(3) != 0 {
            shift += 1;
        }
        let scaled: BigInt = &self.mant << shift as u64;
        let root = scaled.cbrt();
        BigFloat {
            mant: root,
            exp: (self.exp - shift) / 3,
        }
        .round(prec)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (Sign::Minus, Sign::NoSign | Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign | Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let negative = self.mant.is_negative();
        if self.top() != other.top() {
            let by_top = self.top().cmp(&other.top());
            return if negative { by_top.reverse() } else { by_top };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (head, head_exp) = if bits > 63 {
            let shift = bits - 63;
            (
                i64::try_from(&self.mant >> shift).unwrap(),
                self.exp + shift as i64,
            )
        } else {
            (i64::try_from(self.mant.clone()).unwrap(), self.exp)
        };
        (head as f64) * 2f64.powi(head_exp.clamp(-2000, 2000) as i32)
    }
}

// ------------------------------------------------------------ constants

/// atan(1/m) scaled by 2^p, by the alternating series; error a few ulps.
fn atan_recip_scaled(m: u64, p: u64) -> BigInt {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut power = (BigInt::from(1) << p) / BigInt::from(m);
    let mut acc = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j.is_multiple_of(2) {
            acc += &term;
        } else {
            acc -= &term;
        }
        if term.is_zero() {
            break;
        }
        power /= &m2;
        j += 1;
    }
    acc
}

/// π by Machin's formula 16 atan(1/5) − 4 atan(1/239).
pub fn pi(prec: u32) -> BigFloat {
    let p = prec as u64 + 24;
    let v = atan_recip_scaled(5, p) * BigInt::from(16) - atan_recip_scaled(239, p) * BigInt::from(4);
    BigFloat { mant: v, exp: -(p as i64) }.round(prec)
}

/// atanh(1/m) scaled by 2^p (m ≥ 2).
fn atanh_recip_scaled(m: u64, p: u64) -> BigInt {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut power = (BigInt::from(1) << p) / BigInt::from(m);
    let mut acc = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        acc += &power / BigInt::from(2 * j + 1);
        power /= &m2;
        j += 1;
    }
    acc
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> BigFloat {
    let p = prec as u64 + 24;
    let v = atanh_recip_scaled(3, p) * BigInt::from(2);
    BigFloat { mant: v, exp: -(p as i64) }.round(prec)
}

// ------------------------------------------------------- transcendentals

/// exp(x): argument reduction by ln 2 and repeated halving, then Taylor.
pub fn exp(x: &BigFloat, prec: u32) -> BigFloat {
    let wp = prec + 48;
    if x.is_zero() {
        return BigFloat::from_i64(1);
    }
    let l2 = ln2(wp);
    // nearest integer to x / ln2
    let q = x.div(&l2, 64);
    let k = {
        let r = q.to_rational();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let shifted = if r.is_negative() { &r - &half } else { &r + &half };
        i64::try_from(shifted.trunc().to_integer()).expect("exp argument in range")
    };
    let r = x.sub(&BigFloat::from_i64(k).mul(&l2, wp), wp);
    // now |r| <= ln2/2; halve s more times
    let s = 8i64;
    let r_small = r.mul_pow2(-s);
    let mut term = BigFloat::from_i64(1);
    let mut sum = BigFloat::from_i64(1);
    let mut j = 1i64;
    loop {
        term = term.mul(&r_small, wp).div(&BigFloat::from_i64(j), wp);
        if term.is_zero() || term.top() < -(wp as i64) {
            break;
        }
        sum = sum.add(&term, wp);
        j += 1;
    }
    for _ in 0..s {
        sum = sum.mul(&sum, wp);
    }
    sum.mul_pow2(k).round(prec)
}

/// Natural logarithm (argument must be positive).
pub fn ln(x: &BigFloat, prec: u32) -> BigFloat {
    assert!(!x.is_negative() && !x.is_zero(), "ln needs a positive argument");
    let wp = prec + 48;
    // normalize x = m * 2^e with m in [2/3, 4/3)
    let mut e = x.top();
    let mut m = x.mul_pow2(-e);
    let two_thirds = BigFloat::from_ratio(&BigInt::from(2), &BigInt::from(3), wp);
    if m.cmp_value(&two_thirds) == Ordering::Less {
        m = m.mul_pow2(1);
        e -= 1;
    }
    // atanh series: ln m = 2 * sum t^(2j+1)/(2j+1), t = (m-1)/(m+1)
    let one = BigFloat::from_i64(1);
    let t = m.sub(&one, wp).div(&m.add(&one, wp), wp);
    let t2 = t.mul(&t, wp);
    let mut power = t.clone();
    let mut sum = BigFloat::zero();
    let mut j = 0i64;
    loop {
        let term = power.div(&BigFloat::from_i64(2 * j + 1), wp);
        if term.is_zero() || term.top() < -(wp as i64) {
            break;
        }
        sum = sum.add(&term, wp);
        power = power.mul(&t2, wp);
        j += 1;
    }
    let ln_m = sum.mul_pow2(1);
    ln_m.add(&BigFloat::from_i64(e).mul(&ln2(wp), wp), wp).round(prec)
}

/// x^y = exp(y ln x) for positive x.
pub fn powf(x: &BigFloat, y: &BigFloat, prec: u32) -> BigFloat {
    let wp = prec + 24;
    exp(&y.mul(&ln(x, wp), wp), wp).round(prec)
}

/// Integer power with rounding at each squaring.
pub fn powi(x: &BigFloat, n: i64, prec: u32) -> BigFloat {
    let wp = prec + 24;
    let mut base = if n < 0 { x.recip(wp) } else { x.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = BigFloat::from_i64(1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, wp);
        }
        base = base.mul(&base, wp);
        e >>= 1;
    }
    acc.round(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_to_f64;

    fn assert_close_decimal(x: &BigFloat, decimal: &str, tol_exp: i64) {
        let want = parse_decimal(decimal);
        let diff = (x.to_rational() - want).abs();
        let tol = Rational::new(BigInt::from(1), BigInt::from(10).pow(tol_exp as u32));
        assert!(
            diff <= tol,
            "value {} differs from {decimal} by {}",
            x.to_f64(),
            rational_to_f64(&diff)
        );
    }

    fn parse_decimal(s: &str) -> Rational {
        let (int_part, frac_part) = s.split_once('.').unwrap();
        let digits = frac_part.len() as u32;
        let all: BigInt = format!("{int_part}{frac_part}").parse().unwrap();
        Rational::new(all, BigInt::from(10).pow(digits))
    }

    #[test]
    fn pi_digits() {
        assert_close_decimal(&pi(160), "3.14159265358979323846264338327950288", 35);
    }

    #[test]
    fn ln2_digits() {
        assert_close_decimal(&ln2(160), "0.69314718055994530941723212145817657", 34);
    }

    #[test]
    fn exp_and_ln_roundtrip() {
        let x = BigFloat::from_ratio(&BigInt::from(7), &BigInt::from(3), 160);
        let y = ln(&exp(&x, 160), 160);
        let diff = y.sub(&x, 160).abs();
        assert!(diff.is_zero() || diff.top() < -140, "top={}", diff.top());
    }

    #[test]
    fn e_digits() {
        assert_close_decimal(
            &exp(&BigFloat::from_i64(1), 160),
            "2.71828182845904523536028747135266250",
            34,
        );
    }

    #[test]
    fn sqrt_and_cbrt() {
        let two = BigFloat::from_i64(2);
        let r = two.sqrt(160);
        let back = r.mul(&r, 160).sub(&two, 160).abs();
        assert!(back.is_zero() || back.top() < -150);
        let x = BigFloat::from_ratio(&BigInt::from(-27), &BigInt::from(8), 160);
        let c = x.cbrt(160);
        assert_close_decimal(&c.neg(), "1.50000000000000", 14);
    }

    #[test]
    fn powf_matches_powi() {
        let x = BigFloat::from_ratio(&BigInt::from(5), &BigInt::from(3), 200);
        let a = powf(&x, &BigFloat::from_i64(7), 160);
        let b = powi(&x, 7, 160);
        let diff = a.sub(&b, 160).abs();
        assert!(diff.is_zero() || diff.top() < a.top() - 140);
    }

    #[test]
    fn huge_exponents_are_fine() {
        let phi = BigFloat::from_i64(1)
            .add(&BigFloat::from_i64(5).sqrt(200), 200)
            .mul_pow2(-1);
        let big = powi(&phi, 4096, 160);
        let small = powi(&phi, -4096, 160);
        let prod = big.mul(&small, 160);
        let err = prod.sub(&BigFloat::from_i64(1), 160).abs();
        assert!(err.is_zero() || err.top() < -130);
        assert!(big.top() > 2800 && small.top() < -2800);
    }

    #[test]
    fn comparisons() {
        let a = BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(3), 120);
        let b = BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(2), 120);
        assert_eq!(a.cmp_value(&b), Ordering::Less);
        assert_eq!(b.cmp_value(&a), Ordering::Greater);
        assert_eq!(a.cmp_value(&a), Ordering::Equal);
        assert_eq!(a.neg().cmp_value(&b), Ordering::Less);
        assert_eq!(b.cmp_value(&a.neg()), Ordering::Greater);
    }
}

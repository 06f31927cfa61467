//! High-precision evaluation of the asymptotic and series constants
//! attached to the Cantor and Cantor-solus moment/order-statistic laws:
//!
//! * the moment constant
//!   C = (1/(2 ln 3)) ∫₀^∞ (Π_{k≥2} (1+e^{−2x/3^k})/2) e^{−2x/3}
//!   x^{ln2/ln3 − 1} dx = 0.733874...,
//! * the minimum constant
//!   c = (2/(3 ln 2)) Γ(ln3/ln2) ζ(ln3/ln2) = 1.9967049717...,
//! * the sum of all Cantor moments
//!   Σ μ_n = −1/3 + (2/3) Σ_k (2/3)^k H_{2^k} = 3.3646507281...,
//! * the solus moment coefficient 0.616005..., from the exponential
//!   generating function M(x) = e^{−x/3} Σ (μ_k/k!)(4x/9)^k integrated
//!   against e^{−2x/3} x^{lnφ/ln3 − 1},
//!
//! together with the Γ/ζ special functions and Euler's constant that
//! they require, and the two-term longest-run asymptotic
//! ln(n)/ln(2) − (3/2 − γ/ln 2).
//!
//! Each integrand has an integrable endpoint singularity x^{α−1}; the
//! substitution u = x^α removes it exactly (du = α x^{α−1} dx), after
//! which the integral runs under tanh-sinh quadrature, whose step-halving
//! levels double as the error estimate.  Infinite products and series are
//! truncated with explicit tail bounds; every reported error bound is the
//! sum of the truncation budgets, the quadrature level difference, and a
//! rounding margin.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigfloat::{exp, ln, ln2, pi, BigFloat};
use crate::error::{Error, Result};
use crate::exact::{DecimalApprox, Rational};
use crate::moments::solus_moments;

/// A named constant with its enclosure and a record of how it was made.
#[derive(Debug, Clone)]
pub struct AsymptoticConstant {
    pub name: String,
    pub value: DecimalApprox,
    pub method: String,
    pub parameters: String,
}

/// Working mantissa bits for a decimal-digit target.
fn prec_for(digits: u32) -> u32 {
    digits * 10 / 3 + 48
}

fn pow10_inv(digits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(digits))
}

/// Enclose a BigFloat value with an explicit error budget.
fn enclose(value: &BigFloat, error: &Rational, digits: u32) -> DecimalApprox {
    let v = value.to_rational();
    DecimalApprox::from_interval(&(&v - error), &(&v + error), digits)
}

// --------------------------------------------------------------- Bernoulli

/// B_0..B_n (B_1 = −1/2 convention); only even indices are used here.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    // binomial row C(m+1, j) maintained incrementally
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

// --------------------------------------------------------------- harmonic

/// Exact Σ_{j=a}^{b} 1/j as an unreduced fraction, by pairwise splitting.
/// Skipping the GCD keeps the tree multiplications honest and fast; the
/// caller converts straight to a rounded float.
fn harmonic_range(a: u64, b: u64) -> (BigInt, BigInt) {
    if a == b {
        return (BigInt::one(), BigInt::from(a));
    }
    let mid = a + (b - a) / 2;
    let (n1, d1) = harmonic_range(a, mid);
    let (n2, d2) = harmonic_range(mid + 1, b);
    (&n1 * &d2 + &n2 * &d1, d1 * d2)
}

/// Exact harmonic number H_m rounded to a BigFloat.
pub fn harmonic_exact(m: u64, prec: u32) -> BigFloat {
    assert!(m >= 1);
    let (num, den) = harmonic_range(1, m);
    BigFloat::from_ratio(&num, &den, prec)
}

/// Euler's constant via H_m = ln m + γ + 1/(2m) − Σ B_{2j}/(2j m^{2j}),
/// at m = 256 where the tail terms collapse double-exponentially.
pub fn euler_gamma(prec: u32) -> BigFloat {
    let wp = prec + 24;
    let m: u64 = 256;
    let h = harmonic_exact(m, wp);
    let ln_m = BigFloat::from_i64(8).mul(&ln2(wp), wp);
    let mut gamma = h
        .sub(&ln_m, wp)
        .sub(&BigFloat::from_ratio(&BigInt::one(), &BigInt::from(2 * m), wp), wp);
    let bern = bernoulli_numbers(2 * 40);
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut mpow = m2.clone();
    for j in 1..=40u32 {
        let term_rat = &bern[2 * j as usize]
            / Rational::from_integer(BigInt::from(2 * j) * &mpow);
        let term = BigFloat::from_rational(&term_rat, wp);
        if term.is_zero() || term.to_rational().abs() < pow_2_neg(wp as i64 + 8) {
            gamma = gamma.add(&term, wp);
            break;
        }
        gamma = gamma.add(&term, wp);
        mpow *= &m2;
    }
    gamma.round(prec)
}

fn pow_2_neg(bits: i64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as u64)
}

/// H_{2^k} by the Euler–Maclaurin expansion (used for k > 20, where the
/// exact pairwise sum stops being worthwhile).
fn harmonic_em(k_log2: u32, gamma: &BigFloat, prec: u32) -> BigFloat {
    let wp = prec + 16;
    let m = BigInt::one() << k_log2;
    let ln_m = BigFloat::from_i64(k_log2 as i64).mul(&ln2(wp), wp);
    let mut h = ln_m.add(gamma, wp).add(
        &BigFloat::from_ratio(&BigInt::one(), &(&m * BigInt::from(2)), wp),
        wp,
    );
    let bern = bernoulli_numbers(2 * 8);
    let m2 = &m * &m;
    let mut mpow = m2.clone();
    for j in 1..=8u32 {
        let term_rat =
            &bern[2 * j as usize] / Rational::from_integer(BigInt::from(2 * j) * &mpow);
        h = h.sub(&BigFloat::from_rational(&term_rat, wp), wp);
        if term_rat.abs() < pow_2_neg(wp as i64 + 8) {
            break;
        }
        mpow *= &m2;
    }
    h.round(prec)
}

// ------------------------------------------------------------------ gamma

/// Γ(s) for s > 0 over BigFloat: argument shift into the Stirling zone,
/// then the Bernoulli series for ln Γ with its first-omitted-term bound.
pub fn gamma_bf(s: &BigFloat, prec: u32) -> Result<BigFloat> {
    if s.is_zero() || s.is_negative() {
        return Err(Error::OutOfDomain(format!(
            "gamma needs s > 0, got {}",
            s.to_f64()
        )));
    }
    let wp = prec + 48;
    // shift so z = s + n is comfortably inside the Stirling zone
    let zone = (prec as f64 * 0.13 + 8.0).ceil() as i64;
    let n = (zone - s.to_f64().floor() as i64).max(0);
    let z = s.add(&BigFloat::from_i64(n), wp);
    // ln Γ(z) = (z − 1/2) ln z − z + (1/2) ln 2π + Σ B_{2j}/((2j)(2j−1) z^{2j−1})
    let ln_z = ln(&z, wp);
    let half = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(2), wp);
    let mut ln_gamma = z.sub(&half, wp).mul(&ln_z, wp).sub(&z, wp);
    let two_pi = pi(wp).mul_pow2(1);
    ln_gamma = ln_gamma.add(&ln(&two_pi, wp).mul_pow2(-1), wp);
    let bern = bernoulli_numbers(2 * 64);
    let z2 = z.mul(&z, wp);
    let mut zpow = z.clone(); // z^{2j−1}
    let mut last_mag = f64::INFINITY;
    for j in 1..=64u32 {
        let coeff = &bern[2 * j as usize]
            / Rational::from_integer(BigInt::from(2 * j) * BigInt::from(2 * j - 1));
        let term = BigFloat::from_rational(&coeff, wp).div(&zpow, wp);
        let mag = term.to_f64().abs();
        assert!(
            mag < last_mag,
            "Stirling series must be decreasing in its useful range"
        );
        ln_gamma = ln_gamma.add(&term, wp);
        if mag < 2f64.powi(-(wp as i32)) || term.is_zero() {
            break;
        }
        last_mag = mag;
        zpow = zpow.mul(&z2, wp);
    }
    // divide back: Γ(s) = Γ(s+n) / Π_{k=0}^{n−1} (s+k)
    let mut result = exp(&ln_gamma, wp);
    for k in 0..n {
        result = result.div(&s.add(&BigFloat::from_i64(k), wp), wp);
    }
    Ok(result.round(prec))
}

/// ζ(s) for s > 1 by Borwein's alternating-series acceleration.
pub fn zeta_bf(s: &BigFloat, prec: u32) -> Result<BigFloat> {
    let one = BigFloat::from_i64(1);
    if s.cmp_value(&one) != std::cmp::Ordering::Greater {
        return Err(Error::OutOfDomain(format!(
            "zeta needs s > 1, got {}",
            s.to_f64()
        )));
    }
    let wp = prec + 32;
    // error ~ 3/((3+√8)^n |1−2^{1−s}|); (3+√8) gives ~2.54 bits per term
    let n = ((wp as f64) / 2.54 + 16.0).ceil() as usize;
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut e_i = Rational::one(); // i = 0 term equals 1
    let mut d: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut acc = e_i.clone();
    d.push(acc.clone());
    for i in 1..=n {
        let num = BigInt::from(4) * BigInt::from(n + i - 1) * BigInt::from(n - i + 1);
        let den = BigInt::from(2 * i) * BigInt::from(2 * i - 1);
        e_i *= Rational::new(num, den);
        acc += &e_i;
        d.push(acc.clone());
    }
    let d_n = BigFloat::from_rational(&d[n], wp);
    let mut sum = BigFloat::zero();
    for (k, dk_rat) in d.iter().enumerate().take(n) {
        let dk = BigFloat::from_rational(dk_rat, wp);
        let diff = dk.sub(&d_n, wp);
        // (k+1)^{−s} = exp(−s ln(k+1))
        let kp = BigFloat::from_i64(k as i64 + 1);
        let pw = exp(&s.neg().mul(&ln(&kp, wp), wp), wp);
        let term = diff.mul(&pw, wp);
        sum = if k % 2 == 0 {
            sum.add(&term, wp)
        } else {
            sum.sub(&term, wp)
        };
    }
    // ζ(s) = −sum / (d_n (1 − 2^{1−s}))
    let two_pow = exp(&one.sub(s, wp).mul(&ln2(wp), wp), wp);
    let denom = d_n.mul(&one.sub(&two_pow, wp), wp);
    Ok(sum.neg().div(&denom, wp).round(prec))
}

/// Γ(s) with a rendered enclosure.
pub fn gamma_fn(s: &BigFloat, digits: u32) -> Result<DecimalApprox> {
    let prec = prec_for(digits);
    let v1 = gamma_bf(s, prec)?;
    let v2 = gamma_bf(s, prec + 24)?;
    let err = agreement_bound(&v1, &v2, digits);
    Ok(enclose(&v2, &err, digits))
}

/// ζ(s) with a rendered enclosure.
pub fn zeta_fn(s: &BigFloat, digits: u32) -> Result<DecimalApprox> {
    let prec = prec_for(digits);
    let v1 = zeta_bf(s, prec)?;
    let v2 = zeta_bf(s, prec + 24)?;
    let err = agreement_bound(&v1, &v2, digits);
    Ok(enclose(&v2, &err, digits))
}

/// Two-precision agreement plus a digit-scaled floor.
fn agreement_bound(v1: &BigFloat, v2: &BigFloat, digits: u32) -> Rational {
    let diff = v1.sub(v2, 64).to_rational().abs();
    diff * Rational::from_integer(4.into()) + pow10_inv(digits + 3)
}

// -------------------------------------------------------------- quadrature

struct Quadrature {
    value: BigFloat,
    /// difference between the last two step-halving levels
    level_diff: Rational,
    levels: u32,
}

/// Tanh-sinh quadrature of f over (a, b).  The last two levels must
/// agree within tol; their difference is reported as the error estimate.
fn tanh_sinh(
    f: &dyn Fn(&BigFloat) -> BigFloat,
    a: &BigFloat,
    b: &BigFloat,
    prec: u32,
    tol: &Rational,
) -> Quadrature {
    let wp = prec + 16;
    let half_pi = pi(wp).mul_pow2(-1);
    let width = b.sub(a, wp); // 2r
    let tol_bf = BigFloat::from_rational(tol, 64);
    let mut previous: Option<BigFloat> = None;
    for level in 3..=12u32 {
        let h = BigFloat::from_i64(1).mul_pow2(-(level as i64));
        let mut total = BigFloat::zero();
        for side in [1i64, -1i64] {
            let mut j: i64 = if side == 1 { 0 } else { -1 };
            let mut negligible = 0;
            loop {
                let u = BigFloat::from_i64(j.abs()).mul(&h, wp);
                let eu = exp(&u, wp);
                let eui = eu.recip(wp);
                let sh = eu.sub(&eui, wp).mul_pow2(-1);
                let ch = eu.add(&eui, wp).mul_pow2(-1);
                let v = half_pi.mul(&sh, wp);
                let (e2, e2i) = if side == 1 {
                    (exp(&v, wp), exp(&v.neg(), wp))
                } else {
                    (exp(&v.neg(), wp), exp(&v, wp))
                };
                let s = e2.add(&e2i, wp);
                // x = a + (b−a)·e2/(e2+e2i), exact at j = 0: midpoint
                let x = a.add(&width.mul(&e2.div(&s, wp), wp), wp);
                let weight = width
                    .mul(&half_pi, wp)
                    .mul(&ch, wp)
                    .mul_pow2(1)
                    .div(&s.mul(&s, wp), wp)
                    .mul(&h, wp);
                let term = weight.mul(&f(&x), wp);
                total = total.add(&term, wp);
                if term.abs().cmp_value(&tol_bf.mul_pow2(-20)) == std::cmp::Ordering::Less {
                    negligible += 1;
                    if negligible >= 3 {
                        break;
                    }
                } else {
                    negligible = 0;
                }
                j += side;
                if j.abs() > (1i64 << (level + 4)) {
                    break;
                }
            }
        }
        if let Some(prev) = &previous {
            let diff = total.sub(prev, wp).to_rational().abs();
            if &diff <= tol {
                return Quadrature {
                    value: total,
                    level_diff: diff,
                    levels: level,
                };
            }
        }
        previous = Some(total);
    }
    let value = previous.expect("at least one level ran");
    Quadrature {
        level_diff: tol * Rational::from_integer(1000.into()),
        value,
        levels: 12,
    }
}

// ------------------------------------------------------------- constants

/// c = (2/(3 ln 2)) Γ(ln3/ln2) ζ(ln3/ln2) = 1.9967049717...
pub fn cantor_min_constant(digits: u32) -> Result<AsymptoticConstant> {
    if !(1..=30).contains(&digits) {
        return Err(Error::OutOfDomain(format!(
            "cantor-min supports 1..=30 digits, got {digits}"
        )));
    }
    let prec = prec_for(digits) + 16;
    let ln2v = ln2(prec);
    let ln3 = ln(&BigFloat::from_i64(3), prec);
    let exponent = ln3.div(&ln2v, prec);
    let g = gamma_bf(&exponent, prec)?;
    let z = zeta_bf(&exponent, prec)?;
    let g2 = gamma_bf(&exponent, prec + 24)?;
    let z2 = zeta_bf(&exponent, prec + 24)?;
    let front = BigFloat::from_i64(2).div(&BigFloat::from_i64(3).mul(&ln2v, prec), prec);
    let v1 = front.mul(&g, prec).mul(&z, prec);
    let v2 = front.mul(&g2, prec + 24).mul(&z2, prec + 24);
    let err = agreement_bound(&v1, &v2, digits);
    Ok(AsymptoticConstant {
        name: "cantor-min".into(),
        value: enclose(&v2, &err, digits),
        method: "closed form (2/(3 ln 2)) Γ(ln3/ln2) ζ(ln3/ln2); Stirling and Borwein series"
            .into(),
        parameters: format!("prec={prec}"),
    })
}

/// Upper integration cutoff X with e^{−2X/3} tail below 10^{−(digits+4)}.
fn exp_tail_cutoff(digits: u32) -> (i64, Rational) {
    let x = (1.5 * ((digits + 4) as f64) * std::f64::consts::LN_10).ceil() as i64;
    // tail of ∫_X^∞ e^{−2x/3} x^{α−1} dx ≤ (3/2) e^{−2X/3} for X ≥ 1, α ≤ 1
    let tail = pow10_inv(digits + 4) * Rational::new(BigInt::from(3), BigInt::from(2));
    (x, tail)
}

/// C = (1/(2 ln 3)) ∫₀^∞ (Π_{k≥2}(1+e^{−2x/3^k})/2) e^{−2x/3}
///     x^{ln2/ln3−1} dx = 0.733874...
pub fn cantor_moment_constant(digits: u32) -> Result<AsymptoticConstant> {
    if !(1..=12).contains(&digits) {
        return Err(Error::OutOfDomain(format!(
            "cantor-moment supports 1..=12 digits, got {digits}"
        )));
    }
    let prec = prec_for(digits) + 16;
    let ln3 = ln(&BigFloat::from_i64(3), prec);
    let alpha = ln2(prec).div(&ln3, prec); // ln2/ln3
    let alpha_inv = ln3.div(&ln2(prec), prec);
    let product_k: u32 = 42;
    // after u = x^α the integrand is g(u^{1/α})/α with g = product·e^{−2x/3}.
    // Each factor gets its own exp: rebuilding e^{−2x/3^k} by repeated
    // cubing would triple the rounding error per step and wash out the
    // quadrature at the 1e−10 level.
    let integrand = move |u: &BigFloat| -> BigFloat {
        let x = exp(&ln(u, prec).mul(&alpha_inv, prec), prec);
        let third = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(3), prec);
        let mut scale = x.mul_pow2(1).div(&BigFloat::from_i64(9), prec); // 2x/3²
        let mut prod = BigFloat::from_i64(1);
        for _k in 2..=product_k {
            if scale.is_zero() || scale.to_f64() < 2f64.powi(-((prec + 8) as i32)) {
                break; // remaining factors differ from 1 below the budget
            }
            let t = exp(&scale.neg(), prec);
            prod = prod.mul(&t.add(&BigFloat::from_i64(1), prec).mul_pow2(-1), prec);
            scale = scale.mul(&third, prec);
        }
        let e_main = exp(&x.mul_pow2(1).mul(&third, prec).neg(), prec); // e^{−2x/3}
        prod.mul(&e_main, prec).mul(&alpha_inv, prec)
    };
    let (x_max, int_tail) = exp_tail_cutoff(digits);
    let upper = exp(
        &ln(&BigFloat::from_i64(x_max), prec).mul(&alpha, prec),
        prec,
    );
    let tol = pow10_inv(digits + 3);
    let quad = tanh_sinh(&integrand, &BigFloat::zero(), &upper, prec, &tol);
    let front = BigFloat::from_i64(2).mul(&ln3, prec).recip(prec);
    let value = front.mul(&quad.value, prec);
    // product truncation: relative error ≤ x·3^{−K} ≤ X·3^{−K} on [0, X]
    let product_tail = Rational::new(
        BigInt::from(x_max),
        BigInt::from(3).pow(product_k),
    );
    let err = quad.level_diff
        + int_tail
        + product_tail
        + pow10_inv(digits + 3);
    Ok(AsymptoticConstant {
        name: "cantor-moment".into(),
        value: enclose(&value, &err, digits),
        method: "tanh-sinh quadrature after the u = x^(ln2/ln3) substitution".into(),
        parameters: format!(
            "X={x_max} K={product_k} levels={} prec={prec}",
            quad.levels
        ),
    })
}

/// Σ μ_n = −1/3 + (2/3) Σ_{k≥1} (2/3)^k H_{2^k} = 3.3646507281...
pub fn cantor_moment_sum(digits: u32) -> Result<AsymptoticConstant> {
    if !(1..=12).contains(&digits) {
        return Err(Error::OutOfDomain(format!(
            "moment-sum supports 1..=12 digits, got {digits}"
        )));
    }
    let prec = prec_for(digits) + 16;
    let gamma = euler_gamma(prec);
    let two_thirds = BigFloat::from_ratio(&BigInt::from(2), &BigInt::from(3), prec);
    // outer truncation: Σ_{k>K} (2/3)^k (k ln2 + γ + 1) under 10^{−(digits+3)}
    let target = 0.1f64.powi(digits as i32 + 3);
    let mut k_max = 8usize;
    loop {
        let r: f64 = 2.0 / 3.0;
        let k = k_max as f64;
        let tail = r.powi(k_max as i32 + 1)
            * (0.6932 * (k + 1.0) + 1.578 + 0.6932 * r / (1.0 - r))
            / (1.0 - r);
        if tail < target {
            break;
        }
        k_max += 4;
    }
    let mut sum = BigFloat::zero();
    let mut factor = BigFloat::from_i64(1);
    for k in 1..=k_max {
        factor = factor.mul(&two_thirds, prec);
        let h = if k <= 20 {
            harmonic_exact(1u64 << k, prec)
        } else {
            harmonic_em(k as u32, &gamma, prec)
        };
        sum = sum.add(&factor.mul(&h, prec), prec);
    }
    let value = two_thirds.mul(&sum, prec).sub(
        &BigFloat::from_ratio(&BigInt::one(), &BigInt::from(3), prec),
        prec,
    );
    let err = pow10_inv(digits + 3) * Rational::from_integer(3.into());
    Ok(AsymptoticConstant {
        name: "cantor-moment-sum".into(),
        value: enclose(&value, &err, digits),
        method: "double series; exact harmonic numbers to k=20, Euler–Maclaurin beyond".into(),
        parameters: format!("k_max={k_max} prec={prec}"),
    })
}

/// The solus moment coefficient 0.616005..., via the exponential
/// generating function M(x) built from exact Q(φ) moments.
pub fn solus_moment_constant(digits: u32) -> Result<AsymptoticConstant> {
    if !(1..=8).contains(&digits) {
        return Err(Error::OutOfDomain(format!(
            "solus-moment supports 1..=8 digits, got {digits}"
        )));
    }
    let prec = prec_for(digits) + 24;
    let (x_max, int_tail) = exp_tail_cutoff(digits);
    // series truncation K: tail of M bounded by Σ_{k>K}(x/3)^k/k! ≤
    // (X/3)^{K+1}/(K+1)! · e^{X/3}; e^{X/3} cancels against e^{−x/3}
    let target = 0.1f64.powi(digits as i32 + 3);
    let xd3 = x_max as f64 / 3.0;
    let mut k_series = 4usize;
    let mut term = xd3.powi(5) / (2.0 * 3.0 * 4.0 * 5.0);
    while term > target {
        k_series += 1;
        term *= xd3 / (k_series as f64 + 1.0);
    }
    // exact solus moments at θ = 1/3, then b_k = μ_k (4/9)^k / k!
    let theta = Rational::new(BigInt::one(), BigInt::from(3));
    let table = solus_moments(&theta, k_series)?;
    let phi_bf = BigFloat::from_i64(1)
        .add(&BigFloat::from_i64(5).sqrt(prec), prec)
        .mul_pow2(-1);
    let mut coeffs: Vec<BigFloat> = Vec::with_capacity(k_series + 1);
    let mut scale = Rational::one(); // (4/9)^k / k!
    for (k, v) in table.values.iter().enumerate() {
        let q = v.as_quad().expect("solus moments live in Q(phi)");
        let m = BigFloat::from_rational(q.a(), prec).add(
            &BigFloat::from_rational(q.b(), prec).mul(&phi_bf, prec),
            prec,
        );
        coeffs.push(m.mul(&BigFloat::from_rational(&scale, prec), prec));
        scale = scale * Rational::new(BigInt::from(4), BigInt::from(9))
            / Rational::from_integer(BigInt::from(k + 1));
    }
    let ln3 = ln(&BigFloat::from_i64(3), prec);
    let alpha = ln(&phi_bf, prec).div(&ln3, prec); // lnφ/ln3
    let alpha_inv = ln3.div(&ln(&phi_bf, prec), prec);
    let third = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(3), prec);
    let integrand = move |u: &BigFloat| -> BigFloat {
        let x = exp(&ln(u, prec).mul(&alpha_inv, prec), prec);
        // Horner over the series part, then the two exponential factors
        let mut m = BigFloat::zero();
        for c in coeffs.iter().rev() {
            m = m.mul(&x, prec).add(c, prec);
        }
        let e_part = exp(&x.mul(&third, prec).neg(), prec); // e^{−x/3}
        let e2 = e_part.mul(&e_part, prec); // e^{−2x/3}
        m.mul(&e_part, prec).mul(&e2, prec).mul(&alpha_inv, prec)
    };
    let upper = exp(
        &ln(&BigFloat::from_i64(x_max), prec).mul(&alpha, prec),
        prec,
    );
    let tol = pow10_inv(digits + 3);
    let quad = tanh_sinh(&integrand, &BigFloat::zero(), &upper, prec, &tol);
    let front = phi_bf
        .mul_pow2(1)
        .mul(&ln3, prec)
        .recip(prec);
    let value = front.mul(&quad.value, prec);
    // series tail contributes ≤ (X/3)^{K+1}/(K+1)! to the integrand
    // uniformly, times the ∫ e^{−2x/3} weight ≤ 3/2
    let series_tail = pow10_inv(digits + 3) * Rational::new(BigInt::from(3), BigInt::from(2));
    let err = quad.level_diff + int_tail + series_tail + pow10_inv(digits + 3);
    Ok(AsymptoticConstant {
        name: "solus-moment".into(),
        value: enclose(&value, &err, digits),
        method:
            "exponential generating function of exact Q(phi) moments, tanh-sinh after u = x^(lnφ/ln3)"
                .into(),
        parameters: format!(
            "X={x_max} K={k_series} levels={} prec={prec}",
            quad.levels
        ),
    })
}

/// The two-term longest-run asymptotic ln(n)/ln(2) − (3/2 − γ/ln 2).
pub fn unconstrained_run_asymptotic(n: u64, digits: u32) -> Result<DecimalApprox> {
    if n < 2 {
        return Err(Error::OutOfDomain(format!(
            "run asymptotic needs n >= 2, got {n}"
        )));
    }
    let prec = prec_for(digits) + 16;
    let l2 = ln2(prec);
    let g = euler_gamma(prec);
    let value = ln(&BigFloat::from_bigint(BigInt::from(n)), prec)
        .div(&l2, prec)
        .sub(
            &BigFloat::from_ratio(&BigInt::from(3), &BigInt::from(2), prec)
                .sub(&g.div(&l2, prec), prec),
            prec,
        );
    let err = pow10_inv(digits + 3);
    Ok(enclose(&value, &err, digits))
}

/// Every named constant, for the CLI.
pub fn constant_by_name(name: &str, digits: u32) -> Result<AsymptoticConstant> {
    match name {
        "cantor-moment" => cantor_moment_constant(digits),
        "cantor-min" => cantor_min_constant(digits),
        "cantor-moment-sum" => cantor_moment_sum(digits),
        "solus-moment" => solus_moment_constant(digits),
        "phi" => Ok(AsymptoticConstant {
            name: "phi".into(),
            value: crate::exact::approximate(
                &crate::exact::ExactValue::Quad(crate::exact::QuadElement::phi()),
                digits,
            ),
            method: "interval Newton on x² − x − 1".into(),
            parameters: String::new(),
        }),
        "psi" => Ok(AsymptoticConstant {
            name: "psi".into(),
            value: crate::exact::approximate(
                &crate::exact::ExactValue::Cubic(crate::exact::CubicElement::psi()),
                digits,
            ),
            method: "interval Newton on x³ − 2x² + x − 1".into(),
            parameters: String::new(),
        }),
        "euler-gamma" => {
            let prec = prec_for(digits) + 16;
            let g = euler_gamma(prec);
            Ok(AsymptoticConstant {
                name: "euler-gamma".into(),
                value: enclose(&g, &pow10_inv(digits + 3), digits),
                method: "Euler–Maclaurin at m = 256 with exact harmonic head".into(),
                parameters: format!("prec={prec}"),
            })
        }
        _ => Err(Error::Parse {
            input: name.to_string(),
            expected: "constant name (cantor-moment|cantor-min|cantor-moment-sum|solus-moment|phi|psi|euler-gamma)",
        }),
    }
}

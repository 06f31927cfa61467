//! Limit moments μ_n of the Cantor, Cantor-solus and Cantor-multus
//! distributions, computed exactly from the simple-pole recurrences, plus
//! exhaustive finite-length moments for convergence checks.
//!
//! With θ̄ = 1 − θ the recurrences are, per ensemble:
//!
//! ```text
//! Cantor:  μ_n = [Σ_{i<n} C(n,i) θ̄^{n−i} θ^i μ_i] / (2(1 − θ^n))
//!
//! solus:   μ_n = [Σ_{i+j=n, j<n} C(n;i,j) θ̄^i θ^{2j} μ_j]
//!          / (φ² − θ^n φ − θ^{2n})                 exact in Q(φ)
//!
//! multus:  μ_n = [ψ² Σ_{i+j+k=n, k<n} C(n;i,j,k) θ̄^{i+j} θ^{j+2k} μ_k
//!          + Σ_{i+j+k+ℓ=n, ℓ<n} C(n;i,j,k,ℓ) θ̄^{i+j+k} θ^{j+2k+4ℓ} μ_ℓ]
//!          / (ψ⁴ − θ^n ψ³ − θ^{2n} ψ² − θ^{4n})    exact in Q(ψ)
//! ```
//!
//! Every recurrence runs in its exact coefficient field; the denominators
//! are invertible field elements, so no floating point enters the values.
//! For large-index ratio diagnostics (thousands of moments) the same
//! recurrences are also available over `BigFloat`, where the positivity
//! of every term makes the forward error a small multiple of the
//! rounding unit.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigfloat::BigFloat;
use crate::ensembles::{enumerate, f_value, DistributionParams, EnsembleKind};
use crate::error::Result;
use crate::exact::{
    approximate, CubicElement, DecimalApprox, ExactField, ExactValue, QuadElement,
    Rational,
};

/// Decimal places rendered into a table at construction time.
pub const DEFAULT_DECIMAL_DIGITS: u32 = 12;

/// Moments μ_0..μ_N of one ensemble at one θ, exact plus rendered.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub kind: EnsembleKind,
    pub theta: Rational,
    pub values: Vec<ExactValue>,
    pub decimals: Vec<DecimalApprox>,
}

impl MomentTable {
    fn build(kind: EnsembleKind, theta: Rational, values: Vec<ExactValue>) -> Self {
        let decimals = values
            .iter()
            .map(|v| approximate(v, DEFAULT_DECIMAL_DIGITS))
            .collect();
        MomentTable {
            kind,
            theta,
            values,
            decimals,
        }
    }

    /// Re-render the exact values at a chosen precision.
    pub fn render_decimals(&self, digits: u32) -> Vec<DecimalApprox> {
        self.values.iter().map(|v| approximate(v, digits)).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Factorials 0!..n! for exact multinomial coefficients.
fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(BigInt::one());
    for k in 1..=n {
        let next = &f[k - 1] * BigInt::from(k);
        f.push(next);
    }
    f
}

fn powers(x: &Rational, n: usize) -> Vec<Rational> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(Rational::one());
    for k in 1..=n {
        let next = &p[k - 1] * x;
        p.push(next);
    }
    p
}

/// Exact Cantor moments; μ_0 = 1 and all values are rationals.
pub fn cantor_moments(theta: &Rational, n_max: usize) -> Result<MomentTable> {
    let params = DistributionParams::new(theta.clone())?;
    let th = powers(params.theta(), n_max.max(1));
    let tb = powers(params.theta_bar(), n_max.max(1));
    let fact = factorials(n_max);
    let mut mu: Vec<Rational> = vec![Rational::one()];
    for n in 1..=n_max {
        let mut acc = Rational::zero();
        for (i, mu_i) in mu.iter().enumerate() {
            let binom = &fact[n] / (&fact[i] * &fact[n - i]);
            acc += Rational::from_integer(binom) * &tb[n - i] * &th[i] * mu_i;
        }
        let denom = Rational::from_integer(BigInt::from(2)) * (Rational::one() - &th[n]);
        mu.push(acc / denom);
    }
    Ok(MomentTable::build(
        EnsembleKind::Unconstrained,
        theta.clone(),
        mu.into_iter().map(ExactValue::Rational).collect(),
    ))
}

/// Exact Cantor-solus moments in Q(φ).
pub fn solus_moments(theta: &Rational, n_max: usize) -> Result<MomentTable> {
    let params = DistributionParams::new(theta.clone())?;
    let th = powers(params.theta(), 2 * n_max.max(1));
    let tb = powers(params.theta_bar(), n_max.max(1));
    let fact = factorials(n_max);
    let mut mu: Vec<QuadElement> = vec![QuadElement::field_one()];
    for n in 1..=n_max {
        // numerator: compositions i + j = n with j < n
        let mut acc = QuadElement::field_zero();
        for (j, mu_j) in mu.iter().enumerate() {
            let i = n - j;
            let binom = &fact[n] / (&fact[i] * &fact[j]);
            let coeff = Rational::from_integer(binom) * &tb[i] * &th[2 * j];
            acc = acc.plus(&mu_j.times(&QuadElement::from_rational(coeff)));
        }
        // φ² − θ^n φ − θ^{2n} = (1 − θ^{2n}) + (1 − θ^n) φ
        let denom = QuadElement::new(Rational::one() - &th[2 * n], Rational::one() - &th[n]);
        mu.push(acc.divide(&denom)?);
    }
    Ok(MomentTable::build(
        EnsembleKind::Solus,
        theta.clone(),
        mu.into_iter().map(ExactValue::Quad).collect(),
    ))
}

/// Exact Cantor-multus moments in Q(ψ).
///
/// The two multinomial sums run over all weak compositions, as displayed;
/// the per-μ_ℓ rational coefficients are accumulated first so the cubic
/// field operations stay linear in n.
pub fn multus_moments(theta: &Rational, n_max: usize) -> Result<MomentTable> {
    let params = DistributionParams::new(theta.clone())?;
    let th = powers(params.theta(), 4 * n_max.max(1));
    let tb = powers(params.theta_bar(), n_max.max(1));
    let fact = factorials(n_max);
    let psi = CubicElement::psi();
    let psi2 = psi.times(&psi);
    let psi3 = psi2.times(&psi);
    let psi4 = psi3.times(&psi);
    let mut mu: Vec<CubicElement> = vec![CubicElement::field_one()];
    for n in 1..=n_max {
        // first sum: i + j + k = n, k < n, weight θ̄^{i+j} θ^{j+2k}
        let mut sum1 = CubicElement::field_zero();
        for (k, mu_k) in mu.iter().enumerate() {
            let mut coeff = Rational::zero();
            for j in 0..=(n - k) {
                let i = n - k - j;
                let multi = &fact[n] / (&fact[i] * &fact[j] * &fact[k]);
                coeff += Rational::from_integer(multi) * &tb[i + j] * &th[j + 2 * k];
            }
            sum1 = sum1.plus(&mu_k.times(&CubicElement::from_rational(coeff)));
        }
        // second sum: i + j + k + ℓ = n, ℓ < n, weight θ̄^{i+j+k} θ^{j+2k+4ℓ}
        let mut sum2 = CubicElement::field_zero();
        for (l, mu_l) in mu.iter().enumerate() {
            let mut coeff = Rational::zero();
            for k in 0..=(n - l) {
                for j in 0..=(n - l - k) {
                    let i = n - l - k - j;
                    let multi = &fact[n] / (&fact[i] * &fact[j] * &fact[k] * &fact[l]);
                    coeff +=
                        Rational::from_integer(multi) * &tb[i + j + k] * &th[j + 2 * k + 4 * l];
                }
            }
            sum2 = sum2.plus(&mu_l.times(&CubicElement::from_rational(coeff)));
        }
        let numer = psi2.times(&sum1).plus(&sum2);
        let denom = psi4
            .minus(&psi3.times(&CubicElement::from_rational(th[n].clone())))
            .minus(&psi2.times(&CubicElement::from_rational(th[2 * n].clone())))
            .minus(&CubicElement::from_rational(th[4 * n].clone()));
        mu.push(numer.divide(&denom)?);
    }
    Ok(MomentTable::build(
        EnsembleKind::Multus,
        theta.clone(),
        mu.into_iter().map(ExactValue::Cubic).collect(),
    ))
}

/// Moment table dispatching on the ensemble kind.
pub fn moments(kind: EnsembleKind, theta: &Rational, n_max: usize) -> Result<MomentTable> {
    match kind {
        EnsembleKind::Unconstrained => cantor_moments(theta, n_max),
        EnsembleKind::Solus => solus_moments(theta, n_max),
        EnsembleKind::Multus => multus_moments(theta, n_max),
    }
}

/// Exact finite-length moments (1/count) Σ_ω F(ω)^n over all length-m
/// members, n = 0..n_max, by literal exhaustive enumeration.
///
/// This is the brute-force oracle the analytic tables are checked
/// against; it shares no code with the recurrences.
pub fn empirical_moments(
    kind: EnsembleKind,
    theta: &Rational,
    m: usize,
    n_max: usize,
) -> Result<Vec<Rational>> {
    let params = DistributionParams::new(theta.clone())?;
    let mut sums = vec![Rational::zero(); n_max + 1];
    let mut total = 0u64;
    for omega in enumerate(kind, m)? {
        let f = f_value(&params, &omega);
        let mut p = Rational::one();
        sums[0] += &p;
        for s in sums.iter_mut().skip(1) {
            p *= &f;
            *s += &p;
        }
        total += 1;
    }
    let count = Rational::from_integer(BigInt::from(total));
    Ok(sums.into_iter().map(|s| s / &count).collect())
}

// ------------------------------------------------- large-index diagnostics

/// Cantor moments over `BigFloat` for large-index ratio diagnostics.
///
/// Same recurrence as [`cantor_moments`]; every term is positive, so the
/// relative forward error stays within a small multiple of n·2^(−prec).
pub fn cantor_moments_float(theta: &Rational, n_max: usize, prec: u32) -> Vec<BigFloat> {
    let th = BigFloat::from_rational(theta, prec);
    let tb = BigFloat::from_rational(&(Rational::one() - theta), prec);
    let ratio = th.div(&tb, prec);
    let one = BigFloat::from_i64(1);
    let two = BigFloat::from_i64(2);
    let mut mu = vec![one.clone()];
    let mut tb_pow_n = one.clone(); // θ̄^n
    let mut th_pow_n = one.clone(); // θ^n
    for n in 1..=n_max {
        tb_pow_n = tb_pow_n.mul(&tb, prec);
        th_pow_n = th_pow_n.mul(&th, prec);
        // term_i = C(n,i) θ̄^{n−i} θ^i, built by the running ratio
        let mut term = tb_pow_n.clone();
        let mut acc = BigFloat::zero();
        for (i, mu_i) in mu.iter().enumerate().take(n) {
            acc = acc.add(&term.mul(mu_i, prec), prec);
            let step = BigFloat::from_i64((n - i) as i64)
                .div(&BigFloat::from_i64(i as i64 + 1), prec)
                .mul(&ratio, prec);
            term = term.mul(&step, prec);
        }
        let denom = two.mul(&one.sub(&th_pow_n, prec), prec);
        mu.push(acc.div(&denom, prec));
    }
    mu
}

/// Cantor-solus moments over `BigFloat` (diagnostic path).
pub fn solus_moments_float(theta: &Rational, n_max: usize, prec: u32) -> Vec<BigFloat> {
    let th = BigFloat::from_rational(theta, prec);
    let tb = BigFloat::from_rational(&(Rational::one() - theta), prec);
    let th2 = th.mul(&th, prec);
    let ratio = th2.div(&tb, prec); // moving one unit from i to j
    let one = BigFloat::from_i64(1);
    let phi = one.add(&BigFloat::from_i64(5).sqrt(prec), prec).mul_pow2(-1);
    let phi2 = phi.mul(&phi, prec);
    let mut mu = vec![one.clone()];
    let mut tb_pow_n = one.clone();
    let mut th_pow_n = one.clone();
    for n in 1..=n_max {
        tb_pow_n = tb_pow_n.mul(&tb, prec);
        th_pow_n = th_pow_n.mul(&th, prec);
        let th_pow_2n = th_pow_n.mul(&th_pow_n, prec);
        let mut term = tb_pow_n.clone(); // j = 0: C(n,0) θ̄^n
        let mut acc = BigFloat::zero();
        for (j, mu_j) in mu.iter().enumerate().take(n) {
            acc = acc.add(&term.mul(mu_j, prec), prec);
            let step = BigFloat::from_i64((n - j) as i64)
                .div(&BigFloat::from_i64(j as i64 + 1), prec)
                .mul(&ratio, prec);
            term = term.mul(&step, prec);
        }
        let denom = phi2
            .sub(&th_pow_n.mul(&phi, prec), prec)
            .sub(&th_pow_2n, prec);
        mu.push(acc.div(&denom, prec));
    }
    mu
}

/// Window-averaged scaled ratio Σ μ_n n^e / #window over n ∈ [lo, hi].
pub fn window_average_ratio(values: &[BigFloat], exponent: f64, lo: usize, hi: usize) -> f64 {
    let mut acc = 0.0;
    for (n, v) in values.iter().enumerate().take(hi + 1).skip(lo) {
        acc += v.to_f64() * (n as f64).powf(exponent);
    }
    acc / (hi - lo + 1) as f64
}

/// Scaled ratio μ_n · g^n · n^e per index, for fluctuation diagnostics.
pub fn scaled_ratios(values: &[BigFloat], growth: f64, exponent: f64) -> Vec<f64> {
    values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            if n == 0 {
                v.to_f64()
            } else {
                v.to_f64() * growth.powi(n as i32) * (n as f64).powf(exponent)
            }
        })
        .collect()
}

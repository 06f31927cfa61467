//! Expected minima ξ_n and maxima η_n of n independent draws from the
//! Cantor and Cantor-solus distributions, plus a Monte Carlo estimator
//! used for validation (and for multus, where no recurrence is known).
//!
//! Cantor (θ̄ = 1 − θ):
//!   ξ_n = [θ̄ + θ Σ_{i=1}^{n−1} C(n,i) ξ_i] / (2^n − 2θ),
//!   η_n = 1 − ξ_n by the bit-complement symmetry of the distribution.
//!
//! Cantor-solus, exact in Q(φ) via φ^{-1} = φ − 1:
//!   ξ_n = [θ̄ φ^{−2n} + θ Σ_{i<n} C(n,i) φ^{−i} φ^{−2(n−i)} ξ_i]
//!         / (1 − θ φ^{−n} − θ² φ^{−2n}),
//!   η_n = [θ̄ (1 − φ^{−n}) + θ² Σ_{j<n} C(n,j) φ^{−2j} φ^{−(n−j)} η_j]
//!         / (1 − θ φ^{−n} − θ² φ^{−2n}).
//!
//! Exact tables are practical into the low hundreds; beyond that the
//! binomial coefficients explode and the same recurrences run over
//! `BigFloat`, where all terms are positive and the forward error stays
//! near the rounding unit.  Draws from the limiting distribution use
//! long finite prefixes; a prefix of length p perturbs F by at most θ^p.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigfloat::BigFloat;
use crate::ensembles::{f_value_f64, DistributionParams, EnsembleKind, UniformSampler};
use crate::error::{Error, Result};
use crate::exact::{
    rational_to_f64, ExactField, ExactValue, QuadElement, Rational,
};

/// Expected extrema tables; entries are 1-indexed (`xi(1)` = `eta(1)` = μ₁).
#[derive(Debug, Clone)]
pub struct OrderStatTable {
    pub kind: EnsembleKind,
    pub theta: Rational,
    xi: Vec<ExactValue>,
    eta: Vec<ExactValue>,
    pub max_support: ExactValue,
}

impl OrderStatTable {
    pub fn n_max(&self) -> usize {
        self.xi.len() - 1
    }

    /// Expected minimum of n draws, n ≥ 1.
    pub fn xi(&self, n: usize) -> &ExactValue {
        assert!(n >= 1 && n <= self.n_max());
        &self.xi[n]
    }

    /// Expected maximum of n draws, n ≥ 1.
    pub fn eta(&self, n: usize) -> &ExactValue {
        assert!(n >= 1 && n <= self.n_max());
        &self.eta[n]
    }
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for k in 1..=n {
        let next = &f[k - 1] * BigInt::from(k);
        f.push(next);
    }
    f
}

/// Exact Cantor order statistics; η is obtained from the symmetry
/// η_n = 1 − ξ_n (complementing every bit sends F to 1 − F).
pub fn cantor_order_stats(theta: &Rational, n_max: usize) -> Result<OrderStatTable> {
    assert!(n_max >= 1);
    let params = DistributionParams::new(theta.clone())?;
    let th = params.theta();
    let tb = params.theta_bar();
    let fact = factorials(n_max);
    let mut xi: Vec<Rational> = vec![Rational::zero()];
    for n in 1..=n_max {
        let mut sum = Rational::zero();
        for (i, xi_i) in xi.iter().enumerate().skip(1) {
            let binom = &fact[n] / (&fact[i] * &fact[n - i]);
            sum += Rational::from_integer(binom) * xi_i;
        }
        let numer = tb + th * sum;
        let denom = Rational::from_integer(BigInt::one() << n) - Rational::from_integer(2.into()) * th;
        xi.push(numer / denom);
    }
    let eta = xi
        .iter()
        .map(|x| ExactValue::Rational(Rational::one() - x))
        .collect();
    Ok(OrderStatTable {
        kind: EnsembleKind::Unconstrained,
        theta: theta.clone(),
        xi: xi.into_iter().map(ExactValue::Rational).collect(),
        eta,
        max_support: ExactValue::Rational(Rational::one()),
    })
}

/// Exact Cantor-solus order statistics in Q(φ).
pub fn solus_order_stats(theta: &Rational, n_max: usize) -> Result<OrderStatTable> {
    assert!(n_max >= 1);
    let params = DistributionParams::new(theta.clone())?;
    let th = params.theta();
    let tb = params.theta_bar();
    let th2 = th * th;
    let fact = factorials(n_max);
    // φ^{-j} for j ≤ 2 n_max; φ^{-1} = φ − 1 keeps everything in Q(φ)
    let phi_inv = QuadElement::new(crate::exact::rat(-1, 1), crate::exact::rat(1, 1));
    let mut inv_pow = Vec::with_capacity(2 * n_max + 1);
    inv_pow.push(QuadElement::field_one());
    for j in 1..=2 * n_max {
        let next = inv_pow[j - 1].times(&phi_inv);
        inv_pow.push(next);
    }
    let rq = QuadElement::from_rational; // rational embedding
    let mut xi: Vec<QuadElement> = vec![QuadElement::field_zero()];
    let mut eta: Vec<QuadElement> = vec![QuadElement::field_zero()];
    for n in 1..=n_max {
        let denom = QuadElement::field_one()
            .minus(&rq(th.clone()).times(&inv_pow[n]))
            .minus(&rq(th2.clone()).times(&inv_pow[2 * n]));
        let mut sum = QuadElement::field_zero();
        for (i, xi_i) in xi.iter().enumerate().skip(1) {
            let binom = &fact[n] / (&fact[i] * &fact[n - i]);
            // φ^{−i} φ^{−2(n−i)} = φ^{−(2n−i)}
            let w = rq(Rational::from_integer(binom)).times(&inv_pow[2 * n - i]);
            sum = sum.plus(&w.times(xi_i));
        }
        let numer = rq(tb.clone())
            .times(&inv_pow[2 * n])
            .plus(&rq(th.clone()).times(&sum));
        xi.push(numer.divide(&denom)?);

        let mut sum = QuadElement::field_zero();
        for (j, eta_j) in eta.iter().enumerate().skip(1) {
            let binom = &fact[n] / (&fact[j] * &fact[n - j]);
            // φ^{−2j} φ^{−(n−j)} = φ^{−(n+j)}
            let w = rq(Rational::from_integer(binom)).times(&inv_pow[n + j]);
            sum = sum.plus(&w.times(eta_j));
        }
        let one_minus = QuadElement::field_one().minus(&inv_pow[n]);
        let numer = rq(tb.clone())
            .times(&one_minus)
            .plus(&rq(th2.clone()).times(&sum));
        eta.push(numer.divide(&denom)?);
    }
    let max_support = Rational::one() / (Rational::one() + th);
    Ok(OrderStatTable {
        kind: EnsembleKind::Solus,
        theta: theta.clone(),
        xi: xi.into_iter().map(ExactValue::Quad).collect(),
        eta: eta.into_iter().map(ExactValue::Quad).collect(),
        max_support: ExactValue::Rational(max_support),
    })
}

// ------------------------------------------------- large-index diagnostics

/// Cantor ξ_n over `BigFloat` for asymptotic-ratio checks; η_n = 1 − ξ_n.
pub fn cantor_order_stats_float(theta: &Rational, n_max: usize, prec: u32) -> Vec<BigFloat> {
    let th = BigFloat::from_rational(theta, prec);
    let tb = BigFloat::from_i64(1).sub(&th, prec);
    let mut xi = vec![BigFloat::zero()];
    for n in 1..=n_max {
        let mut sum = BigFloat::zero();
        let mut binom = BigFloat::from_i64(n as i64); // C(n,1)
        for (i, xi_i) in xi.iter().enumerate().skip(1) {
            sum = sum.add(&binom.mul(xi_i, prec), prec);
            let step = BigFloat::from_i64((n - i) as i64)
                .div(&BigFloat::from_i64(i as i64 + 1), prec);
            binom = binom.mul(&step, prec);
        }
        let numer = tb.add(&th.mul(&sum, prec), prec);
        let denom = BigFloat::from_i64(1)
            .mul_pow2(n as i64)
            .sub(&BigFloat::from_i64(2).mul(&th, prec), prec);
        xi.push(numer.div(&denom, prec));
    }
    xi
}

/// Cantor-solus ξ_n and η_n over `BigFloat`.
pub fn solus_order_stats_float(
    theta: &Rational,
    n_max: usize,
    prec: u32,
) -> (Vec<BigFloat>, Vec<BigFloat>) {
    let th = BigFloat::from_rational(theta, prec);
    let tb = BigFloat::from_i64(1).sub(&th, prec);
    let th2 = th.mul(&th, prec);
    let one = BigFloat::from_i64(1);
    let phi = one.add(&BigFloat::from_i64(5).sqrt(prec), prec).mul_pow2(-1);
    let phi_inv = phi.recip(prec);
    let mut inv_pow = vec![one.clone()];
    for j in 1..=2 * n_max {
        let next = inv_pow[j - 1].mul(&phi_inv, prec);
        inv_pow.push(next);
    }
    let mut xi = vec![BigFloat::zero()];
    let mut eta = vec![BigFloat::zero()];
    for n in 1..=n_max {
        let denom = one
            .sub(&th.mul(&inv_pow[n], prec), prec)
            .sub(&th2.mul(&inv_pow[2 * n], prec), prec);
        let mut sum = BigFloat::zero();
        let mut binom = BigFloat::from_i64(n as i64);
        for (i, xi_i) in xi.iter().enumerate().skip(1) {
            let term = binom.mul(&inv_pow[2 * n - i], prec).mul(xi_i, prec);
            sum = sum.add(&term, prec);
            let step = BigFloat::from_i64((n - i) as i64)
                .div(&BigFloat::from_i64(i as i64 + 1), prec);
            binom = binom.mul(&step, prec);
        }
        let numer = tb
            .mul(&inv_pow[2 * n], prec)
            .add(&th.mul(&sum, prec), prec);
        xi.push(numer.div(&denom, prec));

        let mut sum = BigFloat::zero();
        let mut binom = BigFloat::from_i64(n as i64);
        for (j, eta_j) in eta.iter().enumerate().skip(1) {
            let term = binom.mul(&inv_pow[n + j], prec).mul(eta_j, prec);
            sum = sum.add(&term, prec);
            let step = BigFloat::from_i64((n - j) as i64)
                .div(&BigFloat::from_i64(j as i64 + 1), prec);
            binom = binom.mul(&step, prec);
        }
        let numer = tb
            .mul(&one.sub(&inv_pow[n], prec), prec)
            .add(&th2.mul(&sum, prec), prec);
        eta.push(numer.div(&denom, prec));
    }
    (xi, eta)
}

// ------------------------------------------------------------ Monte Carlo

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Min,
    Max,
}

impl std::str::FromStr for Extreme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(Extreme::Min),
            "max" => Ok(Extreme::Max),
            _ => Err(Error::Parse {
                input: s.to_string(),
                expected: "min or max",
            }),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl MonteCarloEstimate {
    /// |mean − reference| measured in standard errors.
    pub fn sigmas_from(&self, reference: f64) -> f64 {
        (self.mean - reference).abs() / self.std_error
    }
}

/// Monte Carlo estimate of the expected extremum of n independent draws.
///
/// Each draw is F of an exactly-uniform length-`prefix_len` member, so
/// the truncation bias is below θ^prefix_len, which the precondition
/// keeps under 1e−12 — far inside the Monte Carlo noise.
pub fn monte_carlo_order_stat(
    kind: EnsembleKind,
    theta: &Rational,
    n: usize,
    which: Extreme,
    samples: u64,
    prefix_len: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    let params = DistributionParams::new(theta.clone())?;
    if samples < 1_000 {
        return Err(Error::OutOfDomain(format!(
            "need at least 1000 samples, got {samples}"
        )));
    }
    let theta_f = rational_to_f64(params.theta());
    if theta_f.powi(prefix_len as i32) >= 1e-12 {
        return Err(Error::OutOfDomain(format!(
            "prefix_len {prefix_len} leaves truncation bias above 1e-12"
        )));
    }
    assert!(n >= 1);
    let sampler = UniformSampler::new(kind, prefix_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for s in 1..=samples {
        let mut extreme = match which {
            Extreme::Min => f64::INFINITY,
            Extreme::Max => f64::NEG_INFINITY,
        };
        for _ in 0..n {
            let omega = sampler.sample(&mut rng);
            let f = f_value_f64(theta_f, &omega);
            extreme = match which {
                Extreme::Min => extreme.min(f),
                Extreme::Max => extreme.max(f),
            };
        }
        let delta = extreme - mean;
        mean += delta / s as f64;
        m2 += delta * (extreme - mean);
    }
    let variance = m2 / (samples - 1) as f64;
    Ok(MonteCarloEstimate {
        mean,
        std_error: (variance / samples as f64).sqrt(),
        samples,
    })
}

/// Seed-partitioned Monte Carlo: the sample budget is split over 64
/// fixed chunks with derived seeds, so the estimate is identical for
/// every thread count; `jobs` only controls how many chunks run at once.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_order_stat_parallel(
    kind: EnsembleKind,
    theta: &Rational,
    n: usize,
    which: Extreme,
    samples: u64,
    prefix_len: usize,
    seed: u64,
    jobs: usize,
) -> Result<MonteCarloEstimate> {
    const CHUNKS: u64 = 64;
    let params = DistributionParams::new(theta.clone())?;
    if samples < 1_000 {
        return Err(Error::OutOfDomain(format!(
            "need at least 1000 samples, got {samples}"
        )));
    }
    let theta_f = rational_to_f64(params.theta());
    if theta_f.powi(prefix_len as i32) >= 1e-12 {
        return Err(Error::OutOfDomain(format!(
            "prefix_len {prefix_len} leaves truncation bias above 1e-12"
        )));
    }
    assert!(n >= 1);
    let jobs = jobs.max(1);
    let base = samples / CHUNKS;
    let extra = samples % CHUNKS;
    // (sum, sum of squares, count) per chunk, then a fixed-order merge
    let chunk_stats = |c: u64| -> (f64, f64, u64) {
        let quota = base + u64::from(c < extra);
        let sampler = UniformSampler::new(kind, prefix_len);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut sum = 0.0f64;
        let mut sumsq = 0.0f64;
        for _ in 0..quota {
            let mut extreme = match which {
                Extreme::Min => f64::INFINITY,
                Extreme::Max => f64::NEG_INFINITY,
            };
            for _ in 0..n {
                let f = f_value_f64(theta_f, &sampler.sample(&mut rng));
                extreme = match which {
                    Extreme::Min => extreme.min(f),
                    Extreme::Max => extreme.max(f),
                };
            }
            sum += extreme;
            sumsq += extreme * extreme;
        }
        (sum, sumsq, quota)
    };
    let mut results: Vec<(f64, f64, u64)> = vec![(0.0, 0.0, 0); CHUNKS as usize];
    if jobs == 1 {
        for (c, slot) in results.iter_mut().enumerate() {
            *slot = chunk_stats(c as u64);
        }
    } else {
        let next = std::sync::atomic::AtomicU64::new(0);
        let slots = std::sync::Mutex::new(&mut results);
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(CHUNKS as usize) {
                scope.spawn(|| loop {
                    let c = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if c >= CHUNKS {
                        break;
                    }
                    let stats = chunk_stats(c);
                    slots.lock().unwrap()[c as usize] = stats;
                });
            }
        });
    }
    let mut sum = 0.0f64;
    let mut sumsq = 0.0f64;
    let mut total = 0u64;
    for (s, sq, c) in results {
        sum += s;
        sumsq += sq;
        total += c;
    }
    let mean = sum / total as f64;
    let variance = (sumsq - total as f64 * mean * mean) / (total - 1) as f64;
    Ok(MonteCarloEstimate {
        mean,
        std_error: (variance.max(0.0) / total as f64).sqrt(),
        samples: total,
    })
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::moments::solus_moments;

    #[test]
    fn parallel_chunks_independent_of_thread_count() {
        let run = |jobs| {
            monte_carlo_order_stat_parallel(
                EnsembleKind::Solus,
                &rat(1, 3),
                2,
                Extreme::Max,
                4_000,
                30,
                99,
                jobs,
            )
            .unwrap()
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        assert_eq!(a.samples, 4_000);
    }

    #[test]
    fn cantor_exact_values() {
        let t = cantor_order_stats(&rat(1, 3), 5).unwrap();
        let expect = [rat(1, 2), rat(3, 10), rat(1, 5), rat(33, 230), rat(5, 46)];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(t.xi(n + 1), &ExactValue::Rational(e.clone()), "xi_{}", n + 1);
        }
        // maxima by symmetry
        assert_eq!(t.eta(2), &ExactValue::Rational(rat(7, 10)));
        assert_eq!(t.eta(1), &ExactValue::Rational(rat(1, 2)));
    }

    #[test]
    fn first_order_stat_equals_first_moment() {
        let t = solus_order_stats(&rat(1, 3), 3).unwrap();
        let m = solus_moments(&rat(1, 3), 1).unwrap();
        assert_eq!(t.xi(1), &m.values[1]);
        assert_eq!(t.eta(1), &m.values[1]);
    }

    #[test]
    fn monotone_in_n() {
        for table in [
            cantor_order_stats(&rat(1, 3), 16).unwrap(),
            solus_order_stats(&rat(1, 3), 16).unwrap(),
            solus_order_stats(&rat(1, 4), 12).unwrap(),
        ] {
            for n in 2..=table.n_max() {
                assert_ne!(
                    table.xi(n).cmp_exact(table.xi(n - 1)),
                    std::cmp::Ordering::Greater,
                    "xi increases at {n}"
                );
                assert_ne!(
                    table.eta(n).cmp_exact(table.eta(n - 1)),
                    std::cmp::Ordering::Less,
                    "eta decreases at {n}"
                );
            }
        }
    }

    #[test]
    fn solus_eta_respects_support_bound() {
        let t = solus_order_stats(&rat(1, 3), 20).unwrap();
        for n in 1..=20 {
            assert_ne!(
                t.eta(n).cmp_exact(&t.max_support),
                std::cmp::Ordering::Greater,
                "eta_{n} above support max"
            );
        }
    }

    #[test]
    fn float_paths_match_exact_tables() {
        let exact = cantor_order_stats(&rat(1, 3), 24).unwrap();
        let float = cantor_order_stats_float(&rat(1, 3), 24, 128);
        for n in 1..=24usize {
            let e = crate::exact::rational_to_f64(exact.xi(n).as_rational().unwrap());
            assert!((float[n].to_f64() - e).abs() < 1e-12, "cantor n={n}");
        }
        let exact = solus_order_stats(&rat(1, 3), 20).unwrap();
        let (fxi, feta) = solus_order_stats_float(&rat(1, 3), 20, 128);
        for n in 1..=20usize {
            assert!((fxi[n].to_f64() - exact.xi(n).to_f64()).abs() < 1e-12);
            assert!((feta[n].to_f64() - exact.eta(n).to_f64()).abs() < 1e-12);
        }
    }

    #[test]
    fn monte_carlo_deterministic_and_sane() {
        let a = monte_carlo_order_stat(
            EnsembleKind::Unconstrained,
            &rat(1, 3),
            2,
            Extreme::Min,
            2_000,
            30,
            12345,
        )
        .unwrap();
        let b = monte_carlo_order_stat(
            EnsembleKind::Unconstrained,
            &rat(1, 3),
            2,
            Extreme::Min,
            2_000,
            30,
            12345,
        )
        .unwrap();
        assert_eq!(a.mean, b.mean);
        // ξ₂ = 3/10
        assert!(a.sigmas_from(0.3) < 5.0, "mean={} se={}", a.mean, a.std_error);
    }

    #[test]
    fn monte_carlo_multus_sanity() {
        // no closed form exists; the estimate must land strictly inside (0, μ₁)
        let est = monte_carlo_order_stat(
            EnsembleKind::Multus,
            &rat(1, 3),
            2,
            Extreme::Min,
            4_000,
            30,
            7,
        )
        .unwrap();
        assert!(est.mean > 0.0 && est.mean < 0.504968);
    }

    #[test]
    fn monte_carlo_preconditions() {
        assert!(matches!(
            monte_carlo_order_stat(
                EnsembleKind::Solus,
                &rat(1, 3),
                1,
                Extreme::Min,
                10,
                30,
                0
            ),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            monte_carlo_order_stat(
                EnsembleKind::Solus,
                &rat(1, 3),
                1,
                Extreme::Min,
                5_000,
                5,
                0
            ),
            Err(Error::OutOfDomain(_))
        ));
    }
}

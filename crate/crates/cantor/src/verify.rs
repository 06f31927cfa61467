//! Cross-route verification: every analytic quantity with a finite-length
//! meaning is recomputed from scratch — exhaustive enumeration, automaton
//! transfer counts, or an independent dynamic program — and compared
//! exactly against the closed forms and generating functions.
//!
//! The suite backs the `verify` CLI subcommand and the acceptance tests.
//! Checks are exact (rational equality) except the two statistical ones,
//! which use wide deterministic-seed confidence bands.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::bitsums::{bitsum_series, empirical_bitsum};
use crate::ensembles::{
    self, automaton, count, count_by_automaton, enumerate, f_value, fibonacci_word,
    BitString, DistributionParams, EnsembleKind, UniformSampler,
};
use crate::error::Result;
use crate::exact::{rat, rational_pow, Rational};
use crate::moments::empirical_moments;
use crate::runs::{empirical_longest_run, expected_longest_run, no_run_gf};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn of(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        if passed {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

/// Exact finite-length power sums Σ F(ω)^p over the length-m ensemble by
/// an automaton dynamic program — an independent route to the same
/// quantities `empirical_moments` obtains by literal enumeration.
///
/// Reading a string left to right, F(b·ω) = b·θ̄ + θ·F(ω); expanding the
/// binomial gives a transfer recurrence on the vector of power sums per
/// automaton state.
fn moments_by_dp(
    kind: EnsembleKind,
    params: &DistributionParams,
    m: usize,
    n_max: usize,
) -> Vec<Rational> {
    let dfa = automaton(kind);
    let th = params.theta();
    let tb = params.theta_bar();
    // binomial rows up to n_max
    let mut binom = vec![vec![Rational::zero(); n_max + 1]; n_max + 1];
    for (p, row) in binom.iter_mut().enumerate() {
        row[0] = Rational::one();
        if p > 0 {
            row[p] = Rational::one();
        }
    }
    for p in 1..=n_max {
        for q in 1..p {
            let v = &binom[p - 1][q - 1] + &binom[p - 1][q];
            binom[p][q] = v;
        }
    }
    let th_pows: Vec<Rational> = (0..=n_max as i64).map(|p| rational_pow(th, p)).collect();
    let tb_pows: Vec<Rational> = (0..=n_max as i64).map(|p| rational_pow(tb, p)).collect();
    // v[s][p] = Σ over length-ℓ accepting completions from state s of F^p
    let mut v: Vec<Vec<Rational>> = (0..dfa.states)
        .map(|s| {
            let mut row = vec![Rational::zero(); n_max + 1];
            if dfa.accept[s] {
                row[0] = Rational::one();
            }
            row
        })
        .collect();
    for _ in 0..m {
        let mut next = vec![vec![Rational::zero(); n_max + 1]; dfa.states];
        for (s, next_row) in next.iter_mut().enumerate() {
            for p in 0..=n_max {
                let mut acc = Rational::zero();
                let t0 = dfa.trans[s][0];
                if t0 != ensembles::NO_EDGE {
                    // F(0ω) = θF(ω)
                    acc += &th_pows[p] * &v[t0 as usize][p];
                }
                let t1 = dfa.trans[s][1];
                if t1 != ensembles::NO_EDGE {
                    // F(1ω)^p = Σ_q C(p,q) θ̄^{p−q} θ^q F(ω)^q
                    for q in 0..=p {
                        acc += &binom[p][q] * &tb_pows[p - q] * &th_pows[q]
                            * &v[t1 as usize][q];
                    }
                }
                next_row[p] = acc;
            }
        }
        v = next;
    }
    let total = v[0][0].clone();
    (0..=n_max).map(|p| &v[0][p] / &total).collect()
}

/// Run the full oracle-equivalence suite.
///
/// `max_len` bounds the exhaustive enumerations (the acceptance criteria
/// use 16); counting identities go to length 30 regardless.
pub fn oracle_suite(max_len: usize, theta: &Rational) -> Result<Vec<CheckResult>> {
    let params = DistributionParams::new(theta.clone())?;
    let mut out = Vec::new();

    // counts: defining recurrences vs automaton transfer vs enumeration
    let mut ok = true;
    for kind in EnsembleKind::ALL {
        for m in 0..=30usize {
            ok &= count(kind, m) == count_by_automaton(kind, m);
        }
    }
    out.push(CheckResult::of(
        "counts: recurrence == automaton (m <= 30)",
        ok,
        "2^m, Fibonacci, second upper Fibonacci",
    ));
    let mut ok = true;
    for kind in EnsembleKind::ALL {
        for m in 0..=max_len.min(18) {
            let n = enumerate(kind, m)?.count();
            ok &= BigUint::from(n) == count(kind, m);
        }
    }
    out.push(CheckResult::of(
        "counts: enumeration length == count",
        ok,
        format!("lengths <= {}", max_len.min(18)),
    ));

    // membership of every enumerated string
    let mut ok = true;
    for kind in EnsembleKind::ALL {
        for m in 0..=max_len.min(14) {
            for s in enumerate(kind, m)? {
                ok &= s.is_member(kind);
                ok &= s.len() == m;
            }
        }
    }
    out.push(CheckResult::of(
        "membership: enumerated strings satisfy their predicate",
        ok,
        "solus: no 11; multus: no isolated 1",
    ));

    // F identities, including the multus-specific ones
    let mut ok = true;
    let th = params.theta();
    let tb = params.theta_bar();
    for m in 0..=8usize {
        for omega in enumerate(EnsembleKind::Unconstrained, m)? {
            let f = f_value(&params, &omega);
            ok &= f >= Rational::zero() && f <= Rational::one();
            let prefixed = |bits: &[bool]| {
                let mut s = BitString::from_bools(bits);
                for b in omega.iter() {
                    s.push(b);
                }
                f_value(&params, &s)
            };
            ok &= prefixed(&[false]) == th * &f;
            ok &= prefixed(&[true]) == tb + th * &f;
            ok &= prefixed(&[true, true]) == tb + tb * th + th * th * &f;
            ok &= prefixed(&[true, true, true, false])
                == tb + tb * th + tb * th * th + th * th * th * th * &f;
        }
    }
    out.push(CheckResult::of(
        "value map: prefix identities hold exactly",
        ok,
        "F(0w), F(1w), F(11w), F(1110w)",
    ));

    // solus support bound F <= 1/(1+θ)
    let mut ok = true;
    let bound = Rational::one() / (Rational::one() + th);
    for m in 0..=max_len.min(14) {
        for omega in enumerate(EnsembleKind::Solus, m)? {
            ok &= f_value(&params, &omega) <= bound;
        }
    }
    out.push(CheckResult::of(
        "value map: solus bound F <= 1/(1+theta)",
        ok,
        format!("bound {bound}"),
    ));

    // bitsum series vs enumeration
    let mut ok = true;
    for kind in EnsembleKind::ALL {
        let series = bitsum_series(kind, max_len);
        for m in 0..=max_len {
            let stats = empirical_bitsum(kind, m)?;
            ok &= stats.total == series.a[m];
            ok &= stats.total_sq == series.b[m];
            ok &= series.c[m] == &series.counts[m] * &series.b[m] - &series.a[m] * &series.a[m];
        }
    }
    out.push(CheckResult::of(
        "bitsums: generating functions == exhaustive totals",
        ok,
        format!("a_n, b_n, c_n for n <= {max_len}"),
    ));

    // longest runs vs enumeration
    let mut ok = true;
    for (kind, bit) in [
        (EnsembleKind::Unconstrained, 1u8),
        (EnsembleKind::Unconstrained, 0),
        (EnsembleKind::Solus, 0),
        (EnsembleKind::Multus, 1),
        (EnsembleKind::Multus, 0),
    ] {
        let table = expected_longest_run(kind, bit, max_len)?;
        for m in 0..=max_len {
            ok &= table.expectations[m] == empirical_longest_run(kind, bit, m)?;
        }
    }
    out.push(CheckResult::of(
        "runs: expectation series == exhaustive averages",
        ok,
        format!("four families, n <= {max_len}"),
    ));

    // no-run counts vs enumeration
    let mut ok = true;
    for (kind, bit) in [
        (EnsembleKind::Unconstrained, 1u8),
        (EnsembleKind::Solus, 0),
        (EnsembleKind::Multus, 1),
        (EnsembleKind::Multus, 0),
    ] {
        for k in 1..=7usize {
            let series = no_run_gf(kind, bit, k)?.coefficients(max_len.min(12));
            for m in 0..=max_len.min(12) {
                let brute = enumerate(kind, m)?
                    .filter(|s| s.longest_run(bit == 1) < k)
                    .count();
                let expected = if kind == EnsembleKind::Multus && m == 0 {
                    Rational::zero() // the displayed multus forms omit ε
                } else {
                    rat(brute as i64, 1)
                };
                ok &= series.coeff(m) == &expected;
            }
        }
    }
    out.push(CheckResult::of(
        "runs: no-run-of-k counts == exhaustive counts",
        ok,
        "k <= 7",
    ));

    // finite-length moments: enumeration vs independent automaton DP
    let mut ok = true;
    for kind in EnsembleKind::ALL {
        let m = max_len.min(14);
        let emp = empirical_moments(kind, theta, m, 4)?;
        let dp = moments_by_dp(kind, &params, m, 4);
        ok &= emp == dp;
    }
    out.push(CheckResult::of(
        "moments: enumeration == automaton dynamic program",
        ok,
        "finite-length power sums, n <= 4",
    ));

    // fibonacci word: solus membership and density
    let w = fibonacci_word(1_000_000);
    let solus_ok = w.is_solus();
    let density = w.count_ones() as f64 / 1e6;
    let target = 1.0 - 2.0 / (1.0 + 5.0f64.sqrt());
    let dens_ok = (density - target).abs() < 1e-3;
    out.push(CheckResult::of(
        "fibonacci word: solus and density -> 1 - 1/phi",
        solus_ok && dens_ok,
        format!("density {density:.7} vs {target:.7}"),
    ));

    // sampler uniformity: multinomial frequency test at 5 sigma
    let mut ok = true;
    let mut details = String::new();
    for (kind, m) in [(EnsembleKind::Solus, 6usize), (EnsembleKind::Multus, 6)] {
        let cells: Vec<BitString> = enumerate(kind, m)?.collect();
        let draws = 100_000u64;
        let sampler = UniformSampler::new(kind, m);
        let mut rng = ChaCha8Rng::seed_from_u64(20200320);
        let mut freq: HashMap<String, u64> = HashMap::new();
        for _ in 0..draws {
            *freq.entry(sampler.sample(&mut rng).to_string()).or_insert(0) += 1;
        }
        let p = 1.0 / cells.len() as f64;
        let mean = draws as f64 * p;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        let mut worst: f64 = 0.0;
        for cell in &cells {
            let got = *freq.get(&cell.to_string()).unwrap_or(&0) as f64;
            worst = worst.max((got - mean).abs() / sigma);
        }
        ok &= worst < 5.0;
        details.push_str(&format!("{kind}: worst {worst:.2} sigma; "));
    }
    out.push(CheckResult::of(
        "sampler: per-string frequencies within 5 sigma of uniform",
        ok,
        details,
    ));

    Ok(out)
}

/// True when every check passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    #[test]
    fn dp_matches_enumeration_directly() {
        let params = DistributionParams::new(rat(1, 3)).unwrap();
        for kind in EnsembleKind::ALL {
            let emp = empirical_moments(kind, &rat(1, 3), 10, 3).unwrap();
            let dp = moments_by_dp(kind, &params, 10, 3);
            assert_eq!(emp, dp, "{kind}");
        }
    }

    #[test]
    fn suite_passes_at_modest_length() {
        let results = oracle_suite(10, &rat(1, 3)).unwrap();
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        assert!(all_passed(&results));
    }

    #[test]
    fn suite_other_theta() {
        let results = oracle_suite(8, &rat(2, 5)).unwrap();
        assert!(all_passed(&results));
    }
}

//! Expected longest-run durations E(R_{n,1}) and E(R_{n,0}) for the three
//! ensembles, via no-run-of-k generating functions and the summation
//! identity Σ_j j·h_j = Σ_k (Σ_i h_i − Σ_{i≤k} h_i).
//!
//! For each supported (ensemble, bit) pair the expectation numerator is
//!
//!   num(z) = Σ_{k≥1} [ G(z) − NR_k(z) ],     E(R_{n,bit}) = num_n / count_n,
//!
//! where NR_k counts members whose longest bit-run is shorter than k and
//! G is the matching count series.  G − NR_k counts strings containing a
//! run of length ≥ k, which first happens at degree k, so truncating the
//! k-sum at the series order is exact, not approximate.
//!
//! The four families (count GF, subtrahend) are:
//!
//! * unconstrained, either bit: 1/(1−2z) − (1−z^k)/(1−2z+z^{k+1})
//! * solus 0-runs: (1+z)/(1−z−z²) − (1+z−z^k−z^{k+1})/(1−z−z²+z^{k+1})
//! * multus 1-runs: z(1+z²)/(1−2z+z²−z³)
//!   − z(1+z²−z^{k−1}−z^k)/(1−2z+z²−z³+z^{k+1}),
//!   with the whole sum corrected by −z/((1−z)(1−z+z²)); the correction
//!   repairs the k = 1 term of the generic subtrahend, whose true value
//!   is z/(1−z).  (Algebraically, z/(1−z) + z²/(1−z+z²) minus the k = 1
//!   generic form collapses to exactly that correction.)
//! * multus 0-runs: z(1+z²)/(1−2z+z²−z³)
//!   − z(1+z²−z^{k−1}+z^k−2z^{k+1})/(1−2z+z²−z³+z^{k+2})
//!
//! The multus subtrahends carry an ε-excluded convention (their z⁰
//! coefficient is 0 rather than 1); the matching minuend z(1+z²)/D is
//! the count series minus 1, so every difference term is unaffected.
//!
//! Longest 1-runs of solus strings never exceed one, so that pair is
//! rejected rather than given a degenerate table.

use num_bigint::BigInt;

use crate::ensembles::{count, enumerate, EnsembleKind};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::genfunc::{Poly, RationalGF, Series};

/// Expected longest runs, exact: integer numerator sequence and the
/// rational expectations numerator_n / count_n.
#[derive(Debug, Clone)]
pub struct RunTable {
    pub kind: EnsembleKind,
    pub bit: u8,
    pub numerators: Vec<BigInt>,
    pub expectations: Vec<Rational>,
}

fn check_pair(kind: EnsembleKind, bit: u8) -> Result<()> {
    assert!(bit <= 1);
    if kind == EnsembleKind::Solus && bit == 1 {
        return Err(Error::UnsupportedRunPair { kind, bit });
    }
    Ok(())
}

/// Count series used as the minuend of the k-sums (for multus this is
/// the ε-excluded z(1+z²)/D = G₀ − 1; see the module notes).
fn minuend_gf(kind: EnsembleKind) -> RationalGF {
    match kind {
        EnsembleKind::Unconstrained => RationalGF::from_ints(&[1], &[1, -2]),
        EnsembleKind::Solus => RationalGF::from_ints(&[1, 1], &[1, -1, -1]),
        EnsembleKind::Multus => RationalGF::from_ints(&[0, 1, 0, 1], &[1, -2, 1, -1]),
    }
    .expect("constant terms are nonzero")
}

/// Sparse polynomial assembly: base coefficients plus stacked monomials.
fn sparse_poly(base: &[i64], extra: &[(usize, i64)]) -> Poly {
    let top = extra.iter().map(|&(i, _)| i).max().unwrap_or(0);
    let mut coeffs = vec![0i64; (base.len().max(top + 1)).max(1)];
    coeffs[..base.len()].copy_from_slice(base);
    for &(i, v) in extra {
        coeffs[i] += v;
    }
    Poly::from_ints(&coeffs)
}

/// The displayed k-th subtrahend of the expectation sum, applied at
/// every k ≥ 1 (including the multus-1 case k = 1 that the correction
/// term repairs).
fn subtrahend_gf(kind: EnsembleKind, bit: u8, k: usize) -> RationalGF {
    debug_assert!(k >= 1);
    let (num, den) = match (kind, bit) {
        (EnsembleKind::Unconstrained, _) => (
            sparse_poly(&[1], &[(k, -1)]),
            sparse_poly(&[1, -2], &[(k + 1, 1)]),
        ),
        (EnsembleKind::Solus, 0) => (
            sparse_poly(&[1, 1], &[(k, -1), (k + 1, -1)]),
            sparse_poly(&[1, -1, -1], &[(k + 1, 1)]),
        ),
        (EnsembleKind::Multus, 1) => (
            sparse_poly(&[0, 1, 0, 1], &[(k, -1), (k + 1, -1)]),
            sparse_poly(&[1, -2, 1, -1], &[(k + 1, 1)]),
        ),
        (EnsembleKind::Multus, 0) => (
            sparse_poly(&[0, 1, 0, 1], &[(k, -1), (k + 1, 1), (k + 2, -2)]),
            sparse_poly(&[1, -2, 1, -1], &[(k + 2, 1)]),
        ),
        _ => unreachable!("rejected by check_pair"),
    };
    RationalGF::new(num, den).expect("constant term 1")
}

/// Generating function counting members whose longest run of `bit` is
/// strictly shorter than k.
///
/// These are the displayed closed forms; the two multus families count
/// nonempty strings only (coefficient 0, not 1, at z⁰).  The k = 1
/// multus 1-run case is the special form z/(1−z).
pub fn no_run_gf(kind: EnsembleKind, bit: u8, k: usize) -> Result<RationalGF> {
    check_pair(kind, bit)?;
    assert!(k >= 1, "no_run_gf needs k >= 1");
    if kind == EnsembleKind::Multus && bit == 1 && k == 1 {
        return Ok(RationalGF::from_ints(&[0, 1], &[1, -1]).expect("1 - z"));
    }
    Ok(subtrahend_gf(kind, bit, k))
}

/// Exact expected-longest-run table for n = 0..n_max.
pub fn expected_longest_run(kind: EnsembleKind, bit: u8, n_max: usize) -> Result<RunTable> {
    check_pair(kind, bit)?;
    let minuend = minuend_gf(kind).coefficients(n_max);
    let mut acc = if kind == EnsembleKind::Multus && bit == 1 {
        // correction −z/((1−z)(1−z+z²)) = −z/(1−2z+2z²−z³)
        RationalGF::from_ints(&[0, -1], &[1, -2, 2, -1])
            .expect("constant term 1")
            .coefficients(n_max)
    } else {
        Series::zeros(n_max)
    };
    for k in 1..=n_max.max(1) {
        let sub = subtrahend_gf(kind, bit, k).coefficients(n_max);
        acc = &acc + &(&minuend - &sub);
    }
    let numerators: Vec<BigInt> = acc
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer(), "run numerator must be integral, got {c}");
            c.to_integer()
        })
        .collect();
    let expectations = numerators
        .iter()
        .enumerate()
        .map(|(n, num)| Rational::new(num.clone(), count(kind, n).into()))
        .collect();
    Ok(RunTable {
        kind,
        bit,
        numerators,
        expectations,
    })
}

/// Expected longest runs over f64, by growth-scaled sparse recurrences.
///
/// This is the large-index diagnostic path (the exact path costs O(n³)
/// in the series order).  Every sequence is carried as c_m / g^m with g
/// the ensemble growth rate, so nothing overflows; agreement with the
/// exact path is checked by the tests at moderate n.
pub fn expected_longest_run_float(
    kind: EnsembleKind,
    bit: u8,
    n_max: usize,
) -> Result<Vec<f64>> {
    check_pair(kind, bit)?;
    let growth = match kind {
        EnsembleKind::Unconstrained => 2.0f64,
        EnsembleKind::Solus => (1.0 + 5.0f64.sqrt()) / 2.0,
        EnsembleKind::Multus => 1.754_877_666_246_692_8,
    };
    // scaled extraction: s_m = c_m/g^m from num/den with den[0] = 1
    let scaled = |num: &[(usize, f64)], den: &[(usize, f64)]| -> Vec<f64> {
        let mut s = vec![0.0; n_max + 1];
        let gpow = |j: usize| growth.powi(j as i32);
        for m in 0..=n_max {
            let mut v = 0.0;
            for &(i, p) in num {
                if i == m {
                    v += p / gpow(m);
                }
            }
            for &(j, q) in den {
                if j >= 1 && j <= m {
                    v -= q * s[m - j] / gpow(j);
                }
            }
            s[m] = v;
        }
        s
    };
    let base_num: Vec<(usize, f64)> = match kind {
        EnsembleKind::Unconstrained => vec![(0, 1.0)],
        EnsembleKind::Solus => vec![(0, 1.0), (1, 1.0)],
        EnsembleKind::Multus => vec![(1, 1.0), (3, 1.0)],
    };
    let base_den: Vec<(usize, f64)> = match kind {
        EnsembleKind::Unconstrained => vec![(0, 1.0), (1, -2.0)],
        EnsembleKind::Solus => vec![(0, 1.0), (1, -1.0), (2, -1.0)],
        EnsembleKind::Multus => vec![(0, 1.0), (1, -2.0), (2, 1.0), (3, -1.0)],
    };
    let minuend = scaled(&base_num, &base_den);
    let mut acc = vec![0.0f64; n_max + 1];
    if kind == EnsembleKind::Multus && bit == 1 {
        let corr = scaled(
            &[(1, -1.0)],
            &[(0, 1.0), (1, -2.0), (2, 2.0), (3, -1.0)],
        );
        for (a, c) in acc.iter_mut().zip(&corr) {
            *a += c;
        }
    }
    for k in 1..=n_max.max(1) {
        let (sub_num, shift): (Vec<(usize, f64)>, usize) = match (kind, bit) {
            (EnsembleKind::Unconstrained, _) => {
                (vec![(0, 1.0), (k, -1.0)], k + 1)
            }
            (EnsembleKind::Solus, 0) => {
                (vec![(0, 1.0), (1, 1.0), (k, -1.0), (k + 1, -1.0)], k + 1)
            }
            (EnsembleKind::Multus, 1) => {
                (vec![(1, 1.0), (3, 1.0), (k, -1.0), (k + 1, -1.0)], k + 1)
            }
            (EnsembleKind::Multus, 0) => (
                vec![(1, 1.0), (3, 1.0), (k, -1.0), (k + 1, 1.0), (k + 2, -2.0)],
                k + 2,
            ),
            _ => unreachable!(),
        };
        let mut den = base_den.clone();
        den.push((shift, 1.0));
        let sub = scaled(&sub_num, &den);
        for m in k.min(n_max)..=n_max {
            acc[m] += minuend[m] - sub[m];
        }
    }
    // divide by scaled counts; counts/g^m from the count series
    let count_num: Vec<(usize, f64)> = match kind {
        EnsembleKind::Unconstrained => vec![(0, 1.0)],
        EnsembleKind::Solus => vec![(0, 1.0), (1, 1.0)],
        EnsembleKind::Multus => vec![(0, 1.0), (1, -1.0), (2, 1.0)],
    };
    let counts = scaled(&count_num, &base_den);
    Ok(acc
        .iter()
        .zip(&counts)
        .map(|(num, c)| num / c)
        .collect())
}

/// Brute-force oracle: the exact average longest run of `bit` over all
/// length-m members.
pub fn empirical_longest_run(kind: EnsembleKind, bit: u8, m: usize) -> Result<Rational> {
    assert!(bit <= 1);
    let mut total = 0u64;
    let mut members = 0u64;
    for omega in enumerate(kind, m)? {
        total += omega.longest_run(bit == 1) as u64;
        members += 1;
    }
    Ok(Rational::new(BigInt::from(total), BigInt::from(members)))
}

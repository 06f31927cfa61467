//! Bitsum statistics of the ensembles: the total-bitsum and
//! total-bitsum-squared generating functions, the variance combination
//! c_n = f_{n+2} b_n − a_n², and the closed-form density limits
//!
//!   lim E(S_n)/n = lim a_n/(n f_{n+2}),
//!   lim V(S_n)/n = lim c_n/(n f_{n+2}²).
//!
//! The solus generating functions are
//!   Σ a_n z^n = z/(1−z−z²)²,
//!   Σ b_n z^n = z(1−z+z²)/(1−z−z²)³,
//!   Σ c_n z^n = z(1−z)/((1+z)³(1−3z+z²)²),
//! and the multus ones
//!   Σ a_n z^n = z²(2−z)/(1−2z+z²−z³)²,
//!   Σ b_n z^n = z²(4−7z+4z²+3z³−z⁴)/(1−2z+z²−z³)³,
//!   Σ c_n z^n = z²(4−9z+9z²−9z³−6z⁴+z⁵−6z⁶+z⁸)
//!               / ((1−z+2z²−z³)³(1−2z−3z²−z³)²).
//!
//! Density limits come out of the dominant-pole residues and therefore
//! live in the ensemble's own number field.  With counts N_cnt/D (simple
//! pole z₀) and a = N_a/D²,
//!
//!   mean = −N_a(z₀) / (z₀ D'(z₀) N_cnt(z₀)),
//!
//! and with c = N_c/(E³P²), P(z₁) = 0 at z₁ = z₀² and count residue
//! R = −N_cnt(z₀)/(z₀ D'(z₀)),
//!
//!   variance = N_c(z₁) / (E(z₁)³ P'(z₁)² z₁² R²).
//!
//! For solus these evaluate to (3−φ)/5 and (2φ−1)/25 — the familiar
//! (5−√5)/10 and 1/(5√5) rewritten in the {1, φ} basis — which the tests
//! pin both ways.  For multus they are genuine Q(ψ) elements whose
//! decimal expansions 0.5885044113 and 0.2810976123 the tests confirm
//! against the published nested-radical forms evaluated in high
//! precision.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ensembles::{count, enumerate, EnsembleKind};
use crate::error::Result;
use crate::exact::{
    approximate, rat, CubicElement, DecimalApprox, ExactField, ExactValue, QuadElement, Rational,
};
use crate::genfunc::{Poly, RationalGF};

/// Exact integer bitsum series with the counts they are paired with.
#[derive(Debug, Clone)]
pub struct BitsumSeries {
    pub kind: EnsembleKind,
    /// total bitsum over all length-n members
    pub a: Vec<BigInt>,
    /// total squared bitsum
    pub b: Vec<BigInt>,
    /// c_n = f_{n+2} b_n − a_n²
    pub c: Vec<BigInt>,
    /// member counts f_{n+2}
    pub counts: Vec<BigInt>,
}

fn solus_denominator() -> Poly {
    Poly::from_ints(&[1, -1, -1])
}

fn multus_denominator() -> Poly {
    Poly::from_ints(&[1, -2, 1, -1])
}

fn bitsum_gf_a(kind: EnsembleKind) -> RationalGF {
    let (num, den) = match kind {
        EnsembleKind::Solus => {
            let d = solus_denominator();
            (Poly::from_ints(&[0, 1]), &d * &d)
        }
        EnsembleKind::Multus => {
            let d = multus_denominator();
            (Poly::from_ints(&[0, 0, 2, -1]), &d * &d)
        }
        EnsembleKind::Unconstrained => unreachable!("closed form"),
    };
    RationalGF::new(num, den).expect("nonzero constant term")
}

fn bitsum_gf_b(kind: EnsembleKind) -> RationalGF {
    let (num, den) = match kind {
        EnsembleKind::Solus => {
            let d = solus_denominator();
            (Poly::from_ints(&[0, 1, -1, 1]), &(&d * &d) * &d)
        }
        EnsembleKind::Multus => {
            let d = multus_denominator();
            (
                Poly::from_ints(&[0, 0, 4, -7, 4, 3, -1]),
                &(&d * &d) * &d,
            )
        }
        EnsembleKind::Unconstrained => unreachable!("closed form"),
    };
    RationalGF::new(num, den).expect("nonzero constant term")
}

/// The cubed and squared denominator factors of the c_n generating
/// function, plus its numerator.
fn bitsum_gf_c_parts(kind: EnsembleKind) -> (Poly, Poly, Poly) {
    match kind {
        EnsembleKind::Solus => (
            Poly::from_ints(&[0, 1, -1]),
            Poly::from_ints(&[1, 1]),
            Poly::from_ints(&[1, -3, 1]),
        ),
        EnsembleKind::Multus => (
            Poly::from_ints(&[0, 0, 4, -9, 9, -9, -6, 1, -6, 0, 1]),
            Poly::from_ints(&[1, -1, 2, -1]),
            Poly::from_ints(&[1, -2, -3, -1]),
        ),
        EnsembleKind::Unconstrained => unreachable!("closed form"),
    }
}

fn bitsum_gf_c(kind: EnsembleKind) -> RationalGF {
    let (num, e, p) = bitsum_gf_c_parts(kind);
    let den = &(&(&e * &e) * &e) * &(&p * &p);
    RationalGF::new(num, den).expect("nonzero constant term")
}

fn integer_coeffs(gf: &RationalGF, n_max: usize) -> Vec<BigInt> {
    gf.coefficients(n_max)
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer(), "expected integer coefficient, got {c}");
            c.to_integer()
        })
        .collect()
}

/// Bitsum series a_n, b_n, c_n and counts for n = 0..n_max.
///
/// Solus and multus come from the generating functions above; the
/// unconstrained ensemble has the closed forms a_n = n·2^{n−1},
/// b_n = n(n+1)·2^{n−2}, c_n = n·4^{n−1}.
pub fn bitsum_series(kind: EnsembleKind, n_max: usize) -> BitsumSeries {
    let counts: Vec<BigInt> = (0..=n_max).map(|n| count(kind, n).into()).collect();
    match kind {
        EnsembleKind::Unconstrained => {
            let mut a = vec![BigInt::zero()];
            let mut b = vec![BigInt::zero()];
            let mut c = vec![BigInt::zero()];
            for n in 1..=n_max as u64 {
                a.push(BigInt::from(n) << (n - 1));
                // n(n+1)·2^(n−2); at n = 1 the half cancels into n(n+1)/2
                b.push(if n == 1 {
                    BigInt::one()
                } else {
                    BigInt::from(n * (n + 1)) << (n - 2)
                });
                c.push(BigInt::from(n) << (2 * n - 2));
            }
            BitsumSeries { kind, a, b, c, counts }
        }
        _ => BitsumSeries {
            kind,
            a: integer_coeffs(&bitsum_gf_a(kind), n_max),
            b: integer_coeffs(&bitsum_gf_b(kind), n_max),
            c: integer_coeffs(&bitsum_gf_c(kind), n_max),
            counts,
        },
    }
}

/// Closed-form density limits, exact in the ensemble's field.
#[derive(Debug, Clone)]
pub struct DensityLimit {
    pub kind: EnsembleKind,
    pub mean: ExactValue,
    pub variance: ExactValue,
    pub mean_decimal: DecimalApprox,
    pub variance_decimal: DecimalApprox,
}

impl DensityLimit {
    fn new(kind: EnsembleKind, mean: ExactValue, variance: ExactValue) -> Self {
        let mean_decimal = approximate(&mean, 12);
        let variance_decimal = approximate(&variance, 12);
        DensityLimit {
            kind,
            mean,
            variance,
            mean_decimal,
            variance_decimal,
        }
    }
}

/// mean = −N_a(z₀) / (z₀ D'(z₀) N_cnt(z₀)) at the simple dominant pole z₀.
fn mean_from_residues<F: ExactField>(
    num_a: &Poly,
    den: &Poly,
    num_counts: &Poly,
    z0: &F,
) -> Result<F> {
    let na = num_a.eval(z0);
    let dp = den.derivative().eval(z0);
    let nc = num_counts.eval(z0);
    na.negate().divide(&z0.times(&dp).times(&nc))
}

/// variance = N_c(z₁) / (E(z₁)³ P'(z₁)² z₁² R²) with R the count residue.
fn variance_from_residues<F: ExactField>(
    num_c: &Poly,
    e_base: &Poly,
    p_poly: &Poly,
    den: &Poly,
    num_counts: &Poly,
    z0: &F,
    z1: &F,
) -> Result<F> {
    let r = num_counts
        .eval(z0)
        .negate()
        .divide(&z0.times(&den.derivative().eval(z0)))?;
    let e1 = e_base.eval(z1);
    let p1 = p_poly.derivative().eval(z1);
    let denom = e1
        .pow_u64(3)
        .times(&p1.times(&p1))
        .times(&z1.times(z1))
        .times(&r.times(&r));
    num_c.eval(z1).divide(&denom)
}

/// Mean and variance of the density of 1s, in the limit of long strings.
pub fn bitsum_density(kind: EnsembleKind) -> DensityLimit {
    match kind {
        EnsembleKind::Unconstrained => DensityLimit::new(
            kind,
            ExactValue::Rational(rat(1, 2)),
            ExactValue::Rational(rat(1, 4)),
        ),
        EnsembleKind::Solus => {
            // (5−√5)/10 and 1/(5√5) in the {1, φ} basis
            let mean = QuadElement::new(rat(3, 5), rat(-1, 5));
            let variance = QuadElement::new(rat(-1, 25), rat(2, 25));
            DensityLimit::new(kind, ExactValue::Quad(mean), ExactValue::Quad(variance))
        }
        EnsembleKind::Multus => {
            let psi = CubicElement::psi();
            let z0 = psi.inverse().expect("psi is nonzero");
            let z1 = z0.times(&z0);
            let mean = mean_from_residues(
                &Poly::from_ints(&[0, 0, 2, -1]),
                &multus_denominator(),
                &Poly::from_ints(&[1, -1, 1]),
                &z0,
            )
            .expect("dominant pole is simple");
            let (num_c, e_base, p_poly) = bitsum_gf_c_parts(kind);
            let variance = variance_from_residues(
                &num_c,
                &e_base,
                &p_poly,
                &multus_denominator(),
                &Poly::from_ints(&[1, -1, 1]),
                &z0,
                &z1,
            )
            .expect("z1 is a simple root of P");
            DensityLimit::new(kind, ExactValue::Cubic(mean), ExactValue::Cubic(variance))
        }
    }
}

/// Exhaustive bitsum statistics of the length-m ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct BitsumStats {
    pub total: BigInt,
    pub total_sq: BigInt,
    pub mean: Rational,
    pub variance: Rational,
}

/// Brute-force oracle: exact total bitsum, total squared bitsum, and the
/// per-string mean and variance, by enumerating the whole ensemble.
pub fn empirical_bitsum(kind: EnsembleKind, m: usize) -> Result<BitsumStats> {
    let mut total = BigInt::zero();
    let mut total_sq = BigInt::zero();
    for omega in enumerate(kind, m)? {
        let s = BigInt::from(omega.count_ones());
        total_sq += &s * &s;
        total += s;
    }
    let f: BigInt = count(kind, m).into();
    let mean = Rational::new(total.clone(), f.clone());
    let c = &f * &total_sq - &total * &total;
    let variance = Rational::new(c, &f * &f);
    Ok(BitsumStats {
        total,
        total_sq,
        mean,
        variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{self, BigFloat};
    use num_traits::Signed;

    #[test]
    fn solus_series_match_displayed_expansions() {
        let s = bitsum_series(EnsembleKind::Solus, 5);
        let ints = |v: &[BigInt]| -> Vec<i64> {
            v.iter().map(|x| i64::try_from(x.clone()).unwrap()).collect()
        };
        assert_eq!(ints(&s.a)[1..], [1, 2, 5, 10, 20]);
        assert_eq!(ints(&s.b)[1..], [1, 2, 7, 16, 38]);
        assert_eq!(ints(&s.c)[1..], [1, 2, 10, 28, 94]);
        assert_eq!(s.a[0], BigInt::zero());
        assert_eq!(s.b[0], BigInt::zero());
        assert_eq!(s.c[0], BigInt::zero());
    }

    #[test]
    fn multus_series_match_displayed_expansions() {
        let s = bitsum_series(EnsembleKind::Multus, 5);
        let ints = |v: &[BigInt]| -> Vec<i64> {
            v.iter().map(|x| i64::try_from(x.clone()).unwrap()).collect()
        };
        assert_eq!(ints(&s.a)[2..], [2, 7, 16, 34]);
        assert_eq!(ints(&s.b)[2..], [4, 17, 46, 116]);
        assert_eq!(ints(&s.c)[2..], [4, 19, 66, 236]);
    }

    #[test]
    fn variance_identity_holds() {
        for kind in EnsembleKind::ALL {
            let s = bitsum_series(kind, 50);
            for n in 0..=50 {
                assert_eq!(
                    s.c[n],
                    &s.counts[n] * &s.b[n] - &s.a[n] * &s.a[n],
                    "{kind} n={n}"
                );
            }
        }
    }

    #[test]
    fn series_equal_enumeration_totals() {
        for kind in [EnsembleKind::Solus, EnsembleKind::Multus] {
            let s = bitsum_series(kind, 13);
            for n in 0..=13 {
                let stats = empirical_bitsum(kind, n).unwrap();
                assert_eq!(stats.total, s.a[n], "{kind} a_{n}");
                assert_eq!(stats.total_sq, s.b[n], "{kind} b_{n}");
            }
        }
    }

    #[test]
    fn empirical_examples() {
        let s = empirical_bitsum(EnsembleKind::Solus, 3).unwrap();
        assert_eq!(s.total, BigInt::from(5));
        assert_eq!(s.total_sq, BigInt::from(7));
        let m = empirical_bitsum(EnsembleKind::Multus, 3).unwrap();
        assert_eq!(m.total, BigInt::from(7));
        assert_eq!(m.total_sq, BigInt::from(17));
        let u = empirical_bitsum(EnsembleKind::Unconstrained, 2).unwrap();
        assert_eq!(u.total, BigInt::from(4));
    }

    #[test]
    fn density_digits() {
        let sol = bitsum_density(EnsembleKind::Solus);
        assert_eq!(sol.mean_decimal.value, "0.276393202250");
        assert_eq!(sol.variance_decimal.value, "0.089442719100");
        let mul = bitsum_density(EnsembleKind::Multus);
        assert_eq!(&mul.mean_decimal.value[..12], "0.5885044113");
        assert_eq!(&mul.variance_decimal.value[..12], "0.2810976123");
        let unc = bitsum_density(EnsembleKind::Unconstrained);
        assert_eq!(unc.mean, ExactValue::Rational(rat(1, 2)));
        assert_eq!(unc.variance, ExactValue::Rational(rat(1, 4)));
    }

    #[test]
    fn solus_residues_equal_closed_forms() {
        // independent route: dominant-pole residues in Q(φ)
        let phi = QuadElement::phi();
        let z0 = phi.inverse().unwrap();
        let mean = mean_from_residues(
            &Poly::from_ints(&[0, 1]),
            &solus_denominator(),
            &Poly::from_ints(&[1, 1]),
            &z0,
        )
        .unwrap();
        assert_eq!(mean, QuadElement::new(rat(3, 5), rat(-1, 5)));
        let z1 = z0.times(&z0);
        let (num_c, e, p) = bitsum_gf_c_parts(EnsembleKind::Solus);
        let var = variance_from_residues(
            &num_c,
            &e,
            &p,
            &solus_denominator(),
            &Poly::from_ints(&[1, 1]),
            &z0,
            &z1,
        )
        .unwrap();
        assert_eq!(var, QuadElement::new(rat(-1, 25), rat(2, 25)));
    }

    #[test]
    fn multus_limits_match_published_radicals() {
        // (1/3)[2 − ((23+3√69)/1058)^(1/3) + ((−23+3√69)/1058)^(1/3)]
        let prec = 220;
        let s69 = BigFloat::from_i64(69).sqrt(prec);
        let three_s69 = BigFloat::from_i64(3).mul(&s69, prec);
        let den1058 = BigFloat::from_i64(1058);
        let t1 = BigFloat::from_i64(23)
            .add(&three_s69, prec)
            .div(&den1058, prec)
            .cbrt(prec);
        let t2 = three_s69
            .sub(&BigFloat::from_i64(23), prec)
            .div(&den1058, prec)
            .cbrt(prec);
        let mean_radical = BigFloat::from_i64(2)
            .sub(&t1, prec)
            .add(&t2, prec)
            .div(&BigFloat::from_i64(3), prec);

        // (1/1587)(69/2)^(1/3)[(404685+35053√69)^(1/3) + (404685−35053√69)^(1/3)]
        let w = BigFloat::from_i64(35053).mul(&s69, prec);
        let u1 = BigFloat::from_i64(404_685).add(&w, prec).cbrt(prec);
        let u2 = BigFloat::from_i64(404_685).sub(&w, prec).cbrt(prec);
        let var_radical = BigFloat::from_i64(69)
            .div(&BigFloat::from_i64(2), prec)
            .cbrt(prec)
            .mul(&u1.add(&u2, prec), prec)
            .div(&BigFloat::from_i64(1587), prec);

        let d = bitsum_density(EnsembleKind::Multus);
        let tol = rat(1, 1_000_000_000) * rat(1, 1_000_000); // 1e-15
        let (mlo, mhi) = d.mean.enclosure(&tol);
        let mr = mean_radical.to_rational();
        assert!(mr >= &mlo - &tol && mr <= &mhi + &tol, "mean radicals differ");
        let (vlo, vhi) = d.variance.enclosure(&tol);
        let vr = var_radical.to_rational();
        assert!(vr >= &vlo - &tol && vr <= &vhi + &tol, "variance radicals differ");
        let _ = bigfloat::ln2(32); // keep module linked in case of cfg pruning
    }

    #[test]
    fn ordering_claims() {
        let sol = bitsum_density(EnsembleKind::Solus);
        let mul = bitsum_density(EnsembleKind::Multus);
        let half = ExactValue::Rational(rat(1, 2));
        let quart = ExactValue::Rational(rat(1, 4));
        use std::cmp::Ordering::*;
        assert_eq!(mul.mean.cmp_exact(&half), Greater);
        assert_eq!(sol.mean.cmp_exact(&half), Less);
        assert_eq!(mul.variance.cmp_exact(&quart), Greater);
        assert_eq!(sol.variance.cmp_exact(&quart), Less);
    }

    #[test]
    fn fibonacci_word_density_between_mean_and_one_sigma() {
        // density of 1s in the Fibonacci word is 1 − 1/φ = 2 − φ
        let fib_density = QuadElement::new(rat(2, 1), rat(-1, 1));
        let sol_mean = QuadElement::new(rat(3, 5), rat(-1, 5));
        // above the mean:
        assert_eq!(fib_density.minus(&sol_mean).signum(), 1);
        // below mean + sqrt(variance): squares compare as
        // (2−φ − (3−φ)/5)² < (2φ−1)/25  ⟺  66 − 42φ < 0
        let gap = fib_density.minus(&sol_mean);
        let gap_sq = gap.times(&gap);
        let var = QuadElement::new(rat(-1, 25), rat(2, 25));
        assert_eq!(var.minus(&gap_sq).signum(), 1);
    }

    #[test]
    fn series_ratios_approach_density_limits() {
        // moderate n here; the acceptance suite pushes n to 2000
        let n = 600usize;
        for kind in [EnsembleKind::Solus, EnsembleKind::Multus] {
            let s = bitsum_series(kind, n);
            let d = bitsum_density(kind);
            let mean_ratio = Rational::new(s.a[n].clone(), BigInt::from(n) * &s.counts[n]);
            let var_ratio =
                Rational::new(s.c[n].clone(), BigInt::from(n) * &s.counts[n] * &s.counts[n]);
            let tol = rat(2, 1_000);
            let (mlo, mhi) = d.mean.enclosure(&rat(1, 1_000_000_000));
            assert!(
                (&mean_ratio - &mlo).abs() <= tol && (&mean_ratio - &mhi).abs() <= tol,
                "{kind} mean ratio {mean_ratio}"
            );
            let (vlo, vhi) = d.variance.enclosure(&rat(1, 1_000_000_000));
            assert!(
                (&var_ratio - &vlo).abs() <= tol && (&var_ratio - &vhi).abs() <= tol,
                "{kind} variance ratio"
            );
        }
    }
}

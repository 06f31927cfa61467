use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use std::fmt;

use super::{ExactValue, Rational};

/// A decimal rendering of an exact value together with a guaranteed
/// enclosure half-width: |true value − rendered value| ≤ error_bound ≤
/// 10^(−digits).
#[derive(Debug, Clone, PartialEq)]
pub struct DecimalApprox {
    /// Decimal string with exactly `digits` places after the point.
    pub value: String,
    pub digits: u32,
    pub error_bound: Rational,
    rendered: Rational,
}

impl DecimalApprox {
    /// The rendered value as an exact rational (the decimal string, exactly).
    pub fn rendered_rational(&self) -> &Rational {
        &self.rendered
    }

    pub fn to_f64(&self) -> f64 {
        super::rational_to_f64(&self.rendered)
    }

    /// Compact scientific rendering of the error bound, for reports.
    pub fn error_bound_string(&self) -> String {
        let x = super::rational_to_f64(&self.error_bound);
        format!("{x:.2e}")
    }

    /// Render the midpoint of a rational enclosure to `digits` decimal
    /// places.  The reported bound is the enclosure half-width plus the
    /// rounding error, both exact.
    pub fn from_interval(lo: &Rational, hi: &Rational, digits: u32) -> Self {
        assert!(digits >= 1, "digits must be at least 1");
        assert!(lo <= hi);
        let two = Rational::from_integer(2.into());
        let mid = (lo + hi) / &two;
        let scale = BigInt::from(10).pow(digits);
        let scale_rat = Rational::from_integer(scale.clone());
        // round half away from zero
        let scaled = &mid * &scale_rat;
        let (mut q, r) = scaled.numer().div_rem(scaled.denom());
        let twice_rem = r.abs() * BigInt::from(2);
        if twice_rem >= *scaled.denom() {
            if scaled.is_negative() {
                q -= 1;
            } else {
                q += 1;
            }
        }
        let rendered = Rational::new(q.clone(), scale.clone());
        let rounding = (&mid - &rendered).abs();
        let error_bound = (hi - lo) / &two + rounding;
        let neg = q.is_negative();
        let mag = q.abs();
        let (int_part, frac_part) = mag.div_rem(&scale);
        let frac_str = format!("{:0width$}", frac_part, width = digits as usize);
        let value = format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_str);
        DecimalApprox {
            value,
            digits,
            error_bound,
            rendered,
        }
    }

    pub fn from_rational(x: &Rational, digits: u32) -> Self {
        Self::from_interval(x, x, digits)
    }
}

impl fmt::Display for DecimalApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Decimal approximation of any exact value, with enclosure of width at
/// most 10^(−digits).  The algebraic generators are enclosed by verified
/// interval Newton iteration on their minimal polynomials.
pub fn approximate(x: &ExactValue, digits: u32) -> DecimalApprox {
    assert!(digits >= 1, "digits must be at least 1");
    let target = Rational::new(BigInt::one(), BigInt::from(10).pow(digits))
        / Rational::from_integer(2.into());
    let (lo, hi) = x.enclosure(&target);
    DecimalApprox::from_interval(&lo, &hi, digits)
}

// --------------------------------------------------------------- enclosures

/// Verified enclosure of φ = (1+√5)/2, the positive root of x² − x − 1.
///
/// Successive calls with shrinking widths return nested intervals: the
/// iteration below is deterministic and every step only shrinks the
/// current bracket, so stopping later always yields a sub-interval.
pub fn phi_enclosure(width: &Rational) -> (Rational, Rational) {
    newton_enclosure(
        width,
        (super::rat(1, 1), super::rat(2, 1)),
        |x| x * x - x - Rational::one(),
        |lo, hi| {
            let two = Rational::from_integer(2.into());
            (&two * lo - Rational::one(), &two * hi - Rational::one())
        },
    )
}

/// Verified enclosure of ψ = 1.7548776662..., the real root of
/// x³ − 2x² + x − 1.
pub fn psi_enclosure(width: &Rational) -> (Rational, Rational) {
    newton_enclosure(
        width,
        (super::rat(3, 2), super::rat(2, 1)),
        |x| {
            let x2 = x * x;
            &x2 * x - Rational::from_integer(2.into()) * &x2 + x - Rational::one()
        },
        |lo, hi| {
            // f' = 3x² − 4x + 1 is increasing for x ≥ 2/3
            let d = |x: &Rational| {
                Rational::from_integer(3.into()) * x * x
                    - Rational::from_integer(4.into()) * x
                    + Rational::one()
            };
            (d(lo), d(hi))
        },
    )
}

/// Interval Newton iteration for a simple root with positive derivative
/// on the bracket.  Endpoints are rounded outward on a dyadic grid whose
/// precision grows on a fixed schedule, which both bounds coefficient
/// growth and makes enclosures nested across calls.
fn newton_enclosure(
    width: &Rational,
    start: (Rational, Rational),
    f: impl Fn(&Rational) -> Rational,
    df_bounds: impl Fn(&Rational, &Rational) -> (Rational, Rational),
) -> (Rational, Rational) {
    let (mut lo, mut hi) = start;
    debug_assert!(f(&lo).is_negative() && f(&hi).is_positive());
    let mut grid: u64 = 64;
    while &(&hi - &lo) > width {
        // bisection step keeps guaranteed progress
        let mid = round_dyadic(&((&lo + &hi) / Rational::from_integer(2.into())), grid, false);
        if mid > lo && mid < hi {
            if f(&mid).is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton contraction around the midpoint
        let m = round_dyadic(&((&lo + &hi) / Rational::from_integer(2.into())), grid, false);
        let fm = f(&m);
        let (dlo, dhi) = df_bounds(&lo, &hi);
        debug_assert!(dlo.is_positive());
        let (n_lo, n_hi) = if fm.is_negative() {
            (&m - &fm / &dhi, &m - &fm / &dlo)
        } else {
            (&m - &fm / &dlo, &m - &fm / &dhi)
        };
        if n_lo > lo {
            lo = round_dyadic(&n_lo, grid, false);
        }
        if n_hi < hi {
            hi = round_dyadic(&n_hi, grid, true);
        }
        debug_assert!(lo < hi);
        grid += 8;
    }
    (lo, hi)
}

/// Round to a multiple of 2^(−bits); `up` selects the rounding direction.
fn round_dyadic(x: &Rational, bits: u64, up: bool) -> Rational {
    let scaled_num = x.numer() << bits;
    let den = x.denom();
    let q = if up {
        scaled_num.div_ceil(den)
    } else {
        scaled_num.div_floor(den)
    };
    Rational::new(q, BigInt::one() << bits)
}

//! Exact and high-precision statistics of the Cantor, Cantor-solus and
//! Cantor-multus distributions over constrained bitstring ensembles.
//!
//! For a parameter 0 < θ ≤ 1/2 the value map
//!
//! F(ω₁ω₂⋯ω_m) = (θ̄/θ) Σᵢ ωᵢ θ^i,   θ̄ = 1 − θ,
//!
//! sends a uniform random bitstring to [0, 1]; with unconstrained strings
//! the limit law of F is the Cantor distribution (the classical Cantor
//! measure at θ = 1/3).  Restricting to *solus* strings (no adjacent 1s,
//! Fibonacci-counted) or *multus* strings (no isolated 1s, counted by the
//! cubic "second upper Fibonacci" recurrence) gives the Cantor-solus and
//! Cantor-multus distributions.
//!
//! The crate computes, exactly where a closed form exists:
//!
//! * moments μ_n of all three laws ([`moments`]), in Q, Q(φ) and Q(ψ);
//! * expected minima ξ_n and maxima η_n of n independent draws
//!   ([`orderstats`]), with a seeded Monte Carlo validator;
//! * bitsum totals, variances and density limits ([`bitsums`]);
//! * expected longest runs of equal bits ([`runs`]);
//! * the asymptotic constants attached to these laws — 0.733874...,
//!   1.9967049717..., 3.3646507281..., 0.616005... ([`asymptotics`]);
//! * the supporting machinery: exact rationals and the number fields
//!   Q(φ), Q(ψ) ([`exact`]), rational generating functions ([`genfunc`]),
//!   ensemble enumeration and exactly-uniform sampling ([`ensembles`]),
//!   and arbitrary-precision floats ([`bigfloat`]).
//!
//! Every analytic quantity with a finite-length meaning is
//! cross-checked against brute-force enumeration by the [`verify`]
//! suite, which the `cantor verify` CLI subcommand and the acceptance
//! tests both run.
//!
//! ```
//! use cantor::exact::rat;
//! use cantor::moments::cantor_moments;
//!
//! let table = cantor_moments(&rat(1, 3), 2).unwrap();
//! assert_eq!(table.values[1].to_string(), "1/2");
//! assert_eq!(table.values[2].to_string(), "3/8");
//! ```
//!
//! The `book/` directory of the repository walks through the theory; its
//! code snippets are doc-tested against this crate.

pub mod asymptotics;
pub mod bigfloat;
pub mod bitsums;
pub mod ensembles;
pub mod error;
pub mod exact;
pub mod genfunc;
pub mod moments;
pub mod orderstats;
pub mod runs;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{CubicElement, DecimalApprox, ExactValue, QuadElement, Rational};

pub use ensembles::{BitString, DistributionParams, EnsembleKind};

#[cfg(doctest)]
mod book {
    //! The guide chapters double as doctests: every fenced Rust block in
    //! `book/src/*.md` compiles and runs against this crate on
    //! `cargo test --doc`.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(exact_arithmetic, "../../../book/src/exact-arithmetic.md");
    chapter!(generating_functions, "../../../book/src/generating-functions.md");
    chapter!(ensembles, "../../../book/src/ensembles.md");
    chapter!(moments, "../../../book/src/moments.md");
    chapter!(order_statistics, "../../../book/src/order-statistics.md");
    chapter!(asymptotic_constants, "../../../book/src/asymptotic-constants.md");
    chapter!(bitsums, "../../../book/src/bitsums.md");
    chapter!(longest_runs, "../../../book/src/longest-runs.md");
    chapter!(cli, "../../../book/src/cli.md");
}

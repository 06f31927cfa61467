//! `cantor` — exact and high-precision statistics of the Cantor,
//! Cantor-solus and Cantor-multus distributions.
//!
//! Every subcommand writes one machine-readable table to stdout (CSV by
//! default, JSON with `--format json`); diagnostics, method notes and
//! timing go to stderr.  Output is byte-identical across runs for
//! identical arguments, including `--seed` and any `--jobs` setting.
//!
//! Exit codes: 0 success, 2 usage/parameter errors, 3 infeasible-size
//! guard, 1 anything else (including failed verification).

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cantor::asymptotics::{self, constant_by_name};
use cantor::bitsums::{bitsum_density, bitsum_series, empirical_bitsum};
use cantor::ensembles::{
    count, enumerate, f_value, fibonacci_word, DistributionParams, EnsembleKind, UniformSampler,
};
use cantor::exact::{approximate, parse_rational, rat, DecimalApprox, ExactValue, Rational};
use cantor::moments::{empirical_moments, moments};
use cantor::orderstats::{
    cantor_order_stats, monte_carlo_order_stat_parallel, solus_order_stats, Extreme,
    OrderStatTable,
};
use cantor::runs::{empirical_longest_run, expected_longest_run, no_run_gf};
use cantor::verify::{all_passed, oracle_suite};
use cantor::Error;

#[derive(Parser)]
#[command(
    name = "cantor",
    version,
    about = "Moments, order statistics, bitsums and longest runs of the Cantor, Cantor-solus and Cantor-multus distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Unconstrained,
    Solus,
    Multus,
}

impl From<Kind> for EnsembleKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Unconstrained => EnsembleKind::Unconstrained,
            Kind::Solus => EnsembleKind::Solus,
            Kind::Multus => EnsembleKind::Multus,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Distribution parameter as an exact fraction p/q in (0, 1/2]
    #[arg(long, default_value = "1/3")]
    theta: String,
    /// Decimal places for rendered values
    #[arg(long, default_value_t = 10)]
    digits: u32,
    /// Output format on stdout
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Limit moments μ_n, exact per ensemble (or finite-length with --empirical)
    Moments {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Unconstrained)]
        kind: Kind,
        /// Highest moment index
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Exact finite-length moments at this string length instead
        #[arg(long)]
        empirical: Option<usize>,
    },
    /// Expected minima ξ_n and maxima η_n of n independent draws
    OrderStats {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Unconstrained)]
        kind: Kind,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Monte Carlo estimate instead of the exact recurrences
        #[arg(long)]
        monte_carlo: bool,
        /// Which extremum to estimate (with --monte-carlo)
        #[arg(long, default_value = "min")]
        which: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Prefix length of the finite-string draws
        #[arg(long, default_value_t = 40)]
        prefix_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for the seed-partitioned sampler
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Bitsum series a_n, b_n, c_n; density limits with --density
    Bitsums {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Solus)]
        kind: Kind,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Closed-form density mean/variance limits instead of series
        #[arg(long)]
        density: bool,
        /// Exhaustive totals at this length instead
        #[arg(long)]
        empirical: Option<usize>,
    },
    /// Expected longest runs E(R_{n,bit})
    Runs {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Unconstrained)]
        kind: Kind,
        /// Which bit's runs (solus supports only 0)
        #[arg(long, default_value_t = 1)]
        bit: u8,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Coefficients of the no-run-of-k generating function instead
        #[arg(long)]
        no_run_k: Option<usize>,
        /// Exhaustive average at this length instead
        #[arg(long)]
        empirical: Option<usize>,
    },
    /// Asymptotic and special-function constants
    Constants {
        #[command(flatten)]
        common: CommonArgs,
        /// cantor-moment | cantor-min | cantor-moment-sum | solus-moment |
        /// phi | psi | euler-gamma | gamma | zeta | run-asymptotic
        #[arg(long)]
        name: String,
        /// Argument for gamma/zeta, as a fraction p/q
        #[arg(long)]
        s: Option<String>,
        /// Argument for run-asymptotic
        #[arg(long)]
        n: Option<u64>,
    },
    /// Uniform random members (exact suffix-count weighting)
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Solus)]
        kind: Kind,
        /// String length
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every length-m member with its F value
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Solus)]
        kind: Kind,
        #[arg(long)]
        m: usize,
    },
    /// Prefix of the infinite Fibonacci word with its 1-density
    FibWord {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
    },
    /// Cross-route oracle verification suite
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value = "oracle")]
        suite: String,
        /// Exhaustive-enumeration length bound
        #[arg(long, default_value_t = 16)]
        max_len: usize,
    },
}

#[derive(serde::Serialize)]
struct Row {
    index: String,
    exact: String,
    decimal: String,
    error_bound: String,
}

#[derive(serde::Serialize)]
struct Metadata {
    version: &'static str,
    seed: Option<u64>,
}

#[derive(serde::Serialize)]
struct OutputRecord {
    command: String,
    parameters: BTreeMap<String, String>,
    rows: Vec<Row>,
    metadata: Metadata,
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION"),
                seed: None,
            },
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn push_exact(&mut self, index: impl ToString, value: &ExactValue, digits: u32) {
        let d = approximate(value, digits);
        self.rows.push(Row {
            index: index.to_string(),
            exact: value.to_string(),
            decimal: d.value.clone(),
            error_bound: d.error_bound_string(),
        });
    }

    fn push_decimal(&mut self, index: impl ToString, exact: impl ToString, d: &DecimalApprox) {
        self.rows.push(Row {
            index: index.to_string(),
            exact: exact.to_string(),
            decimal: d.value.clone(),
            error_bound: d.error_bound_string(),
        });
    }

    fn emit(&self, format: Format) {
        match format {
            Format::Csv => {
                println!("index,exact,decimal,error_bound");
                for r in &self.rows {
                    println!("{},{},{},{}", r.index, r.exact, r.decimal, r.error_bound);
                }
            }
            Format::Json => {
                println!("{}", serde_json::to_string_pretty(self).expect("serializable"));
            }
        }
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        eprintln!("# {} {}", self.command, params.join(" "));
    }
}

fn parse_theta(s: &str) -> Result<Rational, Error> {
    let theta = parse_rational(s)?;
    // validated again by the params constructor; fail early with context
    DistributionParams::new(theta.clone())?;
    Ok(theta)
}

fn order_stat_rows(record: &mut OutputRecord, table: &OrderStatTable, digits: u32) {
    for n in 1..=table.n_max() {
        record.push_exact(format!("xi[{n}]"), table.xi(n), digits);
    }
    for n in 1..=table.n_max() {
        record.push_exact(format!("eta[{n}]"), table.eta(n), digits);
    }
}

fn f64_to_exact_string(x: f64) -> String {
    // f64 values are dyadic rationals; this parses back exactly
    let r = Rational::from_float(x).unwrap_or_else(|| rat(0, 1));
    r.to_string()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Moments {
            common,
            kind,
            n,
            empirical,
        } => {
            let theta = parse_theta(&common.theta)?;
            let kind: EnsembleKind = kind.into();
            let mut record = OutputRecord::new("moments");
            record
                .param("kind", kind)
                .param("theta", &theta)
                .param("n", n);
            match empirical {
                Some(m) => {
                    record.param("empirical_len", m);
                    for (i, v) in empirical_moments(kind, &theta, m, n)?.iter().enumerate() {
                        record.push_exact(
                            format!("mu[{i}]"),
                            &ExactValue::Rational(v.clone()),
                            common.digits,
                        );
                    }
                }
                None => {
                    let table = moments(kind, &theta, n)?;
                    for (i, v) in table.values.iter().enumerate() {
                        record.push_exact(format!("mu[{i}]"), v, common.digits);
                    }
                }
            }
            record.emit(common.format);
        }
        Command::OrderStats {
            common,
            kind,
            n,
            monte_carlo,
            which,
            samples,
            prefix_len,
            seed,
            jobs,
        } => {
            let theta = parse_theta(&common.theta)?;
            let kind: EnsembleKind = kind.into();
            let mut record = OutputRecord::new("order-stats");
            record
                .param("kind", kind)
                .param("theta", &theta)
                .param("n", n);
            if monte_carlo {
                let which = Extreme::from_str(&which)?;
                record.metadata.seed = Some(seed);
                record
                    .param("samples", samples)
                    .param("prefix_len", prefix_len)
                    .param("which", if which == Extreme::Min { "min" } else { "max" })
                    .param("seed", seed);
                let est = monte_carlo_order_stat_parallel(
                    kind, &theta, n, which, samples, prefix_len, seed, jobs,
                )?;
                record.rows.push(Row {
                    index: format!(
                        "{}[{n}]",
                        if which == Extreme::Min { "xi" } else { "eta" }
                    ),
                    exact: f64_to_exact_string(est.mean),
                    decimal: format!("{:.10}", est.mean),
                    error_bound: format!("{:.2e}", est.std_error),
                });
            } else {
                let table = match kind {
                    EnsembleKind::Unconstrained => cantor_order_stats(&theta, n)?,
                    EnsembleKind::Solus => solus_order_stats(&theta, n)?,
                    EnsembleKind::Multus => {
                        return Err(Error::OutOfDomain(
                            "no closed form is known for multus order statistics; \
                             use --monte-carlo"
                                .into(),
                        ))
                    }
                };
                order_stat_rows(&mut record, &table, common.digits);
            }
            record.emit(common.format);
        }
        Command::Bitsums {
            common,
            kind,
            n,
            density,
            empirical,
        } => {
            let kind: EnsembleKind = kind.into();
            let mut record = OutputRecord::new("bitsums");
            record.param("kind", kind);
            if density {
                let d = bitsum_density(kind);
                record.push_exact("mean", &d.mean, common.digits);
                record.push_exact("variance", &d.variance, common.digits);
            } else if let Some(m) = empirical {
                record.param("empirical_len", m);
                let stats = empirical_bitsum(kind, m)?;
                record.push_exact(
                    "total",
                    &ExactValue::Rational(Rational::from_integer(stats.total)),
                    common.digits,
                );
                record.push_exact(
                    "total_sq",
                    &ExactValue::Rational(Rational::from_integer(stats.total_sq)),
                    common.digits,
                );
                record.push_exact("mean", &ExactValue::Rational(stats.mean), common.digits);
                record.push_exact(
                    "variance",
                    &ExactValue::Rational(stats.variance),
                    common.digits,
                );
            } else {
                record.param("n", n);
                let s = bitsum_series(kind, n);
                for (label, seq) in [("a", &s.a), ("b", &s.b), ("c", &s.c), ("count", &s.counts)]
                {
                    for (i, v) in seq.iter().enumerate() {
                        record.push_exact(
                            format!("{label}[{i}]"),
                            &ExactValue::Rational(Rational::from_integer(v.clone())),
                            common.digits,
                        );
                    }
                }
            }
            record.emit(common.format);
        }
        Command::Runs {
            common,
            kind,
            bit,
            n,
            no_run_k,
            empirical,
        } => {
            let kind: EnsembleKind = kind.into();
            let mut record = OutputRecord::new("runs");
            record.param("kind", kind).param("bit", bit);
            if let Some(k) = no_run_k {
                record.param("no_run_k", k).param("n", n);
                let series = no_run_gf(kind, bit, k)?.coefficients(n);
                for (i, c) in series.coeffs().iter().enumerate() {
                    record.push_exact(
                        format!("count[{i}]"),
                        &ExactValue::Rational(c.clone()),
                        common.digits,
                    );
                }
            } else if let Some(m) = empirical {
                record.param("empirical_len", m);
                let e = empirical_longest_run(kind, bit, m)?;
                record.push_exact(format!("E[{m}]"), &ExactValue::Rational(e), common.digits);
            } else {
                record.param("n", n);
                let table = expected_longest_run(kind, bit, n)?;
                for (i, num) in table.numerators.iter().enumerate() {
                    record.push_exact(
                        format!("num[{i}]"),
                        &ExactValue::Rational(Rational::from_integer(num.clone())),
                        1,
                    );
                }
                for (i, e) in table.expectations.iter().enumerate() {
                    record.push_exact(
                        format!("E[{i}]"),
                        &ExactValue::Rational(e.clone()),
                        common.digits,
                    );
                }
            }
            record.emit(common.format);
        }
        Command::Constants { common, name, s, n } => {
            let mut record = OutputRecord::new("constants");
            record.param("name", &name).param("digits", common.digits);
            match name.as_str() {
                "gamma" | "zeta" => {
                    let s_str = s.ok_or_else(|| {
                        Error::OutOfDomain(format!("--s is required for {name}"))
                    })?;
                    let arg = parse_rational(&s_str)?;
                    record.param("s", &arg);
                    let sf = cantor::bigfloat::BigFloat::from_rational(&arg, 220);
                    let d = if name == "gamma" {
                        asymptotics::gamma_fn(&sf, common.digits)?
                    } else {
                        asymptotics::zeta_fn(&sf, common.digits)?
                    };
                    record.push_decimal(&name, d.rendered_rational(), &d);
                }
                "run-asymptotic" => {
                    let n = n.ok_or_else(|| {
                        Error::OutOfDomain("--n is required for run-asymptotic".into())
                    })?;
                    record.param("n", n);
                    let d = asymptotics::unconstrained_run_asymptotic(n, common.digits)?;
                    record.push_decimal(&name, d.rendered_rational(), &d);
                }
                _ => {
                    let c = constant_by_name(&name, common.digits)?;
                    let exact = match name.as_str() {
                        "phi" => "phi".to_string(),
                        "psi" => "psi".to_string(),
                        _ => c.value.rendered_rational().to_string(),
                    };
                    record.push_decimal(&c.name, exact, &c.value);
                    eprintln!("# method: {}; {}", c.method, c.parameters);
                }
            }
            record.emit(common.format);
        }
        Command::Sample {
            common,
            kind,
            m,
            count,
            seed,
        } => {
            let theta = parse_theta(&common.theta)?;
            let params = DistributionParams::new(theta.clone())?;
            let kind: EnsembleKind = kind.into();
            let mut record = OutputRecord::new("sample");
            record.metadata.seed = Some(seed);
            record
                .param("kind", kind)
                .param("theta", &theta)
                .param("m", m)
                .param("count", count)
                .param("seed", seed);
            let sampler = UniformSampler::new(kind, m);
            use cantor::ensembles::seeded_rng;
            let mut rng = seeded_rng(seed);
            for i in 0..count {
                let omega = sampler.sample(&mut rng);
                let f = f_value(&params, &omega);
                record.push_exact(
                    format!("{i}:{omega}"),
                    &ExactValue::Rational(f),
                    common.digits,
                );
            }
            record.emit(common.format);
        }
        Command::Enumerate { common, kind, m } => {
            let theta = parse_theta(&common.theta)?;
            let params = DistributionParams::new(theta.clone())?;
            let kind: EnsembleKind = kind.into();
            let mut record = OutputRecord::new("enumerate");
            record
                .param("kind", kind)
                .param("theta", &theta)
                .param("m", m)
                .param("count", count(kind, m));
            for (i, omega) in enumerate(kind, m)?.enumerate() {
                let f = f_value(&params, &omega);
                record.push_exact(
                    format!("{i}:{omega}"),
                    &ExactValue::Rational(f),
                    common.digits,
                );
            }
            record.emit(common.format);
        }
        Command::FibWord { common, n } => {
            let mut record = OutputRecord::new("fib-word");
            record.param("n", n);
            let w = fibonacci_word(n);
            let ones = w.count_ones();
            let density = rat(ones as i64, n as i64);
            record.param("solus", w.is_solus());
            record.push_exact(
                format!("density:{w}"),
                &ExactValue::Rational(density),
                common.digits,
            );
            record.emit(common.format);
        }
        Command::Verify {
            common,
            suite,
            max_len,
        } => {
            if suite != "oracle" {
                return Err(Error::Parse {
                    input: suite,
                    expected: "suite name (oracle)",
                });
            }
            let theta = parse_theta(&common.theta)?;
            let mut record = OutputRecord::new("verify");
            record
                .param("suite", &suite)
                .param("theta", &theta)
                .param("max_len", max_len);
            let results = oracle_suite(max_len, &theta)?;
            let ok = all_passed(&results);
            for r in &results {
                record.rows.push(Row {
                    index: r.name.clone(),
                    exact: if r.passed { "1".into() } else { "0".into() },
                    decimal: if r.passed { "pass".into() } else { "FAIL".into() },
                    error_bound: r.detail.clone(),
                });
            }
            record.emit(common.format);
            if !ok {
                eprintln!("error: verification failed");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InfeasibleSize { .. } => 3,
        Error::Parse { .. }
        | Error::ThetaOutOfRange(_)
        | Error::UnsupportedRunPair { .. }
        | Error::OutOfDomain(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(cli);
    eprintln!("# elapsed_ms={}", started.elapsed().as_millis());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

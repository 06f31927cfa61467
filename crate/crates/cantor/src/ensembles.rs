//! The three bitstring ensembles and their basic machinery: membership,
//! counting, exhaustive enumeration, exactly-uniform sampling, the value
//! map F, and the Fibonacci word.
//!
//! A string is *solus* when every 1 is isolated (no "11" factor) and
//! *multus* when every 1 has a neighbouring 1 (every maximal 1-run has
//! length at least 2).  Length-m counts are 2^m, the Fibonacci number
//! f_{m+2}, and the second upper Fibonacci number f_{m+2} with
//! f_k = 2f_{k−1} − f_{k−2} + f_{k−3}.
//!
//! Solus strings decompose as Ω = ε + 1 + {0, 10}×Ω.  For multus strings
//! the analogous flat decomposition over {0, 11, 1110} is not a partition
//! (it cannot produce trailing odd runs without also producing isolated
//! 1s), so enumeration and sampling here run over the equivalent
//! three-state automaton of the sound decomposition
//! Ω = ε + 0·Ω + 1^j (ε + 0·Ω), j ≥ 2.
//!
//! All three ensembles are regular languages; counting, enumeration and
//! sampling share one automaton table per ensemble.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Maximum number of strings `enumerate` will agree to stream.
pub const ENUMERATION_GUARD: u64 = 100_000_000;

/// Which constraint class an ensemble uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Unconstrained,
    Solus,
    Multus,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 3] = [
        EnsembleKind::Unconstrained,
        EnsembleKind::Solus,
        EnsembleKind::Multus,
    ];
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EnsembleKind::Unconstrained => "unconstrained",
            EnsembleKind::Solus => "solus",
            EnsembleKind::Multus => "multus",
        };
        write!(f, "{s}")
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unconstrained" | "cantor" => Ok(EnsembleKind::Unconstrained),
            "solus" => Ok(EnsembleKind::Solus),
            "multus" => Ok(EnsembleKind::Multus),
            _ => Err(Error::Parse {
                input: s.to_string(),
                expected: "ensemble kind (unconstrained|solus|multus)",
            }),
        }
    }
}

/// A finite bitstring, packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    blocks: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            blocks: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::with_capacity(bits.len());
        for &b in bits {
            s.push(b);
        }
        s
    }

    pub fn push(&mut self, bit: bool) {
        let word = self.len / 64;
        if word == self.blocks.len() {
            self.blocks.push(0);
        }
        if bit {
            self.blocks[word] |= 1u64 << (self.len % 64);
        }
        self.len += 1;
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Length of the longest run of `bit`.
    pub fn longest_run(&self, bit: bool) -> usize {
        let mut best = 0usize;
        let mut cur = 0usize;
        for b in self.iter() {
            if b == bit {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        best
    }

    /// No "11" factor.
    pub fn is_solus(&self) -> bool {
        let mut prev = false;
        for b in self.iter() {
            if b && prev {
                return false;
            }
            prev = b;
        }
        true
    }

    /// Every maximal 1-run has length at least 2.
    pub fn is_multus(&self) -> bool {
        let mut run = 0usize;
        for b in self.iter() {
            if b {
                run += 1;
            } else {
                if run == 1 {
                    return false;
                }
                run = 0;
            }
        }
        run != 1
    }

    pub fn is_member(&self, kind: EnsembleKind) -> bool {
        match kind {
            EnsembleKind::Unconstrained => true,
            EnsembleKind::Solus => self.is_solus(),
            EnsembleKind::Multus => self.is_multus(),
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => {
                    return Err(Error::Parse {
                        input: s.to_string(),
                        expected: "bitstring over {0,1}",
                    })
                }
            }
        }
        Ok(out)
    }
}

/// θ and θ̄ = 1 − θ, with 0 < θ ≤ 1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionParams {
    theta: Rational,
    theta_bar: Rational,
}

impl DistributionParams {
    pub fn new(theta: Rational) -> Result<Self> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        if !theta.is_positive() || theta > half {
            return Err(Error::ThetaOutOfRange(theta.to_string()));
        }
        let theta_bar = Rational::one() - &theta;
        Ok(DistributionParams { theta, theta_bar })
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn theta_bar(&self) -> &Rational {
        &self.theta_bar
    }
}

// ------------------------------------------------------------- automata

pub(crate) const NO_EDGE: i8 = -1;

pub(crate) struct Automaton {
    pub(crate) states: usize,
    pub(crate) trans: [[i8; 2]; 3],
    pub(crate) accept: [bool; 3],
}

static UNCONSTRAINED: Automaton = Automaton {
    states: 1,
    trans: [[0, 0], [NO_EDGE; 2], [NO_EDGE; 2]],
    accept: [true, false, false],
};

// state 0: last bit was not 1; state 1: last bit was 1
static SOLUS: Automaton = Automaton {
    states: 2,
    trans: [[0, 1], [0, NO_EDGE], [NO_EDGE; 2]],
    accept: [true, true, false],
};

// state 0: safe; state 1: open single 1; state 2: inside a run of >= 2
static MULTUS: Automaton = Automaton {
    states: 3,
    trans: [[0, 1], [NO_EDGE, 2], [0, 2]],
    accept: [true, false, true],
};

pub(crate) fn automaton(kind: EnsembleKind) -> &'static Automaton {
    match kind {
        EnsembleKind::Unconstrained => &UNCONSTRAINED,
        EnsembleKind::Solus => &SOLUS,
        EnsembleKind::Multus => &MULTUS,
    }
}

/// Number of length-m members, from the defining recurrences:
/// 2^m, Fibonacci f_{m+2}, and second upper Fibonacci f_{m+2}.
pub fn count(kind: EnsembleKind, m: usize) -> BigUint {
    match kind {
        EnsembleKind::Unconstrained => BigUint::one() << m,
        EnsembleKind::Solus => {
            // f_{m+2}, f_0 = 0, f_1 = 1
            let (mut a, mut b) = (BigUint::zero(), BigUint::one());
            for _ in 0..m + 1 {
                let next = &a + &b;
                a = b;
                b = next;
            }
            b
        }
        EnsembleKind::Multus => {
            // f_{m+2}, f_k = 2f_{k-1} - f_{k-2} + f_{k-3}, f_0 = 0, f_1 = f_2 = 1
            let (mut a, mut b, mut c) = (BigInt::zero(), BigInt::one(), BigInt::one());
            for _ in 0..m {
                let next = BigInt::from(2) * &c - &b + &a;
                a = b;
                b = c;
                c = next;
            }
            c.to_biguint().expect("second upper Fibonacci is positive")
        }
    }
}

/// Counts from the automaton transfer matrix; an independent route used
/// by the verification suite to check `count`.
pub fn count_by_automaton(kind: EnsembleKind, m: usize) -> BigUint {
    let dfa = automaton(kind);
    let mut v: Vec<BigUint> = (0..dfa.states)
        .map(|s| {
            if dfa.accept[s] {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    for _ in 0..m {
        let mut next = vec![BigUint::zero(); dfa.states];
        for (s, slot) in next.iter_mut().enumerate() {
            for b in 0..2 {
                let t = dfa.trans[s][b];
                if t != NO_EDGE {
                    *slot += &v[t as usize];
                }
            }
        }
        v = next;
    }
    v[0].clone()
}

/// Streaming enumeration of every length-m member, in lexicographic
/// order, by depth-first descent of the ensemble automaton.  Work per
/// emitted string is linear in m.
pub struct Enumerator {
    m: usize,
    dfa: &'static Automaton,
    stack: Vec<(u8, u8)>, // (state, next bit to try)
    prefix: Vec<bool>,
}

impl Iterator for Enumerator {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            if depth == self.m {
                let (state, _) = *self.stack.last().unwrap();
                let emit = self.dfa.accept[state as usize];
                let result = emit.then(|| BitString::from_bools(&self.prefix));
                self.pop_frame();
                if let Some(r) = result {
                    return Some(r);
                }
                continue;
            }
            let (state, next_bit) = *self.stack.last().unwrap();
            let mut advanced = false;
            for b in next_bit..2 {
                let t = self.dfa.trans[state as usize][b as usize];
                if t != NO_EDGE {
                    self.stack.last_mut().unwrap().1 = b + 1;
                    self.stack.push((t as u8, 0));
                    self.prefix.push(b == 1);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                self.pop_frame();
            }
        }
    }
}

impl Enumerator {
    fn pop_frame(&mut self) {
        self.stack.pop();
        if !self.stack.is_empty() {
            self.prefix.pop();
        }
    }
}

/// Enumerate all length-m members of the ensemble.
///
/// Guarded: refuses when the member count exceeds [`ENUMERATION_GUARD`].
pub fn enumerate(kind: EnsembleKind, m: usize) -> Result<Enumerator> {
    let total = count(kind, m);
    if total > BigUint::from(ENUMERATION_GUARD) {
        return Err(Error::InfeasibleSize {
            kind,
            len: m,
            count: total.to_string(),
            guard: ENUMERATION_GUARD,
        });
    }
    Ok(Enumerator {
        m,
        dfa: automaton(kind),
        stack: vec![(0, 0)],
        prefix: Vec::with_capacity(m),
    })
}

/// The value map F(ω₁ω₂⋯ω_m) = (θ̄/θ) Σ ωᵢ θ^i, evaluated exactly.
///
/// Satisfies F(ε) = 0, F(0ω) = θF(ω) and F(1ω) = θ̄ + θF(ω).
pub fn f_value(params: &DistributionParams, omega: &BitString) -> Rational {
    let mut acc = Rational::zero();
    for i in (0..omega.len()).rev() {
        acc = params.theta() * acc;
        if omega.get(i) {
            acc += params.theta_bar();
        }
    }
    acc
}

/// F as f64, for Monte Carlo estimation.
pub fn f_value_f64(theta: f64, omega: &BitString) -> f64 {
    let theta_bar = 1.0 - theta;
    let mut acc = 0.0;
    for i in (0..omega.len()).rev() {
        acc *= theta;
        if omega.get(i) {
            acc += theta_bar;
        }
    }
    acc
}

/// Exactly uniform sampler over the length-m members of an ensemble.
///
/// Bits are chosen sequentially, weighted by the exact suffix-completion
/// counts, so uniformity is a counting identity rather than a float
/// approximation.
pub struct UniformSampler {
    m: usize,
    dfa: &'static Automaton,
    // counts[r][s] = number of length-r completions from state s
    counts: Vec<Vec<BigUint>>,
}

impl UniformSampler {
    pub fn new(kind: EnsembleKind, m: usize) -> Self {
        let dfa = automaton(kind);
        let mut counts = Vec::with_capacity(m + 1);
        counts.push(
            (0..dfa.states)
                .map(|s| {
                    if dfa.accept[s] {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    }
                })
                .collect::<Vec<_>>(),
        );
        for r in 1..=m {
            let prev = &counts[r - 1];
            let row = (0..dfa.states)
                .map(|s| {
                    let mut acc = BigUint::zero();
                    for b in 0..2 {
                        let t = dfa.trans[s][b];
                        if t != NO_EDGE {
                            acc += &prev[t as usize];
                        }
                    }
                    acc
                })
                .collect();
            counts.push(row);
        }
        UniformSampler { m, dfa, counts }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        let mut out = BitString::with_capacity(self.m);
        let mut state = 0usize;
        for pos in 0..self.m {
            let remaining = self.m - pos - 1;
            let weight = |b: usize| -> BigUint {
                let t = self.dfa.trans[state][b];
                if t == NO_EDGE {
                    BigUint::zero()
                } else {
                    self.counts[remaining][t as usize].clone()
                }
            };
            let c0 = weight(0);
            let c1 = weight(1);
            let total = &c0 + &c1;
            debug_assert!(!total.is_zero(), "sampler entered a dead state");
            let draw = gen_biguint_below(rng, &total);
            let bit = draw >= c0;
            out.push(bit);
            state = self.dfa.trans[state][bit as usize] as usize;
        }
        out
    }
}

/// One uniform draw, deterministic in the seed.
pub fn sample_uniform(kind: EnsembleKind, m: usize, seed: u64) -> BitString {
    let sampler = UniformSampler::new(kind, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampler.sample(&mut rng)
}

/// The deterministic RNG used throughout the crate, seeded.
pub fn seeded_rng(seed: u64) -> impl Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in [0, n) by rejection from fixed-width random bits.
fn gen_biguint_below<R: Rng + ?Sized>(rng: &mut R, n: &BigUint) -> BigUint {
    assert!(!n.is_zero());
    if n.bits() <= 64 {
        // fast path: exact via u64 rejection inside rand
        let bound = n.iter_u64_digits().next().unwrap_or(0);
        return BigUint::from(rng.gen_range(0..bound));
    }
    let bits = n.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
        *digits.last_mut().unwrap() &= top_mask;
        let candidate = BigUint::from_slice(&digits);
        if &candidate < n {
            return candidate;
        }
    }
}

/// Length-n prefix of the infinite Fibonacci word (substitution 0 ↦ 01,
/// 1 ↦ 0, starting from 0).  The result is always solus and its density
/// of 1s tends to 1 − 1/φ.
pub fn fibonacci_word(n: usize) -> BitString {
    assert!(n >= 1, "fibonacci_word needs n >= 1");
    let mut w = vec![false];
    while w.len() < n {
        let mut next = Vec::with_capacity(w.len() * 2);
        for &b in &w {
            if b {
                next.push(false);
            } else {
                next.push(false);
                next.push(true);
            }
        }
        w = next;
    }
    w.truncate(n);
    BitString::from_bools(&w)
}

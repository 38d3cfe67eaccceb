//! Shuffle models: exact closed-form transition laws, exhaustive
//! brute-force oracles over sign and digit patterns, and seeded Monte Carlo
//! simulators. The simulators step the same left walk that the transition
//! matrices describe, so empirical laws can be compared cell-by-cell
//! against exact rows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::composition::{compositions, Composition};
use crate::error::Error;
use crate::permutation::{standardize_ints, Permutation};
use crate::rational::{binomial, Rational};

/// Exhaustive oracles enumerate `2^n` or `a^n` patterns; refuse beyond this.
pub const BRUTE_FORCE_CAP: usize = 6;

/// Counter-based generator: output `i` is a bijective mix of the seed and
/// the counter, so identical seeds reproduce identical streams and
/// substreams can be split off without coordination.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    counter: u64,
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, counter: 0 }
    }

    /// Independent substream, e.g. one per Monte Carlo trial.
    pub fn derive(&self, stream: u64) -> RngStream {
        RngStream::new(mix(self.seed ^ mix(stream.wrapping_add(0xA076_1D64_78BD_642F))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self
            .seed
            .wrapping_add(self.counter.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    }

    /// Uniform draw from `0..bound` by rejection; exact.
    pub fn uniform(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }

    /// Draw against a precomputed [`categorical_thresholds`] table.
    pub fn categorical(&mut self, thresholds: &[u128]) -> usize {
        let x = self.next_u64() as u128;
        thresholds
            .iter()
            .position(|t| x < *t)
            .expect("final threshold covers the range")
    }
}

/// Cumulative thresholds `floor(sum r_j * 2^64)` for drawing from a rational
/// probability vector with one `u64`; the deviation from exactness is below
/// `2^-64` per cell.
pub fn categorical_thresholds(probs: &[Rational]) -> Vec<u128> {
    let two64 = BigInt::from(1u8) << 64;
    let mut acc = Rational::zero();
    let mut out = Vec::with_capacity(probs.len());
    for p in probs {
        acc += p;
        let scaled: BigInt = (acc.numer() * &two64) / acc.denom();
        out.push(scaled.to_u128().expect("within range"));
    }
    out
}

/// The shuffle being simulated.
#[derive(Clone, Debug)]
pub enum ShuffleModel {
    /// Cut into `a` packets and interleave; simulated through the digit
    /// description `st(sigma_i + delta_i n)` with uniform digits.
    AShuffle { a: usize },
    /// Inverse face-up face-down shuffle: remove a uniform subset of cards,
    /// reverse it, and place it on top.
    FaceUpFaceDown,
    /// Independently negate each value with probability `1 - 1/r`, then
    /// standardize.
    WeightedSigned { r: Rational },
    /// Add `delta_i * n` to each value with `P(delta_i = j-1) = r_j`, then
    /// standardize.
    QsSampler { rs: Vec<Rational> },
}

impl ShuffleModel {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            ShuffleModel::AShuffle { a } => {
                if *a < 1 {
                    return Err(Error::InvalidParameter("a-shuffle needs a >= 1".into()));
                }
            }
            ShuffleModel::FaceUpFaceDown => {}
            ShuffleModel::WeightedSigned { r } => {
                if r < &Rational::one() {
                    return Err(Error::InvalidParameter(
                        "weighted-signed shuffle needs r >= 1".into(),
                    ));
                }
            }
            ShuffleModel::QsSampler { rs } => {
                if rs.iter().any(Rational::is_negative) {
                    return Err(Error::InvalidParameter("negative weight".into()));
                }
                let total: Rational = rs.iter().cloned().sum();
                if total != Rational::one() {
                    return Err(Error::InvalidParameter(format!(
                        "weights sum to {total}, not 1"
                    )));
                }
            }
        }
        Ok(())
    }
}

enum Stepper {
    AShuffle { a: usize },
    FaceUpFaceDown,
    Signed { minus_threshold: Vec<u128> },
    Qs { thresholds: Vec<u128> },
}

impl Stepper {
    fn new(model: &ShuffleModel) -> Stepper {
        match model {
            ShuffleModel::AShuffle { a } => Stepper::AShuffle { a: *a },
            ShuffleModel::FaceUpFaceDown => Stepper::FaceUpFaceDown,
            ShuffleModel::WeightedSigned { r } => {
                let plus = r.recip().expect("r >= 1");
                let minus = &Rational::one() - &plus;
                Stepper::Signed { minus_threshold: categorical_thresholds(&[minus, plus]) }
            }
            ShuffleModel::QsSampler { rs } => {
                Stepper::Qs { thresholds: categorical_thresholds(rs) }
            }
        }
    }

    fn step(&self, current: &Permutation, rng: &mut RngStream) -> Permutation {
        let n = current.n();
        match self {
            Stepper::AShuffle { a } => {
                let keys: Vec<i64> = current
                    .one_line()
                    .iter()
                    .map(|&v| v as i64 + rng.uniform(*a) as i64 * n as i64)
                    .collect();
                standardize_ints(&keys)
            }
            Stepper::FaceUpFaceDown => {
                // sample s ~ the inverse shuffle law from the sorted deck,
                // then step pi -> s^{-1} pi
                let mut removed = Vec::new();
                let mut kept = Vec::new();
                for card in 1..=n {
                    if rng.uniform(2) == 0 {
                        removed.push(card);
                    } else {
                        kept.push(card);
                    }
                }
                removed.reverse();
                removed.extend(kept);
                let s = Permutation::new(removed).expect("permutation");
                s.inverse().compose(current)
            }
            Stepper::Signed { minus_threshold } => {
                let keys: Vec<i64> = current
                    .one_line()
                    .iter()
                    .map(|&v| {
                        if rng.categorical(minus_threshold) == 0 {
                            -(v as i64)
                        } else {
                            v as i64
                        }
                    })
                    .collect();
                standardize_ints(&keys)
            }
            Stepper::Qs { thresholds } => {
                let keys: Vec<i64> = current
                    .one_line()
                    .iter()
                    .map(|&v| v as i64 + rng.categorical(thresholds) as i64 * n as i64)
                    .collect();
                standardize_ints(&keys)
            }
        }
    }
}

/// Empirical output of a simulation run.
#[derive(Clone, Debug)]
pub struct SimulationResult {
    pub trials: u64,
    pub steps: u32,
    pub composition_counts: BTreeMap<Composition, u64>,
    pub permutation_counts: BTreeMap<Permutation, u64>,
}

impl SimulationResult {
    pub fn composition_frequency(&self, alpha: &Composition) -> f64 {
        *self.composition_counts.get(alpha).unwrap_or(&0) as f64 / self.trials as f64
    }
}

/// Runs `trials` independent chains of `steps` shuffle steps from `start`,
/// recording the endpoint's descent composition and the endpoint itself.
/// Trial `i` uses the substream `rng.derive(i)`, so results are independent
/// of any partitioning into worker batches.
pub fn simulate(
    model: &ShuffleModel,
    start: &Permutation,
    steps: u32,
    trials: u64,
    rng: &RngStream,
) -> Result<SimulationResult, Error> {
    model.validate()?;
    let stepper = Stepper::new(model);
    let mut composition_counts: BTreeMap<Composition, u64> = BTreeMap::new();
    let mut permutation_counts: BTreeMap<Permutation, u64> = BTreeMap::new();
    for trial in 0..trials {
        let mut stream = rng.derive(trial);
        let mut pi = start.clone();
        for _ in 0..steps {
            pi = stepper.step(&pi, &mut stream);
        }
        *composition_counts.entry(pi.descent_composition()).or_insert(0) += 1;
        *permutation_counts.entry(pi).or_insert(0) += 1;
    }
    Ok(SimulationResult { trials, steps, composition_counts, permutation_counts })
}

/// A direct multinomial cut-and-interleave shuffle of the sorted deck,
/// dropping cards from packet bottoms with probability proportional to
/// packet size. Used to validate the digit description statistically.
pub fn cut_and_riffle(n: usize, a: usize, rng: &mut RngStream) -> Permutation {
    assert!(a >= 1);
    // multinomial packet sizes from n uniform labels
    let mut sizes = vec![0usize; a];
    for _ in 0..n {
        sizes[rng.uniform(a)] += 1;
    }
    // packet p holds consecutive values, top of packet first
    let mut packets: Vec<Vec<usize>> = Vec::with_capacity(a);
    let mut next = 1;
    for &s in &sizes {
        packets.push((next..next + s).collect());
        next += s;
    }
    let mut dropped = Vec::with_capacity(n);
    let mut remaining = n;
    while remaining > 0 {
        let mut pick = rng.uniform(remaining);
        for packet in packets.iter_mut() {
            if pick < packet.len() {
                dropped.push(packet.pop().expect("nonempty"));
                break;
            }
            pick -= packet.len();
        }
        remaining -= 1;
    }
    // cards were dropped bottom-up
    dropped.reverse();
    Permutation::new(dropped).expect("permutation")
}

/// The probability that an `a`-shuffle of `n` cards produces a permutation
/// whose inverse has `d` descents: `C(n + a - d - 1, n) / a^n`.
pub fn bayer_diaconis(n: usize, a: usize, d: usize) -> Result<Rational, Error> {
    if n == 0 || d > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "descent count {d} out of range for n = {n}"
        )));
    }
    if a < 1 {
        return Err(Error::InvalidParameter("a-shuffle needs a >= 1".into()));
    }
    let numer = Rational::from_bigint(binomial(n + a - d - 1, n));
    Ok(&numer / &Rational::int(a as i64).pow(n as i64))
}

/// Closed-form `(n)`-column of the `a`-shuffle walk:
/// `Kbar(beta, (n)) = C(n + a - l(beta), n) / a^n`.
pub fn kbar_ashuffle_column(n: usize, a: usize) -> BTreeMap<Composition, Rational> {
    assert!(n >= 1 && a >= 1);
    let denom = Rational::int(a as i64).pow(n as i64);
    compositions(n)
        .into_iter()
        .map(|beta| {
            let c = Rational::from_bigint(binomial(n + a - beta.length(), n));
            let v = &c / &denom;
            (beta, v)
        })
        .collect()
}

/// Descent-composition law after `k` riffle shuffles of a sorted deck,
/// read off the `(n)`-row of the `k`-th power of the 2-shuffle walk.
pub fn tchebyshev_column(n: usize, k: u32) -> Result<BTreeMap<Composition, Rational>, Error> {
    assert!(n >= 1 && k >= 1);
    let char = crate::endo::Character::convolution_power(2)?;
    let kb = crate::endo::kbar(&char, n)?.pow(k);
    let from = Composition::single(n);
    Ok(kb
        .states()
        .iter()
        .map(|beta| (beta.clone(), kb.entry(&from, beta).clone()))
        .collect())
}

/// Closed-form `(n)`-column of the signed-shuffle walk: mass
/// `r (r-1)^k / r^n` on the hooks `(1^k, n-k)` and zero elsewhere.
pub fn kbar_vartheta_column(n: usize, r: &Rational) -> Result<BTreeMap<Composition, Rational>, Error> {
    assert!(n >= 1);
    if r.is_zero() {
        return Err(Error::LambdaZero);
    }
    let denom = r.pow(n as i64);
    Ok(compositions(n)
        .into_iter()
        .map(|beta| {
            let v = if beta.is_hook() {
                let k = beta.length() - 1;
                &(r * &(r - &Rational::one()).pow(k as i64)) / &denom
            } else {
                Rational::zero()
            };
            (beta, v)
        })
        .collect())
}

/// Exact one-step descent-composition law of the signed walk from `sigma`,
/// by summing all `2^n` sign patterns with weights `1/r` and `1 - 1/r`.
pub fn signed_bruteforce(sigma: &Permutation, r: &Rational) -> Result<BTreeMap<Composition, Rational>, Error> {
    let n = sigma.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap { n, cap: BRUTE_FORCE_CAP });
    }
    if r < &Rational::one() {
        return Err(Error::InvalidParameter("signed shuffle needs r >= 1".into()));
    }
    let plus = r.recip()?;
    let minus = Rational::one() - plus.clone();
    let mut out: BTreeMap<Composition, Rational> = compositions(n)
        .into_iter()
        .map(|c| (c, Rational::zero()))
        .collect();
    for mask in 0..(1u64 << n) {
        let mut weight = Rational::one();
        let keys: Vec<i64> = sigma
            .one_line()
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if mask & (1 << i) != 0 {
                    weight *= &minus;
                    -(v as i64)
                } else {
                    weight *= &plus;
                    v as i64
                }
            })
            .collect();
        let tau = standardize_ints(&keys);
        *out.get_mut(&tau.descent_composition()).expect("composition of n") += weight;
    }
    Ok(out)
}

/// Exact one-step descent-composition law of the digit walk from `sigma`,
/// summing all `k^n` digit assignments weighted by the given digit law.
pub fn delta_bruteforce(sigma: &Permutation, rs: &[Rational]) -> Result<BTreeMap<Composition, Rational>, Error> {
    let n = sigma.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap { n, cap: BRUTE_FORCE_CAP });
    }
    ShuffleModel::QsSampler { rs: rs.to_vec() }.validate()?;
    let k = rs.len();
    let mut out: BTreeMap<Composition, Rational> = compositions(n)
        .into_iter()
        .map(|c| (c, Rational::zero()))
        .collect();
    let mut digits = vec![0usize; n];
    loop {
        let mut weight = Rational::one();
        let keys: Vec<i64> = sigma
            .one_line()
            .iter()
            .zip(&digits)
            .map(|(&v, &d)| {
                weight *= &rs[d];
                v as i64 + d as i64 * n as i64
            })
            .collect();
        if !weight.is_zero() {
            let tau = standardize_ints(&keys);
            *out.get_mut(&tau.descent_composition()).expect("composition of n") += weight;
        }
        // odometer over base-k digit strings
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

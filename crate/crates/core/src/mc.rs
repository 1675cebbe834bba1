//! Seeded Monte Carlo estimates of pass counts and record statistics.
//!
//! Every trial draws from its own generator, keyed by `(seed, stream)` and
//! positioned by the trial index, so a run's output does not depend on how
//! trials are scheduled across threads. Per-trial results are integers and are
//! aggregated as exact `u128` sums before any floating-point division.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal, StandardUniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ldsfast::lds_permutation;
use crate::permcore::{record_indices, Permutation};

/// Generator used for every trial; recorded in output metadata.
pub const RNG_ALGORITHM: &str = "chacha8(key=splitmix64(seed,stream),stream=trial)";

/// Seed and stream id. Equal specs give equal draws on every platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    fn key(&self) -> [u8; 32] {
        let mut state = self.seed ^ splitmix64(&mut self.stream.clone());
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        key
    }

    /// Independent generator for trial `trial`.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key());
        rng.set_stream(trial);
        rng
    }
}

impl fmt::Display for RngSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stream == 0 {
            write!(f, "{}", self.seed)
        } else {
            write!(f, "{}:{}", self.seed, self.stream)
        }
    }
}

/// Uniform random permutation of `1..=n` by Fisher–Yates.
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    Permutation::new_unchecked(v)
}

/// How each DS trial obtains its input. Any continuous distribution yields the
/// same law of pass counts; the real-valued modes exist to check exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    #[default]
    Permutation,
    Uniform,
    Exponential,
    Normal,
}

impl SampleMode {
    fn draw<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Permutation {
        let values: Vec<f64> = match self {
            SampleMode::Permutation => return sample_permutation(n, rng),
            SampleMode::Uniform => StandardUniform.sample_iter(rng).take(n).collect(),
            SampleMode::Exponential => Exp1.sample_iter(rng).take(n).collect(),
            SampleMode::Normal => StandardNormal.sample_iter(rng).take(n).collect(),
        };
        rank(&values)
    }
}

fn rank(values: &[f64]) -> Permutation {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0u32; values.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i] = r as u32 + 1;
    }
    Permutation::new_unchecked(ranks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Non-resampling passes on a single list.
    Ds,
    /// Each discard list replaced by a fresh sample of the same size.
    Rds,
    /// Number of records in a single list.
    Records,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Ds => "ds",
            Variant::Rds => "rds",
            Variant::Records => "records",
        })
    }
}

/// One Monte Carlo estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub n: usize,
    pub variant: Variant,
    pub trials: u64,
    pub mean: f64,
    pub sample_variance: f64,
    pub std_error: f64,
    pub seed: RngSpec,
    pub rng: &'static str,
    /// Seconds; the only field that differs between identical runs.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    sum: u128,
    sum_sq: u128,
}

impl Moments {
    fn of(x: u64) -> Self {
        let x = x as u128;
        Self { sum: x, sum_sq: x * x }
    }

    fn add(self, o: Self) -> Self {
        Self {
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
        }
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidArgument("trials must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn summarize<F>(n: usize, variant: Variant, trials: u64, spec: RngSpec, trial: F) -> Result<RunSummary>
where
    F: Fn(&mut ChaCha8Rng) -> u64 + Sync,
{
    check_trials(trials)?;
    let start = Instant::now();
    let m = (0..trials)
        .into_par_iter()
        .map(|t| Moments::of(trial(&mut spec.trial_rng(t))))
        .reduce(Moments::default, Moments::add);
    let t = trials as u128;
    let mean = m.sum as f64 / trials as f64;
    let sample_variance = if trials > 1 {
        // Exact integer numerator: T Σx² - (Σx)² >= 0.
        let num = t * m.sum_sq - m.sum * m.sum;
        num as f64 / (t * (t - 1)) as f64
    } else {
        0.0
    };
    Ok(RunSummary {
        n,
        variant,
        trials,
        mean,
        sample_variance,
        std_error: (sample_variance / trials as f64).sqrt(),
        seed: spec,
        rng: RNG_ALGORITHM,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Mean non-resampling pass count over uniform permutations of size `n`.
pub fn mc_ds(n: usize, trials: u64, spec: RngSpec) -> Result<RunSummary> {
    mc_ds_with_mode(n, trials, spec, SampleMode::Permutation)
}

pub fn mc_ds_with_mode(n: usize, trials: u64, spec: RngSpec, mode: SampleMode) -> Result<RunSummary> {
    summarize(n, Variant::Ds, trials, spec, |rng| {
        lds_permutation(&mode.draw(n, rng)) as u64
    })
}

/// One resampling run: the list shrinks by its record count each pass.
pub fn rds_trial<R: Rng + ?Sized>(n: usize, rng: &mut R) -> u64 {
    let mut size = n;
    let mut passes = 0;
    while size > 0 {
        let p = sample_permutation(size, rng);
        size -= record_indices(&p).len();
        passes += 1;
    }
    passes
}

/// Mean resampling pass count starting from size `n`.
pub fn mc_rds(n: usize, trials: u64, spec: RngSpec) -> Result<RunSummary> {
    summarize(n, Variant::Rds, trials, spec, |rng| rds_trial(n, rng))
}

/// Mean number of records in a uniform permutation of size `n`.
pub fn mc_record_count(n: usize, trials: u64, spec: RngSpec) -> Result<RunSummary> {
    summarize(n, Variant::Records, trials, spec, |rng| {
        record_indices(&sample_permutation(n, rng)).len() as u64
    })
}

/// For each position `i = 1..=n`, how many of `trials` permutations have a record there.
pub fn mc_record_counts(n: usize, trials: u64, spec: RngSpec) -> Result<Vec<u64>> {
    check_trials(trials)?;
    Ok((0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, t| {
                let p = sample_permutation(n, &mut spec.trial_rng(t));
                for i in record_indices(&p) {
                    acc[i - 1] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
}

/// Empirical record frequency at each position `1..=n`.
pub fn mc_record_frequencies(n: usize, trials: u64, spec: RngSpec) -> Result<Vec<f64>> {
    Ok(mc_record_counts(n, trials, spec)?
        .into_iter()
        .map(|c| c as f64 / trials as f64)
        .collect())
}

/// Empirical probability that position `i` (1-based) of a length-`n` list is a record.
pub fn mc_record_probability(n: usize, i: usize, trials: u64, spec: RngSpec) -> Result<f64> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    check_trials(trials)?;
    // Only the first i values decide whether position i is a record.
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let p = sample_permutation(n, &mut spec.trial_rng(t));
            p[..i - 1].iter().all(|&v| v < p[i - 1])
        })
        .count();
    Ok(hits as f64 / trials as f64)
}

/// Scaling statistics of the mean pass count against `2√n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub n: usize,
    pub trials: u64,
    pub mean: f64,
    pub std_error: f64,
    pub two_sqrt_n: f64,
    /// `mean / 2√n`.
    pub ratio: f64,
    /// `(mean - 2√n) / n^(1/6)`.
    pub scaled_fluct: f64,
}

impl AsymptoticRow {
    pub fn from_summary(s: &RunSummary) -> Self {
        let n = s.n as f64;
        let two_sqrt_n = 2.0 * n.sqrt();
        Self {
            n: s.n,
            trials: s.trials,
            mean: s.mean,
            std_error: s.std_error,
            two_sqrt_n,
            ratio: s.mean / two_sqrt_n,
            scaled_fluct: (s.mean - two_sqrt_n) / n.powf(1.0 / 6.0),
        }
    }
}

/// One DS estimate per size, rows sorted by `n`.
pub fn asymptotic_scan(ns: &[usize], trials: u64, spec: RngSpec) -> Result<Vec<AsymptoticRow>> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidArgument("asymptotic scan needs n >= 1".into()));
            }
            mc_ds(n, trials, spec).map(|s| AsymptoticRow::from_summary(&s))
        })
        .collect()
}

//! The walk with periodic position measurement.
//!
//! The walker evolves coherently for `d` steps, its position is measured, the
//! coin is re-prepared in `(|L⟩⟨L| + |R⟩⟨R|)/2`, and the cycle repeats `M`
//! times. Each block displacement `Y` has the law of a `d`-step walk from the
//! origin and the blocks are independent, so `X_t = Y_1 + … + Y_M` has the
//! `M`-fold convolution power of the block law.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coin::CoinOperator;
use crate::distribution::PositionDistribution;
use crate::error::{check_range, Error, Result};
use crate::walk::mixed_coin_distribution;

/// Identifier of the sampling algorithm used by [`PpmSampler`].
///
/// ChaCha8 seeded through `SeedableRng::seed_from_u64`, one `f64` in `[0, 1)`
/// per block drawn with `Rng::random`, inverted through the block CDF.
pub const SAMPLER_ALGORITHM: &str = "chacha8-inverse-cdf-v1";

/// Measurement plan: `m` blocks of `d` coherent steps each.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PpmSchedule {
    pub d: u64,
    pub m: u64,
    pub t: u64,
    /// Scale exponent the schedule was derived from, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl PpmSchedule {
    pub fn new(d: u64, m: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Zero("d"));
        }
        if m == 0 {
            return Err(Error::Zero("M"));
        }
        Ok(PpmSchedule {
            d,
            m,
            t: d * m,
            beta: None,
        })
    }

    /// `d = max(1, round(t^β))`, `M = max(1, round(t / d))`.
    ///
    /// The realized `t = d·M` may differ from `t_target`.
    pub fn from_target(t_target: u64, beta: f64) -> Result<Self> {
        check_range("beta", beta, "[0, 1]", (0.0..=1.0).contains(&beta))?;
        if t_target == 0 {
            return Err(Error::Zero("t"));
        }
        let d = ((t_target as f64).powf(beta).round() as u64).max(1);
        let m = ((t_target as f64 / d as f64).round() as u64).max(1);
        Ok(PpmSchedule {
            beta: Some(beta),
            ..Self::new(d, m)?
        })
    }

    /// Checks `t = d·M` with both factors positive.
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Zero("d"));
        }
        if self.m == 0 {
            return Err(Error::Zero("M"));
        }
        if self.d.checked_mul(self.m) != Some(self.t) {
            return Err(Error::InvalidSchedule(format!(
                "t = {} but d * M = {} * {}",
                self.t, self.d, self.m
            )));
        }
        if let Some(beta) = self.beta {
            check_range("beta", beta, "[0, 1]", (0.0..=1.0).contains(&beta))?;
        }
        Ok(())
    }
}

pub fn schedule_from(t_target: u64, beta: f64) -> Result<PpmSchedule> {
    PpmSchedule::from_target(t_target, beta)
}

/// Law of one block displacement `Y^(d)`.
pub fn block_distribution(coin: &CoinOperator, d: u64) -> Result<PositionDistribution> {
    if d == 0 {
        return Err(Error::Zero("d"));
    }
    Ok(mixed_coin_distribution(coin, d))
}

/// `(p * q)(x) = Σ_y p(y) q(x − y)`.
pub fn convolve(p: &PositionDistribution, q: &PositionDistribution) -> PositionDistribution {
    let (pm, qm) = (p.masses(), q.masses());
    let mut out = vec![0.0; pm.len() + qm.len() - 1];
    for (i, &a) in pm.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for (o, &b) in out[i..].iter_mut().zip(qm) {
            *o += a * b;
        }
    }
    PositionDistribution::from_raw(p.start() + q.start(), out)
}

/// `M`-fold self-convolution by binary exponentiation.
pub fn convolve_power(p: &PositionDistribution, m: u64) -> Result<PositionDistribution> {
    if m == 0 {
        return Err(Error::Zero("M"));
    }
    let mut base = p.clone();
    let mut acc: Option<PositionDistribution> = None;
    let mut n = m;
    loop {
        if n & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => convolve(&a, &base),
            });
        }
        n >>= 1;
        if n == 0 {
            break;
        }
        base = convolve(&base, &base);
    }
    Ok(acc.expect("m >= 1 sets at least one bit"))
}

/// Exact law of `X_t` under the schedule.
pub fn ppm_distribution(
    coin: &CoinOperator,
    schedule: &PpmSchedule,
) -> Result<PositionDistribution> {
    schedule.validate()?;
    convolve_power(&block_distribution(coin, schedule.d)?, schedule.m)
}

/// `Σ x^order p(x)`.
pub fn moments(p: &PositionDistribution, order: u32) -> f64 {
    p.moment(order)
}

/// Monte Carlo sampler of `X_t`, for cross-checking the convolution pipeline.
#[derive(Clone, Debug)]
pub struct PpmSampler {
    start: i64,
    cdf: Vec<f64>,
    last: usize,
    blocks: u64,
}

impl PpmSampler {
    pub fn new(coin: &CoinOperator, schedule: &PpmSchedule) -> Result<Self> {
        schedule.validate()?;
        let block = block_distribution(coin, schedule.d)?;
        let cdf: Vec<f64> = block
            .masses()
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        let last = block
            .masses()
            .iter()
            .rposition(|&p| p > 0.0)
            .expect("block law has positive mass");
        Ok(PpmSampler {
            start: block.start(),
            cdf,
            last,
            blocks: schedule.m,
        })
    }

    fn block<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u: f64 = rng.random();
        let i = self.cdf.partition_point(|&c| c <= u).min(self.last);
        self.start + i as i64
    }

    /// One draw of `X_t`: the sum of `M` independent block displacements.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        (0..self.blocks).map(|_| self.block(rng)).sum()
    }

    /// `n` consecutive draws from a single stream seeded with `seed`.
    pub fn sample_many(&self, seed: u64, n: usize) -> Vec<i64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.sample(&mut rng)).collect()
    }
}

/// One trajectory endpoint, deterministic in `seed`.
pub fn sample_trajectory(coin: &CoinOperator, schedule: &PpmSchedule, seed: u64) -> Result<i64> {
    let sampler = PpmSampler::new(coin, schedule)?;
    Ok(sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

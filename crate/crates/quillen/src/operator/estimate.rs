use std::ops::Range;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use super::OpError;

/// Real Monte Carlo estimate with its standard error of the mean.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_err: f64,
}

/// Complex Monte Carlo estimate; the error bar covers both components.
#[derive(Clone, Copy, Debug)]
pub struct CEstimate {
    pub value: Complex64,
    pub std_err: f64,
}

/// Reproducibility envelope of a Monte Carlo run. The shard count is part
/// of the contract: identical `(seed, samples, shards)` replays the exact
/// result bit for bit.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SampleMeta {
    pub seed: u64,
    pub samples: usize,
    pub shards: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct McConfig {
    pub seed: u64,
    pub samples: usize,
    pub shards: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            seed: 0,
            samples: 100_000,
            shards: 10,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<(), OpError> {
        if self.samples == 0 {
            return Err(OpError::BadConfig("samples must be positive".into()));
        }
        if self.shards < 2 {
            return Err(OpError::BadConfig(
                "at least 2 shards are needed for error bars".into(),
            ));
        }
        if self.samples < self.shards {
            return Err(OpError::BadConfig(format!(
                "samples ({}) below shard count ({})",
                self.samples, self.shards
            )));
        }
        Ok(())
    }

    pub fn meta(&self) -> SampleMeta {
        SampleMeta {
            seed: self.seed,
            samples: self.samples,
            shards: self.shards,
        }
    }
}

/// Splits `0..count` into `shards` contiguous ranges of near-equal size.
pub(crate) fn shard_ranges(count: usize, shards: usize) -> Vec<Range<usize>> {
    assert!(shards >= 1 && count >= shards);
    (0..shards)
        .map(|s| (s * count / shards)..((s + 1) * count / shards))
        .collect()
}

/// Mean and standard error from per-shard means (assumed near-equal sizes).
pub(crate) fn combine_shards(means: &[f64]) -> Estimate {
    let s = means.len();
    assert!(s >= 2);
    let mean = means.iter().sum::<f64>() / s as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (s as f64 - 1.0);
    Estimate {
        value: mean,
        std_err: (var / s as f64).sqrt(),
    }
}

pub(crate) fn combine_shards_c(means: &[Complex64]) -> CEstimate {
    let s = means.len();
    assert!(s >= 2);
    let mean = means.iter().sum::<Complex64>() / s as f64;
    let var = means.iter().map(|m| (m - mean).norm_sqr()).sum::<f64>() / (s as f64 - 1.0);
    CEstimate {
        value: mean,
        std_err: (var / s as f64).sqrt(),
    }
}

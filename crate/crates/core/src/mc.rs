//! Chunked Monte Carlo with reproducible results.
//!
//! The sample budget is split into fixed-size chunks. Chunk `i` draws from
//! stream `i` of the seed and chunk statistics are merged in chunk order,
//! so an estimate depends only on `(samples, seed, chunk)` and never on the
//! number of worker threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{stream_rng, McRng};

pub const DEFAULT_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub chunk: u64,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig { samples, seed, chunk: DEFAULT_CHUNK }
    }

    pub fn with_chunk(self, chunk: u64) -> Self {
        McConfig { chunk, ..self }
    }

    /// Same budget, different seed. Used to decorrelate sub-experiments.
    pub fn reseeded(self, salt: u64) -> Self {
        let seed = self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        McConfig { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::param("samples must be >= 1"));
        }
        if self.chunk == 0 {
            return Err(Error::param("chunk must be >= 1"));
        }
        Ok(())
    }

    fn n_chunks(&self) -> u64 {
        self.samples.div_ceil(self.chunk)
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub samples: u64,
}

impl Estimate {
    /// `true` when `value` lies within `k` standard errors of the mean.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_err
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    #[inline]
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        Moments {
            n,
            mean: self.mean + d * nb / n as f64,
            m2: self.m2 + other.m2 + d * d * na * nb / n as f64,
        }
    }

    fn estimate(self) -> Estimate {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        Estimate { mean: self.mean, std_err: (var / self.n as f64).sqrt(), samples: self.n }
    }
}

fn run_chunk<const K: usize, F>(cfg: &McConfig, idx: u64, f: &F) -> [Moments; K]
where
    F: Fn(&mut McRng) -> [f64; K],
{
    let mut rng = stream_rng(cfg.seed, idx);
    let len = cfg.chunk.min(cfg.samples - idx * cfg.chunk);
    let mut acc = [Moments::default(); K];
    for _ in 0..len {
        let x = f(&mut rng);
        for (m, v) in acc.iter_mut().zip(x) {
            m.push(v);
        }
    }
    acc
}

/// Estimates `K` expectations jointly. `f` draws one sample of all `K`
/// quantities from the supplied RNG.
pub fn estimate<const K: usize, F>(cfg: &McConfig, f: F) -> Result<[Estimate; K]>
where
    F: Fn(&mut McRng) -> [f64; K] + Sync,
{
    cfg.validate()?;
    let n = cfg.n_chunks();
    #[cfg(feature = "parallel")]
    let parts: Vec<[Moments; K]> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|i| run_chunk(cfg, i, &f)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<[Moments; K]> = (0..n).map(|i| run_chunk(cfg, i, &f)).collect();

    let mut total = [Moments::default(); K];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t = t.merge(p);
        }
    }
    Ok(total.map(Moments::estimate))
}

/// Single-quantity convenience wrapper around [`estimate`].
pub fn estimate_mean<F>(cfg: &McConfig, f: F) -> Result<Estimate>
where
    F: Fn(&mut McRng) -> f64 + Sync,
{
    let [e] = estimate(cfg, |rng| [f(rng)])?;
    Ok(e)
}

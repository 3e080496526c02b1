//! Deterministic sharded Monte Carlo. The budget is split into `workers`
//! shards; shard `w` draws from ChaCha8 seeded by `seed` on stream `w`, so the
//! merged result depends only on (seed, workers) and not on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Running sums of a scalar sample.
#[derive(Debug, Clone, Copy, Default)]
pub struct Acc {
    pub n: u64,
    pub sum: f64,
    pub sumsq: f64,
    pub zeros: u64,
    pub rejected: u64,
}

impl Acc {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sumsq += x * x;
        if x == 0.0 {
            self.zeros += 1;
        }
    }

    pub fn merge(mut self, o: Acc) -> Acc {
        self.n += o.n;
        self.sum += o.sum;
        self.sumsq += o.sumsq;
        self.zeros += o.zeros;
        self.rejected += o.rejected;
        self
    }

    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.sum / self.n as f64
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let n = self.n as f64;
        let m = self.mean();
        let var = ((self.sumsq - n * m * m) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }
}

/// Estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Estimate {
        Estimate { value, stderr: 0.0 }
    }

    /// True when `target` lies within `k` standard errors (plus a rounding slack).
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.stderr + 1e-12 * (1.0 + target.abs())
    }
}

/// Sampling controls shared by every Monte Carlo kernel.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> McConfig {
        McConfig { samples, seed, workers: 4 }
    }

    pub fn with_workers(mut self, workers: usize) -> McConfig {
        self.workers = workers.max(1);
        self
    }
}

pub fn shard_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Run `kernel(rng, count)` on every shard and merge accumulators in shard order.
pub fn run_sharded<F>(cfg: McConfig, kernel: F) -> Acc
where
    F: Fn(&mut ChaCha8Rng, u64) -> Acc + Sync,
{
    let w = cfg.workers.max(1);
    let base = cfg.samples / w as u64;
    let extra = cfg.samples % w as u64;
    let parts: Vec<Acc> = (0..w)
        .into_par_iter()
        .map(|i| {
            let count = base + u64::from((i as u64) < extra);
            let mut rng = shard_rng(cfg.seed, i);
            kernel(&mut rng, count)
        })
        .collect();
    parts.into_iter().fold(Acc::default(), Acc::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn sharding_is_deterministic() {
        let cfg = McConfig::new(10_001, 7).with_workers(3);
        let k = |rng: &mut ChaCha8Rng, c: u64| {
            let mut a = Acc::default();
            for _ in 0..c {
                a.push(rng.random::<f64>());
            }
            a
        };
        let a = run_sharded(cfg, k);
        let b = run_sharded(cfg, k);
        assert_eq!(a.n, 10_001);
        assert_eq!(a.sum.to_bits(), b.sum.to_bits());
    }
}

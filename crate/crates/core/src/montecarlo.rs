//! Monte Carlo accumulators and deterministic parallel streams.
//!
//! A run is identified by `(seed, count, workers)`. Worker `i` draws from a
//! ChaCha8 stream seeded with `seed` and stream id `i`, handles a fixed share
//! of the trials, and the per-worker [`SampleStats`] are merged in worker
//! order. The merged result is therefore a pure function of the triple,
//! independent of thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// The random stream type handed to samplers.
pub type Stream = ChaCha8Rng;

/// Stream `worker` of the family rooted at `seed`.
pub fn stream(seed: u64, worker: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// Running statistics over a Monte Carlo run.
///
/// `trials` counts every draw; `accepted` counts those that produced a value
/// (e.g. pieces that formed a polygon). Moments and the histogram are over the
/// accepted values only.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub trials: u64,
    pub accepted: u64,
    /// Draws for which a value should exist but the computation failed.
    pub failures: u64,
    pub mean: f64,
    /// Sum of squared deviations from the mean (Welford's M2).
    pub m2: f64,
    pub min: f64,
    pub max: f64,
    pub hist_lo: f64,
    pub hist_hi: f64,
    pub bins: Vec<u64>,
    /// Values outside `[hist_lo, hist_hi)`, below and above.
    pub outside: (u64, u64),
    pub seed: u64,
    /// Stream ids merged into this accumulator, in merge order.
    pub streams: Vec<u64>,
}

impl SampleStats {
    pub fn new(hist_lo: f64, hist_hi: f64, bins: usize) -> Self {
        assert!(hist_hi > hist_lo && bins > 0);
        SampleStats {
            trials: 0,
            accepted: 0,
            failures: 0,
            mean: 0.0,
            m2: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            hist_lo,
            hist_hi,
            bins: vec![0; bins],
            outside: (0, 0),
            seed: 0,
            streams: Vec::new(),
        }
    }

    pub fn with_lineage(mut self, seed: u64, stream: u64) -> Self {
        self.seed = seed;
        self.streams = vec![stream];
        self
    }

    /// Records a draw that produced no value.
    pub fn reject(&mut self) {
        self.trials += 1;
    }

    /// Records a draw whose value could not be computed.
    pub fn fail(&mut self) {
        self.trials += 1;
        self.failures += 1;
    }

    /// Records an accepted draw with value `x`.
    pub fn push(&mut self, x: f64) {
        self.trials += 1;
        self.accepted += 1;
        let delta = x - self.mean;
        self.mean += delta / self.accepted as f64;
        self.m2 += delta * (x - self.mean);
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        if x < self.hist_lo {
            self.outside.0 += 1;
        } else if x >= self.hist_hi {
            self.outside.1 += 1;
        } else {
            let w = (self.hist_hi - self.hist_lo) / self.bins.len() as f64;
            let i = (((x - self.hist_lo) / w) as usize).min(self.bins.len() - 1);
            self.bins[i] += 1;
        }
    }

    /// Folds `other` into `self` (Chan et al. pairwise update). Both must
    /// share the histogram layout.
    pub fn merge(&mut self, other: &SampleStats) {
        assert_eq!(self.bins.len(), other.bins.len());
        assert!(self.hist_lo == other.hist_lo && self.hist_hi == other.hist_hi);
        let n_a = self.accepted as f64;
        let n_b = other.accepted as f64;
        if other.accepted > 0 {
            let n = n_a + n_b;
            let delta = other.mean - self.mean;
            self.mean += delta * n_b / n;
            self.m2 += other.m2 + delta * delta * n_a * n_b / n;
        }
        self.trials += other.trials;
        self.accepted += other.accepted;
        self.failures += other.failures;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        for (a, b) in self.bins.iter_mut().zip(&other.bins) {
            *a += b;
        }
        self.outside.0 += other.outside.0;
        self.outside.1 += other.outside.1;
        if self.streams.is_empty() {
            self.seed = other.seed;
        }
        self.streams.extend_from_slice(&other.streams);
    }

    /// Fraction of trials that were accepted.
    pub fn acceptance(&self) -> f64 {
        self.accepted as f64 / self.trials as f64
    }

    /// Binomial standard error of [`acceptance`](Self::acceptance) under
    /// success probability `p`.
    pub fn acceptance_se(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    pub fn variance(&self) -> f64 {
        if self.accepted < 2 {
            return f64::NAN;
        }
        self.m2 / (self.accepted - 1) as f64
    }

    /// Standard error of the mean of accepted values.
    pub fn mean_se(&self) -> f64 {
        (self.variance() / self.accepted as f64).sqrt()
    }

    /// Histogram quantile with linear interpolation inside the bin.
    pub fn quantile(&self, p: f64) -> f64 {
        let total = self.accepted as f64;
        let target = p.clamp(0.0, 1.0) * total;
        let mut cum = self.outside.0 as f64;
        if target <= cum {
            return self.hist_lo;
        }
        let w = (self.hist_hi - self.hist_lo) / self.bins.len() as f64;
        for (i, &count) in self.bins.iter().enumerate() {
            let next = cum + count as f64;
            if next >= target && count > 0 {
                let frac = (target - cum) / count as f64;
                return self.hist_lo + (i as f64 + frac) * w;
            }
            cum = next;
        }
        self.hist_hi
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    /// Distribution-free confidence interval for the median from binomial
    /// order statistics, at `z` standard deviations.
    pub fn median_interval(&self, z: f64) -> (f64, f64) {
        let half = z * 0.5 / (self.accepted as f64).sqrt();
        (self.quantile(0.5 - half), self.quantile(0.5 + half))
    }

    /// Bin centres and densities (counts normalised by accepted·width).
    pub fn density(&self) -> Vec<(f64, f64)> {
        let w = (self.hist_hi - self.hist_lo) / self.bins.len() as f64;
        let norm = self.accepted as f64 * w;
        self.bins
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.hist_lo + (i as f64 + 0.5) * w, c as f64 / norm))
            .collect()
    }
}

/// Splits `count` trials over `workers` streams and merges the results in
/// worker order. `job(stream, trials)` must build its own accumulator.
pub fn run_parallel<F>(seed: u64, count: u64, workers: usize, job: F) -> SampleStats
where
    F: Fn(&mut Stream, u64) -> SampleStats + Sync,
{
    let workers = workers.max(1) as u64;
    let share = count / workers;
    let extra = count % workers;
    let parts: Vec<SampleStats> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let n = share + u64::from(w < extra);
            let mut rng = stream(seed, w);
            let mut s = job(&mut rng, n);
            s.seed = seed;
            s.streams = vec![w];
            s
        })
        .collect();
    let mut it = parts.into_iter();
    let mut total = it.next().expect("at least one worker");
    for p in it {
        total.merge(&p);
    }
    total
}

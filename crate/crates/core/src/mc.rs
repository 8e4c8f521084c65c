//! Replicated Monte Carlo estimates of group degrees, gaps and gap slopes.
//!
//! Replicate `r` of a run with master seed `m` samples its graph with seed
//! [`derive_seed(m, r)`](crate::rng::derive_seed). Grid point `i` of a slope
//! estimate runs with master seed `derive_seed(m, i)`. Per-replicate values
//! are collected in replicate order and reduced sequentially, so results do
//! not depend on how many threads did the sampling.

use crate::error::{Error, Result};
use crate::generate::{sample_class_counts, ClassCounts, GenSpec, GeneratorConfig};
use crate::model::ModelParams;
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub replicates: usize,
    pub master_seed: u64,
    pub generator: GeneratorConfig,
}

impl McConfig {
    pub fn new(replicates: usize, master_seed: u64) -> Self {
        Self {
            replicates,
            master_seed,
            generator: GeneratorConfig::default(),
        }
    }

    /// Seed of replicate `index`.
    pub fn replicate_seed(&self, index: usize) -> u64 {
        derive_seed(self.master_seed, index as u64)
    }

    /// Configuration for child unit `index` (a grid point, a bisection
    /// step), with its own derived master seed.
    pub fn child(&self, index: usize) -> Self {
        Self {
            master_seed: derive_seed(self.master_seed, index as u64),
            ..*self
        }
    }

    fn require_replicates(&self, min: usize) -> Result<()> {
        if self.replicates < min {
            return Err(Error::TooFewReplicates {
                min,
                got: self.replicates,
            });
        }
        Ok(())
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(replicates)`.
    pub std_error: f64,
    pub replicates: usize,
}

impl McEstimate {
    /// Needs at least two samples.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        assert!(n >= 2, "need at least two samples, got {n}");
        let mean = samples.iter().sum::<f64>() / n as f64;
        let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
        let sd = (ss / (n - 1) as f64).sqrt();
        Self {
            mean,
            std_error: sd / (n as f64).sqrt(),
            replicates: n,
        }
    }

    /// `|mean - value| <= k * std_error`.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }

    /// True when two independent estimates agree within `k` joint standard
    /// errors.
    pub fn agrees_with(&self, other: &McEstimate, k: f64) -> bool {
        let joint = self.std_error.hypot(other.std_error);
        (self.mean - other.mean).abs() <= k * joint
    }
}

/// Statistics of one sampled graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateSample {
    pub counts: ClassCounts,
    pub k0: f64,
    pub k1: f64,
}

impl ReplicateSample {
    pub fn gap(&self) -> f64 {
        self.k0 - self.k1
    }
}

fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Samples `cfg.replicates` graphs and returns their statistics in
/// replicate order.
pub fn mc_replicates(params: &ModelParams, cfg: &McConfig) -> Result<Vec<ReplicateSample>> {
    cfg.require_replicates(1)?;
    let n0 = params.n_minority();
    let n1 = params.n_majority();
    par_map(cfg.replicates, |r| {
        let spec = GenSpec::new(*params, cfg.replicate_seed(r));
        let counts = sample_class_counts(&spec, &cfg.generator)?;
        let (k0, k1) = counts.group_degrees(n0, n1);
        Ok(ReplicateSample { counts, k0, k1 })
    })
    .into_iter()
    .collect()
}

/// Estimates of the minority and majority average degree.
pub fn mc_group_degrees(params: &ModelParams, cfg: &McConfig) -> Result<(McEstimate, McEstimate)> {
    cfg.require_replicates(2)?;
    let samples = mc_replicates(params, cfg)?;
    let k0: Vec<f64> = samples.iter().map(|s| s.k0).collect();
    let k1: Vec<f64> = samples.iter().map(|s| s.k1).collect();
    Ok((McEstimate::from_samples(&k0), McEstimate::from_samples(&k1)))
}

/// Estimate of the structural gap from per-replicate `k0 - k1`.
pub fn mc_gap(params: &ModelParams, cfg: &McConfig) -> Result<McEstimate> {
    cfg.require_replicates(2)?;
    let gaps: Vec<f64> = mc_replicates(params, cfg)?.iter().map(ReplicateSample::gap).collect();
    Ok(McEstimate::from_samples(&gaps))
}

/// How a slope is fitted to gap estimates along an `h00` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlopeMethod {
    /// Ordinary least squares over every grid point.
    #[default]
    LeastSquares,
    /// Difference quotient between the smallest and largest grid value.
    TwoPoint,
}

fn check_grid(h_grid: &[f64]) -> Result<()> {
    for &h in h_grid {
        if !(0.0..=1.0).contains(&h) {
            return Err(Error::OutOfRange {
                name: "h00",
                value: h,
                expected: "0 <= h00 <= 1",
            });
        }
    }
    let mut sorted = h_grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    if sorted.len() < 2 {
        return Err(Error::GridTooSmall {
            distinct: sorted.len(),
        });
    }
    Ok(())
}

/// Gap estimates at each `h00` of the grid, with `h11` fixed. Point `i`
/// uses `cfg.child(i)`.
pub fn mc_gap_profile(base: &ModelParams, h_grid: &[f64], cfg: &McConfig) -> Result<Vec<(f64, McEstimate)>> {
    h_grid
        .iter()
        .enumerate()
        .map(|(i, &h)| Ok((h, mc_gap(&base.with_h00(h)?, &cfg.child(i))?)))
        .collect()
}

/// Fits a slope to `(h00, gap estimate)` points, propagating the
/// per-point standard errors as independent.
pub fn fit_slope(points: &[(f64, McEstimate)], method: SlopeMethod) -> Result<McEstimate> {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    check_grid(&xs)?;
    let replicates = points.iter().map(|p| p.1.replicates).min().unwrap_or(0);
    match method {
        SlopeMethod::LeastSquares => {
            let n = points.len() as f64;
            let x_mean = xs.iter().sum::<f64>() / n;
            let sxx: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
            let mut mean = 0.0;
            let mut var = 0.0;
            for (x, est) in points {
                let w = (x - x_mean) / sxx;
                mean += w * est.mean;
                var += w * w * est.std_error * est.std_error;
            }
            Ok(McEstimate {
                mean,
                std_error: var.sqrt(),
                replicates,
            })
        }
        SlopeMethod::TwoPoint => {
            let lo = points.iter().min_by(|a, b| a.0.total_cmp(&b.0)).unwrap();
            let hi = points.iter().max_by(|a, b| a.0.total_cmp(&b.0)).unwrap();
            let dx = hi.0 - lo.0;
            Ok(McEstimate {
                mean: (hi.1.mean - lo.1.mean) / dx,
                std_error: hi.1.std_error.hypot(lo.1.std_error) / dx,
                replicates,
            })
        }
    }
}

/// Least-squares estimate of the gap slope in `h00` at fixed `N`, `f0`
/// and `h11`.
pub fn mc_gap_slope(
    n_total: usize,
    f_minority: f64,
    h_majority: f64,
    h_grid: &[f64],
    cfg: &McConfig,
) -> Result<McEstimate> {
    mc_gap_slope_with(n_total, f_minority, h_majority, h_grid, cfg, SlopeMethod::LeastSquares)
}

pub fn mc_gap_slope_with(
    n_total: usize,
    f_minority: f64,
    h_majority: f64,
    h_grid: &[f64],
    cfg: &McConfig,
    method: SlopeMethod,
) -> Result<McEstimate> {
    check_grid(h_grid)?;
    cfg.require_replicates(2)?;
    let first = h_grid[0];
    let base = ModelParams::new(n_total, f_minority, first, h_majority)?;
    let profile = mc_gap_profile(&base, h_grid, cfg)?;
    fit_slope(&profile, method)
}

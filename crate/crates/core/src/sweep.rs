//! Parameter sweeps joining closed forms with Monte Carlo estimates, and
//! empirical detection of the critical minority size.

use crate::error::{Error, Result};
use crate::mc::{mc_gap_slope, mc_replicates, McConfig, McEstimate, ReplicateSample};
use crate::model::{critical_minority_size, gap_slope_integer, minority_size, ExpectedStats, ModelParams};
use crate::table::{Cell, Record};

/// `start, start + step, ..., stop` (inclusive up to rounding). Values are
/// computed as `start + i * step` and rounded to 12 decimals so that grids
/// like `0:1:0.1` yield `0.3` rather than `0.30000000000000004`.
pub fn stepped(start: f64, stop: f64, step: f64) -> Vec<f64> {
    if step <= 0.0 || stop < start {
        return if stop == start { vec![start] } else { Vec::new() };
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let v = start + i as f64 * step;
            (v * 1e12).round() / 1e12
        })
        .collect()
}

/// Cartesian grid over the four model parameters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepGrid {
    pub n_total: Vec<usize>,
    pub f_minority: Vec<f64>,
    pub h00: Vec<f64>,
    pub h11: Vec<f64>,
}

impl SweepGrid {
    pub fn point(n_total: usize, f_minority: f64, h00: f64, h11: f64) -> Self {
        Self {
            n_total: vec![n_total],
            f_minority: vec![f_minority],
            h00: vec![h00],
            h11: vec![h11],
        }
    }

    pub fn len(&self) -> usize {
        self.n_total.len() * self.f_minority.len() * self.h00.len() * self.h11.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in lexicographic order of (N, f0, h00, h11).
    pub fn points(&self) -> impl Iterator<Item = (usize, f64, f64, f64)> + '_ {
        self.n_total.iter().flat_map(move |&n| {
            self.f_minority.iter().flat_map(move |&f| {
                self.h00
                    .iter()
                    .flat_map(move |&a| self.h11.iter().map(move |&b| (n, f, a, b)))
            })
        })
    }
}

/// Simulated columns of a [`SweepRow`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McColumns {
    pub k0: McEstimate,
    pub k1: McEstimate,
    pub gap: McEstimate,
    pub master_seed: u64,
}

impl McColumns {
    pub fn from_samples(samples: &[ReplicateSample], master_seed: u64) -> Self {
        let k0: Vec<f64> = samples.iter().map(|s| s.k0).collect();
        let k1: Vec<f64> = samples.iter().map(|s| s.k1).collect();
        let gap: Vec<f64> = samples.iter().map(ReplicateSample::gap).collect();
        Self {
            k0: McEstimate::from_samples(&k0),
            k1: McEstimate::from_samples(&k1),
            gap: McEstimate::from_samples(&gap),
            master_seed,
        }
    }
}

/// One grid point: closed forms, plus simulation results when requested.
/// `slope_analytic` uses the integer group-size convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n_total: usize,
    pub f_minority: f64,
    pub h00: f64,
    pub h11: f64,
    pub k0_analytic: f64,
    pub k1_analytic: f64,
    pub gap_analytic: f64,
    pub slope_analytic: f64,
    pub mc: Option<McColumns>,
}

impl SweepRow {
    pub fn analytic(params: &ModelParams) -> Self {
        let stats = ExpectedStats::compute(params);
        Self {
            n_total: params.n_total(),
            f_minority: params.f_minority(),
            h00: params.h_intra_minority(),
            h11: params.h_intra_majority(),
            k0_analytic: stats.k0_mean,
            k1_analytic: stats.k1_mean,
            gap_analytic: stats.gap,
            slope_analytic: stats.gap_slope,
            mc: None,
        }
    }

    /// Closed forms plus a Monte Carlo run under `cfg`.
    pub fn simulated(params: &ModelParams, cfg: &McConfig) -> Result<Self> {
        if cfg.replicates < 2 {
            return Err(Error::TooFewReplicates {
                min: 2,
                got: cfg.replicates,
            });
        }
        let samples = mc_replicates(params, cfg)?;
        Ok(Self {
            mc: Some(McColumns::from_samples(&samples, cfg.master_seed)),
            ..Self::analytic(params)
        })
    }
}

impl Record for SweepRow {
    const COLUMNS: &'static [&'static str] = &[
        "n_total",
        "f_minority",
        "h00",
        "h11",
        "k0_analytic",
        "k1_analytic",
        "gap_analytic",
        "slope_analytic",
        "k0_mc_mean",
        "k0_mc_se",
        "k1_mc_mean",
        "k1_mc_se",
        "gap_mc_mean",
        "gap_mc_se",
        "replicates",
        "master_seed",
    ];

    fn cells(&self) -> Vec<Cell> {
        let mc = self.mc.as_ref();
        vec![
            self.n_total.into(),
            self.f_minority.into(),
            self.h00.into(),
            self.h11.into(),
            self.k0_analytic.into(),
            self.k1_analytic.into(),
            self.gap_analytic.into(),
            self.slope_analytic.into(),
            mc.map(|m| m.k0.mean).into(),
            mc.map(|m| m.k0.std_error).into(),
            mc.map(|m| m.k1.mean).into(),
            mc.map(|m| m.k1.std_error).into(),
            mc.map(|m| m.gap.mean).into(),
            mc.map(|m| m.gap.std_error).into(),
            mc.map(|m| m.gap.replicates).into(),
            mc.map(|m| m.master_seed).into(),
        ]
    }
}

/// One row per grid point, in [`SweepGrid::points`] order. With `mc`,
/// point `i` is simulated under `mc.child(i)`; the row records the
/// sweep's master seed.
pub fn sweep(grid: &SweepGrid, mc: Option<&McConfig>) -> Result<Vec<SweepRow>> {
    grid.points()
        .enumerate()
        .map(|(index, (n, f, h00, h11))| {
            let wrap = |source: Error| Error::InvalidGridPoint {
                index,
                n_total: n,
                f_minority: f,
                h00,
                h11,
                source: Box::new(source),
            };
            let params = ModelParams::new(n, f, h00, h11).map_err(wrap)?;
            match mc {
                None => Ok(SweepRow::analytic(&params)),
                Some(cfg) => {
                    let mut row = SweepRow::simulated(&params, &cfg.child(index))?;
                    if let Some(m) = row.mc.as_mut() {
                        m.master_seed = cfg.master_seed;
                    }
                    Ok(row)
                }
            }
        })
        .collect()
}

/// Inputs of an empirical critical-size search.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSearch {
    pub n_total: usize,
    pub h11: f64,
    /// `(f_lo, f_hi)`; the analytic slope must be negative at `f_lo` and
    /// positive at `f_hi`.
    pub bracket: (f64, f64),
    pub tol: f64,
    /// `h00` values at which the gap is simulated for each slope estimate.
    pub h_grid: Vec<f64>,
    /// Total replicates that may be spent, over all grid points and steps.
    pub replicate_budget: Option<u64>,
}

impl CriticalSearch {
    pub fn new(n_total: usize, h11: f64) -> Self {
        Self {
            n_total,
            h11,
            bracket: (0.15, 0.35),
            tol: 0.01,
            h_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            replicate_budget: None,
        }
    }
}

/// How one bisection step chose its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepDecision {
    /// The simulated slope was more than 3 standard errors from zero.
    Simulated,
    /// The simulated slope was within 3 standard errors of zero; the sign
    /// of the integer-size analytic slope was used instead.
    AnalyticFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionStep {
    pub f_mid: f64,
    pub slope: McEstimate,
    pub decision: StepDecision,
    pub bracket_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSizeEstimate {
    pub n_total: usize,
    /// `(2 + N) / (4N)`
    pub f_star_analytic: f64,
    /// Midpoint of the final bracket; `None` when the bracket admits only
    /// one integer minority size and nothing can be detected.
    pub f_star_empirical: Option<f64>,
    pub bracket_width: f64,
    pub h11_used: f64,
    pub replicates_used: u64,
    pub steps: Vec<BisectionStep>,
}

impl CriticalSizeEstimate {
    /// `|f_star_empirical - f_star_analytic|`
    pub fn abs_error(&self) -> Option<f64> {
        self.f_star_empirical.map(|f| (f - self.f_star_analytic).abs())
    }
}

impl Record for CriticalSizeEstimate {
    const COLUMNS: &'static [&'static str] = &[
        "n_total",
        "f_star_analytic",
        "f_star_empirical",
        "abs_error",
        "bracket_width",
        "h11_used",
        "replicates_used",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n_total.into(),
            self.f_star_analytic.into(),
            self.f_star_empirical.into(),
            self.abs_error().into(),
            self.bracket_width.into(),
            self.h11_used.into(),
            self.replicates_used.into(),
        ]
    }
}

fn integer_slope_at(n_total: usize, f: f64) -> f64 {
    gap_slope_integer(n_total, minority_size(n_total, f))
}

/// Bisection on the sign of the simulated gap slope.
///
/// Both bracket ends are checked against the integer-size analytic slope
/// before any simulation. At each midpoint the slope is estimated with
/// [`mc_gap_slope`] under `mc.child(step)`; when the estimate lies within 3
/// standard errors of zero the analytic sign decides the step. A zero slope
/// counts as non-negative. Stops once the bracket is no wider than `tol`.
pub fn detect_critical_size(search: &CriticalSearch, mc: &McConfig) -> Result<CriticalSizeEstimate> {
    let n = search.n_total;
    let (f_lo, f_hi) = search.bracket;
    for (name, f) in [("f_lo", f_lo), ("f_hi", f_hi)] {
        if !(f > 0.0 && f < 1.0) {
            return Err(Error::OutOfRange {
                name,
                value: f,
                expected: "0 < f < 1",
            });
        }
    }
    if !(f_lo < f_hi) {
        return Err(Error::OutOfRange {
            name: "f_hi",
            value: f_hi,
            expected: "f_hi > f_lo",
        });
    }
    if !(search.tol > 0.0) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: search.tol,
            expected: "tol > 0",
        });
    }
    let f_star_analytic = critical_minority_size(n);
    let mut estimate = CriticalSizeEstimate {
        n_total: n,
        f_star_analytic,
        f_star_empirical: None,
        bracket_width: 0.0,
        h11_used: search.h11,
        replicates_used: 0,
        steps: Vec::new(),
    };

    let n0_lo = minority_size(n, f_lo).max(1);
    let n0_hi = minority_size(n, f_hi).min(n.saturating_sub(1));
    if n0_lo >= n0_hi {
        return Ok(estimate);
    }

    let slope_lo = integer_slope_at(n, f_lo);
    let slope_hi = integer_slope_at(n, f_hi);
    if !(slope_lo < 0.0 && slope_hi > 0.0) {
        return Err(Error::NoSignChange {
            n_total: n,
            f_lo,
            f_hi,
            slope_lo,
            slope_hi,
        });
    }

    let per_step = (mc.replicates * search.h_grid.len()) as u64;
    let (mut lo, mut hi) = (f_lo, f_hi);
    let mut step = 0;
    while hi - lo > search.tol {
        if let Some(budget) = search.replicate_budget {
            if estimate.replicates_used + per_step > budget {
                return Err(Error::BudgetExceeded {
                    budget,
                    width: hi - lo,
                    tol: search.tol,
                });
            }
        }
        let mid = 0.5 * (lo + hi);
        let slope = mc_gap_slope(n, mid, search.h11, &search.h_grid, &mc.child(step))?;
        estimate.replicates_used += per_step;
        let (negative, decision) = if slope.mean.abs() > 3.0 * slope.std_error {
            (slope.mean < 0.0, StepDecision::Simulated)
        } else {
            (integer_slope_at(n, mid) < 0.0, StepDecision::AnalyticFallback)
        };
        if negative {
            lo = mid;
        } else {
            hi = mid;
        }
        estimate.steps.push(BisectionStep {
            f_mid: mid,
            slope,
            decision,
            bracket_width: hi - lo,
        });
        step += 1;
    }
    estimate.f_star_empirical = Some(0.5 * (lo + hi));
    estimate.bracket_width = hi - lo;
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::expected_group_degrees;

    #[test]
    fn stepped_grids() {
        assert_eq!(stepped(0.0, 1.0, 0.1).len(), 11);
        assert_eq!(stepped(0.0, 1.0, 0.1)[3], 0.3);
        assert_eq!(stepped(100.0, 2000.0, 100.0).len(), 20);
        assert_eq!(stepped(0.5, 0.5, 0.1), vec![0.5]);
        assert!(stepped(1.0, 0.0, 0.1).is_empty());
    }

    #[test]
    fn single_point_matches_model() {
        let rows = sweep(&SweepGrid::point(200, 0.2, 0.8, 0.8), None).unwrap();
        assert_eq!(rows.len(), 1);
        let p = ModelParams::new(200, 0.2, 0.8, 0.8).unwrap();
        let (k0, k1) = expected_group_degrees(&p);
        let row = rows[0];
        assert_eq!((row.k0_analytic, row.k1_analytic, row.gap_analytic), (k0, k1, k0 - k1));
        assert_eq!(row.slope_analytic, -21.0);
        assert!(row.mc.is_none());
        assert!(row.cells()[8..].iter().all(|c| *c == Cell::Missing));
    }

    #[test]
    fn grid_order_is_lexicographic() {
        let grid = SweepGrid {
            n_total: vec![100, 200],
            f_minority: vec![0.2, 0.3],
            h00: vec![0.1, 0.9],
            h11: vec![0.5],
        };
        let rows = sweep(&grid, None).unwrap();
        assert_eq!(rows.len(), 8);
        let keys: Vec<_> = rows.iter().map(|r| (r.n_total, r.f_minority, r.h00)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
    }

    #[test]
    fn invalid_point_is_identified() {
        let grid = SweepGrid {
            n_total: vec![100],
            f_minority: vec![0.2, 1.2],
            h00: vec![0.5],
            h11: vec![0.5],
        };
        match sweep(&grid, None) {
            Err(Error::InvalidGridPoint { index: 1, f_minority, .. }) => assert_eq!(f_minority, 1.2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_bracket_skips_detection() {
        let est = detect_critical_size(&CriticalSearch::new(2, 0.5), &McConfig::new(10, 1)).unwrap();
        assert_eq!(est.f_star_analytic, 0.5);
        assert_eq!(est.f_star_empirical, None);
        assert_eq!(est.replicates_used, 0);
    }

    #[test]
    fn bracket_without_sign_change_is_rejected() {
        let mut search = CriticalSearch::new(1000, 0.5);
        search.bracket = (0.3, 0.4);
        assert!(matches!(
            detect_critical_size(&search, &McConfig::new(10, 1)),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let mut search = CriticalSearch::new(100, 0.5);
        search.replicate_budget = Some(60);
        let err = detect_critical_size(&search, &McConfig::new(10, 1)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 60, .. }));
    }

    #[test]
    fn bisection_halves_bracket() {
        let search = CriticalSearch::new(200, 0.5);
        let est = detect_critical_size(&search, &McConfig::new(20, 4)).unwrap();
        let mut width = 0.2;
        for step in &est.steps {
            width /= 2.0;
            assert!((step.bracket_width - width).abs() < 1e-12);
        }
        assert!(est.bracket_width <= 0.01);
        assert_eq!(est.replicates_used, est.steps.len() as u64 * 100);
    }
}

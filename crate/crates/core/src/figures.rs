//! Datasets behind the five homophily-trap figure panels.
//!
//! * `a`, `b`: group degrees against `h00` at `f0 = 0.2` and `f0 = 0.3`.
//! * `c`: both minority sizes in one table, for the gap against `h00`.
//! * `d`: gap slope against `f0` for several `h11`, analytic and simulated.
//! * `e`: critical minority size against `N`, analytic and detected.
//!
//! Panels a-c use `h11 = 0.8` unless overridden.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mc::{mc_gap_slope, McConfig, McEstimate};
use crate::model::{critical_minority_size, gap_slope, gap_slope_integer, ModelParams};
use crate::sweep::{detect_critical_size, stepped, sweep, CriticalSearch, CriticalSizeEstimate, SweepGrid};
use crate::table::{Cell, Record, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Panel {
    A,
    B,
    C,
    D,
    E,
}

impl Panel {
    pub const ALL: [Panel; 5] = [Panel::A, Panel::B, Panel::C, Panel::D, Panel::E];

    pub fn letter(self) -> char {
        match self {
            Panel::A => 'a',
            Panel::B => 'b',
            Panel::C => 'c',
            Panel::D => 'd',
            Panel::E => 'e',
        }
    }

    /// `fig1<letter>.csv`
    pub fn file_name(self, extension: &str) -> String {
        format!("fig1{}.{extension}", self.letter())
    }
}

impl fmt::Display for Panel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Panel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Panel::A),
            "b" => Ok(Panel::B),
            "c" => Ok(Panel::C),
            "d" => Ok(Panel::D),
            "e" => Ok(Panel::E),
            other => Err(Error::UnknownPanel(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureOptions {
    /// Network size for panels a-d.
    pub n_total: usize,
    /// Majority homophily for panels a-c.
    pub h11: f64,
    pub h00_grid: Vec<f64>,
    pub f0_grid_slope: Vec<f64>,
    pub h11_values_slope: Vec<f64>,
    /// `h00` points behind each simulated slope (panels d and e).
    pub slope_h_grid: Vec<f64>,
    pub n_grid_critical: Vec<usize>,
    /// Largest `N` for which panel e runs a detection.
    pub critical_mc_max_n: usize,
    pub critical_h11: f64,
    pub critical_bracket: (f64, f64),
    pub critical_tol: f64,
    pub replicate_budget: Option<u64>,
    /// Simulation settings; analytic columns only when `None`.
    pub mc: Option<McConfig>,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            n_total: 1000,
            h11: 0.8,
            h00_grid: stepped(0.0, 1.0, 0.1),
            f0_grid_slope: stepped(0.05, 0.45, 0.05),
            h11_values_slope: vec![0.2, 0.5, 0.8],
            slope_h_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            n_grid_critical: vec![10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10_000, 100_000, 1_000_000],
            critical_mc_max_n: 1000,
            critical_h11: 0.5,
            critical_bracket: (0.15, 0.35),
            critical_tol: 0.01,
            replicate_budget: None,
            mc: None,
        }
    }
}

/// Gap slope in `h00` at one `(N, f0, h11)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeRow {
    pub n_total: usize,
    pub f_minority: f64,
    pub n_minority: usize,
    pub h11: f64,
    /// `2 N f0 - N/2 - 1`
    pub slope_continuous: f64,
    /// `(4 n0 - N - 2) / 2`
    pub slope_integer: f64,
    pub mc: Option<McEstimate>,
    pub master_seed: Option<u64>,
}

impl Record for SlopeRow {
    const COLUMNS: &'static [&'static str] = &[
        "n_total",
        "f_minority",
        "n_minority",
        "h11",
        "slope_continuous",
        "slope_integer",
        "slope_mc_mean",
        "slope_mc_se",
        "replicates",
        "master_seed",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n_total.into(),
            self.f_minority.into(),
            self.n_minority.into(),
            self.h11.into(),
            self.slope_continuous.into(),
            self.slope_integer.into(),
            self.mc.map(|m| m.mean).into(),
            self.mc.map(|m| m.std_error).into(),
            self.mc.map(|m| m.replicates).into(),
            self.master_seed.into(),
        ]
    }
}

fn degree_panel(f_values: Vec<f64>, opts: &FigureOptions) -> Result<Table> {
    let grid = SweepGrid {
        n_total: vec![opts.n_total],
        f_minority: f_values,
        h00: opts.h00_grid.clone(),
        h11: vec![opts.h11],
    };
    Ok(Table::from_records(&sweep(&grid, opts.mc.as_ref())?))
}

/// Rows ordered by `h11`, then `f0`. Row `i` simulates under
/// `mc.child(i)`.
pub fn slope_panel(opts: &FigureOptions) -> Result<Vec<SlopeRow>> {
    let n = opts.n_total;
    let mut rows = Vec::new();
    for &h11 in &opts.h11_values_slope {
        for &f in &opts.f0_grid_slope {
            let params = ModelParams::new(n, f, opts.slope_h_grid.first().copied().unwrap_or(0.0), h11)?;
            let index = rows.len();
            let mc = match &opts.mc {
                Some(cfg) => Some(mc_gap_slope(n, f, h11, &opts.slope_h_grid, &cfg.child(index))?),
                None => None,
            };
            rows.push(SlopeRow {
                n_total: n,
                f_minority: f,
                n_minority: params.n_minority(),
                h11,
                slope_continuous: gap_slope(n, f),
                slope_integer: gap_slope_integer(n, params.n_minority()),
                mc,
                master_seed: opts.mc.map(|c| c.master_seed),
            });
        }
    }
    Ok(rows)
}

/// One row per `N`. Detection runs when simulation is enabled, `N` is at
/// most `critical_mc_max_n`, and the analytic slope changes sign across
/// the bracket; otherwise only the analytic column is filled.
pub fn critical_panel(opts: &FigureOptions) -> Result<Vec<CriticalSizeEstimate>> {
    opts.n_grid_critical
        .iter()
        .enumerate()
        .map(|(index, &n)| {
            let analytic_only = CriticalSizeEstimate {
                n_total: n,
                f_star_analytic: critical_minority_size(n),
                f_star_empirical: None,
                bracket_width: 0.0,
                h11_used: opts.critical_h11,
                replicates_used: 0,
                steps: Vec::new(),
            };
            let cfg = match &opts.mc {
                Some(cfg) if n <= opts.critical_mc_max_n => cfg.child(index),
                _ => return Ok(analytic_only),
            };
            let search = CriticalSearch {
                n_total: n,
                h11: opts.critical_h11,
                bracket: opts.critical_bracket,
                tol: opts.critical_tol,
                h_grid: opts.slope_h_grid.clone(),
                replicate_budget: opts.replicate_budget,
            };
            match detect_critical_size(&search, &cfg) {
                Err(Error::NoSignChange { .. }) => Ok(analytic_only),
                other => other,
            }
        })
        .collect()
}

/// Table for one panel.
pub fn fig1_dataset(panel: Panel, opts: &FigureOptions) -> Result<Table> {
    match panel {
        Panel::A => degree_panel(vec![0.2], opts),
        Panel::B => degree_panel(vec![0.3], opts),
        Panel::C => degree_panel(vec![0.2, 0.3], opts),
        Panel::D => Ok(Table::from_records(&slope_panel(opts)?)),
        Panel::E => Ok(Table::from_records(&critical_panel(opts)?)),
    }
}

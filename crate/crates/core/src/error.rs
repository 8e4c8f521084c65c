use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} out of range: {value} (expected {expected})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("f0 yields an empty group (n0={n_minority}, n1={n_majority})")]
    DegenerateGroup { n_minority: usize, n_majority: usize },

    #[error("n={n_total} exceeds the generator capacity of {max_nodes} nodes")]
    Capacity { n_total: usize, max_nodes: usize },

    #[error("replicates must be at least {min}, got {got}")]
    TooFewReplicates { min: usize, got: usize },

    #[error("h00 grid needs at least 2 distinct points in [0, 1], got {distinct}")]
    GridTooSmall { distinct: usize },

    #[error("invalid grid point #{index} (n={n_total}, f0={f_minority}, h00={h00}, h11={h11}): {source}")]
    InvalidGridPoint {
        index: usize,
        n_total: usize,
        f_minority: f64,
        h00: f64,
        h11: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("no sign change of the gap slope over f0 in [{f_lo}, {f_hi}] at n={n_total} (slopes {slope_lo}, {slope_hi})")]
    NoSignChange {
        n_total: usize,
        f_lo: f64,
        f_hi: f64,
        slope_lo: f64,
        slope_hi: f64,
    },

    #[error("replicate budget of {budget} exhausted with bracket width {width} > tol {tol}")]
    BudgetExceeded { budget: u64, width: f64, tol: f64 },

    #[error("unknown panel {0:?} (expected one of a, b, c, d, e)")]
    UnknownPanel(String),

    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

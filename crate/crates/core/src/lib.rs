//! Two-group homophily network model.
//!
//! Nodes are split into a minority group 0 of size `n0` and a majority
//! group 1 of size `n1`. Every unordered pair of nodes is joined
//! independently, with probability `h00` inside group 0, `h11` inside
//! group 1, and `((1 - h00) + (1 - h11)) / 2` across groups.
//!
//! The crate provides:
//!
//! * [`model`]: closed-form expected edge counts, group degrees, the
//!   structural gap `k0 - k1`, its slope in `h00`, and the critical
//!   minority size `(2 + N) / (4N)`.
//! * [`generate`]: a seeded sampler producing [`LabeledGraph`]s with those
//!   expectations, plus the text edge-list format in [`edgelist`].
//! * [`mc`]: replicated Monte Carlo estimates with standard errors.
//! * [`sweep`] and [`figures`]: parameter grids joining analytic and
//!   simulated values, critical-size detection, and figure datasets.

pub mod edgelist;
pub mod error;
pub mod figures;
pub mod generate;
pub mod mc;
pub mod model;
pub mod rng;
pub mod sweep;
pub mod table;

pub use error::{Error, Result};
pub use generate::{generate, GenSpec, GeneratorConfig, LabeledGraph};
pub use mc::{McConfig, McEstimate};
pub use model::{ExpectedStats, ModelParams};
pub use sweep::{CriticalSizeEstimate, SweepGrid, SweepRow};

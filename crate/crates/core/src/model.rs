//! Closed-form expectations of the two-group model.
//!
//! All quantities are expectations over the random graph, so edge counts
//! are kept as `f64` and never truncated. Group sizes are integers derived
//! from `f0` by [`ModelParams::new`].

use crate::error::{Error, Result};

/// One instance of the model: network size, minority fraction and the two
/// intra-group homophily values.
///
/// The minority size is `n0 = round(f0 * N)` (ties away from zero) and the
/// majority size is `n1 = N - n0`; both must be at least one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n_total: usize,
    n_minority: usize,
    f_minority: f64,
    h_intra_minority: f64,
    h_intra_majority: f64,
}

fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected: "0 <= value <= 1",
        })
    }
}

impl ModelParams {
    pub fn new(n_total: usize, f_minority: f64, h00: f64, h11: f64) -> Result<Self> {
        if n_total < 2 {
            return Err(Error::OutOfRange {
                name: "n",
                value: n_total as f64,
                expected: "n >= 2",
            });
        }
        if !(f_minority > 0.0 && f_minority < 1.0) {
            return Err(Error::OutOfRange {
                name: "f0",
                value: f_minority,
                expected: "0 < f0 < 1",
            });
        }
        let h00 = check_unit("h00", h00)?;
        let h11 = check_unit("h11", h11)?;
        let n_minority = minority_size(n_total, f_minority);
        if n_minority == 0 || n_minority >= n_total {
            return Err(Error::DegenerateGroup {
                n_minority,
                n_majority: n_total.saturating_sub(n_minority),
            });
        }
        Ok(Self {
            n_total,
            n_minority,
            f_minority,
            h_intra_minority: h00,
            h_intra_majority: h11,
        })
    }

    /// Builds parameters from explicit integer group sizes. `f0` is set to
    /// `n0 / N`, which rounds back to `n0`.
    pub fn from_group_sizes(n_minority: usize, n_majority: usize, h00: f64, h11: f64) -> Result<Self> {
        let n_total = n_minority + n_majority;
        if n_minority == 0 || n_majority == 0 {
            return Err(Error::DegenerateGroup {
                n_minority,
                n_majority,
            });
        }
        let f = n_minority as f64 / n_total as f64;
        let mut params = Self::new(n_total, f, h00, h11)?;
        params.n_minority = n_minority;
        Ok(params)
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    /// `n0`, the size of group 0.
    pub fn n_minority(&self) -> usize {
        self.n_minority
    }

    /// `n1 = N - n0`.
    pub fn n_majority(&self) -> usize {
        self.n_total - self.n_minority
    }

    pub fn f_minority(&self) -> f64 {
        self.f_minority
    }

    /// `h00`
    pub fn h_intra_minority(&self) -> f64 {
        self.h_intra_minority
    }

    /// `h11`
    pub fn h_intra_majority(&self) -> f64 {
        self.h_intra_majority
    }

    /// `h01 = 1 - h00`
    pub fn h_minority_to_majority(&self) -> f64 {
        1.0 - self.h_intra_minority
    }

    /// `h10 = 1 - h11`
    pub fn h_majority_to_minority(&self) -> f64 {
        1.0 - self.h_intra_majority
    }

    /// Probability that a given cross-group pair is an edge, `(h01 + h10) / 2`.
    pub fn p_cross(&self) -> f64 {
        (self.h_minority_to_majority() + self.h_majority_to_minority()) / 2.0
    }

    /// True iff `n0 < n1`. Results are valid either way, but the trap
    /// regime is only meaningful for a numerical minority.
    pub fn minority_is_smaller(&self) -> bool {
        self.n_minority < self.n_majority()
    }

    /// Same instance with a different `h00`.
    pub fn with_h00(&self, h00: f64) -> Result<Self> {
        Ok(Self {
            h_intra_minority: check_unit("h00", h00)?,
            ..*self
        })
    }

    /// Same instance with a different `h11`.
    pub fn with_h11(&self, h11: f64) -> Result<Self> {
        Ok(Self {
            h_intra_majority: check_unit("h11", h11)?,
            ..*self
        })
    }

    /// Relabels the groups: sizes and intra-group homophily are exchanged.
    pub fn swapped(&self) -> Self {
        let n_minority = self.n_majority();
        Self {
            n_total: self.n_total,
            n_minority,
            f_minority: n_minority as f64 / self.n_total as f64,
            h_intra_minority: self.h_intra_majority,
            h_intra_majority: self.h_intra_minority,
        }
    }
}

/// `round(f0 * N)` with ties rounded away from zero.
pub fn minority_size(n_total: usize, f_minority: f64) -> usize {
    (f_minority * n_total as f64).round().max(0.0) as usize
}

/// Expected number of edges per ordered group pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCounts {
    pub e00: f64,
    pub e01: f64,
    pub e10: f64,
    pub e11: f64,
}

impl EdgeCounts {
    /// Expected number of cross-group edges, `E01 + E10`.
    pub fn cross(&self) -> f64 {
        self.e01 + self.e10
    }

    pub fn total(&self) -> f64 {
        self.e00 + self.e01 + self.e10 + self.e11
    }
}

pub fn expected_edge_counts(params: &ModelParams) -> EdgeCounts {
    let n0 = params.n_minority() as f64;
    let n1 = params.n_majority() as f64;
    EdgeCounts {
        e00: n0 * (n0 - 1.0) * params.h_intra_minority() / 2.0,
        e01: n0 * n1 * params.h_minority_to_majority() / 2.0,
        e10: n1 * n0 * params.h_majority_to_minority() / 2.0,
        e11: n1 * (n1 - 1.0) * params.h_intra_majority() / 2.0,
    }
}

/// Expected average degree of group 0 and group 1,
/// `<k_i> = (2 E_ii + E_ij + E_ji) / n_i`.
pub fn expected_group_degrees(params: &ModelParams) -> (f64, f64) {
    degrees_from_counts(&expected_edge_counts(params), params)
}

fn degrees_from_counts(counts: &EdgeCounts, params: &ModelParams) -> (f64, f64) {
    let k0 = (2.0 * counts.e00 + counts.e01 + counts.e10) / params.n_minority() as f64;
    let k1 = (2.0 * counts.e11 + counts.e10 + counts.e01) / params.n_majority() as f64;
    (k0, k1)
}

/// Structural gap `<k0> - <k1>`.
pub fn structural_gap(params: &ModelParams) -> f64 {
    let (k0, k1) = expected_group_degrees(params);
    k0 - k1
}

/// Derivative of the gap in `h00` in its continuous form,
/// `2 N f0 - N / 2 - 1`. Used for analytic curves over real `f0`.
pub fn gap_slope(n_total: usize, f_minority: f64) -> f64 {
    let n = n_total as f64;
    2.0 * n * f_minority - n / 2.0 - 1.0
}

/// Derivative of the gap in `h00` for integer group sizes,
/// `(4 n0 - N - 2) / 2`. This is the exact finite-difference slope of
/// [`structural_gap`] for an instance with `n0` minority nodes.
pub fn gap_slope_integer(n_total: usize, n_minority: usize) -> f64 {
    (4.0 * n_minority as f64 - n_total as f64 - 2.0) / 2.0
}

/// Minority fraction at which the gap slope vanishes, `(2 + N) / (4N)`.
pub fn critical_minority_size(n_total: usize) -> f64 {
    let n = n_total as f64;
    (2.0 + n) / (4.0 * n)
}

/// All closed-form quantities for one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedStats {
    pub e00: f64,
    pub e01: f64,
    pub e10: f64,
    pub e11: f64,
    pub k0_mean: f64,
    pub k1_mean: f64,
    pub gap: f64,
    /// Integer-size convention, see [`gap_slope_integer`].
    pub gap_slope: f64,
}

impl ExpectedStats {
    pub fn compute(params: &ModelParams) -> Self {
        let counts = expected_edge_counts(params);
        let (k0_mean, k1_mean) = degrees_from_counts(&counts, params);
        Self {
            e00: counts.e00,
            e01: counts.e01,
            e10: counts.e10,
            e11: counts.e11,
            k0_mean,
            k1_mean,
            gap: k0_mean - k1_mean,
            gap_slope: gap_slope_integer(params.n_total(), params.n_minority()),
        }
    }
}

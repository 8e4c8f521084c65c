//! Browser bindings for the homophily model.
//!
//! Every export returns a flat `Float64Array` laid out row by row, so the
//! page can plot it without any serialisation layer. Errors surface as
//! JavaScript exceptions carrying the validation message.

use homophily_core::mc::{mc_group_degrees, McConfig};
use homophily_core::model::{critical_minority_size, expected_group_degrees, gap_slope, gap_slope_integer, ModelParams};
use wasm_bindgen::prelude::*;

/// Values per row of [`degree_curve`].
pub const DEGREE_ROW: usize = 4;

/// Expected group degrees over `points` evenly spaced h00 values in
/// [0, 1]. Rows are `[h00, k0, k1, k0 - k1]`.
#[wasm_bindgen]
pub fn degree_curve(n: usize, f0: f64, h11: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err(format!("points out of range: {points} (expected >= 2)"));
    }
    let base = ModelParams::new(n, f0, 0.0, h11).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(points * DEGREE_ROW);
    for i in 0..points {
        let h00 = i as f64 / (points - 1) as f64;
        let (k0, k1) = expected_group_degrees(&base.with_h00(h00).map_err(|e| e.to_string())?);
        out.extend([h00, k0, k1, k0 - k1]);
    }
    Ok(out)
}

/// Gap slope d(k0 - k1)/dh00 across minority fractions. Rows are
/// `[f0, n0, continuous slope, integer slope]`; fractions that leave a
/// group empty are skipped.
#[wasm_bindgen]
pub fn slope_curve(n: usize, f0_min: f64, f0_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 || !(f0_min < f0_max) {
        return Err("need points >= 2 and f0_min < f0_max".into());
    }
    let mut out = Vec::new();
    for i in 0..points {
        let f0 = f0_min + (f0_max - f0_min) * i as f64 / (points - 1) as f64;
        let Ok(p) = ModelParams::new(n, f0, 0.5, 0.5) else { continue };
        let n0 = p.n_minority();
        out.extend([f0, n0 as f64, gap_slope(n, f0), gap_slope_integer(n, n0)]);
    }
    Ok(out)
}

/// Critical minority fraction at log-spaced network sizes from 10 to
/// `n_max`. Rows are `[N, f*]`.
#[wasm_bindgen]
pub fn critical_curve(n_max: usize, points: usize) -> Result<Vec<f64>, String> {
    if n_max < 10 || points < 2 {
        return Err("need n_max >= 10 and points >= 2".into());
    }
    let (lo, hi) = (10f64.ln(), (n_max as f64).ln());
    let mut out = Vec::with_capacity(points * 2);
    let mut last = 0;
    for i in 0..points {
        let n = (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp().round() as usize;
        if n == last {
            continue;
        }
        last = n;
        out.extend([n as f64, critical_minority_size(n)]);
    }
    Ok(out)
}

/// Monte Carlo group degrees at one point, with the closed forms
/// alongside: `[k0 mean, k0 se, k1 mean, k1 se, k0 expected, k1 expected]`.
#[wasm_bindgen]
pub fn simulate_point(n: usize, f0: f64, h00: f64, h11: f64, replicates: usize, seed: u32) -> Result<Vec<f64>, String> {
    const MAX_NODES: usize = 5_000;
    if n > MAX_NODES {
        return Err(format!("n out of range: {n} (the demo simulates up to {MAX_NODES} nodes)"));
    }
    let params = ModelParams::new(n, f0, h00, h11).map_err(|e| e.to_string())?;
    let (k0, k1) = mc_group_degrees(&params, &McConfig::new(replicates, seed.into())).map_err(|e| e.to_string())?;
    let (e0, e1) = expected_group_degrees(&params);
    Ok(vec![k0.mean, k0.std_error, k1.mean, k1.std_error, e0, e1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_curve_is_linear_in_h00() {
        let rows = degree_curve(1000, 0.2, 0.8, 11).unwrap();
        assert_eq!(rows.len(), 11 * DEGREE_ROW);
        let gaps: Vec<f64> = rows.chunks(DEGREE_ROW).map(|r| r[3]).collect();
        for w in gaps.windows(2) {
            assert!((w[1] - w[0] + 10.1).abs() < 1e-9);
        }
        assert!(degree_curve(1000, 1.2, 0.8, 11).is_err());
        assert!(degree_curve(1000, 0.2, 0.8, 1).is_err());
    }

    #[test]
    fn slope_changes_sign() {
        let rows = slope_curve(1000, 0.2, 0.3, 3).unwrap();
        let slopes: Vec<f64> = rows.chunks(4).map(|r| r[3]).collect();
        assert_eq!(slopes, vec![-101.0, -1.0, 99.0]);
    }

    #[test]
    fn critical_curve_endpoints() {
        let rows = critical_curve(1000, 4).unwrap();
        assert_eq!(rows, vec![10.0, 0.3, 46.0, (2.0 + 46.0) / 184.0, 215.0, 217.0 / 860.0, 1000.0, 0.2505]);
    }

    #[test]
    fn simulation_tracks_closed_form() {
        let r = simulate_point(200, 0.2, 0.8, 0.8, 200, 3).unwrap();
        assert!((r[0] - r[4]).abs() <= 4.0 * r[1]);
        assert!((r[2] - r[5]).abs() <= 4.0 * r[3]);
        assert!(simulate_point(50_000, 0.2, 0.8, 0.8, 10, 3).is_err());
    }
}

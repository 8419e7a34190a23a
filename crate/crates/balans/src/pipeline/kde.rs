//! Gaussian kernel density estimation on a fixed 512-point grid, used for
//! the conditional return distributions.

use crate::error::{Error, Result};
use crate::risk::quantile_sorted;

/// Number of grid points the density is evaluated on.
pub const KDE_GRID_POINTS: usize = 512;

/// Smallest admissible bandwidth (guards zero-variance samples).
pub const KDE_BANDWIDTH_FLOOR: f64 = 1e-6;

/// Silverman's rule of thumb h = 0.9·min(σ, IQR/1.34)·n^{−1/5}, with the
/// sample standard deviation and the linear-interpolation IQR, floored at
/// [`KDE_BANDWIDTH_FLOOR`].
pub fn silverman_bandwidth(sample: &[f64]) -> Result<f64> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::Invalid(format!("bandwidth rule needs at least 2 points, got {n}")));
    }
    let mean = sample.iter().sum::<f64>() / n as f64;
    let var = sample.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let sigma = var.sqrt();

    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite entries compare"));
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);

    let spread = if iqr > 0.0 { sigma.min(iqr / 1.34) } else { sigma };
    let h = 0.9 * spread * (n as f64).powf(-0.2);
    Ok(h.max(KDE_BANDWIDTH_FLOOR))
}

/// Gaussian KDE of `sample` on a 512-point grid spanning
/// [min − 3h, max + 3h]. `bandwidth` overrides Silverman's rule.
pub fn gaussian_kde(sample: &[f64], bandwidth: Option<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::Invalid(format!("KDE needs at least 2 points, got {n}")));
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("KDE sample has non-finite entries".into()));
    }
    let h = match bandwidth {
        Some(h) if h > 0.0 && h.is_finite() => h,
        Some(h) => return Err(Error::Invalid(format!("bandwidth {h} must be positive"))),
        None => silverman_bandwidth(sample)?,
    };

    let lo = sample.iter().cloned().fold(f64::INFINITY, f64::min) - 3.0 * h;
    let hi = sample.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 3.0 * h;
    let dx = (hi - lo) / (KDE_GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..KDE_GRID_POINTS).map(|k| lo + dx * k as f64).collect();

    let norm = 1.0 / (n as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    let densities: Vec<f64> = grid
        .iter()
        .map(|x| {
            sample
                .iter()
                .map(|xi| {
                    let z = (x - xi) / h;
                    (-0.5 * z * z).exp()
                })
                .sum::<f64>()
                * norm
        })
        .collect();
    Ok((grid, densities))
}

/// Trapezoid integral of a curve sampled on an even grid.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

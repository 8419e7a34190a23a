//! Rolling-window layout and per-window correlation matrices.
//!
//! Standardization uses the in-window mean and *population* variance
//! (divide by the window width), so C = (1/T)·X̃X̃ᵀ has an exactly unit
//! diagonal. Assets with zero in-window variance are dropped for that
//! window only, with a warning.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::pipeline::panel::ReturnPanel;

/// In-window variance at or below this is treated as degenerate.
pub const DEGENERATE_VARIANCE_TOL: f64 = 1e-30;

/// Rolling-window geometry: width ΔT and step Δt, both in days.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub width: usize,
    pub step: usize,
}

impl WindowSpec {
    pub fn new(width: usize, step: usize) -> Result<Self> {
        if width < 2 {
            return Err(Error::Invalid(format!("window width {width} must be at least 2")));
        }
        if step == 0 {
            return Err(Error::Invalid("window step must be at least 1".into()));
        }
        Ok(Self { width, step })
    }
}

/// One window: observation range [start, start+width) labeled by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub index: usize,
    pub start: usize,
}

impl Window {
    /// Index of the last observation inside the window.
    pub fn end(&self, spec: &WindowSpec) -> usize {
        self.start + spec.width - 1
    }
}

/// Window starts 0, Δt, 2Δt, …; count = floor((T − ΔT)/Δt) + 1.
pub fn rolling_windows(t_total: usize, spec: &WindowSpec) -> Result<Vec<Window>> {
    if spec.width > t_total {
        return Err(Error::Invalid(format!(
            "window width {} exceeds panel length {t_total}",
            spec.width
        )));
    }
    let count = (t_total - spec.width) / spec.step + 1;
    Ok((0..count).map(|index| Window { index, start: index * spec.step }).collect())
}

/// Correlation matrix of one window, plus the asset indices that survived
/// the degenerate-variance filter.
#[derive(Clone, Debug)]
pub struct WindowCorrelation {
    pub matrix: SymmetricMatrix,
    /// Indices into the panel's asset list, ascending.
    pub kept: Vec<usize>,
}

/// Builds C = (1/width)·X̃X̃ᵀ over observations [start, start+width).
pub fn window_correlation(r: &ReturnPanel, start: usize, width: usize) -> Result<WindowCorrelation> {
    if width < 2 {
        return Err(Error::Invalid(format!("window width {width} must be at least 2")));
    }
    let t = r.n_obs();
    if start + width > t {
        return Err(Error::Invalid(format!(
            "window [{start}, {}) outside panel of length {t}",
            start + width
        )));
    }

    // standardize each asset's slice; drop zero-variance assets for this window
    let mut kept = Vec::new();
    let mut standardized: Vec<Vec<f64>> = Vec::new();
    for (i, row) in r.returns().iter().enumerate() {
        let slice = &row[start..start + width];
        let mean = slice.iter().sum::<f64>() / width as f64;
        let var = slice.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / width as f64;
        if var <= DEGENERATE_VARIANCE_TOL {
            log::warn!(
                "asset {}: zero variance in window [{start}, {}), dropped for this window",
                r.asset_ids()[i],
                start + width
            );
            continue;
        }
        let sd = var.sqrt();
        kept.push(i);
        standardized.push(slice.iter().map(|v| (v - mean) / sd).collect());
    }
    if kept.len() < 2 {
        return Err(Error::Invalid(format!(
            "window [{start}, {}): fewer than 2 assets with nonzero variance",
            start + width
        )));
    }

    Ok(WindowCorrelation { matrix: correlation_of_standardized(&standardized, width), kept })
}

/// C = (1/width)·X̃X̃ᵀ for already-standardized rows; diagonal set to exactly
/// 1 and off-diagonals clamped to [−1, 1] against floating drift.
pub(crate) fn correlation_of_standardized(rows: &[Vec<f64>], width: usize) -> SymmetricMatrix {
    let n = rows.len();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let c = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / width as f64;
            let c = c.clamp(-1.0, 1.0);
            data[i * n + j] = c;
            data[j * n + i] = c;
        }
    }
    SymmetricMatrix::from_row_major(n, data).expect("constructed entries are finite")
}

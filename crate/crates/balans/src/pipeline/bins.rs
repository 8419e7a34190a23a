//! κ-conditional return statistics: windows are grouped into balance bins
//! (left-open, right-closed) and each bin's return sample is summarized.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::kde::gaussian_kde;
use crate::risk::empirical_var;

/// Named bin partitions of (0, 1].
pub const PRESET_EQUAL5: [f64; 6] = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
pub const PRESET_UNEVEN5: [f64; 6] = [0.0, 0.5, 0.8, 0.9, 0.99, 1.0];

/// Statistics of one bin's return sample. A bin with no members keeps
/// count 0 and undefined statistics; a singleton bin has a mean and a
/// (population) standard deviation but no KDE.
#[derive(Clone, Debug, Serialize)]
pub struct BinStat {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub mean: Option<f64>,
    /// Population standard deviation (divide by count).
    pub std: Option<f64>,
    /// Empirical value-at-risk of the bin sample at p = 0.05.
    pub var_p05: Option<f64>,
    pub kde_grid: Option<Vec<f64>>,
    pub kde_values: Option<Vec<f64>>,
}

/// Bin partition plus per-bin summaries.
#[derive(Clone, Debug, Serialize)]
pub struct BinSummary {
    pub edges: Vec<f64>,
    /// Pairs assigned to some bin (κ within (edges[0], edges[last]]).
    pub assigned: usize,
    pub bins: Vec<BinStat>,
}

/// Index of the bin holding `v` under the left-open right-closed convention
/// edges[k] < v ≤ edges[k+1]; None when v falls outside the partition.
pub fn bin_index(edges: &[f64], v: f64) -> Option<usize> {
    (0..edges.len() - 1).find(|&k| edges[k] < v && v <= edges[k + 1])
}

/// Checks a partition: ≥2 finite, strictly increasing edges within [0, 1].
pub fn validate_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::Invalid("bin partition needs at least 2 edges".into()));
    }
    if edges.iter().any(|e| !e.is_finite()) {
        return Err(Error::Invalid("bin edges must be finite".into()));
    }
    if !edges.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Invalid("bin edges must be strictly increasing".into()));
    }
    if edges[0] < 0.0 || *edges.last().expect("nonempty") > 1.0 {
        return Err(Error::Invalid("bin edges must lie within [0, 1]".into()));
    }
    Ok(())
}

/// Groups aligned (κ, return) pairs into bins and summarizes each bin's
/// return sample. Pairs whose κ falls outside the partition are dropped;
/// `assigned` counts the kept pairs.
pub fn conditional_bins(kappa: &[f64], returns: &[f64], edges: &[f64]) -> Result<BinSummary> {
    if kappa.len() != returns.len() {
        return Err(Error::Dimension(format!(
            "{} balance values but {} returns",
            kappa.len(),
            returns.len()
        )));
    }
    validate_edges(edges)?;
    if kappa.iter().chain(returns).any(|v| !v.is_finite()) {
        return Err(Error::Invalid("bin inputs must be finite".into()));
    }

    let n_bins = edges.len() - 1;
    let mut members: Vec<Vec<f64>> = vec![Vec::new(); n_bins];
    let mut assigned = 0;
    for (k, r) in kappa.iter().zip(returns) {
        if let Some(b) = bin_index(edges, *k) {
            members[b].push(*r);
            assigned += 1;
        }
    }

    let mut bins = Vec::with_capacity(n_bins);
    for (b, sample) in members.iter().enumerate() {
        let count = sample.len();
        let (mean, std) = if count == 0 {
            (None, None)
        } else {
            let m = sample.iter().sum::<f64>() / count as f64;
            let v = sample.iter().map(|x| (x - m).powi(2)).sum::<f64>() / count as f64;
            (Some(m), Some(v.sqrt()))
        };
        let var_p05 = if count == 0 { None } else { Some(empirical_var(sample, 0.05)?) };
        let (kde_grid, kde_values) = if count >= 2 {
            let (g, d) = gaussian_kde(sample, None)?;
            (Some(g), Some(d))
        } else {
            (None, None)
        };
        bins.push(BinStat {
            lo: edges[b],
            hi: edges[b + 1],
            count,
            mean,
            std,
            var_p05,
            kde_grid,
            kde_values,
        });
    }
    Ok(BinSummary { edges: edges.to_vec(), assigned, bins })
}

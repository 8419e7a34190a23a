//! Random-matrix experiments: the ℛ-vs-κ correlation sweep across matrix
//! sizes, and the spectral-limit checks for square iid-normal panels.

use rayon::prelude::*;
use serde::Serialize;

use crate::balance::global_balance;
use crate::conditioning::condition_ratio;
use crate::error::{Error, Result};
use crate::linalg::eig_sym;
use crate::pipeline::randcorr::{derive_seed, random_correlation, wishart_panel_correlation};
use crate::sgraph::SignedNetwork;

/// Limiting value of (1/N)·Σ e^{−λᵢ} for the correlation spectrum of a
/// square (N = T → ∞) iid standard-normal panel; a modified-Bessel series.
pub const LIMIT_TRACE_EXP_NEG: f64 = 0.523778;

/// Limiting value of (1/N)·Σ e^{λᵢ} for the same ensemble.
pub const LIMIT_TRACE_EXP_POS: f64 = 5.090679;

/// Limiting spectral moments (1/N)·Σ λᵏ, k = 1..4: the Catalan numbers.
pub const LIMIT_MOMENTS: [f64; 4] = [1.0, 2.0, 5.0, 14.0];

/// One row of the size sweep: Pearson correlation between ℛ(A) and κ(G)
/// over `reps` random correlation matrices of size n.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub reps: usize,
    pub pearson: f64,
}

/// Spectral-limit diagnostics of one square-panel correlation matrix.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralLimits {
    pub n: usize,
    pub t: usize,
    /// (1/N)·Σ e^{−λᵢ}
    pub exp_neg_mean: f64,
    /// (1/N)·Σ e^{λᵢ}
    pub exp_mean: f64,
    /// (1/N)·Σ λᵏ for k = 1..4
    pub moments: [f64; 4],
}

/// Pearson correlation coefficient of two aligned samples.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Invalid(format!(
            "Pearson needs two aligned samples of length >= 2, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
        sxy += (x - mx) * (y - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::Invalid("Pearson undefined for a zero-variance sample".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

fn ratio_and_balance(n: usize, seed: u64) -> Result<(f64, f64)> {
    let g = SignedNetwork::from_correlation(random_correlation(n, seed)?)?;
    Ok((condition_ratio(&g)?, global_balance(&g)?))
}

/// For each size, generates `reps` random correlation matrices and reports
/// the Pearson correlation between the condition-number ratio ℛ(A) and the
/// global balance κ(G). Per-task seeds are derived from (base seed, size
/// index, rep), so serial and parallel runs agree bit-exactly.
pub fn appendix_experiment(
    sizes: &[usize],
    reps: usize,
    seed: u64,
    parallel: bool,
) -> Result<Vec<ExperimentRow>> {
    if reps < 30 {
        return Err(Error::Invalid(format!("experiment needs reps >= 30, got {reps}")));
    }
    if sizes.is_empty() {
        return Err(Error::Invalid("experiment needs at least one size".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for (s_idx, &n) in sizes.iter().enumerate() {
        let pairs: Result<Vec<(f64, f64)>> = if parallel {
            (0..reps)
                .into_par_iter()
                .map(|rep| ratio_and_balance(n, derive_seed(seed, s_idx as u64, rep as u64)))
                .collect()
        } else {
            (0..reps)
                .map(|rep| ratio_and_balance(n, derive_seed(seed, s_idx as u64, rep as u64)))
                .collect()
        };
        let pairs = pairs?;
        let ratios: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let kappas: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        rows.push(ExperimentRow { n, reps, pearson: pearson(&ratios, &kappas)? });
    }
    Ok(rows)
}

/// Computes the spectral-limit diagnostics of an n×t iid-normal panel's
/// correlation matrix (compare against [`LIMIT_TRACE_EXP_NEG`],
/// [`LIMIT_TRACE_EXP_POS`], [`LIMIT_MOMENTS`] for large square panels).
pub fn spectral_limits(n: usize, t: usize, seed: u64) -> Result<SpectralLimits> {
    let c = wishart_panel_correlation(n, t, seed)?;
    let eig = eig_sym(&c)?;
    let lambda = eig.eigenvalues();
    let inv_n = 1.0 / n as f64;
    let exp_neg_mean = lambda.iter().map(|l| (-l).exp()).sum::<f64>() * inv_n;
    let exp_mean = lambda.iter().map(|l| l.exp()).sum::<f64>() * inv_n;
    let mut moments = [0.0; 4];
    for (k, slot) in moments.iter_mut().enumerate() {
        *slot = lambda.iter().map(|l| l.powi(k as i32 + 1)).sum::<f64>() * inv_n;
    }
    Ok(SpectralLimits { n, t, exp_neg_mean, exp_mean, moments })
}

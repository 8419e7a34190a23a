//! Rolling-window indicator series: one record per window, each carrying
//! the balance, conditioning, and risk indicators of that window's
//! correlation network.
//!
//! Per-window failures never abort the series: a window that cannot be
//! computed keeps its slot with empty values and the error message; a
//! window where only some indicators fail (e.g. a degenerate tail
//! eigenvalue for the AMRI) records the values that exist.

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::Serialize;

use crate::balance::global_balance_from;
use crate::conditioning::{condition_ratio_from, ratio_gap_approx_from};
use crate::error::{Error, Result};
use crate::pipeline::panel::ReturnPanel;
use crate::pipeline::window::{rolling_windows, window_correlation, Window, WindowSpec};
use crate::risk::{amri, average_correlation, crf, IndicatorConfig};
use crate::sgraph::SignedNetwork;

/// Parameters of one rolling run.
#[derive(Clone, Debug)]
pub struct RollingConfig {
    pub indicators: IndicatorConfig,
    /// Binarization threshold θ for the binary network variant.
    pub threshold: f64,
    /// Evaluate windows in parallel (ordering is by window index either way).
    pub parallel: bool,
}

impl Default for RollingConfig {
    fn default() -> Self {
        Self { indicators: IndicatorConfig::default(), threshold: 0.25, parallel: true }
    }
}

/// Indicators of one window. Empty values mean that piece failed; the
/// reason is in `error`.
#[derive(Clone, Debug, Serialize)]
pub struct WindowRecord {
    pub index: usize,
    pub end_date: NaiveDate,
    /// Assets that survived the degenerate-variance filter in this window.
    pub n_assets: usize,
    pub kappa_weighted: Option<f64>,
    pub kappa_binary: Option<f64>,
    pub ratio: Option<f64>,
    pub ratio_approx: Option<f64>,
    pub ratio_approx_rel_err: Option<f64>,
    /// One value per configured (h, p) pair, in configuration order.
    pub amri: Vec<Option<f64>>,
    /// One value per configured m, in configuration order.
    pub crf: Vec<Option<f64>>,
    pub avg_corr: Option<f64>,
    /// Partial sums λ₁, λ₁+λ₂, …, up to top_k terms.
    pub lambda_partial: Vec<Option<f64>>,
    pub error: Option<String>,
}

/// The full rolling series with its parameters echoed.
#[derive(Clone, Debug, Serialize)]
pub struct RollingSeries {
    pub spec: WindowSpec,
    pub threshold: f64,
    pub amri_params: Vec<(usize, f64)>,
    pub crf_params: Vec<usize>,
    pub top_k: usize,
    pub records: Vec<WindowRecord>,
}

fn grab(errs: &mut Vec<String>, label: &str, res: Result<f64>) -> Option<f64> {
    match res {
        Ok(v) => Some(v),
        Err(e) => {
            errs.push(format!("{label}: {e}"));
            None
        }
    }
}

fn empty_record(index: usize, end_date: NaiveDate, cfg: &RollingConfig, error: String) -> WindowRecord {
    WindowRecord {
        index,
        end_date,
        n_assets: 0,
        kappa_weighted: None,
        kappa_binary: None,
        ratio: None,
        ratio_approx: None,
        ratio_approx_rel_err: None,
        amri: vec![None; cfg.indicators.amri.len()],
        crf: vec![None; cfg.indicators.crf.len()],
        avg_corr: None,
        lambda_partial: vec![None; cfg.indicators.top_k],
        error: Some(error),
    }
}

fn compute_window(r: &ReturnPanel, w: &Window, spec: &WindowSpec, cfg: &RollingConfig) -> WindowRecord {
    let end_date = r.dates()[w.end(spec)];
    let wc = match window_correlation(r, w.start, spec.width) {
        Ok(wc) => wc,
        Err(e) => return empty_record(w.index, end_date, cfg, e.to_string()),
    };
    let g = match SignedNetwork::from_correlation(wc.matrix) {
        Ok(g) => g,
        Err(e) => return empty_record(w.index, end_date, cfg, e.to_string()),
    };
    let pair = match g.spectra() {
        Ok(p) => p,
        Err(e) => return empty_record(w.index, end_date, cfg, e.to_string()),
    };

    let mut errs = Vec::new();
    let kappa_weighted = grab(&mut errs, "kappa_weighted", global_balance_from(&pair));
    let kappa_binary = grab(
        &mut errs,
        "kappa_binary",
        g.binarize(cfg.threshold)
            .and_then(|b| b.spectra())
            .and_then(|p| global_balance_from(&p)),
    );
    let ratio = grab(&mut errs, "ratio", condition_ratio_from(&pair));
    let ratio_approx = Some(ratio_gap_approx_from(&pair));
    let ratio_approx_rel_err = match (ratio, ratio_approx) {
        (Some(r), Some(a)) if r != 0.0 => Some((a - r).abs() / r.abs()),
        _ => None,
    };
    let amri_vals = cfg
        .indicators
        .amri
        .iter()
        .map(|(h, p)| grab(&mut errs, &format!("amri_{h}_{p}"), amri(&pair.signed, *h, *p)))
        .collect();
    let crf_vals = cfg
        .indicators
        .crf
        .iter()
        .map(|m| grab(&mut errs, &format!("crf_{m}"), crf(&pair.signed, *m)))
        .collect();
    let avg_corr = grab(&mut errs, "avg_corr", average_correlation(g.weights()));

    let lambda = pair.signed.eigenvalues();
    let mut lambda_partial = Vec::with_capacity(cfg.indicators.top_k);
    let mut acc = 0.0;
    for k in 0..cfg.indicators.top_k {
        if k < lambda.len() {
            acc += lambda[k];
            lambda_partial.push(Some(acc));
        } else {
            lambda_partial.push(None);
        }
    }

    WindowRecord {
        index: w.index,
        end_date,
        n_assets: wc.kept.len(),
        kappa_weighted,
        kappa_binary,
        ratio,
        ratio_approx,
        ratio_approx_rel_err,
        amri: amri_vals,
        crf: crf_vals,
        avg_corr,
        lambda_partial,
        error: if errs.is_empty() { None } else { Some(errs.join("; ")) },
    }
}

/// Runs the window sweep. The result always has exactly
/// floor((T − ΔT)/Δt) + 1 records, failures included.
pub fn rolling_indicators(
    r: &ReturnPanel,
    spec: &WindowSpec,
    cfg: &RollingConfig,
) -> Result<RollingSeries> {
    if !(cfg.threshold > 0.0 && cfg.threshold < 1.0) {
        return Err(Error::Invalid(format!(
            "binarization threshold {} outside (0, 1)",
            cfg.threshold
        )));
    }
    if cfg.indicators.top_k == 0 {
        return Err(Error::Invalid("top_k must be at least 1".into()));
    }
    let windows = rolling_windows(r.n_obs(), spec)?;
    let records: Vec<WindowRecord> = if cfg.parallel {
        windows.par_iter().map(|w| compute_window(r, w, spec, cfg)).collect()
    } else {
        windows.iter().map(|w| compute_window(r, w, spec, cfg)).collect()
    };
    Ok(RollingSeries {
        spec: *spec,
        threshold: cfg.threshold,
        amri_params: cfg.indicators.amri.clone(),
        crf_params: cfg.indicators.crf.clone(),
        top_k: cfg.indicators.top_k,
        records,
    })
}

/// Mean cross-asset return over the trailing `days` observations of each
/// window — the ⟨X⟩ value paired with that window's κ in the conditional
/// bin analysis.
pub fn window_trailing_mean_returns(
    r: &ReturnPanel,
    spec: &WindowSpec,
    days: usize,
) -> Result<Vec<f64>> {
    if days == 0 || days > spec.width {
        return Err(Error::Invalid(format!(
            "trailing span {days} outside 1..={} (window width)",
            spec.width
        )));
    }
    let daily = r.daily_mean_returns();
    Ok(rolling_windows(r.n_obs(), spec)?
        .iter()
        .map(|w| {
            let end = w.end(spec);
            let span = &daily[end + 1 - days..=end];
            span.iter().sum::<f64>() / days as f64
        })
        .collect())
}

//! The full data pipeline in memory: a synthetic return panel with a
//! planted crash, rolling-window balance/risk indicators, systemic-event
//! detection, and balance-conditional return distributions.
//!
//! Run with: cargo run --example rolling_pipeline

use balans::pipeline::{
    conditional_bins, detect_events, rolling_indicators, window_trailing_mean_returns,
    ReturnPanel, RollingConfig, WindowSpec, PRESET_EQUAL5,
};
use chrono::NaiveDate;

/// Two sign-mixed factors + idiosyncratic wiggle + a crash on days 150–159.
fn planted_return(a: usize, t: usize) -> f64 {
    let tt = t as f64;
    let f1 = 0.012 * (0.9 * tt + 0.3).sin();
    let f2 = 0.010 * (1.7 * tt).cos();
    let b1 = if a < 4 { 1.0 } else { -1.0 };
    let b2 = if a.is_multiple_of(2) { 1.0 } else { -1.0 };
    let idio = 0.004 * (tt * (0.31 + 0.07 * a as f64) + a as f64).sin();
    let crash = if (150..160).contains(&t) { -0.02 } else { 0.0 };
    b1 * f1 + b2 * f2 + idio + crash
}

fn main() -> balans::Result<()> {
    // --- build the panel: 8 assets × 320 trading days ---
    let (n_assets, t_obs) = (8, 320);
    let start = NaiveDate::from_ymd_opt(2015, 1, 5).expect("valid date");
    let panel = ReturnPanel::new(
        (0..n_assets).map(|a| format!("A{a}")).collect(),
        (0..t_obs).map(|i| start + chrono::Duration::days(i as i64)).collect(),
        (0..n_assets)
            .map(|a| (0..t_obs).map(|t| planted_return(a, t)).collect())
            .collect(),
    )?;

    // --- rolling indicators: 60-day windows advancing 5 days ---
    let spec = WindowSpec::new(60, 5)?;
    let series = rolling_indicators(&panel, &spec, &RollingConfig::default())?;
    println!("windows: {}", series.records.len());
    println!("index  end date    kappa_w  kappa_b  ratio    AMRI(5,3)  CRF(1)");
    for r in series.records.iter().step_by(8) {
        println!(
            "{:>5}  {}  {:.5}  {:.5}  {:.5}  {:>8.3}  {:.4}",
            r.index,
            r.end_date,
            r.kappa_weighted.unwrap_or(f64::NAN),
            r.kappa_binary.unwrap_or(f64::NAN),
            r.ratio.unwrap_or(f64::NAN),
            r.amri[1].unwrap_or(f64::NAN),
            r.crf[0].unwrap_or(f64::NAN),
        );
    }

    // --- systemic events: 20-day sliding mean of the cross-asset return ---
    for tau in [-0.005, -0.0075] {
        let list = detect_events(&panel, tau, 20, false)?;
        println!("\ntau = {tau}: {} event(s)", list.events.len());
        for ev in &list.events {
            println!(
                "  {} .. {}  (deepest sliding mean {:+.5})",
                ev.start_date, ev.end_date, ev.min_mean_return
            );
        }
    }

    // --- balance-conditional returns: bin each window's kappa against the
    //     20-day mean return ending at the same window close ---
    let pair_returns = window_trailing_mean_returns(&panel, &spec, 20)?;
    let kappas: Vec<f64> = series.records.iter().filter_map(|r| r.kappa_weighted).collect();
    let summary = conditional_bins(&kappas, &pair_returns, &PRESET_EQUAL5)?;
    println!("\nreturns conditioned on kappa ({} of {} windows assigned):", summary.assigned, kappas.len());
    for b in &summary.bins {
        match (b.mean, b.std) {
            (Some(m), Some(s)) => println!(
                "  kappa in ({:.1}, {:.1}]: n = {:<3} mean {:+.5}  std {:.5}",
                b.lo, b.hi, b.count, m, s
            ),
            _ => println!("  kappa in ({:.1}, {:.1}]: empty", b.lo, b.hi),
        }
    }
    Ok(())
}

//! Random-matrix experiments: how tightly the condition-number ratio R
//! tracks the balance index kappa as networks grow, and the asymptotic
//! spectral limits of pure-noise correlation matrices.
//!
//! Run with: cargo run --example random_experiment

use balans::pipeline::{
    appendix_experiment, spectral_limits, LIMIT_MOMENTS, LIMIT_TRACE_EXP_NEG, LIMIT_TRACE_EXP_POS,
};

fn main() -> balans::Result<()> {
    // R and kappa are different one-number summaries of the same spectra;
    // on random correlation matrices their correlation rises with n
    let rows = appendix_experiment(&[5, 10, 20, 50], 100, 42, true)?;
    println!("pearson correlation between R and kappa on random correlation matrices");
    for row in &rows {
        println!("  n = {:<3} reps = {:<4} pearson = {:.7}", row.n, row.reps, row.pearson);
    }

    // a square pure-noise panel (n = t) has a known limiting spectrum;
    // its exponential trace means and moments approach closed-form values
    let n = 400;
    let lim = spectral_limits(n, n, 42)?;
    println!("\nnoise-panel correlation, n = t = {n}");
    println!(
        "  (1/n) tr exp(-A) = {:.6}   (limit {LIMIT_TRACE_EXP_NEG})",
        lim.exp_neg_mean
    );
    println!(
        "  (1/n) tr exp(A)  = {:.6}   (limit {LIMIT_TRACE_EXP_POS})",
        lim.exp_mean
    );
    println!("  spectral moments vs Catalan numbers:");
    for (k, (got, want)) in lim.moments.iter().zip(LIMIT_MOMENTS).enumerate() {
        println!("    (1/n) tr A^{} = {got:.4}   (limit {want})", k + 1);
    }
    Ok(())
}

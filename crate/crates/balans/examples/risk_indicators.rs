//! Spectrum-based systemic-risk indicators on random correlation matrices:
//! AMRI (top-to-tail eigenvalue ratio), CRF (leading-mode variance share),
//! empirical VaR, the Marchenko–Pastur noise edge, and the eigenvalue ↔
//! principal-component-variance identity.
//!
//! Run with: cargo run --example risk_indicators

use balans::linalg::eig_sym;
use balans::pipeline::{random_correlation, wishart_panel_correlation};
use balans::risk;

fn main() -> balans::Result<()> {
    // a generic random correlation matrix (uniform over the space of valid
    // correlation matrices) vs one estimated from a pure-noise panel
    let n = 12;
    let generic = random_correlation(n, 42)?;
    let noise = wishart_panel_correlation(n, 300, 42)?;

    for (name, c) in [("generic correlation", &generic), ("noise-panel correlation", &noise)] {
        let d = eig_sym(c)?;
        println!("{name} (n = {n})");
        println!("  lambda_1 = {:.4}, lambda_n = {:.4}", d.lambda_max(), d.lambda_min());
        // AMRI grows as the spectrum stretches: a dominant market mode on
        // top of near-degenerate tails is the stressed regime
        println!("  AMRI(h=1)      = {:.3}", risk::amri(&d, 1, 1.0)?);
        println!("  AMRI(h=5, p=3) = {:.3}", risk::amri(&d, 5, 3.0)?);
        // CRF: fraction of total variance carried by the top m modes
        println!("  CRF(m=1) = {:.4}, CRF(m=3) = {:.4}", risk::crf(&d, 1)?, risk::crf(&d, 3)?);
        println!("  avg off-diagonal correlation = {:+.4}", risk::average_correlation(c)?);
        // eigenvalues above the Marchenko–Pastur edge are signal, not noise
        let edge = risk::mp_upper_bound(n, 300)?;
        let signal = d.eigenvalues().iter().filter(|l| **l > edge).count();
        println!("  MP noise edge for t = 300: {edge:.4} ({signal} eigenvalue(s) above)\n");
    }

    // the eigenvalue/PC-variance identity on a tiny standardized panel:
    // var(phi_i^T x) == lambda_i when C = (1/t)·X~·X~^T
    let t = 40;
    let raw: Vec<Vec<f64>> = (0..4)
        .map(|a| (0..t).map(|j| ((a + 1) as f64 * j as f64 * 0.37).sin()).collect())
        .collect();
    let rows: Vec<Vec<f64>> = raw
        .iter()
        .map(|row| {
            let mean = row.iter().sum::<f64>() / t as f64;
            let var = row.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / t as f64;
            row.iter().map(|v| (v - mean) / var.sqrt()).collect()
        })
        .collect();
    let mut c = vec![vec![0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum::<f64>() / t as f64;
        }
    }
    let c = balans::linalg::SymmetricMatrix::from_rows(&c)?;
    let d = eig_sym(&c)?;
    println!("principal-component variances vs eigenvalues (4 assets, t = {t}):");
    for (var, lambda) in risk::principal_variances(&rows, &d, 4)? {
        println!("  score variance {var:.10}  vs  lambda {lambda:.10}");
    }

    // empirical value-at-risk of a return sample (5% tail)
    let sample: Vec<f64> = (0..250).map(|i| 0.012 * (i as f64 * 0.71).sin() - 0.001).collect();
    println!("\nempirical VaR(5%) of the sample = {:.5}", risk::empirical_var(&sample, 0.05)?);
    Ok(())
}

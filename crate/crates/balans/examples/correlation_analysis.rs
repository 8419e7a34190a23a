//! Full single-network analysis of a 4-asset correlation matrix: balance
//! indices, trace-norm condition numbers, the signed/unsigned ratio, and
//! the eigenvalue-based risk indicators.
//!
//! Run with: cargo run --example correlation_analysis

use balans::balance::{classify, global_balance, local_balance, BALANCE_TOL};
use balans::conditioning;
use balans::risk;
use balans::toy::correlation4;

fn main() -> balans::Result<()> {
    // a correlation matrix is itself a signed network: positive edges where
    // assets co-move, negative where they hedge each other
    let g = correlation4();
    let n = g.dim();
    println!("correlation network on {n} assets");
    for i in 0..n {
        print!("  ");
        for j in 0..n {
            print!("{:+.4} ", g.weights().get(i, j));
        }
        println!();
    }

    // --- balance: how close the sign structure is to two clean camps ---
    let kappa = global_balance(&g)?;
    println!("\nglobal balance kappa = {kappa:.7}");
    for (i, l) in local_balance(&g)?.iter().enumerate() {
        println!("  asset {i}: local balance {l:.7}");
    }
    println!("classification: {:?}", classify(&g, BALANCE_TOL)?);

    // --- conditioning: trace-norm condition numbers of e^{-A} ---
    let rep = conditioning::report(&g)?;
    println!("\ncondition numbers (trace norm)");
    println!("  signed    K(e^-A)   = {:.5}", rep.cond_signed);
    println!("  unsigned  K(e^-|A|) = {:.5}", rep.cond_unsigned);
    println!("  ratio R             = {:.7}", rep.ratio);
    println!("  ratio via balances  = {:.7}", rep.ratio_via_balances);
    println!("  ratio via cosh      = {:.7}", rep.ratio_via_cosh);
    println!("  gap lower bound     = {:.7}  (e^{{lambda_1 - lambda_1(|A|)}})", rep.ratio_gap_approx);
    println!("  walk dominance      = {:?}", rep.dominance);

    // --- spectrum-based risk indicators ---
    let pair = g.spectra()?;
    let d = &pair.signed;
    print!("\neigenvalues:");
    for l in d.eigenvalues() {
        print!(" {l:+.5}");
    }
    println!();
    println!("AMRI(h=1)        = {:.5}  (top-to-bottom eigenvalue ratio)", risk::amri(d, 1, 1.0)?);
    println!("AMRI(h=3, p=3)   = {:.5}  (top vs power mean of 3 smallest)", risk::amri(d, 3, 3.0)?);
    println!("CRF(m=1)         = {:.5}  (variance share of the market mode)", risk::crf(d, 1)?);
    println!("CRF(m=2)         = {:.5}", risk::crf(d, 2)?);
    println!("avg correlation  = {:.5}", risk::average_correlation(g.weights())?);
    Ok(())
}

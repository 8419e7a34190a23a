//! Tour of the built-in four-node toy networks: how sign patterns alone
//! decide whether a network is balanced, and what that does to the balance
//! indices and the diffusion endpoint.
//!
//! Run with: cargo run --example toy_networks

use balans::balance::{classify, global_balance, local_balance, BALANCE_TOL};
use balans::diffusion::asymptotic_state;
use balans::sgraph::SignedNetwork;
use balans::toy;

fn describe(name: &str, g: &SignedNetwork) -> balans::Result<()> {
    let kappa = global_balance(g)?;
    let local = local_balance(g)?;
    let class = classify(g, BALANCE_TOL)?;
    println!("{name}");
    println!("  kappa           = {kappa:.6}");
    print!("  local balance   =");
    for l in &local {
        print!(" {l:.6}");
    }
    println!();
    println!("  classification  = {class:?}");

    // the diffusion endpoint e^A·x0 from a uniform unit start
    let x = asymptotic_state(g, &vec![1.0; g.dim()])?;
    print!("  x_inf from 1    =");
    for v in &x {
        print!(" {v:+.3}");
    }
    println!("\n");
    Ok(())
}

fn main() -> balans::Result<()> {
    // all edges positive except the sign pattern noted per fixture
    describe("balanced K4 (two hostile camps, friendly inside)", &toy::k4_balanced())?;
    describe("frustrated K4 (one inconsistent triangle)", &toy::k4_frustrated())?;
    describe("all-negative K4 (everyone against everyone)", &toy::k4_all_negative())?;

    // every fixture ships with its published reference values; recompute
    // and compare them all
    let checks = toy::reference_checks()?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass()).collect();
    println!("reference values reproduced: {}/{}", checks.len() - failed.len(), checks.len());
    for c in failed {
        println!("  MISMATCH {}: computed {} vs expected {}", c.label, c.computed, c.expected);
    }
    Ok(())
}

//! Structural invariances of the balance indices: switching (conjugating by
//! a ± sign pattern) and removing a uniform nonnegative diagonal both leave
//! every index unchanged, while negation swaps balance with antibalance.
//!
//! Run with: cargo run --example switching_invariance

use balans::balance::{classify, global_balance, BALANCE_TOL};
use balans::conditioning::condition_ratio;
use balans::sgraph::{complete_positive, SignedNetwork};
use balans::toy;

fn show(label: &str, g: &SignedNetwork) -> balans::Result<()> {
    println!(
        "  {label:<34} kappa = {:.9}  R = {:.9}  {:?}",
        global_balance(g)?,
        condition_ratio(g)?,
        classify(g, BALANCE_TOL)?
    );
    Ok(())
}

fn main() -> balans::Result<()> {
    // switching: flip the sign of every edge crossing a node subset. The
    // all-positive clique switched at {2, 3} is exactly the two-camp
    // balanced network — the indices cannot tell them apart.
    let clique = complete_positive(4)?;
    let switched = clique.switch(&[2, 3])?;
    println!("switching invariance");
    show("all-positive K4", &clique)?;
    show("switched at nodes {2, 3}", &switched)?;

    // on an unbalanced network switching still changes nothing
    let f = toy::k4_frustrated();
    println!("\nswitching an unbalanced network");
    show("frustrated K4", &f)?;
    show("frustrated K4 switched at {0}", &f.switch(&[0])?)?;
    show("frustrated K4 switched at {1, 3}", &f.switch(&[1, 3])?)?;

    // removing the unit diagonal of a correlation matrix leaves the
    // indices unchanged: e^{chi*I} cancels between e^A and e^|A|
    let c = toy::correlation4();
    println!("\nuniform diagonal removal (chi = 1 from a correlation matrix)");
    show("correlation network", &c)?;
    show("diagonal stripped", &c.shift_diagonal(1.0)?)?;

    // negation maps balance to antibalance: the all-negative clique is the
    // negated all-positive clique, perfectly *anti*balanced at kappa < 1
    println!("\nnegation swaps balance and antibalance");
    show("all-positive K4", &clique)?;
    show("negated (all-negative) K4", &clique.negate())?;
    Ok(())
}

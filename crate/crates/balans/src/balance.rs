//! Structural-balance indices of a signed network.
//!
//! Everything here compares factorially penalized walks on A against the same
//! walks on |A|: the local balance κᵢ = [e^A]ᵢᵢ/[e^{|A|}]ᵢᵢ, the global
//! balance κ(G) = tr e^A / tr e^{|A|}, and the per-pair signed
//! communicability ratio. κ(G) = 1 exactly on balanced networks (A and |A|
//! are then cospectral), and the classification below leans on that spectral
//! characterization.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{diag_func, mat_func, trace_func, MatrixFunction};
use crate::sgraph::{SignedNetwork, SpectralPair};

/// Default tolerance for the balanced/antibalanced spectral comparison.
pub const BALANCE_TOL: f64 = 1e-9;

/// Entries of e^{|A|} smaller than this are treated as structurally zero and
/// the corresponding edge-balance entry reported as undefined.
pub const EDGE_BALANCE_GUARD: f64 = 1e-14;

/// Harary classification of a signed network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceClass {
    /// A and |A| cospectral: all closed walks keep their sign.
    Balanced,
    /// −G is balanced: even walks positive, odd walks negative.
    Antibalanced,
    /// Neither.
    StrictlyUnbalanced,
}

/// Local balance κᵢ = [e^A]ᵢᵢ / [e^{|A|}]ᵢᵢ per node, each in (0, 1].
pub fn local_balance(g: &SignedNetwork) -> Result<Vec<f64>> {
    local_balance_from(&g.spectra()?)
}

/// [`local_balance`] on a precomputed decomposition pair.
pub fn local_balance_from(pair: &SpectralPair) -> Result<Vec<f64>> {
    let signed = diag_func(&pair.signed, MatrixFunction::Exp)?;
    let unsigned = diag_func(&pair.unsigned, MatrixFunction::Exp)?;
    Ok(signed
        .iter()
        .zip(&unsigned)
        // mathematically in (0,1]; clamp the odd last-ulp excursion above 1
        .map(|(s, u)| (s / u).min(1.0))
        .collect())
}

/// Global balance κ(G) = tr e^A / tr e^{|A|} = Σe^{λᵢ} / Σe^{λ̄ᵢ}, in (0, 1].
pub fn global_balance(g: &SignedNetwork) -> Result<f64> {
    global_balance_from(&g.spectra()?)
}

/// [`global_balance`] on a precomputed decomposition pair.
pub fn global_balance_from(pair: &SpectralPair) -> Result<f64> {
    let num = trace_func(&pair.signed, MatrixFunction::Exp)?;
    let den = trace_func(&pair.unsigned, MatrixFunction::Exp)?;
    Ok((num / den).min(1.0))
}

/// Signed communicability ratio κᵢⱼ = (e^A)ᵢⱼ / (e^{|A|})ᵢⱼ for every pair.
///
/// Entries where |(e^{|A|})ᵢⱼ| < [`EDGE_BALANCE_GUARD`] (possible only when
/// |A| is disconnected) are reported as `None`. The diagonal equals
/// [`local_balance`].
pub fn edge_balance(g: &SignedNetwork) -> Result<Vec<Vec<Option<f64>>>> {
    edge_balance_from(&g.spectra()?)
}

/// [`edge_balance`] on a precomputed decomposition pair.
pub fn edge_balance_from(pair: &SpectralPair) -> Result<Vec<Vec<Option<f64>>>> {
    let signed = mat_func(&pair.signed, MatrixFunction::Exp)?;
    let unsigned = mat_func(&pair.unsigned, MatrixFunction::Exp)?;
    let n = signed.dim();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let den = unsigned.get(i, j);
                    if den.abs() < EDGE_BALANCE_GUARD {
                        None
                    } else {
                        Some((signed.get(i, j) / den).clamp(-1.0, 1.0))
                    }
                })
                .collect()
        })
        .collect())
}

/// True iff the sorted spectra of A and |A| agree entrywise within `tol`
/// (Acharya: equivalent to κ(G) = 1, i.e. to balance).
pub fn is_balanced(g: &SignedNetwork, tol: f64) -> Result<bool> {
    Ok(is_balanced_from(&g.spectra()?, tol))
}

/// [`is_balanced`] on a precomputed decomposition pair.
pub fn is_balanced_from(pair: &SpectralPair, tol: f64) -> bool {
    pair.signed
        .eigenvalues()
        .iter()
        .zip(pair.unsigned.eigenvalues())
        .all(|(a, b)| (a - b).abs() <= tol)
}

/// Balanced / antibalanced / strictly unbalanced, testing antibalance as
/// balance of −G (Harary's definition).
pub fn classify(g: &SignedNetwork, tol: f64) -> Result<BalanceClass> {
    if is_balanced(g, tol)? {
        return Ok(BalanceClass::Balanced);
    }
    if is_balanced(&g.negate(), tol)? {
        return Ok(BalanceClass::Antibalanced);
    }
    Ok(BalanceClass::StrictlyUnbalanced)
}

//! Trace-norm conditioning of the steady-state linear system and its
//! relation to balance.
//!
//! The central objects are 𝒦(e^{−A}) = (Σe^{−λᵢ})(Σe^{λᵢ}) — the condition
//! number of e^{−A} in the Schatten p=1 norm — and the ratio
//! ℛ(A) = 𝒦(e^{−A})/𝒦(e^{−|A|}). ℛ equals 1 on balanced and antibalanced
//! networks and admits two alternative closed forms (a balance product and a
//! cosh pair-gap sum) that this module implements as genuinely independent
//! routes; tests hold all three to 1e−9 relative agreement.
//!
//! Walk weights follow the source convention tr(f(|A|) ± f(A)) with no 1/2
//! factor, i.e. twice the natural closed-walk weights. The uniform factor
//! cancels in the dominance comparison and in ℛ, so only absolute walk
//! values carry the convention; this is deliberate and documented here.

use serde::Serialize;

use crate::balance::{classify, global_balance, BalanceClass};
use crate::error::{Error, Result};
use crate::linalg::{trace_func, MatrixFunction, SpectralDecomposition};
use crate::sgraph::{complete_positive, SignedNetwork, SpectralPair};

/// Tie tolerance on the dominance product difference: balanced and
/// antibalanced networks produce exact zeros up to rounding.
pub const DOMINANCE_TIE_TOL: f64 = 1e-12;

/// Walk-weight values in [−1e−12, 0) are rounding dust and clamped to 0.
pub const WALK_CLAMP_TOL: f64 = 1e-12;

/// Factorially penalized closed-walk weights, split by parity and sign.
///
/// Values follow the printed convention (twice the natural weights, see the
/// module docs); all four are nonnegative after clamping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WalkWeights {
    /// W⁺_even = tr(cosh|A| + cosh A)
    pub even_pos: f64,
    /// W⁻_even = tr(cosh|A| − cosh A)
    pub even_neg: f64,
    /// W⁺_odd = tr(sinh|A| + sinh A)
    pub odd_pos: f64,
    /// W⁻_odd = tr(sinh|A| − sinh A)
    pub odd_neg: f64,
}

/// Even/odd dominance, the quantity that fixes the sign of ℛ(A) − 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// W⁺even·W⁻even > W⁺odd·W⁻odd, hence ℛ < 1.
    EvenDominant,
    /// W⁺even·W⁻even < W⁺odd·W⁻odd, hence ℛ > 1.
    OddDominant,
    /// Products within [`DOMINANCE_TIE_TOL`] (balanced/antibalanced cases).
    Neither,
}

/// Everything this module can say about one network, computed from a single
/// shared decomposition pair (plus the deliberately independent balance-product
/// route for `ratio_via_balances`).
#[derive(Clone, Debug, Serialize)]
pub struct ConditioningReport {
    /// 𝒦(e^{−A}); always ≥ N².
    pub cond_signed: f64,
    /// 𝒦(e^{−|A|}); always ≥ N².
    pub cond_unsigned: f64,
    /// ℛ(A), direct quotient of the two condition numbers.
    pub ratio: f64,
    /// ℛ via the balance product κ(G)·κ(−G)/κ(−|G|).
    pub ratio_via_balances: f64,
    /// ℛ via the pairwise cosh eigenvalue-gap form.
    pub ratio_via_cosh: f64,
    /// The spectral-gap approximation e^{λ₁−λ̄₁}.
    pub ratio_gap_approx: f64,
    /// Closed-walk weights by parity and sign.
    pub walks: WalkWeights,
    /// Even/odd dominance classification.
    pub dominance: Dominance,
}

/// 𝒦(e^{−M}) = (Σe^{−λ})(Σe^{λ}) over the spectrum of g's weight matrix.
/// Bounded below by N², with equality iff the spectrum is constant.
pub fn condition_number_trace(g: &SignedNetwork) -> Result<f64> {
    condition_number_from(&crate::linalg::eig_sym(g.weights())?)
}

/// [`condition_number_trace`] on a precomputed decomposition.
pub fn condition_number_from(d: &SpectralDecomposition) -> Result<f64> {
    let neg = trace_func(d, MatrixFunction::NegExp)?;
    let pos = trace_func(d, MatrixFunction::Exp)?;
    let k = neg * pos;
    if !k.is_finite() {
        return Err(Error::Overflow {
            func: "condition-number product",
            eigenvalue: d.lambda_max(),
        });
    }
    Ok(k)
}

/// ℛ(A) = 𝒦(e^{−A}) / 𝒦(e^{−|A|}).
pub fn condition_ratio(g: &SignedNetwork) -> Result<f64> {
    condition_ratio_from(&g.spectra()?)
}

/// [`condition_ratio`] on a precomputed decomposition pair.
pub fn condition_ratio_from(pair: &SpectralPair) -> Result<f64> {
    Ok(condition_number_from(&pair.signed)? / condition_number_from(&pair.unsigned)?)
}

/// ℛ via the balance product κ(G)·κ(−G)/κ(−|G|).
///
/// Deliberately routed through three separate [`global_balance`] evaluations
/// (on G, −G, and −|G|) so it cross-checks the direct quotient instead of
/// restating it.
pub fn ratio_via_balances(g: &SignedNetwork) -> Result<f64> {
    let k_g = global_balance(g)?;
    let k_neg = global_balance(&g.negate())?;
    let k_neg_abs = global_balance(&g.abs_network().negate())?;
    Ok(k_g * k_neg / k_neg_abs)
}

/// ℛ via pairwise eigenvalue gaps:
/// (1 + (2/N)·Σ_{j<i} cosh(λᵢ−λⱼ)) / (1 + (2/N)·Σ_{j<i} cosh(λ̄ᵢ−λ̄ⱼ)).
pub fn ratio_via_cosh(g: &SignedNetwork) -> Result<f64> {
    ratio_via_cosh_from(&g.spectra()?)
}

/// [`ratio_via_cosh`] on a precomputed decomposition pair.
pub fn ratio_via_cosh_from(pair: &SpectralPair) -> Result<f64> {
    let num = cosh_gap_sum(pair.signed.eigenvalues())?;
    let den = cosh_gap_sum(pair.unsigned.eigenvalues())?;
    Ok(num / den)
}

fn cosh_gap_sum(eigs: &[f64]) -> Result<f64> {
    let n = eigs.len() as f64;
    let mut acc = 0.0;
    for (i, &li) in eigs.iter().enumerate() {
        for &lj in &eigs[..i] {
            acc += (li - lj).cosh();
        }
    }
    let v = 1.0 + 2.0 / n * acc;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { func: "cosh gap sum", eigenvalue: eigs[0] - eigs[eigs.len() - 1] })
    }
}

/// The spectral-gap approximation ℛ(A) ≈ e^{λ₁ − λ̄₁}; equals 1 on balanced
/// networks and underestimates 1 exactly when G is strictly unbalanced.
pub fn ratio_gap_approx(g: &SignedNetwork) -> Result<f64> {
    Ok(ratio_gap_approx_from(&g.spectra()?))
}

/// [`ratio_gap_approx`] on a precomputed decomposition pair.
pub fn ratio_gap_approx_from(pair: &SpectralPair) -> f64 {
    (pair.signed.lambda_max() - pair.unsigned.lambda_max()).exp()
}

/// Closed-walk weights W±_even = tr(cosh|A| ± cosh A),
/// W±_odd = tr(sinh|A| ± sinh A), clamped at [`WALK_CLAMP_TOL`].
pub fn walk_weights(g: &SignedNetwork) -> Result<WalkWeights> {
    walk_weights_from(&g.spectra()?)
}

/// [`walk_weights`] on a precomputed decomposition pair.
pub fn walk_weights_from(pair: &SpectralPair) -> Result<WalkWeights> {
    let cosh_s = trace_func(&pair.signed, MatrixFunction::Cosh)?;
    let cosh_u = trace_func(&pair.unsigned, MatrixFunction::Cosh)?;
    let sinh_s = trace_func(&pair.signed, MatrixFunction::Sinh)?;
    let sinh_u = trace_func(&pair.unsigned, MatrixFunction::Sinh)?;
    let clamp = |v: f64| if (-WALK_CLAMP_TOL..0.0).contains(&v) { 0.0 } else { v };
    Ok(WalkWeights {
        even_pos: clamp(cosh_u + cosh_s),
        even_neg: clamp(cosh_u - cosh_s),
        odd_pos: clamp(sinh_u + sinh_s),
        odd_neg: clamp(sinh_u - sinh_s),
    })
}

/// Even/odd dominance of a network.
pub fn dominance(g: &SignedNetwork) -> Result<Dominance> {
    Ok(dominance_of(&walk_weights(g)?))
}

/// Dominance from already-computed walk weights: compares
/// W⁺even·W⁻even against W⁺odd·W⁻odd with the tie tolerance.
///
/// The products square trace-scale quantities, so this comparison overflows
/// f64 once λ̄₁ exceeds ≈354 (the condition numbers themselves hold out to
/// ≈709); that is far beyond the correlation-network regime.
pub fn dominance_of(w: &WalkWeights) -> Dominance {
    let even = w.even_pos * w.even_neg;
    let odd = w.odd_pos * w.odd_neg;
    if even > odd + DOMINANCE_TIE_TOL {
        Dominance::EvenDominant
    } else if odd > even + DOMINANCE_TIE_TOL {
        Dominance::OddDominant
    } else {
        Dominance::Neither
    }
}

/// Computes the full report from one shared decomposition pair (plus the
/// independent balance-product route).
pub fn report(g: &SignedNetwork) -> Result<ConditioningReport> {
    let pair = g.spectra()?;
    let walks = walk_weights_from(&pair)?;
    Ok(ConditioningReport {
        cond_signed: condition_number_from(&pair.signed)?,
        cond_unsigned: condition_number_from(&pair.unsigned)?,
        ratio: condition_ratio_from(&pair)?,
        ratio_via_balances: ratio_via_balances(g)?,
        ratio_via_cosh: ratio_via_cosh_from(&pair)?,
        ratio_gap_approx: ratio_gap_approx_from(&pair),
        walks,
        dominance: dominance_of(&walks),
    })
}

/// A strictly unbalanced network whose ratio sits at 1 — what the open
/// conjecture (ℛ = 1 ⇒ balanced or antibalanced) says should not exist.
#[derive(Clone, Debug)]
pub struct ConjectureCounterexample {
    /// The offending network.
    pub network: SignedNetwork,
    /// Its condition ratio (within `ratio_tol` of 1).
    pub ratio: f64,
}

/// Exhaustive falsification search for the converse-of-Prop-3 conjecture over
/// all complete ±1 signed graphs with 3..=`max_n` nodes (`max_n` ≤ 6; the
/// edge-sign space doubles per edge and is already 2¹⁵ at n = 6).
///
/// Returns every strictly unbalanced graph found with |ℛ − 1| ≤ `ratio_tol`;
/// an empty result means the conjecture survived this range. No operation in
/// this crate assumes the conjecture holds.
pub fn ratio_one_counterexamples(
    max_n: usize,
    ratio_tol: f64,
) -> Result<Vec<ConjectureCounterexample>> {
    if !(3..=6).contains(&max_n) {
        return Err(Error::Invalid(format!(
            "exhaustive search supports 3..=6 nodes, got {max_n}"
        )));
    }
    let mut found = Vec::new();
    for n in 3..=max_n {
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        let template = complete_positive(n)?;
        for mask in 0u32..(1 << edges.len()) {
            let mut w = template.weights().clone();
            for (bit, &(i, j)) in edges.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    w.data_mut()[i * n + j] = -1.0;
                    w.data_mut()[j * n + i] = -1.0;
                }
            }
            let g = SignedNetwork::weighted(w);
            if classify(&g, crate::balance::BALANCE_TOL)? != BalanceClass::StrictlyUnbalanced {
                continue;
            }
            let ratio = condition_ratio(&g)?;
            if (ratio - 1.0).abs() <= ratio_tol {
                found.push(ConjectureCounterexample { network: g, ratio });
            }
        }
    }
    Ok(found)
}

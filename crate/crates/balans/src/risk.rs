//! Eigenvalue-based systemic-risk indicators for correlation networks:
//! the asset–market risk index (AMRI), the common risk factor share (CRF),
//! empirical value-at-risk, and supporting spectral diagnostics.

use crate::error::{Error, Result};
use crate::linalg::SpectralDecomposition;

/// Eigenvalues this close to zero make the AMRI tail power-mean degenerate.
pub const RANK_TOL: f64 = 1e-14;

/// Eigenvalue-sum drift (vs. the trace N of a correlation matrix) beyond
/// which [`crf`] logs a warning.
pub const TRACE_WARN_TOL: f64 = 1e-6;

/// Parameters for the indicator battery computed per window.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorConfig {
    /// (h, p) pairs for the AMRI tail power mean.
    pub amri: Vec<(usize, f64)>,
    /// m values for the CRF leading-eigenvalue share.
    pub crf: Vec<usize>,
    /// Tail probability for the empirical value-at-risk.
    pub var_p: f64,
    /// How many leading eigenvalues to report per window.
    pub top_k: usize,
}

impl Default for IndicatorConfig {
    fn default() -> Self {
        Self { amri: vec![(1, 1.0), (5, 3.0)], crf: vec![1, 3], var_p: 0.05, top_k: 3 }
    }
}

/// Asset–market risk index λ₁ / M_p(λ_{N−h+1}..λ_N), the ratio of the top
/// eigenvalue to the power mean (exponent `p`) of the `h` smallest.
///
/// With h = 1 the power mean collapses to λ_N for every p, so the ratio is
/// computed directly as λ₁/λ_N (bit-exact, no powers taken). Any tail
/// eigenvalue within [`RANK_TOL`] of zero (or negative) is a degenerate
/// spectrum for this index and yields [`Error::DegenerateRank`].
pub fn amri(d: &SpectralDecomposition, h: usize, p: f64) -> Result<f64> {
    let n = d.dim();
    let lambda = d.eigenvalues();
    if h == 0 || h > n {
        return Err(Error::Invalid(format!("tail size h={h} outside 1..={n}")));
    }
    if !p.is_finite() || p == 0.0 {
        return Err(Error::Invalid(format!("power-mean exponent p={p} must be finite and nonzero")));
    }
    let tail = &lambda[n - h..];
    for (off, v) in tail.iter().enumerate() {
        if *v <= RANK_TOL {
            return Err(Error::DegenerateRank { index: n - h + off, value: *v });
        }
    }
    if h == 1 {
        return Ok(lambda[0] / lambda[n - 1]);
    }
    let mean_pow = tail.iter().map(|v| v.powf(p)).sum::<f64>() / h as f64;
    Ok(lambda[0] / mean_pow.powf(1.0 / p))
}

/// Common risk factor share (1/N)·Σ_{i≤m} λᵢ: the fraction of total variance
/// carried by the m leading eigenmodes. Logs a warning when the spectrum's
/// sum has drifted from the trace N by more than [`TRACE_WARN_TOL`].
pub fn crf(d: &SpectralDecomposition, m: usize) -> Result<f64> {
    let n = d.dim();
    if m == 0 || m > n {
        return Err(Error::Invalid(format!("leading count m={m} outside 1..={n}")));
    }
    let sum: f64 = d.eigenvalues().iter().sum();
    let drift = (sum - n as f64).abs();
    if drift > TRACE_WARN_TOL {
        log::warn!(
            "eigenvalue sum {sum:.12} deviates from matrix trace {n} by {drift:.3e}; \
             input may not be a correlation matrix"
        );
    }
    Ok(d.eigenvalues()[..m].iter().sum::<f64>() / n as f64)
}

/// Empirical value-at-risk at tail probability `p`: the negated p-quantile of
/// the sample, using the linear-interpolation quantile (position (n−1)·p
/// between order statistics). Losses are positive when the quantile is
/// negative.
pub fn empirical_var(returns: &[f64], p: f64) -> Result<f64> {
    if returns.is_empty() {
        return Err(Error::Invalid("value-at-risk of an empty sample".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Invalid(format!("tail probability {p} outside (0, 1)")));
    }
    if returns.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("value-at-risk sample has non-finite entries".into()));
    }
    let mut sorted = returns.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite entries compare"));
    Ok(-quantile_sorted(&sorted, p))
}

/// Linear-interpolation quantile of an ascending sample: the value at
/// position (n−1)·p between order statistics. Shared by the VaR and the
/// KDE bandwidth rule.
pub(crate) fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = (sorted.len() - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Mean off-diagonal correlation: the upper-triangle average of C.
pub fn average_correlation(c: &crate::linalg::SymmetricMatrix) -> Result<f64> {
    let n = c.dim();
    if n < 2 {
        return Err(Error::Invalid("average correlation needs at least 2 assets".into()));
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += c.get(i, j);
        }
    }
    Ok(sum / (n * (n - 1) / 2) as f64)
}

/// Marchenko–Pastur upper edge (1 + √(n/t))² for an n-asset, t-observation
/// panel: eigenvalues above it are signal under the pure-noise null.
pub fn mp_upper_bound(n_assets: usize, t_obs: usize) -> Result<f64> {
    if n_assets == 0 || t_obs == 0 {
        return Err(Error::Invalid("Marchenko–Pastur bound needs n ≥ 1 and t ≥ 1".into()));
    }
    let q = n_assets as f64 / t_obs as f64;
    Ok((1.0 + q.sqrt()).powi(2))
}

/// Sample variances of the first `k` principal-component scores φᵢᵀx̃ over a
/// standardized panel (rows = assets, columns = observations), which the
/// spectral theorem pins to the eigenvalues λᵢ. Returns (score variance, λᵢ)
/// pairs so callers can assert the identity.
pub fn principal_variances(
    xtilde_rows: &[Vec<f64>],
    d: &SpectralDecomposition,
    k: usize,
) -> Result<Vec<(f64, f64)>> {
    let n = xtilde_rows.len();
    if n != d.dim() {
        return Err(Error::Dimension(format!(
            "panel has {n} assets but decomposition is {}×{}",
            d.dim(),
            d.dim()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("component count k={k} outside 1..={n}")));
    }
    let t = xtilde_rows.first().map_or(0, Vec::len);
    if t == 0 || xtilde_rows.iter().any(|r| r.len() != t) {
        return Err(Error::Dimension("panel rows must share a positive length".into()));
    }
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let phi = d.eigenvector(j);
        // score time series s(τ) = Σᵢ φᵢ·x̃ᵢ(τ), variance with 1/t weights
        let mut mean = 0.0;
        let mut scores = vec![0.0; t];
        for (phi_i, row) in phi.iter().zip(xtilde_rows) {
            for (s, x) in scores.iter_mut().zip(row) {
                *s += phi_i * x;
            }
        }
        for s in &scores {
            mean += s;
        }
        mean /= t as f64;
        let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / t as f64;
        out.push((var, d.eigenvalues()[j]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_sym, SymmetricMatrix};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn spectrum_of(rows: &[Vec<f64>]) -> SpectralDecomposition {
        eig_sym(&SymmetricMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn equicorrelation(n: usize, rho: f64) -> SymmetricMatrix {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { rho }).collect())
            .collect();
        SymmetricMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn amri_equicorrelation_closed_form() {
        // ρ-equicorrelation: λ₁ = 1+(n−1)ρ, the rest are 1−ρ
        let d = eig_sym(&equicorrelation(6, 0.4)).unwrap();
        let expect = (1.0 + 5.0 * 0.4) / (1.0 - 0.4);
        assert_close(amri(&d, 1, 1.0).unwrap(), expect, 1e-12);
        // degenerate tail is flat, so any (h, p) gives the same ratio
        assert_close(amri(&d, 3, 2.0).unwrap(), expect, 1e-10);
        assert_close(amri(&d, 5, 7.5).unwrap(), expect, 1e-10);
    }

    #[test]
    fn amri_h1_is_plain_ratio_for_every_p() {
        let d = spectrum_of(&[
            vec![1.0, 0.3, 0.1],
            vec![0.3, 1.0, -0.2],
            vec![0.1, -0.2, 1.0],
        ]);
        let base = d.eigenvalues()[0] / d.eigenvalues()[2];
        for p in [1.0, 2.0, 3.0, 10.0, 0.5] {
            assert_eq!(amri(&d, 1, p).unwrap(), base);
        }
    }

    #[test]
    fn amri_power_mean_hand_check() {
        let d = spectrum_of(&[
            vec![1.0, 0.5, 0.2],
            vec![0.5, 1.0, 0.3],
            vec![0.2, 0.3, 1.0],
        ]);
        let l = d.eigenvalues();
        let p = 3.0;
        let mean = ((l[1].powf(p) + l[2].powf(p)) / 2.0).powf(1.0 / p);
        assert_close(amri(&d, 2, p).unwrap(), l[0] / mean, 1e-12);
    }

    #[test]
    fn amri_rejects_degenerate_tail() {
        // perfect correlation: λ = (2, 0) — tail hits zero
        let d = spectrum_of(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let err = amri(&d, 1, 1.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateRank { index: 1, .. }), "got {err:?}");
        assert!(err.is_numerical());
    }

    #[test]
    fn amri_validates_parameters() {
        let d = spectrum_of(&[vec![1.0, 0.2], vec![0.2, 1.0]]);
        assert!(amri(&d, 0, 1.0).is_err());
        assert!(amri(&d, 3, 1.0).is_err());
        assert!(amri(&d, 1, 0.0).is_err());
        assert!(amri(&d, 1, f64::INFINITY).is_err());
    }

    #[test]
    fn crf_shares_sum_to_one_at_full_rank() {
        let d = spectrum_of(&[
            vec![1.0, 0.3, 0.1],
            vec![0.3, 1.0, -0.2],
            vec![0.1, -0.2, 1.0],
        ]);
        assert_close(crf(&d, 3).unwrap(), 1.0, 1e-12);
        let expect = d.eigenvalues()[0] / 3.0;
        assert_close(crf(&d, 1).unwrap(), expect, 1e-14);
        assert!(crf(&d, 0).is_err());
        assert!(crf(&d, 4).is_err());
    }

    #[test]
    fn crf_equicorrelation_closed_form() {
        let d = eig_sym(&equicorrelation(5, 0.6)).unwrap();
        assert_close(crf(&d, 1).unwrap(), (1.0 + 4.0 * 0.6) / 5.0, 1e-12);
    }

    #[test]
    fn var_linear_interpolation_quantile() {
        // sorted sample 1..=5 at p=0.25: position 1.0 exactly → 2.0
        let sample = vec![5.0, 1.0, 3.0, 2.0, 4.0];
        assert_close(empirical_var(&sample, 0.25).unwrap(), -2.0, 1e-14);
        // p=0.1: position 0.4 → 1 + 0.4·(2−1) = 1.4
        assert_close(empirical_var(&sample, 0.1).unwrap(), -1.4, 1e-14);
        // losses (negative returns) give positive VaR
        let losses = vec![-0.05, -0.02, 0.01, 0.03, -0.07];
        assert!(empirical_var(&losses, 0.05).unwrap() > 0.0);
    }

    #[test]
    fn var_validates_inputs() {
        assert!(empirical_var(&[], 0.05).is_err());
        assert!(empirical_var(&[1.0], 0.0).is_err());
        assert!(empirical_var(&[1.0], 1.0).is_err());
        assert!(empirical_var(&[f64::NAN], 0.5).is_err());
    }

    #[test]
    fn average_correlation_counts_upper_triangle_once() {
        let c = SymmetricMatrix::from_rows(&[
            vec![1.0, 0.2, 0.4],
            vec![0.2, 1.0, 0.6],
            vec![0.4, 0.6, 1.0],
        ])
        .unwrap();
        assert_close(average_correlation(&c).unwrap(), (0.2 + 0.4 + 0.6) / 3.0, 1e-14);
        assert!(average_correlation(&SymmetricMatrix::from_rows(&[vec![1.0]]).unwrap()).is_err());
    }

    #[test]
    fn mp_bound_square_panel_is_four() {
        assert_close(mp_upper_bound(500, 500).unwrap(), 4.0, 1e-14);
        assert_close(mp_upper_bound(100, 400).unwrap(), 2.25, 1e-14);
        assert!(mp_upper_bound(0, 10).is_err());
    }

    #[test]
    fn principal_score_variance_equals_eigenvalue() {
        // build a standardized panel, correlate it, and check Var(φᵀx̃) = λ
        let raw: Vec<Vec<f64>> = vec![
            vec![0.8, -1.1, 0.3, 1.7, -0.9, -0.8],
            vec![0.1, 0.9, -1.3, 0.4, 0.2, -0.3],
            vec![-0.6, 0.5, 0.7, -1.2, 1.0, -0.4],
        ];
        let t = raw[0].len();
        let mut std_rows = Vec::new();
        for row in &raw {
            let mean = row.iter().sum::<f64>() / t as f64;
            let var = row.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / t as f64;
            std_rows.push(row.iter().map(|v| (v - mean) / var.sqrt()).collect::<Vec<_>>());
        }
        let n = std_rows.len();
        let mut c = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                c[i][j] = std_rows[i]
                    .iter()
                    .zip(&std_rows[j])
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    / t as f64;
            }
        }
        let d = spectrum_of(&c);
        for (var, lambda) in principal_variances(&std_rows, &d, 3).unwrap() {
            assert_close(var, lambda, 1e-12);
        }
        assert!(principal_variances(&std_rows, &d, 0).is_err());
        assert!(principal_variances(&std_rows[..2], &d, 1).is_err());
    }
}

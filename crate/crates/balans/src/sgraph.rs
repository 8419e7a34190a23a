//! Signed networks: a symmetric weight matrix tagged weighted or binary,
//! plus the transformations the balance theory is built on — absolute value,
//! negation, binarization, diagonal shift, and switching.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig_sym, SpectralDecomposition, SymmetricMatrix};

/// Tolerance accepted on correlation-matrix bounds (|entries| ≤ 1, unit
/// diagonal) to absorb floating-point dust from upstream computations.
pub const CORRELATION_TOL: f64 = 1e-12;

/// Whether a network carries raw weights or thresholded ±1 edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NetworkKind {
    /// Arbitrary real symmetric weights (e.g. a correlation matrix).
    Weighted,
    /// Every entry in {−1, 0, +1}.
    Binary,
}

/// An undirected signed network G = (V, E, W).
///
/// The weight matrix may include a diagonal (a correlation matrix's unit
/// diagonal is kept as-is: a uniform diagonal shift provably leaves every
/// balance index unchanged, so no silent preprocessing is done).
#[derive(Clone, Debug, PartialEq)]
pub struct SignedNetwork {
    weights: SymmetricMatrix,
    kind: NetworkKind,
}

/// The signed/unsigned decomposition pair (A and |A|) that every balance and
/// conditioning index consumes. Compute it once per network and share it.
#[derive(Clone, Debug)]
pub struct SpectralPair {
    /// Decomposition of the signed weight matrix A.
    pub signed: SpectralDecomposition,
    /// Decomposition of the entrywise absolute matrix |A|.
    pub unsigned: SpectralDecomposition,
}

impl SignedNetwork {
    /// Wraps an arbitrary symmetric weight matrix as a weighted network.
    pub fn weighted(weights: SymmetricMatrix) -> Self {
        Self { weights, kind: NetworkKind::Weighted }
    }

    /// Validates and wraps a correlation matrix: |entries| ≤ 1 and unit
    /// diagonal, both within [`CORRELATION_TOL`]. The matrix itself (unit
    /// diagonal included) becomes the weighted adjacency.
    pub fn from_correlation(c: SymmetricMatrix) -> Result<Self> {
        let n = c.dim();
        for i in 0..n {
            let d = c.get(i, i);
            if (d - 1.0).abs() > CORRELATION_TOL {
                return Err(Error::Invalid(format!(
                    "correlation diagonal ({i}, {i}) = {d} is not 1"
                )));
            }
            for j in 0..n {
                let v = c.get(i, j);
                if v.abs() > 1.0 + CORRELATION_TOL {
                    return Err(Error::Invalid(format!(
                        "correlation entry ({i}, {j}) = {v} outside [-1, 1]"
                    )));
                }
            }
        }
        Ok(Self { weights: c, kind: NetworkKind::Weighted })
    }

    /// Node count.
    pub fn dim(&self) -> usize {
        self.weights.dim()
    }

    /// The weight matrix.
    pub fn weights(&self) -> &SymmetricMatrix {
        &self.weights
    }

    /// Weighted or binary.
    pub fn kind(&self) -> NetworkKind {
        self.kind
    }

    /// |G|: entrywise absolute value. Idempotent.
    pub fn abs_network(&self) -> Self {
        Self { weights: self.weights.map(f64::abs), kind: self.kind }
    }

    /// −G: entrywise negation (diagonal included). Involutive.
    pub fn negate(&self) -> Self {
        Self { weights: self.weights.map(|v| -v), kind: self.kind }
    }

    /// Thresholds a weighted network into a binary one: off-diagonal c ↦ +1
    /// if c ≥ θ, −1 if c ≤ −θ, 0 otherwise (the tie |c| = θ is included);
    /// the diagonal is set to 0.
    pub fn binarize(&self, threshold: f64) -> Result<Self> {
        if self.kind == NetworkKind::Binary {
            return Err(Error::Invalid("binarize expects a weighted network".into()));
        }
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(Error::Invalid(format!(
                "binarize threshold {threshold} outside (0, 1)"
            )));
        }
        let n = self.dim();
        let mut out = SymmetricMatrix::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let c = self.weights.get(i, j);
                out.data_mut()[i * n + j] = if c >= threshold {
                    1.0
                } else if c <= -threshold {
                    -1.0
                } else {
                    0.0
                };
            }
        }
        Ok(Self { weights: out, kind: NetworkKind::Binary })
    }

    /// Ã = A − χI: subtracts χ from every diagonal entry; off-diagonals are
    /// untouched bit-exactly. When the current diagonal is uniformly χ ≥ 0
    /// (a correlation matrix has χ = 1), removing it leaves every balance
    /// index unchanged: the e^{χI} factor cancels between e^A and e^{|A|}.
    pub fn shift_diagonal(&self, chi: f64) -> Result<Self> {
        if !chi.is_finite() {
            return Err(Error::Invalid(format!("diagonal shift {chi} is not finite")));
        }
        let n = self.dim();
        let mut w = self.weights.clone();
        for i in 0..n {
            w.data_mut()[i * n + i] -= chi;
        }
        let kind = binary_kind_after(self.kind, &w);
        Ok(Self { weights: w, kind })
    }

    /// σ·W·σ with σ diagonal, σᵢᵢ = −1 for i in `nodes` and +1 otherwise.
    /// Involutive for a fixed subset; preserves |G| exactly.
    pub fn switch(&self, nodes: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut sigma = vec![1.0; n];
        for &i in nodes {
            if i >= n {
                return Err(Error::Invalid(format!(
                    "switch node {i} out of range for {n} nodes"
                )));
            }
            sigma[i] = -1.0;
        }
        let mut w = self.weights.clone();
        for i in 0..n {
            for j in 0..n {
                w.data_mut()[i * n + j] *= sigma[i] * sigma[j];
            }
        }
        Ok(Self { weights: w, kind: self.kind })
    }

    /// Computes the shared decomposition pair (A, |A|).
    pub fn spectra(&self) -> Result<SpectralPair> {
        Ok(SpectralPair {
            signed: eig_sym(&self.weights)?,
            unsigned: eig_sym(&self.abs_network().weights)?,
        })
    }
}

/// A binary tag survives an operation only if the entries are still ±1/0.
fn binary_kind_after(kind: NetworkKind, w: &SymmetricMatrix) -> NetworkKind {
    if kind == NetworkKind::Binary
        && w.as_slice().iter().all(|&v| v == 0.0 || v == 1.0 || v == -1.0)
    {
        NetworkKind::Binary
    } else if kind == NetworkKind::Binary {
        NetworkKind::Weighted
    } else {
        kind
    }
}

/// The complete graph K_n with every edge +1 (zero diagonal).
pub fn complete_positive(n: usize) -> Result<SignedNetwork> {
    if n == 0 {
        return Err(Error::Invalid("node count must be positive".into()));
    }
    let mut m = SymmetricMatrix::zeros(n)?;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.data_mut()[i * n + j] = 1.0;
            }
        }
    }
    Ok(SignedNetwork { weights: m, kind: NetworkKind::Binary })
}

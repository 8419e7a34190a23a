//! Dense symmetric matrices, their eigendecompositions, and spectral matrix
//! functions.
//!
//! Every indicator in this crate reduces to the spectrum of a symmetric
//! matrix, so all matrix functions are evaluated through the decomposition:
//! f(M) = Q·diag(f(λ))·Qᵀ. Scaling-and-squaring is deliberately not used —
//! the eigenvalues are needed anyway, and inputs are symmetric by
//! construction.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Iteration cap for the symmetric eigensolver; generous for the dense
/// desk-scale matrices (N up to a few hundred) this crate targets.
const EIG_MAX_ITER: usize = 50_000;

/// Sweep cap for the Jacobi polish in [`eig_sym`]. The input is already
/// nearly diagonal, so convergence is quadratic and one or two sweeps
/// suffice; the cap only guards termination.
const POLISH_MAX_SWEEPS: usize = 12;

/// A dense symmetric matrix with finite entries.
///
/// Construction symmetrizes the input as (M + Mᵀ)/2 — empirical correlation
/// matrices routinely carry last-bit asymmetry — and rejects NaN/infinite
/// entries, so every held matrix is exactly symmetric and finite.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    /// Row-major n×n storage; `data[i*n + j] == data[j*n + i]` exactly.
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from row-major entries, symmetrizing and validating.
    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix dimension must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        for (idx, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Invalid(format!(
                    "non-finite entry {v} at ({}, {})",
                    idx / n,
                    idx % n
                )));
            }
        }
        let mut data = entries;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(Self { n, data })
    }

    /// Builds from nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        Self::from_row_major(n, rows.iter().flatten().copied().collect())
    }

    /// The n×n zero matrix.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_row_major(n, vec![0.0; n * n])
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry accessor (panics on out-of-range indices, like slice indexing).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        self.data[i * self.n + j]
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest absolute entry (zero matrix → 0).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::Dimension(format!(
                "vector length {} does not match matrix dimension {}",
                x.len(),
                self.n
            )));
        }
        Ok((0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                // Neumaier-compensated dot product: keeps long iteration
                // chains (e.g. the diffusion recurrence) near ulp accuracy
                let mut sum = 0.0f64;
                let mut comp = 0.0f64;
                for (a, b) in row.iter().zip(x) {
                    let term = a * b;
                    let t = sum + term;
                    comp += if sum.abs() >= term.abs() {
                        (sum - t) + term
                    } else {
                        (term - t) + sum
                    };
                    sum = t;
                }
                sum + comp
            })
            .collect())
    }

    /// Entrywise map that preserves symmetry (used by the network ops).
    pub(crate) fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Mutable raw access for crate-internal constructions that maintain
    /// symmetry themselves.
    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub(crate) fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }
}

/// Scalar spectral functions supported by [`mat_func`] and friends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFunction {
    /// e^λ
    Exp,
    /// e^{−λ}
    NegExp,
    /// cosh λ
    Cosh,
    /// sinh λ
    Sinh,
}

impl MatrixFunction {
    /// Evaluates the scalar function.
    pub fn eval(self, x: f64) -> f64 {
        match self {
            MatrixFunction::Exp => x.exp(),
            MatrixFunction::NegExp => (-x).exp(),
            MatrixFunction::Cosh => x.cosh(),
            MatrixFunction::Sinh => x.sinh(),
        }
    }

    /// Human-readable name used in overflow errors.
    pub fn name(self) -> &'static str {
        match self {
            MatrixFunction::Exp => "exp",
            MatrixFunction::NegExp => "neg-exp",
            MatrixFunction::Cosh => "cosh",
            MatrixFunction::Sinh => "sinh",
        }
    }
}

/// Eigendecomposition of a [`SymmetricMatrix`].
///
/// Eigenvalues are sorted descending (λ₁ ≥ … ≥ λ_N); each eigenvector is
/// normalized with its first component of magnitude above 1e−12 made
/// positive, so decompositions are deterministic across runs.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    n: usize,
    eigenvalues: Vec<f64>,
    /// Column-major: `vectors[j*n..(j+1)*n]` is the eigenvector for λ_j.
    vectors: Vec<f64>,
}

impl SpectralDecomposition {
    /// Dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Largest eigenvalue λ₁.
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Smallest eigenvalue λ_N.
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[self.n - 1]
    }

    /// The j-th eigenvector (paired with `eigenvalues()[j]`).
    pub fn eigenvector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.n..(j + 1) * self.n]
    }
}

/// Refines computed eigenpairs with threshold-Jacobi sweeps.
///
/// The QR eigensolver returns eigenvalues near machine precision and an
/// orthonormal `q`, but its accumulated eigenvectors can leave residuals
/// ‖MQ − QΛ‖ around 1e−10 even on mild inputs — coarse enough to dominate
/// the error of every spectral matrix function built on top. B = QᵀMQ is
/// then almost diagonal, so cyclic Jacobi rotations (quadratically
/// convergent from such a start) drive the off-diagonal mass down to
/// O(n·u·‖M‖); accumulating the rotations into `q` keeps it orthonormal.
/// Returns the polished eigenvalues, unordered.
fn jacobi_polish(m: &DMatrix<f64>, q: &mut DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut b = q.transpose() * m * &*q;
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (b[(i, j)] + b[(j, i)]);
            b[(i, j)] = avg;
            b[(j, i)] = avg;
        }
    }
    let scale = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tol = f64::EPSILON * scale;
    if scale > 0.0 {
        for _ in 0..POLISH_MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for r in (p + 1)..n {
                    let bpr = b[(p, r)];
                    if bpr.abs() <= tol {
                        continue;
                    }
                    rotated = true;
                    // smaller-root rotation that zeroes b[(p, r)]
                    let tau = (b[(r, r)] - b[(p, p)]) / (2.0 * bpr);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        1.0 / (tau - (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    for i in 0..n {
                        if i == p || i == r {
                            continue;
                        }
                        let bip = b[(i, p)];
                        let bir = b[(i, r)];
                        b[(i, p)] = c * bip - s * bir;
                        b[(p, i)] = b[(i, p)];
                        b[(i, r)] = s * bip + c * bir;
                        b[(r, i)] = b[(i, r)];
                    }
                    b[(p, p)] -= t * bpr;
                    b[(r, r)] += t * bpr;
                    b[(p, r)] = 0.0;
                    b[(r, p)] = 0.0;
                    for i in 0..n {
                        let qip = q[(i, p)];
                        let qir = q[(i, r)];
                        q[(i, p)] = c * qip - s * qir;
                        q[(i, r)] = s * qip + c * qir;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
    }
    (0..n).map(|i| b[(i, i)]).collect()
}

/// Decomposes a symmetric matrix; deterministic ordering as documented on
/// [`SpectralDecomposition`]. Eigenpairs are Jacobi-polished after the QR
/// solve so residuals ‖MQ − QΛ‖ stay near n·u·‖M‖.
pub fn eig_sym(m: &SymmetricMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let a = m.to_dmatrix();
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, EIG_MAX_ITER)
        .ok_or(Error::EigenFailed { n })?;
    let mut q = eig.eigenvectors;
    let polished = jacobi_polish(&a, &mut q);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| polished[b].partial_cmp(&polished[a]).unwrap());

    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = vec![0.0; n * n];
    for (slot, &src) in order.iter().enumerate() {
        eigenvalues.push(polished[src]);
        let col = q.column(src);
        let flip = col.iter().find(|v| v.abs() > 1e-12).is_some_and(|&v| v < 0.0);
        let sign = if flip { -1.0 } else { 1.0 };
        for i in 0..n {
            vectors[slot * n + i] = sign * col[i];
        }
    }
    Ok(SpectralDecomposition { n, eigenvalues, vectors })
}

fn eval_spectrum(d: &SpectralDecomposition, f: MatrixFunction) -> Result<Vec<f64>> {
    d.eigenvalues
        .iter()
        .map(|&lambda| {
            let v = f.eval(lambda);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Overflow { func: f.name(), eigenvalue: lambda })
            }
        })
        .collect()
}

/// Full matrix function Q·diag(f(λ))·Qᵀ.
pub fn mat_func(d: &SpectralDecomposition, f: MatrixFunction) -> Result<SymmetricMatrix> {
    let n = d.n;
    let fl = eval_spectrum(d, f)?;
    let mut out = vec![0.0; n * n];
    for (j, &w) in fl.iter().enumerate() {
        let q = d.eigenvector(j);
        for r in 0..n {
            let qr = w * q[r];
            for c in r..n {
                out[r * n + c] += qr * q[c];
            }
        }
    }
    for r in 0..n {
        for c in 0..r {
            out[r * n + c] = out[c * n + r];
        }
    }
    SymmetricMatrix::from_row_major(n, out)
}

/// Trace of the matrix function: Σᵢ f(λᵢ), without forming the matrix.
pub fn trace_func(d: &SpectralDecomposition, f: MatrixFunction) -> Result<f64> {
    Ok(eval_spectrum(d, f)?.iter().sum())
}

/// Diagonal of the matrix function: [f(M)]ᵢᵢ = Σⱼ f(λⱼ)·Qᵢⱼ², in O(n²).
pub fn diag_func(d: &SpectralDecomposition, f: MatrixFunction) -> Result<Vec<f64>> {
    let fl = eval_spectrum(d, f)?;
    let mut diag = vec![0.0; d.n];
    for (j, &w) in fl.iter().enumerate() {
        let q = d.eigenvector(j);
        for (acc, qi) in diag.iter_mut().zip(q) {
            *acc += w * qi * qi;
        }
    }
    Ok(diag)
}

/// Applies the matrix function to a vector: f(M)·x = Q·diag(f(λ))·Qᵀ·x,
/// in O(n²).
pub fn mat_func_apply(d: &SpectralDecomposition, f: MatrixFunction, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != d.n {
        return Err(Error::Dimension(format!(
            "vector length {} does not match decomposition dimension {}",
            x.len(),
            d.n
        )));
    }
    let fl = eval_spectrum(d, f)?;
    let mut out = vec![0.0; d.n];
    for (j, &w) in fl.iter().enumerate() {
        let q = d.eigenvector(j);
        let proj: f64 = q.iter().zip(x).map(|(a, b)| a * b).sum();
        let wp = w * proj;
        for (acc, qi) in out.iter_mut().zip(q) {
            *acc += wp * qi;
        }
    }
    Ok(out)
}

//! Seeded random correlation matrices.
//!
//! [`random_correlation`] draws from the uniform (LKJ shape η = 1) density
//! over the space of valid correlation matrices using the onion
//! construction: the matrix is grown one dimension at a time, each new row
//! sampled as a point inside the unit ball whose radius² follows the right
//! Beta law. The Cholesky factor is maintained incrementally — every row of
//! L has unit norm, so R = L·Lᵀ has an exactly unit diagonal by design.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::pipeline::window::correlation_of_standardized;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent per-task seed from a base seed, a stream id, and a
/// task index, so sweeps get identical results whether tasks run serially or
/// in parallel.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    let mut z = splitmix64(base ^ 0xA076_1D64_78BD_642F);
    z = splitmix64(z ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    splitmix64(z ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Uniform point on the unit sphere in R^k.
fn sphere_point(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A random n×n correlation matrix, deterministic per seed.
pub fn random_correlation(n: usize, seed: u64) -> Result<SymmetricMatrix> {
    if n < 2 {
        return Err(Error::Invalid(format!("random correlation needs n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // first 2×2 block: r12 = 2·Beta(β, β) − 1 with β = n/2
    let mut beta_param = n as f64 / 2.0;
    let b = Beta::new(beta_param, beta_param).expect("positive Beta parameters");
    let r12 = 2.0 * b.sample(&mut rng) - 1.0;

    // rows of the lower Cholesky factor, each of unit norm
    let mut l_rows: Vec<Vec<f64>> = vec![vec![1.0], vec![r12, (1.0 - r12 * r12).max(0.0).sqrt()]];

    // grow one dimension per step: radius² ~ Beta(k/2, β), direction uniform
    for k in 2..n {
        beta_param -= 0.5;
        let y = Beta::new(k as f64 / 2.0, beta_param)
            .expect("positive Beta parameters")
            .sample(&mut rng);
        let u = sphere_point(&mut rng, k);
        let mut row: Vec<f64> = u.into_iter().map(|ui| y.sqrt() * ui).collect();
        row.push((1.0 - y).max(0.0).sqrt());
        l_rows.push(row);
    }

    // R = L·Lᵀ with exact unit diagonal
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
        for j in 0..i {
            let dot: f64 = l_rows[j]
                .iter()
                .zip(&l_rows[i])
                .map(|(a, b)| a * b)
                .sum();
            let c = dot.clamp(-1.0, 1.0);
            data[i * n + j] = c;
            data[j * n + i] = c;
        }
    }
    SymmetricMatrix::from_row_major(n, data)
}

/// Correlation matrix of an n×t panel of iid standard normals,
/// deterministic per seed.
pub fn wishart_panel_correlation(n: usize, t: usize, seed: u64) -> Result<SymmetricMatrix> {
    if n < 2 || t < n {
        return Err(Error::Invalid(format!(
            "Wishart panel needs t >= n >= 2, got n={n}, t={t}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut standardized = Vec::with_capacity(n);
    for _ in 0..n {
        let row: Vec<f64> = (0..t).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let mean = row.iter().sum::<f64>() / t as f64;
        let var = row.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / t as f64;
        if var <= 0.0 {
            return Err(Error::Invalid("degenerate normal sample row".into()));
        }
        let sd = var.sqrt();
        standardized.push(row.iter().map(|v| (v - mean) / sd).collect::<Vec<f64>>());
    }
    Ok(correlation_of_standardized(&standardized, t))
}

//! Embedded reference fixtures: three signed K₄ variants and a 4-asset
//! correlation example, each with published index values. The `toy`
//! subcommand recomputes every value and reports pass/fail per line; the
//! same battery backs the acceptance suite.

use crate::balance::{global_balance, local_balance};
use crate::conditioning::{condition_number_from, condition_ratio};
use crate::diffusion::asymptotic_state;
use crate::error::Result;
use crate::linalg::{mat_func, MatrixFunction, SymmetricMatrix};
use crate::sgraph::{complete_positive, SignedNetwork};

/// Balanced K₄: all-positive complete graph switched at node 3 (index 2),
/// so node 3 is anti-aligned with the {1, 2, 4} faction.
pub fn k4_balanced() -> SignedNetwork {
    complete_positive(4)
        .expect("K4 construction")
        .switch(&[2])
        .expect("valid switch subset")
}

/// Strictly unbalanced K₄ with sign pattern
/// +12 +13 +14 −23 +24 −34 (1-based node labels).
pub fn k4_frustrated() -> SignedNetwork {
    let rows = [
        vec![0.0, 1.0, 1.0, 1.0],
        vec![1.0, 0.0, -1.0, 1.0],
        vec![1.0, -1.0, 0.0, -1.0],
        vec![1.0, 1.0, -1.0, 0.0],
    ];
    SignedNetwork::weighted(SymmetricMatrix::from_rows(&rows).expect("valid K4 weights"))
}

/// All-negative K₄, the most unbalanced four-node complete graph
/// (and the canonical antibalanced example at this size).
pub fn k4_all_negative() -> SignedNetwork {
    complete_positive(4).expect("K4 construction").negate()
}

/// The 4-asset correlation matrix of the worked example.
pub fn correlation4() -> SignedNetwork {
    let rows = [
        vec![1.0, 0.764_427_37, 0.335_311_37, 0.235_632_5],
        vec![0.764_427_37, 1.0, 0.051_374_79, -0.349_093_3],
        vec![0.335_311_37, 0.051_374_79, 1.0, 0.734_834_8],
        vec![0.235_632_5, -0.349_093_3, 0.734_834_8, 1.0],
    ];
    let m = SymmetricMatrix::from_rows(&rows).expect("valid correlation entries");
    SignedNetwork::from_correlation(m).expect("printed matrix is a correlation matrix")
}

/// One fixture comparison: a computed value against its published target.
#[derive(Clone, Debug)]
pub struct ToyCheck {
    pub label: String,
    pub computed: f64,
    pub expected: f64,
    pub tol: f64,
}

impl ToyCheck {
    pub fn pass(&self) -> bool {
        (self.computed - self.expected).abs() <= self.tol
    }
}

fn push_scalar(out: &mut Vec<ToyCheck>, label: &str, computed: f64, expected: f64, tol: f64) {
    out.push(ToyCheck { label: label.to_string(), computed, expected, tol });
}

fn push_vector(out: &mut Vec<ToyCheck>, label: &str, computed: &[f64], expected: &[f64], tol: f64) {
    assert_eq!(computed.len(), expected.len(), "fixture arity for {label}");
    for (i, (c, e)) in computed.iter().zip(expected).enumerate() {
        out.push(ToyCheck { label: format!("{label}[{}]", i + 1), computed: *c, expected: *e, tol });
    }
}

/// Narrative tolerance: values printed to 3 decimals.
const TOL_STORY: f64 = 5e-4;

/// Recomputes every embedded fixture. Errors only on construction or
/// eigensolver failure; value mismatches are reported via [`ToyCheck::pass`].
pub fn reference_checks() -> Result<Vec<ToyCheck>> {
    let mut out = Vec::new();

    // --- balanced K4: diffusion endpoints and perfect balance ---
    let b = k4_balanced();
    push_scalar(&mut out, "balanced K4: kappa", global_balance(&b)?, 1.0, 1e-12);
    let x = asymptotic_state(&b, &[1.0, 1.0, 1.0, 1.0])?;
    push_vector(&mut out, "balanced K4: x_inf from [1,1,1,1]", &x, &[10.227, 10.227, -9.491, 10.227], TOL_STORY);
    let x = asymptotic_state(&b, &[2.0, 1.0, 1.0, 1.0])?;
    push_vector(&mut out, "balanced K4: x_inf from [2,1,1,1]", &x, &[15.524, 15.156, -14.420, 15.156], TOL_STORY);

    // --- frustrated K4: partial balance and non-monotone responses ---
    let f = k4_frustrated();
    push_scalar(&mut out, "frustrated K4: kappa", global_balance(&f)?, 0.592, TOL_STORY);
    push_vector(&mut out, "frustrated K4: local balance", &local_balance(&f)?, &[0.508, 0.677, 0.508, 0.677], TOL_STORY);
    let x = asymptotic_state(&f, &[1.0, 1.0, 1.0, 1.0])?;
    push_vector(&mut out, "frustrated K4: x_inf from [1,1,1,1]", &x, &[6.855, 6.800, -1.418, 6.800], TOL_STORY);
    let x = asymptotic_state(&f, &[18.0, 1.0, 1.0, 1.0])?;
    push_vector(&mut out, "frustrated K4: x_inf from [18,1,1,1]", &x, &[52.599, 41.961, -0.952, 41.961], TOL_STORY);
    let x = asymptotic_state(&f, &[20.0, 1.2, 1.0, 1.2])?;
    push_vector(&mut out, "frustrated K4: x_inf from [20,1.2,1,1.2]", &x, &[58.808, 47.457, -1.724, 47.457], TOL_STORY);

    // --- all-negative K4: maximal unbalance ---
    let k = k4_all_negative();
    push_scalar(&mut out, "all-negative K4: kappa", global_balance(&k)?, 0.387, TOL_STORY);
    let x = asymptotic_state(&k, &[1.2, 1.0, 1.0, 1.0])?;
    push_vector(&mut out, "all-negative K4: x_inf from [1.2,1,1,1]", &x, &[0.460, -0.084, -0.084, -0.084], TOL_STORY);
    let x = asymptotic_state(&k, &[1.4, 0.7, 1.0, 0.7])?;
    push_vector(&mut out, "all-negative K4: x_inf from [1.4,0.7,1,0.7]", &x, &[1.271, -0.632, 0.183, -0.632], TOL_STORY);

    // --- 4-asset correlation example: full index battery ---
    let g = correlation4();
    push_scalar(&mut out, "correlation example: kappa", global_balance(&g)?, 0.961_699_1, 1e-6);
    push_vector(
        &mut out,
        "correlation example: local balance",
        &local_balance(&g)?,
        &[0.959_610_2, 0.951_966_7, 0.983_286_7, 0.952_612_3],
        1e-6,
    );

    let pair = g.spectra()?;
    push_vector(
        &mut out,
        "correlation example: signed eigenvalues",
        pair.signed.eigenvalues(),
        &[1.956_270_77, 1.704_643_21, 0.316_670_46, 0.022_415_57],
        1e-7,
    );
    push_vector(
        &mut out,
        "correlation example: unsigned eigenvalues",
        pair.unsigned.eigenvalues(),
        &[2.239_494_71, 1.274_002_44, 0.439_242_68, 0.047_260_18],
        1e-7,
    );

    push_scalar(&mut out, "correlation example: cond(exp(-A))", condition_number_from(&pair.signed)?, 30.378_52, 1e-4);
    push_scalar(&mut out, "correlation example: cond(exp(-|A|))", condition_number_from(&pair.unsigned)?, 30.887_39, 1e-4);
    push_scalar(&mut out, "correlation example: ratio", condition_ratio(&g)?, 0.983_525_1, 1e-6);

    // ε = 2 self-amplification at node 1 under signed and unsigned weights
    let exp_signed = mat_func(&pair.signed, MatrixFunction::Exp)?;
    let exp_unsigned = mat_func(&pair.unsigned, MatrixFunction::Exp)?;
    push_scalar(&mut out, "correlation example: 2*exp(A)_11", 2.0 * exp_signed.get(0, 0), 7.640_996, 1e-5);
    push_scalar(&mut out, "correlation example: 2*exp(|A|)_11", 2.0 * exp_unsigned.get(0, 0), 7.962_604, 1e-5);
    push_scalar(
        &mut out,
        "correlation example: exp(|A|)_11 - exp(A)_11",
        exp_unsigned.get(0, 0) - exp_signed.get(0, 0),
        0.160_804,
        1e-6,
    );

    Ok(out)
}

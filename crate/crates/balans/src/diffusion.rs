//! The non-Markovian, non-conservative information-diffusion process whose
//! steady state is x_∞ = e^A·x₀.
//!
//! The recurrence Δx(t+1) = α(t)·A·Δx(t) with Δx(0) = x₀ accumulates
//! x(t) = x(t−1) + Δx(t). Under the factorial schedule α(k) = 1/(k+1) the
//! increments are exactly the Taylor terms A^τ·x₀/τ!, so x(t) marches through
//! the partial sums of e^A·x₀. A full-broadcast variant x(t) = (I+A)^t·x₀ is
//! provided for testing; it generally diverges and is not used by any index.

use crate::error::{Error, Result};
use crate::linalg::{eig_sym, mat_func, mat_func_apply, MatrixFunction};
use crate::sgraph::SignedNetwork;

/// State max-norm beyond which a run is declared divergent.
pub const DIVERGENCE_GUARD: f64 = 1e12;

/// Step-size rule α(k) for the increment recurrence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Schedule {
    /// α(k) = 1/(k+1): increments become Taylor terms and x(t) → e^A·x₀.
    Factorial,
    /// Constant α ∈ (0, 1]; generally converges somewhere other than e^A·x₀
    /// (or not at all) — kept for experimentation.
    Constant(f64),
    /// The full-broadcast first process x(t) = (I+A)^t·x₀ (testing variant).
    FullBroadcast,
}

impl Schedule {
    fn validate(&self) -> Result<()> {
        if let Schedule::Constant(a) = self {
            if !(*a > 0.0 && *a <= 1.0) {
                return Err(Error::Invalid(format!("schedule constant {a} outside (0, 1]")));
            }
        }
        Ok(())
    }
}

/// Result of a [`simulate`] run.
///
/// `converged` is true only when the step criterion ‖x(t)−x(t−1)‖_max ≤ tol
/// fired *and* the final state is within tol of e^A·x₀; the run keeps
/// iterating (up to `t_max`) until both hold, since a small single step
/// does not bound the remaining tail of the series. A schedule that
/// plateaus away from e^A·x₀ reports converged = false with an honest
/// `residual` after the full `t_max` steps.
#[derive(Clone, Debug)]
pub struct DiffusionRun {
    /// States x(0)..x(T) when trajectory storage is on, else empty.
    pub trajectory: Vec<Vec<f64>>,
    /// Final state x(T).
    pub steady_state: Vec<f64>,
    /// Steps actually taken (T).
    pub steps: usize,
    /// Whether the run settled at the exponential steady state (see above).
    pub converged: bool,
    /// Max-norm gap between the final state and e^A·x₀.
    pub residual: f64,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Runs the diffusion recurrence for at most `t_max` steps, stopping early
/// once the increment and the distance to e^A·x₀ are both ≤ `tol`. States
/// beyond [`DIVERGENCE_GUARD`] in max-norm abort with a divergence error
/// carrying the last finite step.
pub fn simulate(
    g: &SignedNetwork,
    x0: &[f64],
    schedule: Schedule,
    t_max: usize,
    tol: f64,
    keep_trajectory: bool,
) -> Result<DiffusionRun> {
    let n = g.dim();
    if x0.len() != n {
        return Err(Error::Dimension(format!(
            "initial state length {} does not match network size {n}",
            x0.len()
        )));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Invalid("initial state has non-finite entries".into()));
    }
    if t_max == 0 {
        return Err(Error::Invalid("t_max must be at least 1".into()));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Invalid(format!("tolerance {tol} must be positive")));
    }
    schedule.validate()?;

    let reference = asymptotic_state(g, x0)?;
    let mut x = x0.to_vec();
    let mut dx = x0.to_vec();
    let mut trajectory = Vec::new();
    if keep_trajectory {
        trajectory.push(x.clone());
    }

    let gap_to = |x: &[f64]| -> f64 {
        x.iter().zip(&reference).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    };

    let mut steps = 0;
    let mut converged = false;
    for t in 0..t_max {
        let next_dx = match schedule {
            Schedule::Factorial => {
                let alpha = 1.0 / (t as f64 + 1.0);
                g.weights().mul_vec(&dx)?.iter().map(|v| alpha * v).collect::<Vec<_>>()
            }
            Schedule::Constant(a) => {
                g.weights().mul_vec(&dx)?.iter().map(|v| a * v).collect::<Vec<_>>()
            }
            Schedule::FullBroadcast => g.weights().mul_vec(&x)?,
        };
        for (xi, di) in x.iter_mut().zip(&next_dx) {
            *xi += di;
        }
        dx = next_dx;
        steps = t + 1;

        let norm = max_norm(&x);
        if !norm.is_finite() || norm > DIVERGENCE_GUARD {
            return Err(Error::Diverged { t, norm });
        }
        if keep_trajectory {
            trajectory.push(x.clone());
        }
        if max_norm(&dx) <= tol && gap_to(&x) <= tol {
            converged = true;
            break;
        }
    }

    let residual = gap_to(&x);
    Ok(DiffusionRun { trajectory, steady_state: x, steps, converged, residual })
}

/// The exponential steady state x_∞ = e^A·x₀, via the spectral route.
pub fn asymptotic_state(g: &SignedNetwork, x0: &[f64]) -> Result<Vec<f64>> {
    let d = eig_sym(g.weights())?;
    mat_func_apply(&d, MatrixFunction::Exp, x0)
}

/// Steady-state response to perturbing the initial state at one node:
/// x*_∞ − x_∞ = ε·(column `node` of e^A), whose `node`-th entry
/// ε·[e^A]ᵢᵢ is the self-amplification. Linear in ε by construction.
pub fn perturbation_response(
    g: &SignedNetwork,
    node: usize,
    epsilon: f64,
) -> Result<(Vec<f64>, f64)> {
    let n = g.dim();
    if node >= n {
        return Err(Error::Invalid(format!("node {node} out of range for {n} nodes")));
    }
    let d = eig_sym(g.weights())?;
    let e = mat_func(&d, MatrixFunction::Exp)?;
    let column: Vec<f64> = (0..n).map(|i| epsilon * e.get(i, node)).collect();
    let self_amp = column[node];
    Ok((column, self_amp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SymmetricMatrix;
    use crate::sgraph::complete_positive;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn trajectory_starts_at_x0_exactly() {
        let g = complete_positive(3).unwrap();
        let x0 = vec![0.25, -1.5, 3.0];
        let run = simulate(&g, &x0, Schedule::Factorial, 80, 1e-12, true).unwrap();
        assert_eq!(run.trajectory[0], x0);
        assert!(run.converged);
        assert!(run.residual <= 1e-12);
    }

    #[test]
    fn factorial_schedule_reaches_exponential_state() {
        let g = complete_positive(4).unwrap().negate();
        let x0 = vec![1.2, 1.0, 1.0, 1.0];
        let run = simulate(&g, &x0, Schedule::Factorial, 100, 1e-12, false).unwrap();
        let exact = asymptotic_state(&g, &x0).unwrap();
        for (a, b) in run.steady_state.iter().zip(&exact) {
            assert_close(*a, *b, 1e-11);
        }
        assert!(run.trajectory.is_empty(), "trajectory storage was off");
    }

    #[test]
    fn factorial_partial_sums_match_taylor() {
        // x(t) must equal [Σ_{τ≤t} A^τ/τ!]·x₀ at every step
        let g = complete_positive(3).unwrap().switch(&[1]).unwrap();
        let x0 = vec![1.0, -2.0, 0.5];
        let run = simulate(&g, &x0, Schedule::Factorial, 12, 1e-30, true).unwrap();
        let mut expect = x0.clone();
        let mut term = x0.clone();
        for (t, state) in run.trajectory.iter().enumerate().skip(1) {
            term = g.weights().mul_vec(&term).unwrap();
            term.iter_mut().for_each(|v| *v /= t as f64);
            for (e, tv) in expect.iter_mut().zip(&term) {
                *e += tv;
            }
            for (a, b) in state.iter().zip(&expect) {
                assert_close(*a, *b, 1e-12);
            }
        }
    }

    #[test]
    fn full_broadcast_matches_power_iteration() {
        let g = complete_positive(3).unwrap();
        let x0 = vec![1.0, 0.0, 0.0];
        let run = simulate(&g, &x0, Schedule::FullBroadcast, 6, 1e-30, true).unwrap();
        // oracle: explicit repeated multiplication by (I + A)
        let mut y = x0.clone();
        for state in run.trajectory.iter().skip(1) {
            let ay = g.weights().mul_vec(&y).unwrap();
            y = y.iter().zip(&ay).map(|(a, b)| a + b).collect();
            for (got, want) in state.iter().zip(&y) {
                assert_close(*got, *want, 1e-12);
            }
        }
    }

    #[test]
    fn divergence_guard_fires() {
        // constant schedule on a large-gain network is non-summable
        let m = SymmetricMatrix::from_rows(&[vec![0.0, 30.0], vec![30.0, 0.0]]).unwrap();
        let g = SignedNetwork::weighted(m);
        let err = simulate(&g, &[1.0, 1.0], Schedule::Constant(1.0), 100, 1e-12, false)
            .unwrap_err();
        assert!(matches!(err, Error::Diverged { .. }), "got {err:?}");
    }

    #[test]
    fn constant_schedule_can_settle_off_target() {
        // α(k) = 1/2 converges (spectral radius 1/2·||A|| < 1) but not to e^A·x₀
        let m = SymmetricMatrix::from_rows(&[vec![0.0, 0.8], vec![0.8, 0.0]]).unwrap();
        let g = SignedNetwork::weighted(m);
        let run = simulate(&g, &[1.0, 0.0], Schedule::Constant(0.5), 500, 1e-12, false).unwrap();
        assert!(!run.converged, "plateau away from e^A·x0 must not claim convergence");
        assert!(run.residual > 1e-3);
    }

    #[test]
    fn simulate_validates_inputs() {
        let g = complete_positive(3).unwrap();
        assert!(simulate(&g, &[1.0], Schedule::Factorial, 10, 1e-9, false).is_err());
        assert!(simulate(&g, &[1.0, f64::NAN, 0.0], Schedule::Factorial, 10, 1e-9, false).is_err());
        assert!(simulate(&g, &[1.0, 0.0, 0.0], Schedule::Factorial, 0, 1e-9, false).is_err());
        assert!(simulate(&g, &[1.0, 0.0, 0.0], Schedule::Factorial, 10, 0.0, false).is_err());
        assert!(simulate(&g, &[1.0, 0.0, 0.0], Schedule::Constant(1.5), 10, 1e-9, false).is_err());
    }

    #[test]
    fn zero_initial_state_stays_zero() {
        let g = complete_positive(4).unwrap();
        let x = asymptotic_state(&g, &[0.0; 4]).unwrap();
        for v in x {
            assert_close(v, 0.0, 1e-14);
        }
    }

    #[test]
    fn perturbation_is_linear_and_additive() {
        let g = complete_positive(4).unwrap().switch(&[2]).unwrap();
        let (resp1, amp1) = perturbation_response(&g, 1, 1.0).unwrap();
        let (resp3, amp3) = perturbation_response(&g, 1, 3.0).unwrap();
        for (a, b) in resp1.iter().zip(&resp3) {
            assert_close(3.0 * a, *b, 1e-12);
        }
        assert_close(3.0 * amp1, amp3, 1e-12);

        let (zero, amp0) = perturbation_response(&g, 0, 0.0).unwrap();
        assert!(zero.iter().all(|v| *v == 0.0) && amp0 == 0.0);

        // asymptotic_state(g, x0 + ε·e_i) == asymptotic_state(g, x0) + response
        let x0 = vec![1.0, 2.0, -1.0, 0.5];
        let eps = 0.75;
        let mut shifted = x0.clone();
        shifted[2] += eps;
        let base = asymptotic_state(&g, &x0).unwrap();
        let bumped = asymptotic_state(&g, &shifted).unwrap();
        let (resp, _) = perturbation_response(&g, 2, eps).unwrap();
        for i in 0..4 {
            assert_close(bumped[i], base[i] + resp[i], 1e-10);
        }

        assert!(perturbation_response(&g, 9, 1.0).is_err());
    }
}

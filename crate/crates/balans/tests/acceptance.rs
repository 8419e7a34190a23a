//! Acceptance gate: ten criteria, one test each, every test printing a
//! single `ACCEPTANCE <n> PASS` line (visible with `--nocapture`; failures
//! surface the criterion in the assert message).
//!
//! Run with: `cargo test --test acceptance -- --nocapture`

use std::time::Instant;

use balans::balance::{classify, global_balance, local_balance, BalanceClass, BALANCE_TOL};
use balans::conditioning::{
    condition_number_from, condition_ratio, ratio_via_balances, ratio_via_cosh, walk_weights,
    Dominance,
};
use balans::diffusion::{asymptotic_state, simulate, Schedule};
use balans::linalg::{eig_sym, mat_func, MatrixFunction, SymmetricMatrix};
use balans::pipeline::{
    appendix_experiment, conditional_bins, detect_events, random_correlation, rolling_windows,
    spectral_limits, ReturnPanel, WindowSpec, LIMIT_MOMENTS, LIMIT_TRACE_EXP_NEG,
    LIMIT_TRACE_EXP_POS, PRESET_UNEVEN5,
};
use balans::risk::{amri, principal_variances};
use balans::sgraph::SignedNetwork;
use balans::toy;
use chrono::{Days, NaiveDate};

fn assert_close(what: &str, got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

fn assert_vec_close(what: &str, got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{what}: length mismatch");
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert_close(&format!("{what}[{i}]"), *g, *w, tol);
    }
}

/// Deterministic xorshift64* stream for test-data generation, independent
/// of the library's own RNG plumbing.
struct TestRng(u64);

impl TestRng {
    fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(2685821657736338717).max(1))
    }

    fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0.wrapping_mul(2685821657736338717)
    }

    /// Uniform in [0, 1).
    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// Random symmetric hollow weight matrix with |wᵢⱼ| in [lo, hi) and
/// random signs.
fn random_signed_weights(rng: &mut TestRng, n: usize, lo: f64, hi: f64) -> SymmetricMatrix {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.range(lo, hi) * if rng.flip() { 1.0 } else { -1.0 };
            data[i * n + j] = w;
            data[j * n + i] = w;
        }
    }
    SymmetricMatrix::from_row_major(n, data).unwrap()
}

/// Balanced network built by construction: positive weights switched by a
/// random ±1 node signature.
fn random_balanced(rng: &mut TestRng, n: usize) -> SignedNetwork {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.range(0.1, 1.0);
            data[i * n + j] = w;
            data[j * n + i] = w;
        }
    }
    let g = SignedNetwork::weighted(SymmetricMatrix::from_row_major(n, data).unwrap());
    let flip: Vec<usize> = (0..n).filter(|_| rng.flip()).collect();
    g.switch(&flip).unwrap()
}

#[test]
fn criterion_01_correlation_fixture_battery() {
    let t0 = Instant::now();
    let g = toy::correlation4();

    assert_close("kappa", global_balance(&g).unwrap(), 0.9616991, 1e-6);
    assert_vec_close(
        "local balance",
        &local_balance(&g).unwrap(),
        &[0.9596102, 0.9519667, 0.9832867, 0.9526123],
        1e-6,
    );

    let pair = g.spectra().unwrap();
    assert_vec_close(
        "signed eigenvalues",
        pair.signed.eigenvalues(),
        &[1.95627077, 1.70464321, 0.31667046, 0.02241557],
        1e-7,
    );
    assert_vec_close(
        "unsigned eigenvalues",
        pair.unsigned.eigenvalues(),
        &[2.23949471, 1.27400244, 0.43924268, 0.04726018],
        1e-7,
    );
    assert_close("cond signed", condition_number_from(&pair.signed).unwrap(), 30.37852, 1e-4);
    assert_close("cond unsigned", condition_number_from(&pair.unsigned).unwrap(), 30.88739, 1e-4);
    assert_close("ratio", condition_ratio(&g).unwrap(), 0.9835251, 1e-6);

    let exp_s = mat_func(&pair.signed, MatrixFunction::Exp).unwrap();
    let exp_u = mat_func(&pair.unsigned, MatrixFunction::Exp).unwrap();
    assert_close("self-amplification signed", 2.0 * exp_s.get(0, 0), 7.640996, 1e-5);
    assert_close("self-amplification unsigned", 2.0 * exp_u.get(0, 0), 7.962604, 1e-5);

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 1.0, "fixture battery took {dt:?}, limit 1 s");
    println!("ACCEPTANCE 1 PASS: 4-asset correlation fixture battery in {dt:?}");
}

#[test]
fn criterion_02_toy_network_fixtures() {
    let t0 = Instant::now();
    let tol = 5e-4; // reference values are printed to 3 decimals

    let b = toy::k4_balanced();
    assert_vec_close(
        "balanced x_inf [1,1,1,1]",
        &asymptotic_state(&b, &[1.0, 1.0, 1.0, 1.0]).unwrap(),
        &[10.227, 10.227, -9.491, 10.227],
        tol,
    );
    assert_vec_close(
        "balanced x_inf [2,1,1,1]",
        &asymptotic_state(&b, &[2.0, 1.0, 1.0, 1.0]).unwrap(),
        &[15.524, 15.156, -14.420, 15.156],
        tol,
    );

    let f = toy::k4_frustrated();
    assert_close("frustrated kappa", global_balance(&f).unwrap(), 0.592, tol);
    assert_vec_close(
        "frustrated locals",
        &local_balance(&f).unwrap(),
        &[0.508, 0.677, 0.508, 0.677],
        tol,
    );

    let k = toy::k4_all_negative();
    assert_close("all-negative kappa", global_balance(&k).unwrap(), 0.387, tol);
    assert_vec_close(
        "all-negative x_inf [1.2,1,1,1]",
        &asymptotic_state(&k, &[1.2, 1.0, 1.0, 1.0]).unwrap(),
        &[0.460, -0.084, -0.084, -0.084],
        tol,
    );
    assert_vec_close(
        "all-negative x_inf [1.4,0.7,1,0.7]",
        &asymptotic_state(&k, &[1.4, 0.7, 1.0, 0.7]).unwrap(),
        &[1.271, -0.632, 0.183, -0.632],
        tol,
    );

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 1.0, "toy fixtures took {dt:?}, limit 1 s");
    println!("ACCEPTANCE 2 PASS: toy network fixtures in {dt:?}");
}

#[test]
fn criterion_03_balanced_and_antibalanced_ratio_is_one() {
    let mut rng = TestRng::new(103);
    for case in 0..1000 {
        let n = 3 + rng.below(10); // N ≤ 12
        let g = if case % 2 == 0 {
            random_balanced(&mut rng, n)
        } else {
            random_balanced(&mut rng, n).negate()
        };
        let ratio = condition_ratio(&g).unwrap();
        assert!(
            (ratio - 1.0).abs() <= 1e-9,
            "case {case} (n = {n}): |ratio - 1| = {} > 1e-9",
            (ratio - 1.0).abs()
        );
    }
    println!("ACCEPTANCE 3 PASS: |ratio - 1| <= 1e-9 on 1000 balanced/antibalanced networks");
}

#[test]
fn criterion_04_dominance_fixes_ratio_side() {
    let mut rng = TestRng::new(104);
    let mut kept = 0;
    let mut decisive = 0;
    while kept < 1000 {
        let n = 4 + rng.below(9); // N in 4..=12
        let g = SignedNetwork::weighted(random_signed_weights(&mut rng, n, 0.1, 1.0));
        if classify(&g, BALANCE_TOL).unwrap() != BalanceClass::StrictlyUnbalanced {
            continue;
        }
        kept += 1;
        // route 1: ratio from the trace-norm condition numbers
        let ratio = condition_ratio(&g).unwrap();
        if (ratio - 1.0).abs() <= 1e-9 {
            continue; // side undefined at the tolerance
        }
        decisive += 1;
        // route 2: dominance from closed-walk weights only
        let w = walk_weights(&g).unwrap();
        let even = w.even_pos * w.even_neg;
        let odd = w.odd_pos * w.odd_neg;
        let side = if ratio < 1.0 { Dominance::EvenDominant } else { Dominance::OddDominant };
        let walks = if even > odd { Dominance::EvenDominant } else { Dominance::OddDominant };
        assert_eq!(
            side, walks,
            "network {kept} (n = {n}): ratio {ratio} disagrees with walk products \
             (even {even}, odd {odd})"
        );
    }
    assert!(decisive >= 900, "only {decisive} of 1000 cases were decisive");
    println!(
        "ACCEPTANCE 4 PASS: walk-weight dominance fixed sign(ratio - 1) in {decisive} decisive cases of 1000"
    );
}

#[test]
fn criterion_05_three_ratio_formulas_agree() {
    let t0 = Instant::now();
    let mut rng = TestRng::new(105);
    for case in 0..1000 {
        let n = 2 + rng.below(49); // N ≤ 50
        let g = match case % 3 {
            0 => SignedNetwork::weighted(random_signed_weights(&mut rng, n, 0.05, 1.0)),
            1 => random_balanced(&mut rng, n.max(3)),
            _ => {
                let seed = 90_000 + case as u64;
                SignedNetwork::from_correlation(random_correlation(n.max(2), seed).unwrap())
                    .unwrap()
            }
        };
        let direct = condition_ratio(&g).unwrap();
        let balances = ratio_via_balances(&g).unwrap();
        let cosh = ratio_via_cosh(&g).unwrap();
        let rel = |a: f64| (a - direct).abs() / direct;
        assert!(
            rel(balances) <= 1e-9,
            "case {case} (n = {n}): balance-product route off by {}",
            rel(balances)
        );
        assert!(rel(cosh) <= 1e-9, "case {case} (n = {n}): cosh route off by {}", rel(cosh));
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 30.0, "three-formula sweep took {dt:?}, limit 30 s");
    println!("ACCEPTANCE 5 PASS: three ratio formulas agree to 1e-9 on 1000 networks in {dt:?}");
}

#[test]
fn criterion_06_diffusion_converges_to_matrix_exponential() {
    let mut rng = TestRng::new(106);
    for case in 0..100 {
        let n = 2 + rng.below(19); // N ≤ 20
        let mut m = random_signed_weights(&mut rng, n, 0.1, 1.0);
        // rescale to a spectral radius in (0, 5]
        let d = eig_sym(&m).unwrap();
        let radius = d.eigenvalues().iter().fold(0.0f64, |a, l| a.max(l.abs()));
        if radius > 0.0 {
            let target = rng.range(0.5, 5.0);
            let scale = target / radius;
            let data: Vec<f64> = m.as_slice().iter().map(|v| v * scale).collect();
            m = SymmetricMatrix::from_row_major(n, data).unwrap();
        }
        let g = SignedNetwork::weighted(m);
        let x0: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
        let run = simulate(&g, &x0, Schedule::Factorial, 60, 1e-10, false).unwrap();
        assert!(
            run.converged && run.residual <= 1e-10,
            "case {case} (n = {n}): residual {} after {} steps",
            run.residual,
            run.steps
        );
    }
    println!("ACCEPTANCE 6 PASS: factorial-schedule diffusion reaches exp(A)x0 to 1e-10 by t = 60");
}

#[test]
fn criterion_07_square_panel_spectral_limits() {
    let t0 = Instant::now();
    let limits = spectral_limits(500, 500, 42).unwrap();

    let neg = limits.exp_neg_mean;
    assert!(
        (neg - LIMIT_TRACE_EXP_NEG).abs() <= 0.05 * LIMIT_TRACE_EXP_NEG,
        "mean exp(-lambda) {neg} outside 5% of {LIMIT_TRACE_EXP_NEG}"
    );
    let pos = limits.exp_mean;
    assert!(
        (pos - LIMIT_TRACE_EXP_POS).abs() <= 0.10 * LIMIT_TRACE_EXP_POS,
        "mean exp(lambda) {pos} outside 10% of {LIMIT_TRACE_EXP_POS}"
    );
    for (k, (got, want)) in limits.moments.iter().zip(LIMIT_MOMENTS).enumerate() {
        assert!(
            (got - want).abs() <= 0.05 * want,
            "moment k = {}: {got} outside 5% of {want}",
            k + 1
        );
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "spectral limits took {dt:?}, limit 60 s");
    println!("ACCEPTANCE 7 PASS: N = T = 500 spectral limits within bands in {dt:?}");
}

#[test]
fn criterion_08_ratio_balance_correlation_trend() {
    let rows = appendix_experiment(&[5, 10, 20, 50], 100, 42, true).unwrap();
    let r: Vec<f64> = rows.iter().map(|row| row.pearson).collect();
    for w in r.windows(2) {
        assert!(w[1] > w[0], "pearson not strictly increasing: {r:?}");
    }
    let last = *r.last().unwrap();
    assert!(last >= 0.98, "pearson at n = 50 is {last}, needs >= 0.98");
    println!("ACCEPTANCE 8 PASS: pearson(ratio, kappa) strictly increasing, {last:.7} at n = 50");
}

/// A synthetic return panel: constant drift except for a planted crash
/// stretch of hard negative days.
fn planted_crash_panel(t: usize, crash: std::ops::Range<usize>) -> ReturnPanel {
    let start = NaiveDate::from_ymd_opt(2018, 1, 1).unwrap();
    let dates: Vec<NaiveDate> =
        (0..t).map(|i| start.checked_add_days(Days::new(i as u64)).unwrap()).collect();
    // two assets with slightly different scales so the window correlations
    // stay non-degenerate; the cross-asset mean drives event detection
    let mut a = vec![0.001_f64; t];
    let mut b = vec![0.001_f64; t];
    for i in 0..t {
        // deterministic wiggle, zero-mean over 4 days, too small to flag
        let w = match i % 4 {
            0 => 1.0e-4,
            1 => -1.0e-4,
            2 => 2.0e-4,
            _ => -2.0e-4,
        };
        a[i] += w;
        b[i] -= w;
    }
    for i in crash {
        a[i] = -0.03;
        b[i] = -0.03;
    }
    ReturnPanel::new(vec!["A".into(), "B".into()], dates, vec![a, b]).unwrap()
}

#[test]
fn criterion_09_pipeline_mechanics() {
    // window count: floor((4109 - 400) / 30) + 1 = 124
    let spec = WindowSpec::new(400, 30).unwrap();
    let windows = rolling_windows(4109, &spec).unwrap();
    assert_eq!(windows.len(), 124, "window count for T = 4109");

    // planted crash: both thresholds flag exactly the planted stretch, and
    // an independent brute-force sliding mean pins the expected span
    let t = 300;
    let crash = 100..125;
    let r = planted_crash_panel(t, crash.clone());
    let width = 20;
    // the ±wiggle cancels in the cross-asset mean, leaving a clean step
    let daily: Vec<f64> =
        (0..t).map(|i| if crash.contains(&i) { -0.03 } else { 0.001 }).collect();
    for tau in [-0.005, -0.01] {
        // oracle: flag every width-20 window whose mean is below tau, merge
        // consecutive flags, convert to a date span
        let mut flagged: Vec<usize> = Vec::new();
        for s in 0..=(t - width) {
            let mean: f64 = daily[s..s + width].iter().sum::<f64>() / width as f64;
            if mean < tau {
                flagged.push(s);
            }
        }
        assert!(!flagged.is_empty(), "oracle found no flagged windows at tau = {tau}");
        let contiguous = flagged.windows(2).all(|w| w[1] == w[0] + 1);
        assert!(contiguous, "planted crash must yield one run at tau = {tau}");
        let first = flagged[0];
        let last = flagged[flagged.len() - 1];

        let list = detect_events(&r, tau, width, false).unwrap();
        assert_eq!(list.events.len(), 1, "exactly one planted event at tau = {tau}");
        let e = &list.events[0];
        assert_eq!(e.start_date, r.dates()[first], "event start at tau = {tau}");
        assert_eq!(e.end_date, r.dates()[last + width - 1], "event end at tau = {tau}");
    }

    // bin statistics against a brute-force group-by oracle
    let mut rng = TestRng::new(109);
    let kappa: Vec<f64> = (0..400).map(|_| rng.unit()).collect();
    let rets: Vec<f64> = (0..400).map(|_| rng.range(-0.05, 0.05)).collect();
    let edges = PRESET_UNEVEN5;
    let summary = conditional_bins(&kappa, &rets, &edges).unwrap();
    for (b, stat) in summary.bins.iter().enumerate() {
        let members: Vec<f64> = kappa
            .iter()
            .zip(&rets)
            .filter(|(k, _)| **k > edges[b] && **k <= edges[b + 1])
            .map(|(_, r)| *r)
            .collect();
        assert_eq!(stat.count, members.len(), "bin {b} count");
        if members.is_empty() {
            assert!(stat.mean.is_none());
            continue;
        }
        let mean = members.iter().sum::<f64>() / members.len() as f64;
        let var = members.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / members.len() as f64;
        assert_eq!(stat.mean.unwrap(), mean, "bin {b} mean");
        assert_eq!(stat.std.unwrap(), var.sqrt(), "bin {b} std");
    }
    assert_eq!(summary.assigned, 400, "every pair lands in a bin");

    println!("ACCEPTANCE 9 PASS: window count 124, planted events exact, bins match group-by oracle");
}

#[test]
fn criterion_10_invariance_suite() {
    let mut rng = TestRng::new(110);

    // switching and diagonal-shift invariance of the balance indices
    for _ in 0..50 {
        let n = 3 + rng.below(8);
        let g = SignedNetwork::weighted(random_signed_weights(&mut rng, n, 0.1, 1.0));
        let kappa = global_balance(&g).unwrap();
        let locals = local_balance(&g).unwrap();

        let flip: Vec<usize> = (0..n).filter(|_| rng.flip()).collect();
        let switched = g.switch(&flip).unwrap();
        assert_close("switched kappa", global_balance(&switched).unwrap(), kappa, 1e-10);
        assert_vec_close("switched locals", &local_balance(&switched).unwrap(), &locals, 1e-10);

        // a uniform self-loop weight d >= 0 must not affect any balance
        // index: lift the zero diagonal to d, indices stay put
        let d = rng.range(0.0, 2.0);
        let lifted = g.shift_diagonal(-d).unwrap();
        assert_close("lifted kappa", global_balance(&lifted).unwrap(), kappa, 1e-10);
        assert_vec_close("lifted locals", &local_balance(&lifted).unwrap(), &locals, 1e-10);
    }

    // the original use case: stripping the unit diagonal of a correlation
    // matrix leaves the balance indices unchanged
    for seed in 0..10u64 {
        let g = SignedNetwork::from_correlation(random_correlation(8, 7_000 + seed).unwrap())
            .unwrap();
        let stripped = g.shift_diagonal(1.0).unwrap();
        assert_close(
            "correlation kappa after diagonal strip",
            global_balance(&stripped).unwrap(),
            global_balance(&g).unwrap(),
            1e-10,
        );
        assert_vec_close(
            "correlation locals after diagonal strip",
            &local_balance(&stripped).unwrap(),
            &local_balance(&g).unwrap(),
            1e-10,
        );
    }

    // eigenvalue-variance identity on random standardized panels
    for case in 0..20 {
        let n = 4 + rng.below(8);
        let t = 60 + rng.below(60);
        let rows: Vec<Vec<f64>> =
            (0..n).map(|_| (0..t).map(|_| rng.range(-0.02, 0.02)).collect()).collect();
        let xtilde: Vec<Vec<f64>> = rows
            .iter()
            .map(|row| {
                let mean = row.iter().sum::<f64>() / t as f64;
                let var = row.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / t as f64;
                let sd = var.sqrt();
                row.iter().map(|v| (v - mean) / sd).collect()
            })
            .collect();
        let mut c = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] =
                    xtilde[i].iter().zip(&xtilde[j]).map(|(a, b)| a * b).sum::<f64>() / t as f64;
            }
        }
        let d = eig_sym(&SymmetricMatrix::from_row_major(n, c).unwrap()).unwrap();
        for (i, (var, lambda)) in principal_variances(&xtilde, &d, n).unwrap().iter().enumerate() {
            assert!(
                (var - lambda).abs() <= 1e-8,
                "case {case} component {i}: score variance {var} vs eigenvalue {lambda}"
            );
        }

        // AMRI at H = 1 is exactly the extreme-eigenvalue ratio
        let expect = d.eigenvalues()[0] / d.eigenvalues()[n - 1];
        let got = amri(&d, 1, 1.0).unwrap();
        assert!(
            (got - expect).abs() <= 1e-12,
            "case {case}: AMRI(1) {got} vs lambda_1/lambda_N {expect}"
        );
    }

    println!("ACCEPTANCE 10 PASS: switching/shift invariance, eigenvalue-variance identity, AMRI(1) identity");
}

//! The verification suite behind `qroulette verify`.
//!
//! Thirteen checks, each an end-to-end gate on a property the simulator
//! must have: operator algebra, frozen closed forms for small games,
//! averaged survival values, series shapes, classical correspondence, and
//! bit-level reproducibility. Every check is deterministic — random cases
//! are drawn from fixed seeds — so `verify` output is byte-identical from
//! run to run.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use qroulette_core::averaging::{
    exact_phase_nodes, expected_outcome_probabilities, expected_outcome_probability,
    figure_series, fully_randomized_all_alive, fully_randomized_two_round_target, seeded_stream,
    AveragingSpec, GammaPolicy, Method,
};
use qroulette_core::classical::{
    classical_all_alive_round_probability, classical_game, ClassicalConfig,
};
use qroulette_core::game::{evolve, evolve_trace, schedule_smeared_bullet, GameConfig};
use qroulette_core::operators::{apply_player_op, dense_player_op, unitarity_defect, GateParams};
use qroulette_core::statevec::{Outcome, StateVector};
use qroulette_core::tol::{TOL_OP, TOL_ORACLE};

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub duration: Duration,
}

type CheckFn = fn() -> (bool, String);

/// All checks in fixed order. Names are stable: they are the `--filter`
/// vocabulary and part of the byte-identical `verify` output.
pub const CHECKS: [(&str, CheckFn); 13] = [
    ("unitarity_of_player_operators", check_unitarity),
    ("fast_path_matches_dense_oracle", check_fast_vs_dense),
    ("two_player_deterministic_table", check_two_player_table),
    ("closed_form_round_amplitudes", check_closed_form_amplitudes),
    ("three_player_deterministic_cases", check_three_player_cases),
    ("phase_averaged_two_round_survival", check_phase_averaged_survival),
    ("fully_randomized_survival_table", check_survival_table),
    ("all_alive_series_peak", check_series_peak),
    ("sole_survivor_series_means", check_sole_survivor_means),
    ("loaded_chamber_revival", check_loaded_chamber_revival),
    ("single_round_classical_correspondence", check_classical_correspondence),
    ("smeared_bullet_survival_threshold", check_smeared_threshold),
    ("reproducible_parallel_estimates", check_reproducibility),
];

/// Run every check whose name contains `filter` (all of them when `None`),
/// in declaration order.
pub fn run_all(filter: Option<&str>) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|&(name, check)| {
            let start = Instant::now();
            let (passed, detail) = check();
            CheckResult {
                name,
                passed,
                detail,
                duration: start.elapsed(),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------
// case-drawing helpers

/// Random case for the operator checks: player count, player, angles.
fn random_op_case(seed_lane: u64, case: u64) -> (usize, usize, GateParams) {
    let mut rng = seeded_stream(seed_lane, case);
    let n = rng.random_range(2..=8usize);
    let player = rng.random_range(1..=n);
    let params = GateParams::new(
        rng.random::<f64>() * PI,
        rng.random::<f64>() * 2.0 * PI,
        rng.random::<f64>() * 2.0 * PI,
    );
    (n, player, params)
}

fn random_state(rng: &mut impl Rng, n: usize) -> StateVector {
    let dim = 1usize << n;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(n, amps).expect("constructed to length")
}

fn unit_phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// Closed-form one-round final state for two players starting all-alive,
/// indexed |00⟩, |01⟩, |10⟩, |11⟩.
fn two_player_round_amplitudes(g1: f64, g2: f64, alpha: f64, beta: f64) -> [Complex64; 4] {
    let i = Complex64::I;
    [
        Complex64::ZERO,
        i * unit_phase(beta) * (g1 / 2.0).cos(),
        i * unit_phase(beta - alpha) * (g1 / 2.0).sin() * (g2 / 2.0).cos(),
        unit_phase(-2.0 * alpha) * (g1 / 2.0).sin() * (g2 / 2.0).sin(),
    ]
}

/// Closed-form one-round final state for three players starting all-alive,
/// indexed |000⟩ … |111⟩.
fn three_player_round_amplitudes(g: [f64; 3], alpha: f64, beta: f64) -> [Complex64; 8] {
    let i = Complex64::I;
    let c = |j: usize| (g[j] / 2.0).cos();
    let s = |j: usize| (g[j] / 2.0).sin();
    [
        Complex64::ZERO,
        -unit_phase(2.0 * beta) * c(0) * c(1),
        -unit_phase(2.0 * beta - alpha) * c(0) * s(1) * c(2),
        i * unit_phase(beta - 2.0 * alpha) * c(0) * s(1) * s(2),
        -unit_phase(2.0 * beta - alpha) * s(0) * c(1) * c(2),
        i * unit_phase(beta - 2.0 * alpha) * s(0) * c(1) * s(2),
        i * unit_phase(beta - 2.0 * alpha) * s(0) * s(1) * c(2),
        unit_phase(-3.0 * alpha) * s(0) * s(1) * s(2),
    ]
}

fn max_amp_deviation(state: &StateVector, expected: &[Complex64]) -> f64 {
    state
        .amps()
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Probability that `player` is alive in `state`.
fn alive_marginal(state: &StateVector, player: usize) -> f64 {
    let n = state.n();
    let mask = 1usize << (n - player);
    state
        .amps()
        .iter()
        .enumerate()
        .filter(|(b, _)| b & mask != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

// ---------------------------------------------------------------------
// the thirteen checks

/// 200 random player operators (2–8 players) are unitary and the structured
/// fast path preserves state norm.
fn check_unitarity() -> (bool, String) {
    let (max_defect, max_drift) = (0..200u64)
        .into_par_iter()
        .map(|case| {
            let (n, player, params) = random_op_case(101, case);
            let dense = dense_player_op(n, player, &params).expect("n within dense cap");
            let defect = unitarity_defect(&dense);

            let mut rng = seeded_stream(102, case);
            let s = random_state(&mut rng, n);
            let moved = apply_player_op(&s, player, &params).expect("valid player");
            let drift = (moved.norm() - s.norm()).abs();
            (defect, drift)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    (
        max_defect <= TOL_OP && max_drift <= TOL_OP,
        format!("200 cases, n<=8: max unitarity defect {max_defect:.2e}, max norm drift {max_drift:.2e} (tol {TOL_OP:.0e})"),
    )
}

/// The bit-pair fast path agrees with the dense projector construction on
/// 200 random applications.
fn check_fast_vs_dense() -> (bool, String) {
    let max_dev = (0..200u64)
        .into_par_iter()
        .map(|case| {
            let (n, player, params) = random_op_case(103, case);
            let mut rng = seeded_stream(104, case);
            let s = random_state(&mut rng, n);
            let fast = apply_player_op(&s, player, &params).expect("valid player");
            let dense = dense_player_op(n, player, &params)
                .expect("n within dense cap")
                .apply(&s)
                .expect("dimension match");
            max_amp_deviation(&fast, dense.amps())
        })
        .reduce(|| 0.0, f64::max);
    (
        max_dev <= TOL_ORACLE,
        format!("200 cases, n<=8: max amplitude deviation {max_dev:.2e} (tol {TOL_ORACLE:.0e})"),
    )
}

/// Two players, one round, bullet angles at the classical corners {0, π}²:
/// the four final states, phases included.
fn check_two_player_table() -> (bool, String) {
    let mut max_dev: f64 = 0.0;
    for case in 0..20u64 {
        let mut rng = seeded_stream(105, case);
        let alpha = rng.random::<f64>() * 2.0 * PI;
        let beta = rng.random::<f64>() * 2.0 * PI;
        for (g1, g2) in [(0.0, 0.0), (0.0, PI), (PI, 0.0), (PI, PI)] {
            let cfg = GameConfig::new(2, 1, vec![g1, g2], alpha, beta).unwrap();
            let state = evolve(&cfg);
            let expected = two_player_round_amplitudes(g1, g2, alpha, beta);
            max_dev = max_dev.max(max_amp_deviation(&state, &expected));
        }
    }
    (
        max_dev <= TOL_OP,
        format!("4 corner games x 20 phase draws: max amplitude deviation {max_dev:.2e} (tol {TOL_OP:.0e})"),
    )
}

/// One-round final states match the closed-form amplitude expressions for
/// 50 random angle sets at two players and 50 at three.
fn check_closed_form_amplitudes() -> (bool, String) {
    let mut dev2: f64 = 0.0;
    let mut dev3: f64 = 0.0;
    for case in 0..50u64 {
        let mut rng = seeded_stream(106, case);
        let alpha = rng.random::<f64>() * 2.0 * PI;
        let beta = rng.random::<f64>() * 2.0 * PI;
        let g: [f64; 3] = [
            rng.random::<f64>() * PI,
            rng.random::<f64>() * PI,
            rng.random::<f64>() * PI,
        ];

        let cfg2 = GameConfig::new(2, 1, vec![g[0], g[1]], alpha, beta).unwrap();
        let expected2 = two_player_round_amplitudes(g[0], g[1], alpha, beta);
        dev2 = dev2.max(max_amp_deviation(&evolve(&cfg2), &expected2));

        let cfg3 = GameConfig::new(3, 1, g.to_vec(), alpha, beta).unwrap();
        let expected3 = three_player_round_amplitudes(g, alpha, beta);
        dev3 = dev3.max(max_amp_deviation(&evolve(&cfg3), &expected3));
    }
    let max_dev = dev2.max(dev3);
    (
        max_dev <= TOL_OP,
        format!("50 random angle sets each: max deviation {dev2:.2e} (2 players), {dev3:.2e} (3 players) (tol {TOL_OP:.0e})"),
    )
}

/// Three players, one round, the four deterministic gun loadings: outcome
/// probability 1 with the exact expected phase.
fn check_three_player_cases() -> (bool, String) {
    let mut max_dev: f64 = 0.0;
    for case in 0..20u64 {
        let mut rng = seeded_stream(107, case);
        let alpha = rng.random::<f64>() * 2.0 * PI;
        let beta = rng.random::<f64>() * 2.0 * PI;
        let i = Complex64::I;
        let cases: [([f64; 3], usize, Complex64); 4] = [
            // empty barrel: everyone stays alive
            ([PI, PI, PI], 0b111, unit_phase(-3.0 * alpha)),
            // bullet for player 2 only
            ([PI, 0.0, PI], 0b101, i * unit_phase(beta - 2.0 * alpha)),
            // player 1's chamber empty, players 2 and 3 loaded
            ([PI, 0.0, 0.0], 0b100, -unit_phase(2.0 * beta - alpha)),
            // fully loaded barrel: the last player survives
            ([0.0, 0.0, 0.0], 0b001, -unit_phase(2.0 * beta)),
        ];
        for (g, index, phase) in cases {
            let cfg = GameConfig::new(3, 1, g.to_vec(), alpha, beta).unwrap();
            let state = evolve(&cfg);
            let mut expected = [Complex64::ZERO; 8];
            expected[index] = phase;
            max_dev = max_dev.max(max_amp_deviation(&state, &expected));
        }
    }
    (
        max_dev <= TOL_OP,
        format!("4 deterministic loadings x 20 phase draws: max amplitude deviation {max_dev:.2e} (tol {TOL_OP:.0e})"),
    )
}

/// Three players, two rounds, every chamber at probability 1/2: the
/// phase-averaged all-alive probability is exactly 19/64, by quadrature and
/// by Monte Carlo.
fn check_phase_averaged_survival() -> (bool, String) {
    let target = 19.0 / 64.0;
    let template = GameConfig::uniform(3, 2, FRAC_PI_2, 0.0, 0.0).unwrap();
    let outcome = Outcome::all_alive(3);

    let grid = |nodes: usize| AveragingSpec {
        randomize_alpha_beta: true,
        randomize_gammas: false,
        method: Method::FourierGrid {
            nodes_alpha: nodes,
            nodes_beta: nodes,
        },
    };
    let exact = expected_outcome_probability(&template, &grid(13), &outcome).unwrap();
    let finer = expected_outcome_probability(&template, &grid(29), &outcome).unwrap();
    let grid_dev = (exact.mean - target).abs().max((finer.mean - target).abs());

    let mc_spec = AveragingSpec {
        randomize_alpha_beta: true,
        randomize_gammas: false,
        method: Method::MonteCarlo {
            samples: 1_000_000,
            seed: 7,
        },
    };
    let mc = expected_outcome_probability(&template, &mc_spec, &outcome).unwrap();
    let mc_dev = (mc.mean - target).abs();
    let mc_ok = mc_dev <= 3.0 * mc.std_err;

    (
        grid_dev <= TOL_OP && mc_ok,
        format!(
            "target 19/64 = {target:.16e}: grid(13,29 nodes) deviation {grid_dev:.2e}, MC 1e6 samples {:.16e} +/- {:.2e} ({:.2} sigma)",
            mc.mean,
            mc.std_err,
            mc_dev / mc.std_err
        ),
    )
}

/// Fully randomized two-round survival for 3–5 players matches the
/// closed-form table by Monte Carlo, and the classical column is exact.
fn check_survival_table() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3usize, 4, 5] {
        let est = fully_randomized_all_alive(n, 2, 1_000_000, 7).unwrap();
        let target = fully_randomized_two_round_target(n).expect("table rows are 3-5 players");
        let dev = (est.mean - target).abs();
        let gate = (3.0 * est.std_err).max(0.01 * target);
        let classical = classical_all_alive_round_probability(n, 0.5).unwrap();
        let classical_ok = classical == 0.5f64.powi(n as i32);
        ok &= dev <= gate && classical_ok;
        parts.push(format!(
            "n={n}: {:.6} vs {target:.6} (dev {dev:.1e}, gate {gate:.1e}), classical {classical:.6e}",
            est.mean
        ));
    }
    (ok, parts.join("; "))
}

/// The phase-averaged all-alive series at bullet probability 1/2 peaks at
/// round 3, inside the expected bands, for three and four players.
fn check_series_peak() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, lo, hi) in [(3usize, 0.45, 0.48), (4usize, 0.38, 0.42)] {
        let series = figure_series(n, 25, &[Outcome::all_alive(n)], GammaPolicy::Fixed(FRAC_PI_2))
            .unwrap();
        // Peak over played rounds; round 0 is the trivial certain start.
        let (peak_round, peak) = series
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, row)| (k, row[0].mean))
            .fold((0, f64::MIN), |best, cur| if cur.1 > best.1 { cur } else { best });
        ok &= peak_round == 3 && (lo..=hi).contains(&peak);
        parts.push(format!(
            "n={n}: peak {peak:.4} at round {peak_round} (want round 3 in [{lo}, {hi}])"
        ));
    }
    (ok, parts.join("; "))
}

/// Sole-survivor series means over the 26-point window (origin through
/// round 25) land on the published reference values.
fn check_sole_survivor_means() -> (bool, String) {
    // (players, sole survivor, target mean)
    let targets = [
        (3usize, 3usize, 0.106),
        (3, 2, 0.077),
        (4, 4, 0.062),
        (4, 2, 0.039),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3usize, 4] {
        let outcomes: Vec<Outcome> = (1..=n).map(|p| Outcome::sole_survivor(n, p)).collect();
        let series = figure_series(n, 25, &outcomes, GammaPolicy::Fixed(FRAC_PI_2)).unwrap();
        for &(tn, player, target) in targets.iter().filter(|t| t.0 == n) {
            let j = player - 1;
            let mean: f64 =
                series.iter().map(|row| row[j].mean).sum::<f64>() / series.len() as f64;
            let dev = (mean - target).abs();
            ok &= dev <= 0.005;
            parts.push(format!(
                "n={tn} player {player}: mean {mean:.4} vs {target} (dev {dev:.4})"
            ));
        }
    }
    parts.push("window = rounds 0-25 inclusive".into());
    (ok, parts.join("; "))
}

/// One fully loaded chamber among empty ones: the victim dies on odd
/// rounds and is revived on even rounds, exactly.
fn check_loaded_chamber_revival() -> (bool, String) {
    let mut max_dev: f64 = 0.0;
    for loaded in 1..=3usize {
        let gammas: Vec<f64> = (0..5 * 3)
            .map(|shot| if shot % 3 + 1 == loaded { 0.0 } else { PI })
            .collect();
        let cfg = GameConfig::new(3, 5, gammas, 0.4, 1.1).unwrap();
        let trace = evolve_trace(&cfg);
        let all_alive = Outcome::all_alive(3);
        for (round, state) in trace.iter().enumerate() {
            let k = round + 1;
            if k % 2 == 1 {
                // Victim certainly dead.
                max_dev = max_dev.max(alive_marginal(state, loaded));
            } else {
                // Bullet undone: everyone certainly alive.
                max_dev = max_dev.max((state.probability(&all_alive).unwrap() - 1.0).abs());
            }
        }
    }
    (
        max_dev <= TOL_OP,
        format!(
            "3 loadings x 5 rounds: max deviation from the dead/alive parity pattern {max_dev:.2e} (tol {TOL_OP:.0e})"
        ),
    )
}

/// For single-round games the quantum outcome distribution equals the
/// classical chamber model with p = cos²(γ/2), on 100 random schedules.
fn check_classical_correspondence() -> (bool, String) {
    let max_dev = (0..100u64)
        .into_par_iter()
        .map(|case| {
            let mut rng = seeded_stream(108, case);
            let n = rng.random_range(2..=4usize);
            let gammas: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * PI).collect();
            let probs: Vec<f64> = gammas.iter().map(|g| (g / 2.0).cos().powi(2)).collect();

            let quantum = evolve(&GameConfig::new(n, 1, gammas, 0.0, 0.0).unwrap());
            let classical = classical_game(&ClassicalConfig::new(n, 1, probs).unwrap());
            quantum
                .probabilities()
                .iter()
                .zip(classical.probs())
                .map(|(q, c)| (q - c).abs())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    (
        max_dev <= TOL_ORACLE,
        format!("100 random single-round schedules, n<=4: max probability deviation {max_dev:.2e} (tol {TOL_ORACLE:.0e})"),
    )
}

/// Smeared-bullet games over 25 rounds: the phase-averaged all-alive
/// probability should exceed 0.80 for three and four players.
///
/// The four-player game does not reach the threshold at 25 rounds — the
/// check reports the measured value and where the threshold is actually
/// crossed, and fails honestly.
fn check_smeared_threshold() -> (bool, String) {
    let survival_at = |n: usize, rounds: usize| -> f64 {
        let template =
            GameConfig::new(n, rounds, schedule_smeared_bullet(n, rounds), 0.0, 0.0).unwrap();
        let nodes = exact_phase_nodes(n, rounds);
        let spec = AveragingSpec {
            randomize_alpha_beta: true,
            randomize_gammas: false,
            method: Method::FourierGrid {
                nodes_alpha: nodes,
                nodes_beta: nodes,
            },
        };
        expected_outcome_probability(&template, &spec, &Outcome::all_alive(n))
            .unwrap()
            .mean
    };

    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3usize, 4] {
        let p = survival_at(n, 25);
        let passed = p > 0.80;
        ok &= passed;
        if passed {
            parts.push(format!("n={n}: {p:.4} > 0.80"));
        } else {
            // Locate the first round count that does cross, for the record.
            let crossing = (26..=60).find(|&m| survival_at(n, m) > 0.80);
            let at = crossing
                .map(|m| format!("first exceeds 0.80 at {m} rounds"))
                .unwrap_or_else(|| "does not exceed 0.80 by 60 rounds".into());
            parts.push(format!("n={n}: {p:.4} <= 0.80 at 25 rounds; {at}"));
        }
    }
    (ok, parts.join("; "))
}

/// Seeded estimates are bit-identical across worker counts and across
/// repeated runs.
fn check_reproducibility() -> (bool, String) {
    let template = GameConfig::uniform(3, 2, FRAC_PI_2, 0.0, 0.0).unwrap();
    let outcomes: Vec<Outcome> = (0..8).map(|b| Outcome::from_index(3, b)).collect();
    let mc = AveragingSpec {
        randomize_alpha_beta: true,
        randomize_gammas: true,
        method: Method::MonteCarlo {
            samples: 100_000,
            seed: 13,
        },
    };
    let grid = AveragingSpec {
        randomize_alpha_beta: true,
        randomize_gammas: false,
        method: Method::FourierGrid {
            nodes_alpha: 13,
            nodes_beta: 13,
        },
    };

    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("pool");
        pool.install(|| {
            (
                expected_outcome_probabilities(&template, &mc, &outcomes).unwrap(),
                expected_outcome_probabilities(&template, &grid, &outcomes).unwrap(),
            )
        })
    };

    let (mc_1, grid_1) = run(1);
    let (mc_8, grid_8) = run(8);
    let (mc_again, _) = run(8);

    let bits = |ests: &[qroulette_core::averaging::Estimate]| -> Vec<(u64, u64)> {
        ests.iter()
            .map(|e| (e.mean.to_bits(), e.std_err.to_bits()))
            .collect()
    };
    let identical = bits(&mc_1) == bits(&mc_8)
        && bits(&mc_1) == bits(&mc_again)
        && bits(&grid_1) == bits(&grid_8);
    (
        identical,
        format!(
            "8 outcomes, MC 1e5 samples + 13x13 grid: estimates {} across 1 and 8 workers and repeat runs",
            if identical { "bit-identical" } else { "DIFFER" }
        ),
    )
}

//! Frozen ground truth for small games.
//!
//! Each test pins the simulator against an independently derived closed
//! form — exact final states for one-round games at arbitrary angles,
//! deterministic corner loadings with their phases, the two-round survival
//! average, and the fully randomized survival targets — at machine
//! precision. If evolution order, bit layout, or gate entries ever drift,
//! these fail first.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

use qroulette_core::averaging::{
    expected_outcome_probability, fully_randomized_two_round_target, seeded_stream, AveragingSpec,
    Method,
};
use qroulette_core::game::{evolve, schedule_smeared_bullet, GameConfig};
use qroulette_core::statevec::Outcome;
use qroulette_core::tol::TOL_OP;

fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// Exact one-round final state for two players: |00⟩, |01⟩, |10⟩, |11⟩.
fn two_player_round(g1: f64, g2: f64, alpha: f64, beta: f64) -> [Complex64; 4] {
    [
        Complex64::ZERO,
        Complex64::I * phase(beta) * (g1 / 2.0).cos(),
        Complex64::I * phase(beta - alpha) * (g1 / 2.0).sin() * (g2 / 2.0).cos(),
        phase(-2.0 * alpha) * (g1 / 2.0).sin() * (g2 / 2.0).sin(),
    ]
}

/// Exact one-round final state for three players: |000⟩ … |111⟩.
fn three_player_round(g: [f64; 3], alpha: f64, beta: f64) -> [Complex64; 8] {
    let c = |j: usize| (g[j] / 2.0).cos();
    let s = |j: usize| (g[j] / 2.0).sin();
    [
        Complex64::ZERO,
        -phase(2.0 * beta) * c(0) * c(1),
        -phase(2.0 * beta - alpha) * c(0) * s(1) * c(2),
        Complex64::I * phase(beta - 2.0 * alpha) * c(0) * s(1) * s(2),
        -phase(2.0 * beta - alpha) * s(0) * c(1) * c(2),
        Complex64::I * phase(beta - 2.0 * alpha) * s(0) * c(1) * s(2),
        Complex64::I * phase(beta - 2.0 * alpha) * s(0) * s(1) * c(2),
        phase(-3.0 * alpha) * s(0) * s(1) * s(2),
    ]
}

fn assert_state(cfg: &GameConfig, expected: &[Complex64]) {
    let state = evolve(cfg);
    for (index, (got, want)) in state.amps().iter().zip(expected).enumerate() {
        assert!(
            (got - want).norm() <= TOL_OP,
            "amplitude {index}: got {got}, want {want}"
        );
    }
}

#[test]
fn two_player_quarter_turn_probabilities() {
    let cfg = GameConfig::uniform(2, 1, FRAC_PI_2, 0.0, 0.0).unwrap();
    let probs = evolve(&cfg).probabilities();
    let expected = [0.0, 0.5, 0.25, 0.25];
    for (got, want) in probs.iter().zip(expected) {
        assert!((got - want).abs() <= TOL_OP, "got {got}, want {want}");
    }
}

#[test]
fn two_player_corner_loadings_reproduce_exact_states() {
    for case in 0..20u64 {
        let mut rng = seeded_stream(201, case);
        let alpha = rng.random::<f64>() * 2.0 * PI;
        let beta = rng.random::<f64>() * 2.0 * PI;
        for (g1, g2) in [(0.0, 0.0), (0.0, PI), (PI, 0.0), (PI, PI)] {
            let cfg = GameConfig::new(2, 1, vec![g1, g2], alpha, beta).unwrap();
            assert_state(&cfg, &two_player_round(g1, g2, alpha, beta));
        }
    }
}

#[test]
fn two_player_single_round_matches_closed_form() {
    for case in 0..50u64 {
        let mut rng = seeded_stream(202, case);
        let alpha = rng.random::<f64>() * 2.0 * PI;
        let beta = rng.random::<f64>() * 2.0 * PI;
        let g1 = rng.random::<f64>() * PI;
        let g2 = rng.random::<f64>() * PI;
        let cfg = GameConfig::new(2, 1, vec![g1, g2], alpha, beta).unwrap();
        assert_state(&cfg, &two_player_round(g1, g2, alpha, beta));
    }
}

#[test]
fn three_player_single_round_matches_closed_form() {
    for case in 0..50u64 {
        let mut rng = seeded_stream(203, case);
        let alpha = rng.random::<f64>() * 2.0 * PI;
        let beta = rng.random::<f64>() * 2.0 * PI;
        let g = [
            rng.random::<f64>() * PI,
            rng.random::<f64>() * PI,
            rng.random::<f64>() * PI,
        ];
        let cfg = GameConfig::new(3, 1, g.to_vec(), alpha, beta).unwrap();
        assert_state(&cfg, &three_player_round(g, alpha, beta));
    }
}

#[test]
fn three_player_deterministic_loadings_end_in_pure_outcomes() {
    let alpha = 0.83;
    let beta = 2.19;
    let cases: [([f64; 3], usize, Complex64); 4] = [
        ([PI, PI, PI], 0b111, phase(-3.0 * alpha)),
        ([PI, 0.0, PI], 0b101, Complex64::I * phase(beta - 2.0 * alpha)),
        ([PI, 0.0, 0.0], 0b100, -phase(2.0 * beta - alpha)),
        ([0.0, 0.0, 0.0], 0b001, -phase(2.0 * beta)),
    ];
    for (g, index, expected_phase) in cases {
        let cfg = GameConfig::new(3, 1, g.to_vec(), alpha, beta).unwrap();
        let state = evolve(&cfg);
        let outcome = Outcome::from_index(3, index);
        assert!((state.probability(&outcome).unwrap() - 1.0).abs() <= TOL_OP);
        let amp = state.amplitude(&outcome).unwrap();
        assert!(
            (amp - expected_phase).norm() <= TOL_OP,
            "loading {g:?}: got {amp}, want {expected_phase}"
        );
    }
}

/// Two rounds, three players, every chamber at probability 1/2: the
/// all-alive amplitude collapses to a function of α alone.
#[test]
fn two_round_survival_amplitude_depends_only_on_alpha() {
    let closed_form = |alpha: f64| {
        phase(-alpha) / (2.0 * 2.0_f64.sqrt())
            + (phase(-2.0 * alpha) - 3.0 * phase(-4.0 * alpha) + phase(-6.0 * alpha)) / 8.0
    };
    for (alpha, beta) in [(0.0, 0.0), (0.3, 5.1), (1.7, 0.2), (4.4, 2.8), (6.1, 3.9)] {
        let cfg = GameConfig::uniform(3, 2, FRAC_PI_2, alpha, beta).unwrap();
        let amp = evolve(&cfg).amplitude(&Outcome::all_alive(3)).unwrap();
        let want = closed_form(alpha);
        assert!(
            (amp - want).norm() <= TOL_OP,
            "alpha {alpha}, beta {beta}: got {amp}, want {want}"
        );
    }
    // And the pinned point value at α = 0.
    let cfg = GameConfig::uniform(3, 2, FRAC_PI_2, 0.0, 0.0).unwrap();
    let amp = evolve(&cfg).amplitude(&Outcome::all_alive(3)).unwrap();
    assert!((amp.re - 0.22855339059327373).abs() <= TOL_OP);
    assert!(amp.im.abs() <= TOL_OP);
}

/// The phase-averaged two-round survival probability is exactly 19/64,
/// already at the minimal exact node count.
#[test]
fn phase_averaged_two_round_survival_is_19_over_64() {
    let template = GameConfig::uniform(3, 2, FRAC_PI_2, 0.0, 0.0).unwrap();
    let outcome = Outcome::all_alive(3);
    for nodes in [13usize, 14, 20] {
        let spec = AveragingSpec {
            randomize_alpha_beta: true,
            randomize_gammas: false,
            method: Method::FourierGrid {
                nodes_alpha: nodes,
                nodes_beta: nodes,
            },
        };
        let est = expected_outcome_probability(&template, &spec, &outcome).unwrap();
        assert!(
            (est.mean - 19.0 / 64.0).abs() <= TOL_OP,
            "{nodes} nodes: {}",
            est.mean
        );
    }
}

/// The fully randomized two-round survival targets, pinned as decimals.
// The digits are frozen exactly as computed by an independent
// implementation; don't round them, even where fewer digits would parse to
// the same f64.
#[allow(clippy::excessive_precision)]
#[test]
fn fully_randomized_targets_match_pinned_decimals() {
    let cases = [
        (3usize, 0.17655593789139518),
        (4, 0.096553291332138427),
        (5, 0.05850993817513659),
    ];
    for (n, want) in cases {
        let got = fully_randomized_two_round_target(n).unwrap();
        assert!((got - want).abs() <= 1e-15, "n={n}: got {got:.17}");
    }
    assert!(fully_randomized_two_round_target(2).is_none());
    assert!(fully_randomized_two_round_target(6).is_none());
}

/// A bullet smeared over m rounds fires with probability 1/m per shot, so
/// the whole schedule is the constant angle 2·arccos(1/√m).
#[test]
fn smeared_schedule_is_constant_with_reciprocal_probability() {
    for rounds in 1..=6usize {
        let schedule = schedule_smeared_bullet(3, rounds);
        assert_eq!(schedule.len(), 3 * rounds);
        let expected = 2.0 * (1.0 / (rounds as f64).sqrt()).acos();
        for &g in &schedule {
            assert_eq!(g, expected);
            let per_shot = (g / 2.0).cos().powi(2);
            assert!((per_shot - 1.0 / rounds as f64).abs() <= TOL_OP);
        }
    }
    // One round means a certain bullet.
    assert!(schedule_smeared_bullet(2, 1).iter().all(|&g| g.abs() <= TOL_OP));
}

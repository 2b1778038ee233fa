//! Property-based invariants over random angles, schedules, and states.

use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

use qroulette_core::classical::{classical_game, classical_round, AliveDistribution, ClassicalConfig};
use qroulette_core::game::{
    bullet_probability_from_gamma, evolve, expected_payoffs, gamma_from_bullet_probability,
    GameConfig, PayoffSpec,
};
use qroulette_core::operators::{apply_player_op, dense_player_op, unitarity_defect, GateParams};
use qroulette_core::statevec::{Outcome, StateVector};
use qroulette_core::tol::{TOL_GAME, TOL_OP, TOL_ORACLE};

fn phase_angle() -> impl Strategy<Value = f64> {
    0.0..TAU
}

fn bullet_angle() -> impl Strategy<Value = f64> {
    0.0..=PI
}

fn gate_params() -> impl Strategy<Value = GateParams> {
    (bullet_angle(), phase_angle(), phase_angle()).prop_map(|(g, a, b)| GateParams::new(g, a, b))
}

/// Player count, a player in range, and gate angles.
fn op_case(max_n: usize) -> impl Strategy<Value = (usize, usize, GateParams)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), 1..=n, gate_params()))
}

/// A normalized random state on n qubits.
fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1usize << n).prop_map(move |parts| {
        let mut amps: Vec<Complex64> = parts
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        // Degenerate all-zero draws collapse to a basis state.
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() < 1e-6 {
            amps[0] = Complex64::ONE;
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::from_amplitudes(n, amps).expect("constructed to length")
    })
}

/// An operator case together with a matching-size random state.
fn op_case_with_state(
    max_n: usize,
) -> impl Strategy<Value = (usize, usize, GateParams, StateVector)> {
    op_case(max_n).prop_flat_map(|(n, player, params)| {
        state(n).prop_map(move |s| (n, player, params, s))
    })
}

/// A full random game configuration.
fn game_case(max_n: usize, max_rounds: usize) -> impl Strategy<Value = GameConfig> {
    (2..=max_n, 1..=max_rounds, phase_angle(), phase_angle()).prop_flat_map(|(n, m, a, b)| {
        prop::collection::vec(bullet_angle(), n * m)
            .prop_map(move |g| GameConfig::new(n, m, g, a, b).expect("lengths match"))
    })
}

proptest! {
    #[test]
    fn player_operators_are_unitary((n, player, params) in op_case(6)) {
        let dense = dense_player_op(n, player, &params).unwrap();
        prop_assert!(unitarity_defect(&dense) <= TOL_OP);
    }

    #[test]
    fn applying_an_operator_preserves_norm((_n, player, params, s) in op_case_with_state(6)) {
        let moved = apply_player_op(&s, player, &params).unwrap();
        prop_assert!((moved.norm() - s.norm()).abs() <= TOL_OP);
    }

    #[test]
    fn fast_path_agrees_with_dense_operator((n, player, params, s) in op_case_with_state(5)) {
        let fast = apply_player_op(&s, player, &params).unwrap();
        let dense = dense_player_op(n, player, &params).unwrap().apply(&s).unwrap();
        for (a, b) in fast.amps().iter().zip(dense.amps()) {
            prop_assert!((a - b).norm() <= TOL_ORACLE);
        }
    }

    #[test]
    fn lone_survivor_and_graveyard_are_fixed_points((n, player, params) in op_case(6)) {
        // All dead, and only-the-mover alive: both exactly invariant.
        let all_dead = Outcome::new(vec![false; n]);
        let lone = Outcome::sole_survivor(n, player);
        for outcome in [all_dead, lone] {
            let mut amps = vec![Complex64::ZERO; 1 << n];
            amps[outcome.index()] = Complex64::ONE;
            let s = StateVector::from_amplitudes(n, amps).unwrap();
            let moved = apply_player_op(&s, player, &params).unwrap();
            prop_assert_eq!(s.amps(), moved.amps());
        }
    }

    #[test]
    fn empty_chambers_leave_the_outcome_certain(
        n in 2..=6usize,
        alpha in phase_angle(),
        beta in phase_angle(),
    ) {
        // γ = π: every shot is an empty chamber; all-alive stays certain.
        let cfg = GameConfig::uniform(n, 1, PI, alpha, beta).unwrap();
        let p = evolve(&cfg).probability(&Outcome::all_alive(n)).unwrap();
        prop_assert!((p - 1.0).abs() <= TOL_OP);
    }

    #[test]
    fn certain_bullet_kills_the_first_mover(
        n in 2..=6usize,
        alpha in phase_angle(),
        beta in phase_angle(),
    ) {
        // Player 1 fires a certain bullet, everyone else an empty chamber.
        let mut gammas = vec![PI; n];
        gammas[0] = 0.0;
        let cfg = GameConfig::new(n, 1, gammas, alpha, beta).unwrap();
        let state = evolve(&cfg);
        let mut bits = vec![true; n];
        bits[0] = false;
        let p = state.probability(&Outcome::new(bits)).unwrap();
        prop_assert!((p - 1.0).abs() <= TOL_OP);
    }

    #[test]
    fn outcome_distribution_is_normalized(cfg in game_case(5, 3)) {
        let probs = evolve(&cfg).probabilities();
        let total: f64 = probs.iter().sum();
        prop_assert!((total - 1.0).abs() <= TOL_GAME);
        prop_assert!(probs.iter().all(|p| (-TOL_GAME..=1.0 + TOL_GAME).contains(p)));
    }

    #[test]
    fn sole_survivor_payoffs_exhaust_the_pot(cfg in game_case(5, 3)) {
        let state = evolve(&cfg);
        let spec = PayoffSpec::sole_survivor(cfg.players()).unwrap();
        let payoffs = expected_payoffs(&state, &spec).unwrap();
        // Nobody can reach the all-dead state from all-alive, so the pot of
        // 1 is always fully distributed.
        let total: f64 = payoffs.iter().sum();
        prop_assert!((total - 1.0).abs() <= TOL_GAME);
    }

    #[test]
    fn global_phase_equality_accepts_any_unit_phase(
        (s, theta) in (1..=4usize).prop_flat_map(|n| (state(n), phase_angle())),
    ) {
        let rotated: Vec<Complex64> = s
            .amps()
            .iter()
            .map(|a| a * Complex64::from_polar(1.0, theta))
            .collect();
        let r = StateVector::from_amplitudes(s.n(), rotated).unwrap();
        prop_assert!(s.global_phase_equal(&r, TOL_OP));
    }

    #[test]
    fn single_round_quantum_equals_classical_chambers(
        (n, gammas) in (2..=4usize).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(bullet_angle(), n))
        }),
    ) {
        let probs: Vec<f64> = gammas.iter().map(|g| (g / 2.0).cos().powi(2)).collect();
        let quantum = evolve(&GameConfig::new(n, 1, gammas, 0.0, 0.0).unwrap());
        let classical = classical_game(&ClassicalConfig::new(n, 1, probs).unwrap());
        for (q, c) in quantum.probabilities().iter().zip(classical.probs()) {
            prop_assert!((q - c).abs() <= TOL_ORACLE);
        }
    }

    #[test]
    fn classical_model_conserves_mass_and_never_revives(
        (n, rounds, probs) in (2..=5usize, 1..=4usize).prop_flat_map(|(n, m)| {
            (Just(n), Just(m), prop::collection::vec(0.0..=1.0f64, n))
        }),
    ) {
        let mut dist = AliveDistribution::all_alive(n).unwrap();
        let mut marginals: Vec<f64> = (1..=n).map(|p| dist.alive_marginal(p)).collect();
        for _ in 0..rounds {
            dist = classical_round(&dist, &probs).unwrap();
            prop_assert!((dist.total() - 1.0).abs() <= TOL_GAME);
            for (player, prev) in marginals.iter_mut().enumerate() {
                let now = dist.alive_marginal(player + 1);
                prop_assert!(now <= *prev + TOL_GAME, "player {} revived", player + 1);
                *prev = now;
            }
        }
    }

    #[test]
    fn bullet_probability_round_trips(p in 0.0..=1.0f64, gamma in bullet_angle()) {
        let g = gamma_from_bullet_probability(p).unwrap();
        prop_assert!((0.0..=PI).contains(&g));
        prop_assert!((bullet_probability_from_gamma(g) - p).abs() <= TOL_OP);

        // The angle round trip loses precision only near the certain-bullet
        // endpoint, where cos(γ/2) saturates.
        let back = gamma_from_bullet_probability(bullet_probability_from_gamma(gamma)).unwrap();
        prop_assert!((back - gamma).abs() <= 1e-6);
    }
}

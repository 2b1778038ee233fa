//! Game configuration, multi-round evolution, and payoff evaluation.
//!
//! A round applies the players' moves in index order — player 1 first,
//! player n last — with no measurement in between; only the caller decides
//! where to read out statistics. The bullet angle for round `k` (1-based)
//! and player `i` sits at `gammas[(k−1)·players + (i−1)]`, one entry per
//! shot, while `alpha` and `beta` are shared by every move of the game.

use crate::error::{Error, Result};
use crate::operators::{apply_player_op_in_place, GateParams};
use crate::statevec::{Outcome, StateVector, MAX_PLAYERS};

/// Full description of one game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    pub(crate) players: usize,
    pub(crate) rounds: usize,
    pub(crate) gammas: Vec<f64>,
    pub(crate) alpha: f64,
    pub(crate) beta: f64,
}

impl GameConfig {
    /// Validate and build a configuration. `gammas` must hold exactly
    /// `rounds × players` entries, in shot order.
    pub fn new(
        players: usize,
        rounds: usize,
        gammas: Vec<f64>,
        alpha: f64,
        beta: f64,
    ) -> Result<Self> {
        if players < 2 {
            return Err(Error::TooFewPlayers(players));
        }
        if players > MAX_PLAYERS {
            return Err(Error::PlayerCount(players));
        }
        if rounds == 0 {
            return Err(Error::NoRounds);
        }
        let want = rounds * players;
        if gammas.len() != want {
            return Err(Error::ScheduleLength {
                got: gammas.len(),
                want,
            });
        }
        if !gammas.iter().all(|g| g.is_finite()) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        Ok(Self {
            players,
            rounds,
            gammas,
            alpha,
            beta,
        })
    }

    /// Convenience: the same bullet angle for every shot of the game.
    pub fn uniform(players: usize, rounds: usize, gamma: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(players, rounds, vec![gamma; rounds * players], alpha, beta)
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// Bullet angle of round `k`, player `i` (both 1-based).
    pub fn gamma_for(&self, round: usize, player: usize) -> f64 {
        self.gammas[(round - 1) * self.players + (player - 1)]
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Run the whole game and return the final state.
pub fn evolve(c: &GameConfig) -> StateVector {
    let mut s = StateVector::all_alive(c.players).expect("validated player count");
    for shot in 0..c.rounds * c.players {
        let player = shot % c.players + 1;
        apply_player_op_in_place(
            &mut s,
            player,
            &GateParams::new(c.gammas[shot], c.alpha, c.beta),
        )
        .expect("validated player index");
    }
    s
}

/// Run the game keeping the state after every round: entry `k` (0-based)
/// holds the state after round `k+1`, so the last entry equals [`evolve`].
pub fn evolve_trace(c: &GameConfig) -> Vec<StateVector> {
    let mut s = StateVector::all_alive(c.players).expect("validated player count");
    let mut trace = Vec::with_capacity(c.rounds);
    for round in 0..c.rounds {
        for player in 1..=c.players {
            let gamma = c.gammas[round * c.players + player - 1];
            apply_player_op_in_place(&mut s, player, &GateParams::new(gamma, c.alpha, c.beta))
                .expect("validated player index");
        }
        trace.push(s.clone());
    }
    trace
}

/// Per-player payoff coefficients, one per outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffSpec {
    players: usize,
    /// `coeffs[player − 1][outcome index]`.
    coeffs: Vec<Vec<f64>>,
}

impl PayoffSpec {
    /// Winner-takes-the-pot rule: an outcome with `a ≥ 1` survivors pays
    /// `1/a` to each survivor and nothing to the dead; the all-dead outcome
    /// pays nothing to anyone.
    pub fn sole_survivor(players: usize) -> Result<Self> {
        if players < 2 {
            return Err(Error::TooFewPlayers(players));
        }
        if players > MAX_PLAYERS {
            return Err(Error::PlayerCount(players));
        }
        let dim = 1usize << players;
        let mut coeffs = vec![vec![0.0; dim]; players];
        for b in 0..dim {
            let alive = (b as u32).count_ones() as usize;
            if alive == 0 {
                continue;
            }
            let share = 1.0 / alive as f64;
            for (i, row) in coeffs.iter_mut().enumerate() {
                let mask = 1usize << (players - 1 - i);
                if b & mask != 0 {
                    row[b] = share;
                }
            }
        }
        Ok(Self { players, coeffs })
    }

    /// Two-player duel scoring: +1 for surviving alone, −1 for being the
    /// one who died, 0 otherwise. Defined for exactly two players.
    pub fn zero_sum(players: usize) -> Result<Self> {
        if players != 2 {
            return Err(Error::ZeroSumPlayers(players));
        }
        // Outcomes in index order: |00⟩, |01⟩, |10⟩, |11⟩.
        let coeffs = vec![vec![0.0, -1.0, 1.0, 0.0], vec![0.0, 1.0, -1.0, 0.0]];
        Ok(Self { players: 2, coeffs })
    }

    /// Fully custom coefficients: `coeffs[player − 1][outcome index]`.
    pub fn from_coefficients(players: usize, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if players < 2 {
            return Err(Error::TooFewPlayers(players));
        }
        if players > MAX_PLAYERS {
            return Err(Error::PlayerCount(players));
        }
        if coeffs.len() != players {
            return Err(Error::PayoffPlayers {
                got: coeffs.len(),
                want: players,
            });
        }
        if let Some(row) = coeffs.iter().find(|row| row.len() != 1 << players) {
            return Err(Error::AmplitudeCount {
                got: row.len(),
                n: players,
                want: 1 << players,
            });
        }
        Ok(Self { players, coeffs })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    /// Coefficient for one player (1-based) and outcome.
    pub fn coefficient(&self, player: usize, o: &Outcome) -> f64 {
        self.coeffs[player - 1][o.index()]
    }
}

/// Expected payoff per player: each player's coefficient table weighted by
/// the outcome probabilities of `s`.
pub fn expected_payoffs(s: &StateVector, p: &PayoffSpec) -> Result<Vec<f64>> {
    if p.players != s.n() {
        return Err(Error::PayoffPlayers {
            got: p.players,
            want: s.n(),
        });
    }
    let probs = s.probabilities();
    Ok(p.coeffs
        .iter()
        .map(|row| row.iter().zip(&probs).map(|(c, pr)| c * pr).sum())
        .collect())
}

/// The bullet angle realizing chamber-fire probability `p`:
/// `γ = 2·arccos(√p)`, so `cos²(γ/2) = p`.
pub fn gamma_from_bullet_probability(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    Ok(2.0 * p.sqrt().acos())
}

/// The chamber-fire probability of a bullet angle: `cos²(γ/2)`.
pub fn bullet_probability_from_gamma(gamma: f64) -> f64 {
    let c = (gamma / 2.0).cos();
    c * c
}

/// Schedule for a bullet smeared uniformly over an `rounds`-round game:
/// every shot carries fire weight `1/rounds`, i.e. a constant
/// `γ = 2·arccos(1/√rounds)`. One round degenerates to a certain bullet
/// (`γ = 0`); as the game lengthens each shot gets gentler, and the averaged
/// survival probability after the full game *grows* with its length.
pub fn schedule_smeared_bullet(players: usize, rounds: usize) -> Vec<f64> {
    let gamma = 2.0 * (1.0 / (rounds as f64).sqrt()).acos();
    vec![gamma; rounds * players]
}

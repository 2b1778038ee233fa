//! Exact classical roulette over alive-subsets.
//!
//! The classical counterpart of the quantum game: each player's chamber
//! fires with its scheduled probability, players shoot in index order, a
//! dead player never fires and never comes back, and — mirroring the
//! quantum operators' identity branch — a player whose opponents are all
//! dead does not fire either, so a decided game stays decided. The state is
//! the full distribution over the `2^n` alive-subsets, evolved exactly;
//! no sampling anywhere.

use crate::error::{Error, Result};
use crate::statevec::{Outcome, MAX_PLAYERS};
use crate::sum::compensated_sum;

/// Schedule for a classical game: `bullet_probs[(k−1)·players + (i−1)]` is
/// the probability that round `k`, player `i`'s chamber fires.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalConfig {
    pub(crate) players: usize,
    pub(crate) rounds: usize,
    pub(crate) bullet_probs: Vec<f64>,
}

impl ClassicalConfig {
    pub fn new(players: usize, rounds: usize, bullet_probs: Vec<f64>) -> Result<Self> {
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
        if bullet_probs.len() != want {
            return Err(Error::ScheduleLength {
                got: bullet_probs.len(),
                want,
            });
        }
        if let Some(&p) = bullet_probs
            .iter()
            .find(|p| !p.is_finite() || !(0.0..=1.0).contains(*p))
        {
            return Err(Error::ProbabilityRange(p));
        }
        Ok(Self {
            players,
            rounds,
            bullet_probs,
        })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn bullet_probs(&self) -> &[f64] {
        &self.bullet_probs
    }
}

/// Probability distribution over alive-subsets, indexed like state-vector
/// outcomes (player 1 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct AliveDistribution {
    players: usize,
    probs: Vec<f64>,
}

impl AliveDistribution {
    /// Point mass on everybody-alive.
    pub fn all_alive(players: usize) -> Result<Self> {
        if players == 0 || players > MAX_PLAYERS {
            return Err(Error::PlayerCount(players));
        }
        let mut probs = vec![0.0; 1 << players];
        *probs.last_mut().expect("nonempty") = 1.0;
        Ok(Self { players, probs })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    /// Probabilities in outcome-index order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, o: &Outcome) -> Result<f64> {
        if o.n() != self.players {
            return Err(Error::OutcomeLength {
                got: o.n(),
                want: self.players,
            });
        }
        Ok(self.probs[o.index()])
    }

    /// Total mass; 1 up to rounding.
    pub fn total(&self) -> f64 {
        compensated_sum(self.probs.iter().copied())
    }

    /// Marginal probability that `player` (1-based) is alive.
    pub fn alive_marginal(&self, player: usize) -> f64 {
        let mask = 1usize << (self.players - player);
        compensated_sum(
            self.probs
                .iter()
                .enumerate()
                .filter(|(b, _)| *b & mask != 0)
                .map(|(_, &p)| p),
        )
    }
}

/// Advance one round: players fire in index order, each dying with their
/// scheduled probability if they are alive and at least one opponent is too.
pub fn classical_round(d: &AliveDistribution, round_probs: &[f64]) -> Result<AliveDistribution> {
    if round_probs.len() != d.players {
        return Err(Error::ScheduleLength {
            got: round_probs.len(),
            want: d.players,
        });
    }
    let n = d.players;
    let full = (1usize << n) - 1;
    let mut probs = d.probs.clone();
    for (i, &p) in round_probs.iter().enumerate() {
        let mask = 1usize << (n - 1 - i);
        let others = full & !mask;
        // Mass only ever moves from "player alive" to "player dead" subsets,
        // so updating in place is safe: no source index is ever a target.
        for b in 0..probs.len() {
            if b & mask == 0 || b & others == 0 {
                continue; // player already dead, or no opponent left to duel
            }
            let moved = probs[b] * p;
            probs[b] -= moved;
            probs[b & !mask] += moved;
        }
    }
    Ok(AliveDistribution { players: n, probs })
}

/// Run the full classical game from everybody-alive.
pub fn classical_game(c: &ClassicalConfig) -> AliveDistribution {
    let mut d = AliveDistribution::all_alive(c.players).expect("validated player count");
    for round in 0..c.rounds {
        let slice = &c.bullet_probs[round * c.players..(round + 1) * c.players];
        d = classical_round(&d, slice).expect("slice length matches player count");
    }
    d
}

/// Single-round probability that all `players` survive when every chamber
/// fires independently with probability `p`: `(1 − p)^players`.
pub fn classical_all_alive_round_probability(players: usize, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    Ok((1.0 - p).powi(players as i32))
}

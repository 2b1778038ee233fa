//! Parameter-averaged outcome statistics.
//!
//! Two engines:
//!
//! - **Phase quadrature.** Every amplitude after `m` rounds of an `n`-player
//!   game is a trigonometric polynomial in the phase angles `α`, `β` of
//!   degree at most `m·n`, so each outcome probability has degree ≤ `2·m·n`
//!   and its mean over uniform `[0, 2π)²` is computed *exactly* by averaging
//!   over an equispaced grid with more nodes than the degree. No error bars.
//! - **Monte Carlo.** Bullet angles have no such polynomial structure, so
//!   averages involving random `γ` are sampled. Sampling is reproducible to
//!   the bit: sample `i` draws from its own counter-derived stream (see
//!   [`seeded_stream`]), and sums are accumulated in fixed 4096-sample
//!   blocks combined in block order, so the result is independent of the
//!   number of worker threads. The block size is part of that contract —
//!   changing it changes results at the last few bits.
//!
//! Per-sample draw order is fixed: `α`, then `β` (when phases are
//! randomized), then the `γ`'s in shot order (when bullet angles are).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::game::{evolve, schedule_smeared_bullet, GameConfig};
use crate::statevec::{Outcome, StateVector};
use crate::sum::CompensatedSum;

/// Samples per reduction block; fixed by the reproducibility contract.
const BLOCK_SAMPLES: u64 = 4096;

/// How to average, and over what.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragingSpec {
    /// Draw `α`, `β` uniformly from `[0, 2π)`. When false, the template's
    /// fixed values are used (the grid method then degenerates to a single
    /// evaluation point).
    pub randomize_alpha_beta: bool,
    /// Draw every `γ` uniformly from `[0, π]`. Monte Carlo only: the
    /// quadrature's exactness argument does not apply to bullet angles.
    pub randomize_gammas: bool,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    MonteCarlo { samples: u64, seed: u64 },
    FourierGrid { nodes_alpha: usize, nodes_beta: usize },
}

/// An averaged probability: exact (`std_err = 0`) from the grid, or a Monte
/// Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub samples_or_nodes: u64,
}

/// The independent generator for sample `index`: a ChaCha stream cipher
/// keyed by `seed` with the sample number as the stream id, so the draw for
/// a given `(seed, index)` never depends on which thread runs it or in what
/// order.
pub fn seeded_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Smallest node count making the phase quadrature exact for a game of
/// `rounds × players` shots.
pub fn exact_phase_nodes(players: usize, rounds: usize) -> usize {
    2 * players * rounds + 1
}

/// Averaged probability of one outcome. See [`expected_outcome_probabilities`].
pub fn expected_outcome_probability(
    template: &GameConfig,
    spec: &AveragingSpec,
    outcome: &Outcome,
) -> Result<Estimate> {
    Ok(expected_outcome_probabilities(template, spec, std::slice::from_ref(outcome))?
        .pop()
        .expect("one estimate per outcome"))
}

/// Averaged probabilities of several outcomes of the same game template,
/// evaluated in a single pass (all estimates share the same draws or nodes).
pub fn expected_outcome_probabilities(
    template: &GameConfig,
    spec: &AveragingSpec,
    outcomes: &[Outcome],
) -> Result<Vec<Estimate>> {
    for o in outcomes {
        if o.n() != template.players() {
            return Err(Error::OutcomeLength {
                got: o.n(),
                want: template.players(),
            });
        }
    }
    let indices: Vec<usize> = outcomes.iter().map(Outcome::index).collect();
    match spec.method {
        Method::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::AveragingSpec("sample count must be at least 1".into()));
            }
            Ok(monte_carlo(template, spec, &indices, samples, seed))
        }
        Method::FourierGrid {
            nodes_alpha,
            nodes_beta,
        } => {
            if spec.randomize_gammas {
                return Err(Error::AveragingSpec(
                    "the phase grid cannot average bullet angles; use Monte Carlo".into(),
                ));
            }
            if nodes_alpha == 0 || nodes_beta == 0 {
                return Err(Error::AveragingSpec("node counts must be at least 1".into()));
            }
            Ok(fourier_grid(template, spec, &indices, nodes_alpha, nodes_beta))
        }
    }
}

fn monte_carlo(
    template: &GameConfig,
    spec: &AveragingSpec,
    indices: &[usize],
    samples: u64,
    seed: u64,
) -> Vec<Estimate> {
    let blocks = samples.div_ceil(BLOCK_SAMPLES);
    let shots = template.gammas().len();

    // One partial (Σv, Σv²) pair per outcome per block; blocks are computed
    // in parallel but each covers a fixed index range, so the collected
    // vector is identical for any thread count.
    let partials: Vec<Vec<(f64, f64)>> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut cfg = template.clone();
            let mut acc = vec![(CompensatedSum::new(), CompensatedSum::new()); indices.len()];
            let lo = block * BLOCK_SAMPLES;
            let hi = (lo + BLOCK_SAMPLES).min(samples);
            for index in lo..hi {
                let mut rng = seeded_stream(seed, index);
                if spec.randomize_alpha_beta {
                    cfg.alpha = TAU * rng.random::<f64>();
                    cfg.beta = TAU * rng.random::<f64>();
                }
                if spec.randomize_gammas {
                    for g in cfg.gammas.iter_mut().take(shots) {
                        *g = PI * rng.random::<f64>();
                    }
                }
                let s = evolve(&cfg);
                for (slot, &basis) in acc.iter_mut().zip(indices) {
                    let v = s.amps()[basis].norm_sqr();
                    slot.0.add(v);
                    slot.1.add(v * v);
                }
            }
            acc.into_iter()
                .map(|(sum, sum_sq)| (sum.value(), sum_sq.value()))
                .collect()
        })
        .collect();

    indices
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let mut sum = CompensatedSum::new();
            let mut sum_sq = CompensatedSum::new();
            for block in &partials {
                sum.add(block[j].0);
                sum_sq.add(block[j].1);
            }
            let n = samples as f64;
            let mean = sum.value() / n;
            let std_err = if samples > 1 {
                let var = ((sum_sq.value() - n * mean * mean) / (n - 1.0)).max(0.0);
                (var / n).sqrt()
            } else {
                0.0
            };
            Estimate {
                mean,
                std_err,
                samples_or_nodes: samples,
            }
        })
        .collect()
}

fn fourier_grid(
    template: &GameConfig,
    spec: &AveragingSpec,
    indices: &[usize],
    nodes_alpha: usize,
    nodes_beta: usize,
) -> Vec<Estimate> {
    // Fixed phases need no grid at all: one node reproduces the point value.
    let (na, nb) = if spec.randomize_alpha_beta {
        (nodes_alpha, nodes_beta)
    } else {
        (1, 1)
    };

    // Parallel over α-rows; each row is summed β-first, rows are combined in
    // α order, so the result is thread-count independent here too.
    let rows: Vec<Vec<f64>> = (0..na)
        .into_par_iter()
        .map(|ja| {
            let mut cfg = template.clone();
            if spec.randomize_alpha_beta {
                cfg.alpha = TAU * ja as f64 / na as f64;
            }
            let mut acc = vec![CompensatedSum::new(); indices.len()];
            for jb in 0..nb {
                if spec.randomize_alpha_beta {
                    cfg.beta = TAU * jb as f64 / nb as f64;
                }
                let s = evolve(&cfg);
                for (slot, &basis) in acc.iter_mut().zip(indices) {
                    slot.add(s.amps()[basis].norm_sqr());
                }
            }
            acc.into_iter().map(|s| s.value()).collect()
        })
        .collect();

    let nodes = (na * nb) as u64;
    indices
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let mut sum = CompensatedSum::new();
            for row in &rows {
                sum.add(row[j]);
            }
            Estimate {
                mean: sum.value() / nodes as f64,
                std_err: 0.0,
                samples_or_nodes: nodes,
            }
        })
        .collect()
}

/// Monte Carlo mean of the all-alive probability with *every* parameter
/// uniformly random: phases on `[0, 2π)`, all `rounds × players` bullet
/// angles on `[0, π]`.
pub fn fully_randomized_all_alive(
    players: usize,
    rounds: usize,
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    // The template's γ values are placeholders; every draw overwrites them.
    let template = GameConfig::uniform(players, rounds, PI / 2.0, 0.0, 0.0)?;
    let spec = AveragingSpec {
        randomize_alpha_beta: true,
        randomize_gammas: true,
        method: Method::MonteCarlo { samples, seed },
    };
    expected_outcome_probability(&template, &spec, &Outcome::all_alive(players))
}

/// Closed-form targets for [`fully_randomized_all_alive`] at two rounds,
/// known for 3–5 players; verification oracles, not features.
pub fn fully_randomized_two_round_target(players: usize) -> Option<f64> {
    let pi4 = PI.powi(4);
    let pi8 = PI.powi(8);
    match players {
        3 => Some(1.0 / 8.0 + 1.0 / 64.0 + 7.0 / (2.0 * pi4)),
        4 => Some(1.0 / 16.0 + 1.0 / 256.0 + 6.0 / pi8 + 23.0 / (8.0 * pi4)),
        5 => Some(1.0 / 32.0 + 1.0 / 1024.0 + 15.0 / pi8 + 77.0 / (32.0 * pi4)),
        _ => None,
    }
}

/// Bullet-angle policy for [`figure_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaPolicy {
    /// Every shot of every game uses this angle.
    Fixed(f64),
    /// Point `k` of the series is a fresh `k`-round game with its bullet
    /// smeared over the `k` rounds (constant weight `1/k` per shot).
    SmearedBullet,
}

/// Phase-averaged probabilities of the tracked outcomes after every round.
///
/// Returns `rounds + 1` entries: entry 0 is the start-of-game point (exact
/// by definition: 1 for the all-alive outcome, 0 for everything else) and
/// entry `k ≥ 1` the averaged probabilities after `k` rounds. All values
/// come from the exact phase quadrature.
pub fn figure_series(
    players: usize,
    rounds: usize,
    outcomes: &[Outcome],
    policy: GammaPolicy,
) -> Result<Vec<Vec<Estimate>>> {
    for o in outcomes {
        if o.n() != players {
            return Err(Error::OutcomeLength {
                got: o.n(),
                want: players,
            });
        }
    }
    let indices: Vec<usize> = outcomes.iter().map(Outcome::index).collect();
    let all_alive_index = (1usize << players) - 1;

    let origin: Vec<Estimate> = indices
        .iter()
        .map(|&basis| Estimate {
            mean: if basis == all_alive_index { 1.0 } else { 0.0 },
            std_err: 0.0,
            samples_or_nodes: 1,
        })
        .collect();
    let mut series = vec![origin];

    match policy {
        GammaPolicy::Fixed(gamma) => {
            let template = GameConfig::uniform(players, rounds, gamma, 0.0, 0.0)?;
            series.extend(traced_grid_series(&template, &indices));
        }
        GammaPolicy::SmearedBullet => {
            for k in 1..=rounds {
                let template =
                    GameConfig::new(players, k, schedule_smeared_bullet(players, k), 0.0, 0.0)?;
                let spec = AveragingSpec {
                    randomize_alpha_beta: true,
                    randomize_gammas: false,
                    method: Method::FourierGrid {
                        nodes_alpha: exact_phase_nodes(players, k),
                        nodes_beta: exact_phase_nodes(players, k),
                    },
                };
                series.push(expected_outcome_probabilities(&template, &spec, outcomes)?);
            }
        }
    }
    Ok(series)
}

/// Grid-average the whole per-round trace of one game in a single pass:
/// element `k` (0-based) holds the averaged probabilities after round `k+1`.
fn traced_grid_series(template: &GameConfig, indices: &[usize]) -> Vec<Vec<Estimate>> {
    let players = template.players();
    let rounds = template.rounds();
    let nodes = exact_phase_nodes(players, rounds);

    let rows: Vec<Vec<Vec<f64>>> = (0..nodes)
        .into_par_iter()
        .map(|ja| {
            let alpha = TAU * ja as f64 / nodes as f64;
            let mut acc = vec![vec![CompensatedSum::new(); indices.len()]; rounds];
            for jb in 0..nodes {
                let beta = TAU * jb as f64 / nodes as f64;
                let mut s = StateVector::all_alive(players).expect("validated player count");
                for (round, round_acc) in acc.iter_mut().enumerate() {
                    for player in 1..=players {
                        let gamma = template.gammas()[round * players + player - 1];
                        crate::operators::apply_player_op_in_place(
                            &mut s,
                            player,
                            &crate::operators::GateParams::new(gamma, alpha, beta),
                        )
                        .expect("validated player index");
                    }
                    for (slot, &basis) in round_acc.iter_mut().zip(indices) {
                        slot.add(s.amps()[basis].norm_sqr());
                    }
                }
            }
            acc.into_iter()
                .map(|round_acc| round_acc.into_iter().map(|s| s.value()).collect())
                .collect()
        })
        .collect();

    let total_nodes = (nodes * nodes) as u64;
    (0..rounds)
        .map(|round| {
            (0..indices.len())
                .map(|j| {
                    let mut sum = CompensatedSum::new();
                    for row in &rows {
                        sum.add(row[round][j]);
                    }
                    Estimate {
                        mean: sum.value() / total_nodes as f64,
                        std_err: 0.0,
                        samples_or_nodes: total_nodes,
                    }
                })
                .collect()
        })
        .collect()
}

//! Resolution of game parameters from config files and flags.
//!
//! Precedence is file first, flags second: any flag that is present
//! overrides the corresponding file value field by field. Bullet
//! probabilities are converted to bullet angles at resolution time, so the
//! rest of the program only ever sees angles.

use serde::Deserialize;
use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use qroulette_core::game::{gamma_from_bullet_probability, GameConfig};

use crate::args::GameFlags;
use crate::commands::CliError;

/// On-disk schema. Every key is optional; missing values fall back to flags
/// or defaults.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    players: Option<usize>,
    rounds: Option<usize>,
    alpha: Option<f64>,
    beta: Option<f64>,
    gammas: Option<Vec<f64>>,
    bullet_probs: Option<Vec<f64>>,
}

/// Raw angle or probability inputs for the bullet schedule, before length
/// checks.
#[derive(Debug, Clone)]
enum Schedule {
    /// Angles in shot order, or a single broadcast angle.
    Gammas(Vec<f64>),
    /// Per-player probabilities, or a single broadcast probability.
    BulletProbs(Vec<f64>),
}

pub fn resolve(config_path: Option<&Path>, flags: &GameFlags) -> Result<GameConfig, CliError> {
    let file = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<FileConfig>(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    if file.gammas.is_some() && file.bullet_probs.is_some() {
        return Err(CliError::Usage(
            "config sets both gammas and bullet_probs; pick one".into(),
        ));
    }

    let players = flags.players.or(file.players).unwrap_or(3);
    let rounds = flags.rounds.or(file.rounds).unwrap_or(1);
    let scale = if flags.degrees {
        std::f64::consts::PI / 180.0
    } else {
        1.0
    };
    let alpha = flags.alpha.or(file.alpha).unwrap_or(0.0) * scale;
    let beta = flags.beta.or(file.beta).unwrap_or(0.0) * scale;

    // Flags override the file's schedule wholesale, whichever spelling the
    // file used.
    let schedule = if let Some(list) = &flags.gammas {
        Some(Schedule::Gammas(parse_list(list, "--gammas")?))
    } else if let Some(list) = &flags.bullet_probs {
        Some(Schedule::BulletProbs(parse_list(list, "--bullet-probs")?))
    } else if let Some(g) = file.gammas {
        Some(Schedule::Gammas(g))
    } else {
        file.bullet_probs.map(Schedule::BulletProbs)
    };

    let shots = players.checked_mul(rounds).ok_or_else(|| {
        CliError::Usage(format!("players x rounds overflows: {players} x {rounds}"))
    })?;
    let gammas = match schedule {
        // The 50% chamber: bullet probability 1/2, γ = π/2, for every shot.
        None => vec![FRAC_PI_2; shots],
        Some(Schedule::Gammas(g)) => {
            let g: Vec<f64> = g.into_iter().map(|x| x * scale).collect();
            broadcast(g, shots, "gammas", "rounds x players")?
        }
        Some(Schedule::BulletProbs(p)) => {
            let per_player = broadcast(p, players, "bullet_probs", "players")?;
            let mut g = Vec::with_capacity(shots);
            for _ in 0..rounds {
                for &prob in &per_player {
                    g.push(gamma_from_bullet_probability(prob).map_err(usage)?);
                }
            }
            g
        }
    };
    GameConfig::new(players, rounds, gammas, alpha, beta).map_err(usage)
}

fn usage(e: qroulette_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parse a comma-separated float list; the flag name makes errors addressable.
pub fn parse_list(text: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<f64>().map_err(|_| {
                CliError::Usage(format!("{flag}: entry {} ({tok:?}) is not a number", i + 1))
            })
        })
        .collect()
}

/// Accept exactly `want` values, or a single value broadcast to `want`.
fn broadcast(values: Vec<f64>, want: usize, name: &str, shape: &str) -> Result<Vec<f64>, CliError> {
    match values.len() {
        1 => Ok(vec![values[0]; want]),
        n if n == want => Ok(values),
        n => Err(CliError::Usage(format!(
            "{name} has {n} entries but {shape} = {want}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::GameFlags;

    fn flags() -> GameFlags {
        GameFlags {
            players: None,
            rounds: None,
            alpha: None,
            beta: None,
            gammas: None,
            bullet_probs: None,
            degrees: false,
        }
    }

    #[test]
    fn defaults_are_three_players_one_round_half_probability() {
        let cfg = resolve(None, &flags()).unwrap();
        assert_eq!(cfg.players(), 3);
        assert_eq!(cfg.rounds(), 1);
        // cos²(γ/2) = 1/2
        let p = (cfg.gammas()[0] / 2.0).cos().powi(2);
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_gamma_broadcasts_to_every_shot() {
        let mut f = flags();
        f.players = Some(2);
        f.rounds = Some(3);
        f.gammas = Some("1.25".into());
        let cfg = resolve(None, &f).unwrap();
        assert_eq!(cfg.gammas(), &[1.25; 6]);
    }

    #[test]
    fn wrong_schedule_length_names_the_expected_count() {
        let mut f = flags();
        f.players = Some(3);
        f.rounds = Some(2);
        f.gammas = Some("0.1,0.2".into());
        let err = resolve(None, &f).unwrap_err();
        assert!(err.to_string().contains("6"), "got: {err}");
    }

    #[test]
    fn degrees_convert_angles_but_not_probabilities() {
        let mut f = flags();
        f.players = Some(2);
        f.rounds = Some(1);
        f.degrees = true;
        f.alpha = Some(180.0);
        f.gammas = Some("90,180".into());
        let cfg = resolve(None, &f).unwrap();
        assert!((cfg.alpha() - std::f64::consts::PI).abs() < 1e-12);
        assert!((cfg.gammas()[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((cfg.gammas()[1] - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn bullet_probs_convert_per_player_each_round() {
        let mut f = flags();
        f.players = Some(2);
        f.rounds = Some(2);
        f.bullet_probs = Some("1,0".into());
        let cfg = resolve(None, &f).unwrap();
        // p=1 is a certain bullet (γ=0); p=0 an empty chamber (γ=π).
        assert!((cfg.gammas()[0] - 0.0).abs() < 1e-12);
        assert!((cfg.gammas()[1] - std::f64::consts::PI).abs() < 1e-12);
        assert!((cfg.gammas()[2] - 0.0).abs() < 1e-12);
    }

    #[test]
    fn malformed_list_entries_are_reported_by_position() {
        let err = parse_list("0.5,oops,1.0", "--gammas").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("entry 2") && msg.contains("oops"), "got: {msg}");
    }
}

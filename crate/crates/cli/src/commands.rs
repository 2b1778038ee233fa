//! Subcommand implementations and the process entry point.

use clap::Parser;
use serde_json::json;
use std::fmt;

use qroulette_core::averaging::{
    exact_phase_nodes, expected_outcome_probabilities, figure_series, fully_randomized_all_alive,
    fully_randomized_two_round_target, AveragingSpec, Estimate, GammaPolicy, Method,
};
use qroulette_core::classical::{
    classical_all_alive_round_probability, classical_game, ClassicalConfig,
};
use qroulette_core::game::{evolve_trace, expected_payoffs, GameConfig, PayoffSpec};
use qroulette_core::statevec::{Outcome, StateVector};

use crate::args::{
    AverageArgs, Cli, ClassicalArgs, Command, FiguresArgs, Format, MethodKind, PayoffKind,
    SimulateArgs, Table1Args, VerifyArgs,
};
use crate::emit::{csv_float, deliver, to_json, RunManifest};
use crate::{checks, config, exit, threads};

/// Error carrying its process exit code class.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

/// Core validation failures are usage errors: the parameters were wrong.
impl From<qroulette_core::Error> for CliError {
    fn from(e: qroulette_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parse argv, size the thread pool, dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; those print to stdout and
            // exit 0, real usage errors go to stderr and exit 2.
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = threads::configure_from_env() {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Average(a) => cmd_average(a),
        Command::Table1(a) => cmd_table1(a),
        Command::Figures(a) => cmd_figures(a),
        Command::Classical(a) => cmd_classical(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Resolved game parameters as the manifest records them.
fn config_value(cfg: &GameConfig) -> serde_json::Value {
    json!({
        "players": cfg.players(),
        "rounds": cfg.rounds(),
        "alpha": cfg.alpha(),
        "beta": cfg.beta(),
        "gammas": cfg.gammas(),
    })
}

/// Outcome-keyed probability map in bitstring order.
fn distribution_value(state: &StateVector) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (index, p) in state.probabilities().iter().enumerate() {
        map.insert(
            Outcome::from_index(state.n(), index).to_string(),
            json!(p),
        );
    }
    serde_json::Value::Object(map)
}

fn distribution_csv(state: &StateVector, out: &mut String) {
    for (index, p) in state.probabilities().iter().enumerate() {
        let outcome = Outcome::from_index(state.n(), index);
        out.push_str(&format!("{outcome},{}\n", csv_float(*p)));
    }
}

fn cmd_simulate(a: SimulateArgs) -> Result<i32, CliError> {
    let cfg = config::resolve(a.config.as_deref(), &a.game)?;
    let trace = evolve_trace(&cfg);
    let last = trace.last().expect("at least one round");

    let payoffs = match a.payoff {
        None => None,
        Some(kind) => {
            let spec = match kind {
                PayoffKind::SoleSurvivor => PayoffSpec::sole_survivor(cfg.players())?,
                PayoffKind::ZeroSum => PayoffSpec::zero_sum(cfg.players())?,
            };
            Some(expected_payoffs(last, &spec)?)
        }
    };

    let data = match a.out.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("players".into(), json!(cfg.players()));
            doc.insert("rounds".into(), json!(cfg.rounds()));
            doc.insert("alpha".into(), json!(cfg.alpha()));
            doc.insert("beta".into(), json!(cfg.beta()));
            doc.insert("gammas".into(), json!(cfg.gammas()));
            doc.insert("distribution".into(), distribution_value(last));
            if a.trace {
                let rounds: Vec<serde_json::Value> = trace
                    .iter()
                    .enumerate()
                    .map(|(i, s)| json!({"round": i + 1, "distribution": distribution_value(s)}))
                    .collect();
                doc.insert("trace".into(), json!(rounds));
            }
            if let Some(p) = &payoffs {
                doc.insert("payoffs".into(), json!(p));
            }
            to_json(&serde_json::Value::Object(doc))?
        }
        Format::Csv => {
            if payoffs.is_some() {
                return Err(CliError::Usage(
                    "--payoff output is JSON-only; drop --format csv".into(),
                ));
            }
            let mut out = String::new();
            if a.trace {
                out.push_str("round,outcome,probability\n");
                for (i, s) in trace.iter().enumerate() {
                    for (index, p) in s.probabilities().iter().enumerate() {
                        let outcome = Outcome::from_index(s.n(), index);
                        out.push_str(&format!("{},{outcome},{}\n", i + 1, csv_float(*p)));
                    }
                }
            } else {
                out.push_str("outcome,probability\n");
                distribution_csv(last, &mut out);
            }
            out
        }
    };

    let manifest = RunManifest::new("simulate", config_value(&cfg));
    deliver(a.out.output.as_deref(), &data, &manifest)?;
    Ok(exit::SUCCESS)
}

fn estimate_rows(outcomes: &[Outcome], estimates: &[Estimate]) -> Vec<serde_json::Value> {
    outcomes
        .iter()
        .zip(estimates)
        .map(|(o, e)| {
            json!({
                "outcome": o.to_string(),
                "mean": e.mean,
                "std_err": e.std_err,
                "count": e.samples_or_nodes,
            })
        })
        .collect()
}

fn cmd_average(a: AverageArgs) -> Result<i32, CliError> {
    let cfg = config::resolve(None, &a.game)?;
    let outcomes: Vec<Outcome> = if a.outcome.is_empty() {
        vec![Outcome::all_alive(cfg.players())]
    } else {
        a.outcome
            .iter()
            .map(|s| Outcome::parse(s).map_err(CliError::from))
            .collect::<Result<_, _>>()?
    };

    let method = match a.method {
        MethodKind::Mc => Method::MonteCarlo {
            samples: a.samples,
            seed: a.seed,
        },
        MethodKind::Grid => {
            let nodes = a
                .nodes
                .unwrap_or_else(|| exact_phase_nodes(cfg.players(), cfg.rounds()));
            Method::FourierGrid {
                nodes_alpha: nodes,
                nodes_beta: nodes,
            }
        }
    };
    let spec = AveragingSpec {
        randomize_alpha_beta: true,
        randomize_gammas: a.randomize_gammas,
        method,
    };
    let estimates = expected_outcome_probabilities(&cfg, &spec, &outcomes)?;

    let method_name = match a.method {
        MethodKind::Mc => "mc",
        MethodKind::Grid => "grid",
    };
    let data = match a.out.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("players".into(), json!(cfg.players()));
            doc.insert("rounds".into(), json!(cfg.rounds()));
            doc.insert("gammas".into(), json!(cfg.gammas()));
            doc.insert("method".into(), json!(method_name));
            doc.insert("randomize_gammas".into(), json!(a.randomize_gammas));
            if a.method == MethodKind::Mc {
                doc.insert("samples".into(), json!(a.samples));
                doc.insert("seed".into(), json!(a.seed));
            }
            doc.insert("estimates".into(), json!(estimate_rows(&outcomes, &estimates)));
            to_json(&serde_json::Value::Object(doc))?
        }
        Format::Csv => {
            let mut out = String::from("outcome,mean,std_err,count\n");
            for (o, e) in outcomes.iter().zip(&estimates) {
                out.push_str(&format!(
                    "{o},{},{},{}\n",
                    csv_float(e.mean),
                    csv_float(e.std_err),
                    e.samples_or_nodes
                ));
            }
            out
        }
    };

    let mut manifest =
        RunManifest::new("average", config_value(&cfg)).with_method(method_name);
    if a.method == MethodKind::Mc {
        manifest = manifest.with_seed(a.seed);
    }
    deliver(a.out.output.as_deref(), &data, &manifest)?;
    Ok(exit::SUCCESS)
}

fn cmd_table1(a: Table1Args) -> Result<i32, CliError> {
    let rows: Vec<usize> = match a.players {
        None => vec![3, 4, 5],
        Some(n) if fully_randomized_two_round_target(n).is_some() => vec![n],
        Some(n) => {
            return Err(CliError::Usage(format!(
                "no closed-form target for {n} players (supported: 3, 4, 5)"
            )))
        }
    };

    let mut json_rows = Vec::new();
    let mut csv = String::from("players,mean,std_err,samples,target,classical,pass\n");
    println!("players  estimate                 std_err   target      classical   verdict");
    for &n in &rows {
        let est = fully_randomized_all_alive(n, 2, a.samples, a.seed)?;
        let target = fully_randomized_two_round_target(n).expect("filtered above");
        let classical = classical_all_alive_round_probability(n, 0.5)?;
        let pass = (est.mean - target).abs() <= (3.0 * est.std_err).max(0.01 * target);
        println!(
            "{n}        {:.16e}   {:.1e}   {target:.6}    {classical:.6}    {}",
            est.mean,
            est.std_err,
            if pass { "PASS" } else { "FAIL" }
        );
        json_rows.push(json!({
            "players": n,
            "mean": est.mean,
            "std_err": est.std_err,
            "samples": est.samples_or_nodes,
            "target": target,
            "classical": classical,
            "pass": pass,
        }));
        csv.push_str(&format!(
            "{n},{},{},{},{},{},{}\n",
            csv_float(est.mean),
            csv_float(est.std_err),
            est.samples_or_nodes,
            csv_float(target),
            csv_float(classical),
            pass
        ));
    }

    if a.out.output.is_some() {
        let data = match a.out.format {
            Format::Json => to_json(&json!({ "rows": json_rows }))?,
            Format::Csv => csv,
        };
        let manifest = RunManifest::new(
            "table1",
            json!({"players": rows, "rounds": 2, "samples": a.samples}),
        )
        .with_seed(a.seed)
        .with_method("mc");
        deliver(a.out.output.as_deref(), &data, &manifest)?;
    }
    Ok(exit::SUCCESS)
}

fn cmd_figures(a: FiguresArgs) -> Result<i32, CliError> {
    if a.rounds == 0 {
        return Err(CliError::Usage("--rounds must be at least 1".into()));
    }
    let gamma = if a.degrees {
        a.gamma * std::f64::consts::PI / 180.0
    } else {
        a.gamma
    };
    // (players, tracked outcomes) per figure.
    let panels: Vec<(usize, Vec<Outcome>)> = match a.figure {
        1 => vec![
            (3, vec![Outcome::all_alive(3)]),
            (4, vec![Outcome::all_alive(4)]),
        ],
        2 => vec![(3, (1..=3).map(|p| Outcome::sole_survivor(3, p)).collect())],
        3 => vec![(4, (1..=4).map(|p| Outcome::sole_survivor(4, p)).collect())],
        other => {
            return Err(CliError::Usage(format!(
                "--figure must be 1, 2, or 3 (got {other})"
            )))
        }
    };

    // rows[round][series] aligned with a flat outcome list across panels.
    let mut outcome_names = Vec::new();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (players, outcomes) in &panels {
        let series = figure_series(*players, a.rounds, outcomes, GammaPolicy::Fixed(gamma))?;
        for (j, o) in outcomes.iter().enumerate() {
            outcome_names.push(o.to_string());
            columns.push(series.iter().map(|row| row[j].mean).collect());
        }
    }

    let mut csv = String::from("round,outcome,probability\n");
    let mut json_rows = Vec::new();
    for round in 1..=a.rounds {
        for (name, col) in outcome_names.iter().zip(&columns) {
            csv.push_str(&format!("{round},{name},{}\n", csv_float(col[round])));
            json_rows.push(json!({
                "round": round,
                "outcome": name,
                "probability": col[round],
            }));
        }
    }
    let data = match a.out.format {
        Format::Csv => csv,
        Format::Json => to_json(&json!({
            "figure": a.figure,
            "rounds": a.rounds,
            "gamma": gamma,
            "rows": json_rows,
        }))?,
    };

    let manifest = RunManifest::new(
        "figures",
        json!({"figure": a.figure, "rounds": a.rounds, "gamma": gamma}),
    )
    .with_method("grid");
    deliver(a.out.output.as_deref(), &data, &manifest)?;
    Ok(exit::SUCCESS)
}

fn cmd_classical(a: ClassicalArgs) -> Result<i32, CliError> {
    let probs = config::parse_list(&a.bullet_probs, "--bullet-probs")?;
    let shots = a.players * a.rounds;
    // Accept one value for everyone, a per-player loadout reused each
    // round, or a full round-major schedule.
    let probs = match probs.len() {
        1 => vec![probs[0]; shots],
        len if len == a.players => probs.repeat(a.rounds),
        len if len == shots => probs,
        len => {
            return Err(CliError::Usage(format!(
                "--bullet-probs has {len} entries; expected 1, players = {}, \
                 or rounds × players = {shots}",
                a.players
            )))
        }
    };
    let cfg = ClassicalConfig::new(a.players, a.rounds, probs.clone())?;
    let dist = classical_game(&cfg);

    let data = match a.out.format {
        Format::Json => {
            let mut map = serde_json::Map::new();
            for (index, p) in dist.probs().iter().enumerate() {
                map.insert(Outcome::from_index(a.players, index).to_string(), json!(p));
            }
            to_json(&json!({
                "players": a.players,
                "rounds": a.rounds,
                "bullet_probs": probs,
                "distribution": serde_json::Value::Object(map),
            }))?
        }
        Format::Csv => {
            let mut out = String::from("outcome,probability\n");
            for (index, p) in dist.probs().iter().enumerate() {
                let outcome = Outcome::from_index(a.players, index);
                out.push_str(&format!("{outcome},{}\n", csv_float(*p)));
            }
            out
        }
    };

    let manifest = RunManifest::new(
        "classical",
        json!({"players": a.players, "rounds": a.rounds, "bullet_probs": probs}),
    );
    deliver(a.out.output.as_deref(), &data, &manifest)?;
    Ok(exit::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32, CliError> {
    let results = checks::run_all(a.filter.as_deref());
    if results.is_empty() {
        return Err(CliError::Usage(format!(
            "no checks match filter {:?}; available: {}",
            a.filter.unwrap_or_default(),
            checks::CHECKS.map(|(name, _)| name).join(", ")
        )));
    }
    let mut all_passed = true;
    for r in &results {
        // Timing goes to stderr so stdout stays byte-identical across runs.
        println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        eprintln!("  ({} took {:.2}s)", r.name, r.duration.as_secs_f64());
        all_passed &= r.passed;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} checks passed", results.len());
    Ok(if all_passed {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    })
}

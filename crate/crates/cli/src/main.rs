//! `qcc` — command-line driver for the qutrit communication-complexity
//! game toolkit.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 protocol
//! violation, 4 file I/O error.

mod settings;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qcc_core::classical::{enumerate_all, enumeration_csv, DeterministicStrategy};
use qcc_core::metrics::{self, SettingDistributions};
use qcc_core::optim::{
    optimize_settings, optimize_state_and_settings, SearchMode, SearchSpace,
};
use qcc_core::protocol::{
    monte_carlo_with, run_round_with_injected_double_send, OutcomeSampler, SamplerSource,
};
use qcc_core::qubit::{classical_max_qubit, gap_comparison, quantum_max_qubit};
use qcc_core::state::{gamma_state, gamma_star};
use qcc_core::trit::{InputA, InputB, Trit};

const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "qcc", version, about = "Two-qutrit communication-complexity game toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Exact P(f1), P(f2), Δ, I3, I2 for a γ-state and settings.
    Exact {
        /// State parameter of (|00⟩ + γ|11⟩ + |22⟩)/√(2+γ²).
        #[arg(long)]
        gamma: f64,
        /// "standard" or a settings JSON file.
        #[arg(long, default_value = "standard")]
        settings: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive table of all 81 classical strategies with maxima.
    ClassicalScan {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximize I3 over measurement settings (and optionally γ).
    Optimize {
        /// Fix the state parameter; omit to optimize γ as well.
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, value_enum, default_value = "single-alpha")]
        mode: ModeArg,
        #[arg(long, default_value_t = 20)]
        restarts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo protocol simulation with budget enforcement.
    Simulate {
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value = "standard")]
        settings: String,
        /// Classical sampler instead of quantum: four trit exponents
        /// "a0,a1,b0,b1".
        #[arg(long, conflicts_with = "gamma")]
        classical: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a JSON-lines transcript, one record per round.
        #[arg(long)]
        transcript: Option<String>,
        /// Audit hook: make Alice attempt a second send in round 0.
        #[arg(long, hide = true)]
        inject_double_send: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The two-qubit comparison game and the gap report.
    Baseline {
        #[arg(long, default_value_t = 20)]
        restarts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ModeArg {
    SingleAlpha,
    PhaseTriples,
    GeneralBases,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> SearchMode {
        match m {
            ModeArg::SingleAlpha => SearchMode::SingleAlpha,
            ModeArg::PhaseTriples => SearchMode::PhaseTriples,
            ModeArg::GeneralBases => SearchMode::GeneralBases,
        }
    }
}

enum CliError {
    Config(String),
    Protocol(String),
    Io(String),
}

impl From<qcc_core::Error> for CliError {
    fn from(e: qcc_core::Error) -> CliError {
        match e {
            qcc_core::Error::BudgetExceeded { .. } => CliError::Protocol(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Protocol(msg)) => {
            eprintln!("protocol violation: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(4)
        }
    }
}

fn emit(output: &OutputArgs, json: &serde_json::Value, csv: &str, human: &str) -> Result<(), CliError> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable report"),
        Format::Csv => csv.trim_end().to_string(),
        Format::Human => human.trim_end().to_string(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Io(format!("cannot write {path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn dist_table(d: &qcc_core::state::JointDist<3>) -> Vec<Vec<f64>> {
    (0..3)
        .map(|k| (0..3).map(|l| d.prob(k, l)).collect())
        .collect()
}

#[derive(Serialize)]
struct ExactResults {
    p_f1: f64,
    p_f2: f64,
    delta: f64,
    i3: f64,
    i2: f64,
}

fn scores_of(sd: &SettingDistributions) -> ExactResults {
    ExactResults {
        p_f1: metrics::p_f1(sd),
        p_f2: metrics::p_f2(sd),
        delta: metrics::delta(sd),
        i3: metrics::i3(sd),
        i2: metrics::i2(sd),
    }
}

fn scores_csv(r: &ExactResults) -> String {
    format!(
        "key,value\np_f1,{}\np_f2,{}\ndelta,{}\ni3,{}\ni2,{}\n",
        r.p_f1, r.p_f2, r.delta, r.i3, r.i2
    )
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Exact {
            gamma,
            settings,
            output,
        } => cmd_exact(gamma, &settings, &output),
        Command::ClassicalScan { output } => cmd_classical_scan(&output),
        Command::Optimize {
            gamma,
            mode,
            restarts,
            seed,
            tol,
            output,
        } => cmd_optimize(gamma, mode.into(), restarts, seed, tol, &output),
        Command::Simulate {
            gamma,
            settings,
            classical,
            rounds,
            seed,
            transcript,
            inject_double_send,
            output,
        } => cmd_simulate(
            gamma,
            &settings,
            classical.as_deref(),
            rounds,
            seed,
            transcript.as_deref(),
            inject_double_send,
            &output,
        ),
        Command::Baseline {
            restarts,
            seed,
            output,
        } => cmd_baseline(restarts, seed, &output),
    }
}

fn cmd_exact(gamma: f64, settings_arg: &str, output: &OutputArgs) -> Result<(), CliError> {
    let (settings, settings_file) =
        settings::load_settings(settings_arg).map_err(CliError::Config)?;
    let state = gamma_state(gamma)?;
    let sd = SettingDistributions::from_quantum(&state, &settings);
    let results = scores_of(&sd);

    let json = json!({
        "command": "exact",
        "artifact_version": ARTIFACT_VERSION,
        "config": { "gamma": gamma, "settings": settings_file },
        "results": results,
        "distributions": {
            "a0b1": dist_table(&sd.a0b1),
            "a0b0": dist_table(&sd.a0b0),
            "a1b1": dist_table(&sd.a1b1),
            "a1b0": dist_table(&sd.a1b0),
        },
    });
    let human = format!(
        "exact scores (gamma = {gamma}, settings = {settings_arg})\n\
         p_f1  = {:.6}\np_f2  = {:.6}\ndelta = {:.6}\ni3    = {:.6}\ni2    = {:.6}",
        results.p_f1, results.p_f2, results.delta, results.i3, results.i2
    );
    emit(output, &json, &scores_csv(&results), &human)
}

fn cmd_classical_scan(output: &OutputArgs) -> Result<(), CliError> {
    let table = enumerate_all();
    let max_delta = table.iter().map(|r| r.delta_quarters()).max().unwrap();
    let max_hits_f1 = table.iter().map(|r| r.hits_f1).max().unwrap();

    let rows: Vec<serde_json::Value> = table
        .iter()
        .map(|r| {
            json!({
                "a0": r.strategy.a[0].exponent(),
                "a1": r.strategy.a[1].exponent(),
                "b0": r.strategy.b[0].exponent(),
                "b1": r.strategy.b[1].exponent(),
                "hits_f1": r.hits_f1,
                "hits_f2": r.hits_f2,
                "delta": r.delta(),
                "p_f1": r.p_f1(),
            })
        })
        .collect();
    let json = json!({
        "command": "classical-scan",
        "artifact_version": ARTIFACT_VERSION,
        "config": {},
        "n_strategies": table.len(),
        "max_delta": f64::from(max_delta) / 4.0,
        "max_p_f1": f64::from(max_hits_f1) / 4.0,
        "rows": rows,
    });
    let human = format!(
        "classical protocol family: {} deterministic strategies\n\
         max delta = {}/4 = {:.6}\nmax p_f1  = {}/4 = {:.6}\n\
         relay preset (a=1, b=1): p_f1 = 0.750000, p_f2 = 0.250000\n\
         factorized preset:       p_f1 = 0.500000, p_f2 = 0.000000",
        table.len(),
        max_delta,
        f64::from(max_delta) / 4.0,
        max_hits_f1,
        f64::from(max_hits_f1) / 4.0,
    );
    emit(output, &json, &enumeration_csv(), &human)
}

fn cmd_optimize(
    gamma: Option<f64>,
    mode: SearchMode,
    restarts: u32,
    seed: u64,
    tol: f64,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let result = match gamma {
        Some(g) => {
            let state = gamma_state(g)?;
            optimize_settings(&state, &SearchSpace::settings_only(mode), restarts, tol, seed)?
        }
        None => {
            optimize_state_and_settings(&SearchSpace::with_gamma(mode), restarts, tol, seed)?
        }
    };
    if !result.converged {
        eprintln!("warning: best two restarts disagree beyond tolerance; treat result as a lower bound");
    }

    let json = json!({
        "command": "optimize",
        "artifact_version": ARTIFACT_VERSION,
        "config": {
            "gamma": gamma,
            "mode": result.mode,
            "restarts": restarts,
            "seed": seed,
            "tol": tol,
        },
        "result": result,
    });
    let csv = format!(
        "key,value\nbest_i3,{}\nbest_delta,{}\ngamma,{}\nconverged,{}\n",
        result.best_i3,
        result.best_delta,
        result.gamma.map_or("fixed".into(), |g| g.to_string()),
        result.converged
    );
    let human = format!(
        "optimize (mode = {:?}, restarts = {restarts}, seed = {seed})\n\
         best_i3    = {:.6}\nbest_delta = {:.6}\ngamma      = {}\nconverged  = {}",
        result.mode,
        result.best_i3,
        result.best_delta,
        result
            .gamma
            .map_or_else(|| format!("{} (fixed)", gamma.unwrap()), |g| format!("{g:.6}")),
        result.converged
    );
    emit(output, &json, &csv, &human)
}

fn parse_classical(arg: &str) -> Result<DeterministicStrategy, CliError> {
    let parts: Vec<i64> = arg
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("invalid --classical spec {arg:?}: {e}")))?;
    if parts.len() != 4 {
        return Err(CliError::Config(format!(
            "--classical needs four exponents a0,a1,b0,b1; got {arg:?}"
        )));
    }
    Ok(DeterministicStrategy::new(
        [Trit::new(parts[0]), Trit::new(parts[1])],
        [Trit::new(parts[2]), Trit::new(parts[3])],
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    gamma: Option<f64>,
    settings_arg: &str,
    classical: Option<&str>,
    rounds: u64,
    seed: u64,
    transcript: Option<&str>,
    inject_double_send: bool,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (sampler, config) = match classical {
        Some(spec) => {
            let strategy = parse_classical(spec)?;
            (
                OutcomeSampler::new(SamplerSource::Classical(strategy)),
                json!({ "classical": spec, "rounds": rounds, "seed": seed }),
            )
        }
        None => {
            let g = gamma.unwrap_or_else(gamma_star);
            let (settings, settings_file) =
                settings::load_settings(settings_arg).map_err(CliError::Config)?;
            let state = gamma_state(g)?;
            (
                OutcomeSampler::new(SamplerSource::Quantum { state, settings }),
                json!({
                    "gamma": g,
                    "settings": settings_file,
                    "rounds": rounds,
                    "seed": seed,
                }),
            )
        }
    };

    if inject_double_send {
        // Exercise the budget enforcement end to end.
        let x = InputA::new(0, Trit::ONE);
        let y = InputB::new(0, Trit::ONE);
        run_round_with_injected_double_send(x, y, &sampler, 0.5)?;
        unreachable!("injected double send must fail");
    }

    let mut transcript_file = match transcript {
        Some(path) => Some(std::io::BufWriter::new(std::fs::File::create(path).map_err(
            |e| CliError::Io(format!("cannot create transcript {path}: {e}")),
        )?)),
        None => None,
    };
    let mut transcript_error: Option<String> = None;
    let report = monte_carlo_with(&sampler, rounds, seed, |record| {
        if let Some(f) = transcript_file.as_mut() {
            if transcript_error.is_none() {
                let line = serde_json::to_string(record).expect("serializable record");
                if let Err(e) = writeln!(f, "{line}") {
                    transcript_error = Some(e.to_string());
                }
            }
        }
    })?;
    if let Some(e) = transcript_error {
        return Err(CliError::Io(format!("transcript write failed: {e}")));
    }

    let (p1, p2, d) = qcc_core::protocol::exact_scores(&sampler);
    let json = json!({
        "command": "simulate",
        "artifact_version": ARTIFACT_VERSION,
        "config": config,
        "report": report,
        "exact": { "p_f1": p1, "p_f2": p2, "delta": d },
    });
    let csv = format!(
        "key,value\nn_rounds,{}\np_f1_hat,{}\np_f2_hat,{}\ndelta_hat,{}\nse_f1,{}\nse_f2,{}\nseed,{}\n",
        report.n_rounds,
        report.p_f1_hat,
        report.p_f2_hat,
        report.delta_hat,
        report.se_f1,
        report.se_f2,
        report.seed
    );
    let human = format!(
        "simulate ({} rounds, seed = {})\n\
         p_f1_hat  = {:.6} (se {:.6})\np_f2_hat  = {:.6} (se {:.6})\n\
         delta_hat = {:.6}\nexact delta = {:.6}",
        report.n_rounds,
        report.seed,
        report.p_f1_hat,
        report.se_f1,
        report.p_f2_hat,
        report.se_f2,
        report.delta_hat,
        d
    );
    emit(output, &json, &csv, &human)
}

fn cmd_baseline(restarts: u32, seed: u64, output: &OutputArgs) -> Result<(), CliError> {
    let (hits, rows) = classical_max_qubit();
    let classical = f64::from(hits) / f64::from(rows);
    let quantum = quantum_max_qubit(restarts, 1e-6, seed)?;

    // Qutrit-side optima for the gap report come from the exact
    // standard-settings evaluation and the exact classical bound.
    let sd = SettingDistributions::from_quantum(
        &gamma_state(gamma_star())?,
        &qcc_core::measure::cglmp_standard_settings(),
    );
    let gaps = gap_comparison(metrics::delta(&sd), quantum.best_success);

    let json = json!({
        "command": "baseline",
        "artifact_version": ARTIFACT_VERSION,
        "config": { "game": "qubit", "restarts": restarts, "seed": seed },
        "classical_max": classical,
        "quantum_optimum": quantum,
        "gaps": gaps,
    });
    let csv = format!(
        "key,value\nclassical_max,{}\nquantum_max,{}\nqutrit_gap,{}\nqubit_gap,{}\n",
        classical, quantum.best_success, gaps.qutrit_gap, gaps.qubit_gap
    );
    let human = format!(
        "qubit baseline game (restarts = {restarts}, seed = {seed})\n\
         classical max   = {:.6}\nquantum optimum = {:.6}\n\
         qutrit gap (delta_Q - delta_C) = {:.6}\nqubit gap (P_Q - P_C)          = {:.6}",
        classical, quantum.best_success, gaps.qutrit_gap, gaps.qubit_gap
    );
    emit(output, &json, &csv, &human)
}

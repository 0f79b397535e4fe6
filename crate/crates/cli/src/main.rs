//! Batch front door. Every subcommand runs to a deterministic outcome,
//! prints one `report-v1` JSON document to stdout and exits with a fixed
//! vocabulary of codes, so shell-level pipelines never need to parse JSON:
//!
//! 0 success - 2 invalid arguments - 3 exhausted/unresolved - 4 i/o or
//! corrupt input - 5 red witness found (implementation falsifier) -
//! 6 ground too large.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ramsey_stepup::base::{
    search_base_coloring, LemmaProfile, LemmaVariant, Rational, SearchConfig, SearchOutcome,
};
use ramsey_stepup::cliques::{
    probe_mono_clique, tiny_ramsey, verify_red_free, CliqueOutcome, CliqueQuery,
    ConstructionCheck, GroundSpec, OracleConfig, SearchBudget,
};
use ramsey_stepup::phi;
use ramsey_stepup::stepup::{tower_iterate, FourProfile, StepUpError, SteppedColoring};
use ramsey_stepup::{Color, Coloring};

use report::{CmdError, Diagnostics, Envelope, CMD_EXHAUSTED, CMD_GROUND_TOO_LARGE, CMD_WITNESS};

#[derive(Parser)]
#[command(name = "ramsey-stepup", version, about = "Stepped-up coloring toolbox")]
struct Cli {
    /// Worker threads; 0 means all available cores.
    #[arg(long, global = true, env = "RAMSEY_THREADS", default_value_t = 0)]
    threads: usize,
    /// Also write the JSON report to this path (stdout either way).
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a pair coloring satisfying a lemma profile.
    Search(SearchArgs),
    /// Exhaustively certify red-freeness of an arity-4 lifting.
    Verify(VerifyArgs),
    /// Build the iterated tower and verify its top level on sampled grounds.
    Tower(TowerArgs),
    /// Heuristic lower bound on the largest blue clique.
    Probe(ProbeArgs),
    /// Exact graph Ramsey oracle at desk scale.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ProfileArg {
    Lemma31,
    Lemma41,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum LiftArg {
    R45,
    R46,
}

impl LiftArg {
    fn four_profile(self) -> FourProfile {
        match self {
            LiftArg::R45 => FourProfile::R45,
            LiftArg::R46 => FourProfile::R46,
        }
    }

    fn default_red_target(self) -> usize {
        match self {
            LiftArg::R45 => 5,
            LiftArg::R46 => 6,
        }
    }
}

#[derive(Args, Serialize)]
struct SearchArgs {
    /// Clause set to verify candidates against.
    #[arg(long, value_enum)]
    profile: ProfileArg,
    /// The set size n of the profile.
    #[arg(long)]
    n: usize,
    /// Number of base points.
    #[arg(long = "N")]
    n_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    max_attempts: u64,
    /// Per-pair red probability, as `a/b` or a decimal in (0,1).
    #[arg(long, default_value = "1/2")]
    red_probability: Rational,
    /// Where to write the coloring on success.
    #[arg(long, default_value = "out.phi")]
    out: PathBuf,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// PHI v1 file with the base coloring.
    #[arg(long)]
    phi: PathBuf,
    #[arg(long, value_enum)]
    profile: LiftArg,
    /// Verify over the full ground of 2^bits vertices.
    #[arg(long)]
    ground_bits: u8,
    /// Red clique size to exclude; defaults to 5 for r45, 6 for r46.
    #[arg(long)]
    red_target: Option<usize>,
    /// Enumeration budget (refuses, never truncates).
    #[arg(long, default_value_t = SearchBudget::default().max_tuples)]
    max_tuples: u64,
}

#[derive(Args, Serialize)]
struct TowerArgs {
    #[arg(long)]
    phi: PathBuf,
    /// Arity of the top level; at least 5 (arity 4 is verify's job).
    #[arg(long)]
    top_arity: usize,
    /// Which arity-4 profile anchors the tower.
    #[arg(long, value_enum)]
    profile4: LiftArg,
    /// Sampled verification grounds live inside 2^sample-bits vertices.
    #[arg(long)]
    sample_bits: u8,
    #[arg(long, default_value_t = 64)]
    sample_size: usize,
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Red clique size to exclude at the top; defaults to top-arity + 1.
    #[arg(long)]
    red_target: Option<usize>,
    #[arg(long, default_value_t = SearchBudget::default().max_tuples)]
    max_tuples: u64,
}

#[derive(Args, Serialize)]
struct ProbeArgs {
    #[arg(long)]
    phi: PathBuf,
    #[arg(long, value_enum)]
    profile: LiftArg,
    #[arg(long)]
    ground_bits: u8,
    #[arg(long, default_value_t = 100)]
    restarts: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SearchBudget::default().max_tuples)]
    max_tuples: u64,
}

#[derive(Args, Serialize)]
struct OracleArgs {
    /// Red target s.
    #[arg(long)]
    s: usize,
    /// Blue target n.
    #[arg(long)]
    n: usize,
    /// Largest N to decide.
    #[arg(long = "N-max")]
    n_max: usize,
    /// Cap on C(N,2) for the per-level decision.
    #[arg(long, default_value_t = OracleConfig::default().max_edges)]
    max_edges: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // A failure here means the pool is already built, which only happens
        // in tests that call main twice; the run stays correct either way.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let threads = rayon::current_num_threads();

    let started_at = chrono::Utc::now();
    let wall = std::time::Instant::now();
    let (name, params, result) = match &cli.command {
        Command::Search(args) => ("search", to_params(args), cmd_search(args)),
        Command::Verify(args) => ("verify", to_params(args), cmd_verify(args)),
        Command::Tower(args) => ("tower", to_params(args), cmd_tower(args)),
        Command::Probe(args) => ("probe", to_params(args), cmd_probe(args)),
        Command::Oracle(args) => ("oracle", to_params(args), cmd_oracle(args)),
    };

    let (outcome, code, tuples) = match result {
        Ok(run) => (run.outcome, run.exit_code, run.tuples_evaluated),
        Err(CmdError::Validation(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(4);
        }
    };

    let envelope = Envelope::new(
        name,
        params,
        started_at,
        chrono::Utc::now(),
        outcome,
        Diagnostics {
            wall_ms: wall.elapsed().as_millis() as u64,
            tuples_evaluated: tuples,
            threads,
        },
    );
    let rendered = serde_json::to_string_pretty(&envelope).expect("report serialization");
    println!("{rendered}");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
            eprintln!("error: writing report {}: {e}", path.display());
            return ExitCode::from(4);
        }
    }
    ExitCode::from(code)
}

fn to_params<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("argument echo")
}

/// A finished run: its deterministic outcome block, exit code and counters.
struct RunOutput {
    outcome: serde_json::Value,
    exit_code: u8,
    tuples_evaluated: Option<u64>,
}

fn cmd_search(args: &SearchArgs) -> Result<RunOutput, CmdError> {
    let variant = match args.profile {
        ProfileArg::Lemma31 => LemmaVariant::Lemma31,
        ProfileArg::Lemma41 => LemmaVariant::Lemma41,
    };
    let profile = LemmaProfile::new(variant, args.n).map_err(CmdError::validation)?;
    let config = SearchConfig {
        seed: args.seed,
        max_attempts: args.max_attempts,
        red_probability: args.red_probability,
    };
    let outcome =
        search_base_coloring(args.n_points, &profile, &config).map_err(CmdError::validation)?;
    match outcome {
        SearchOutcome::Found { coloring, attempts_used, report } => {
            phi::write_file(&args.out, &coloring)
                .map_err(|e| CmdError::Io(format!("writing {}: {e}", args.out.display())))?;
            Ok(RunOutput {
                outcome: json!({
                    "status": "found",
                    "attempts_used": attempts_used,
                    "phi_path": args.out.display().to_string(),
                    "phi_file": phi::write_string(&coloring),
                    "verification": report,
                }),
                exit_code: 0,
                tuples_evaluated: None,
            })
        }
        SearchOutcome::Exhausted { attempts, failures } => Ok(RunOutput {
            outcome: json!({
                "status": "exhausted",
                "attempts": attempts,
                "failure_histogram": failures
                    .iter()
                    .map(|(clause, count)| json!({ "clause": clause, "count": count }))
                    .collect::<Vec<_>>(),
            }),
            exit_code: CMD_EXHAUSTED,
            tuples_evaluated: None,
        }),
    }
}

fn load_lift(path: &PathBuf, profile: LiftArg) -> Result<SteppedColoring, CmdError> {
    let phi = phi::read_file(path).map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))?;
    SteppedColoring::four(Arc::new(phi), profile.four_profile()).map_err(CmdError::validation)
}

fn construction_outcome(check: &ConstructionCheck) -> (serde_json::Value, u8, Option<u64>) {
    let tuples = check.runs.iter().map(|r| r.report.tuples_evaluated).sum();
    let grounds: Vec<_> = check
        .runs
        .iter()
        .map(|r| json!({ "ground": r.label, "outcome": r.report.outcome }))
        .collect();
    if check.all_clear() {
        (
            json!({ "status": "none_exhaustive", "red_target": check.red_target, "grounds": grounds }),
            0,
            Some(tuples),
        )
    } else {
        (
            json!({ "status": "witness_found", "red_target": check.red_target, "grounds": grounds }),
            CMD_WITNESS,
            Some(tuples),
        )
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<RunOutput, CmdError> {
    let lift = load_lift(&args.phi, args.profile)?;
    let red_target = args.red_target.unwrap_or(args.profile.default_red_target());
    let spec = GroundSpec::Full { bit_width: args.ground_bits };
    let budget = SearchBudget { max_tuples: args.max_tuples };
    let check = verify_red_free(&lift, &spec, red_target, &budget).map_err(CmdError::validation)?;
    let (outcome, exit_code, tuples) = construction_outcome(&check);
    Ok(RunOutput { outcome, exit_code, tuples_evaluated: tuples })
}

fn cmd_tower(args: &TowerArgs) -> Result<RunOutput, CmdError> {
    if args.top_arity < 5 {
        return Err(CmdError::Validation(
            "top arity must be at least 5; arity-4 liftings are `verify`'s job".into(),
        ));
    }
    let phi = phi::read_file(&args.phi)
        .map_err(|e| CmdError::Io(format!("{}: {e}", args.phi.display())))?;
    let stack = match tower_iterate(Arc::new(phi), args.profile4.four_profile(), args.top_arity) {
        Ok(stack) => stack,
        Err(e @ StepUpError::GroundTooLarge(_)) => {
            return Ok(RunOutput {
                outcome: json!({ "status": "ground_too_large", "detail": e.to_string() }),
                exit_code: CMD_GROUND_TOO_LARGE,
                tuples_evaluated: None,
            });
        }
        Err(e) => return Err(CmdError::validation(e)),
    };
    let red_target = args.red_target.unwrap_or(args.top_arity + 1);
    let spec = GroundSpec::Sampled {
        bit_width: args.sample_bits,
        subset_size: args.sample_size,
        seed: args.seed,
        count: args.samples,
    };
    let budget = SearchBudget { max_tuples: args.max_tuples };
    let check = verify_red_free(stack.top().as_ref(), &spec, red_target, &budget)
        .map_err(CmdError::validation)?;
    let (mut outcome, exit_code, tuples) = construction_outcome(&check);
    outcome["levels"] = json!(stack
        .levels()
        .iter()
        .map(|l| json!({ "arity": l.arity(), "ground_size": l.ground_size() }))
        .collect::<Vec<_>>());
    outcome["ground_sizes"] = json!(stack.ground_sizes());
    Ok(RunOutput { outcome, exit_code, tuples_evaluated: tuples })
}

fn cmd_probe(args: &ProbeArgs) -> Result<RunOutput, CmdError> {
    let lift = load_lift(&args.phi, args.profile)?;
    if args.ground_bits as usize > 62 {
        return Err(CmdError::Validation("ground bits out of range".into()));
    }
    let ground: Vec<u64> = (0..1u64 << args.ground_bits).collect();
    let query = CliqueQuery {
        coloring: &lift,
        ground: &ground,
        target_color: Color::Blue,
        target_size: 4,
    };
    let budget = SearchBudget { max_tuples: args.max_tuples };
    let report =
        probe_mono_clique(&query, args.restarts, args.seed, &budget).map_err(CmdError::validation)?;
    let CliqueOutcome::LowerBound { size, witness } = &report.outcome else {
        unreachable!("probe always reports a lower bound");
    };
    Ok(RunOutput {
        outcome: json!({
            "status": "lower_bound",
            "size": size,
            "witness": witness,
            "restarts": args.restarts,
        }),
        exit_code: 0,
        tuples_evaluated: Some(report.tuples_evaluated),
    })
}

fn cmd_oracle(args: &OracleArgs) -> Result<RunOutput, CmdError> {
    let config = OracleConfig { max_edges: args.max_edges };
    let report = tiny_ramsey(2, args.s, args.n, args.n_max, &config).map_err(CmdError::validation)?;
    let witness = report.witness.as_ref().map(|w| {
        json!({ "n_points": w.n_points(), "phi_file": phi::write_string(w) })
    });
    match report.value {
        Some(value) => Ok(RunOutput {
            outcome: json!({
                "status": "value",
                "value": value,
                "avoiding_coloring_below": witness,
            }),
            exit_code: 0,
            tuples_evaluated: Some(report.nodes_explored),
        }),
        None => Ok(RunOutput {
            outcome: json!({
                "status": "unresolved",
                "n_max": args.n_max,
                "avoiding_coloring": witness,
            }),
            exit_code: CMD_EXHAUSTED,
            tuples_evaluated: Some(report.nodes_explored),
        }),
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use orbitsym::classify::Problem;
use orbitsym::io::report::ErrorInfo;
use orbitsym::io::{run, Command, JobSpec, RepSource, Report, Status, SCHEMA};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Euclidean,
    Affine,
    Rational,
}

/// Generic symmetry groups of orbit polytopes.
///
/// Exit status: 0 success, 1 failed check or exhausted budget, 2 bad input.
#[derive(Parser, Debug)]
#[command(name = "orbitsym", version)]
struct Cli {
    /// group, chartable, gensym, classify, oracle, verify or explore
    command: String,
    /// Group constructor, e.g. cyclic(4) or product(quaternion8,cyclic(7)).
    /// For `group`, omit or pass catalog / catalog:<max order> to list groups.
    #[arg(long)]
    group: Option<String>,
    /// Character: an expression such as "lambda+conj(lambda)", a
    /// multiplicity vector [0,1,1,0], or a JSON list of class values.
    #[arg(long = "char")]
    character: Option<String>,
    /// regular, ideal:<character>, or a path to a representation document.
    #[arg(long)]
    rep: Option<String>,
    #[arg(long, value_enum, default_value = "affine")]
    mode: Mode,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coordinates of sampled points lie in [-bound, bound].
    #[arg(long, default_value_t = 10)]
    bound: i64,
    /// Node budget of each automorphism search.
    #[arg(long, default_value_t = orbitsym::gensym::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Resamples after a theory/oracle mismatch.
    #[arg(long, default_value_t = 5)]
    retries: usize,
    /// Largest orbit built during closure iteration.
    #[arg(long, default_value_t = 2000)]
    point_budget: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn rep_source(text: &str) -> Result<RepSource, String> {
    if text == "regular" {
        return Ok(RepSource::Regular);
    }
    if let Some(chi) = text.strip_prefix("ideal:") {
        return Ok(RepSource::Ideal(chi.to_string()));
    }
    let raw = std::fs::read_to_string(text).map_err(|e| format!("cannot read {text}: {e}"))?;
    serde_json::from_str(&raw).map(RepSource::Document).map_err(|e| format!("{text}: invalid JSON: {e}"))
}

fn input_error(command: Command, seed: u64, kind: &str, message: String) -> Report {
    Report {
        schema: SCHEMA.into(),
        command,
        status: Status::Error,
        seed,
        result: None,
        error: Some(ErrorInfo { kind: kind.into(), message, pointer: None }),
    }
}

fn report_for(cli: &Cli) -> Report {
    let command: Command = match cli.command.parse() {
        Ok(c) => c,
        Err(e) => return input_error(Command::Group, cli.seed, "command", e),
    };
    let mut job = JobSpec::new(command);
    job.group = cli.group.clone();
    job.character = cli.character.clone();
    job.mode = match cli.mode {
        Mode::Euclidean => Problem::Euclidean,
        Mode::Affine => Problem::Affine,
        Mode::Rational => Problem::Rational,
    };
    job.trials = cli.trials;
    job.seed = cli.seed;
    job.bound = cli.bound;
    job.node_budget = cli.budget;
    job.retries = cli.retries;
    job.point_budget = cli.point_budget;
    if let Some(r) = &cli.rep {
        match rep_source(r) {
            Ok(s) => job.rep = Some(s),
            Err(e) => return input_error(command, cli.seed, "rep", e),
        }
    }
    run(&job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = report_for(&cli);
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_string(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(report.status.exit_code() as u8)
}

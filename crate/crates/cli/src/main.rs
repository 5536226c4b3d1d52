use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use germlab::report::Status;
use germlab::{run, text, to_json, Command, Flags, SEED_ENV};

/// Singularity invariants of map germs from surface ICIS to the plane.
#[derive(Parser)]
#[command(name = "germlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants and identity checks of one germ.
    Analyze(Common),
    /// Closed forms of a weighted homogeneous signature.
    Wh(Common),
    /// Invariants along a one-parameter family.
    Family(FamilyArgs),
    /// Zariski verdict for a family with a generic projection.
    Zariski(FamilyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Problem file (JSON).
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u32>,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    common: Common,
    /// Parameter samples, comma separated; must include 0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, t) = match cli.command {
        Cmd::Analyze(c) => (Command::Analyze, c, None),
        Cmd::Wh(c) => (Command::Wh, c, None),
        Cmd::Family(a) => (Command::Family, a.common, a.t),
        Cmd::Zariski(a) => (Command::Zariski, a.common, a.t),
    };
    let flags = Flags { seed: common.seed, trials: common.trials, t, env_seed: std::env::var(SEED_ENV).ok() };
    let text_in = match std::fs::read_to_string(&common.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("germlab: cannot read {}: {e}", common.file.display());
            return ExitCode::from(Status::InputError.exit_code() as u8);
        }
    };
    let report = run(command, &text_in, &flags);
    let rendered = match common.format {
        Format::Json => to_json(&report),
        Format::Text => text::render(&report),
    };
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("germlab: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::InputError.exit_code() as u8);
            }
        }
        None => print!("{rendered}"),
    }
    if let Some(err) = &report.error {
        eprintln!("germlab: {}", err.message);
    }
    ExitCode::from(report.status.exit_code() as u8)
}

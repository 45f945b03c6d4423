//! `semiample`: JSON front end to the toric computations.
//!
//! Exit status 0 on success, 1 for unreadable or malformed input, 2 when a
//! mathematical precondition fails. Reports go to standard output (or
//! `--output`); errors are also reported as JSON.

mod commands;
mod wire;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Command, Options};

#[derive(Parser, Debug)]
#[command(name = "semiample", version, about = "Exact computations for semiample toric hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Input JSON document; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Where to write the report: a path or `stdout`.
    #[arg(long, global = true, default_value = "stdout")]
    output: String,
    /// Worker threads for internal parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run redundant cross-algorithm checks.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Fan validation.
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Torus-invariant divisors.
    Divisor {
        #[command(subcommand)]
        cmd: DivisorCmd,
    },
    /// Graded dimensions of the Jacobian rings.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Toric residues.
    Residue {
        #[command(subcommand)]
        cmd: ResidueCmd,
    },
    /// Cup product pairings.
    Cup {
        #[command(subcommand)]
        cmd: CupCmd,
    },
    /// Middle cohomology of semiample threefolds.
    Threefold {
        #[command(subcommand)]
        cmd: ThreefoldCmd,
    },
    /// Hodge numbers of hypersurfaces in reflexive polytopes.
    Hodge {
        #[command(subcommand)]
        cmd: HodgeCmd,
    },
    /// Compare Hodge numbers of a mirror pair.
    Mirror {
        #[command(subcommand)]
        cmd: MirrorCmd,
    },
    /// Regression corpus.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand, Debug)]
enum FanCmd {
    Check,
}

#[derive(Subcommand, Debug)]
enum DivisorCmd {
    /// Cartier, globally generated, ample, semiample and Δ_D.
    Analyze,
    /// The coarsened fan Σ_D.
    SigmaD,
    /// Intersection numbers with every wall.
    Nakai,
    /// Smallest Σ_D container of every cone.
    Stratify,
}

#[derive(Subcommand, Debug)]
enum RingCmd {
    Dims,
}

#[derive(Subcommand, Debug)]
enum ResidueCmd {
    Eval,
}

#[derive(Subcommand, Debug)]
enum CupCmd {
    Pair,
}

#[derive(Subcommand, Debug)]
enum ThreefoldCmd {
    H3,
}

#[derive(Subcommand, Debug)]
enum HodgeCmd {
    #[command(name = "h-p2")]
    HP2,
    H21,
}

#[derive(Subcommand, Debug)]
enum MirrorCmd {
    Check,
}

#[derive(Subcommand, Debug)]
enum CorpusCmd {
    /// Run every case of a manifest and compare against its expectations.
    Run,
}

impl Group {
    fn command(&self) -> Command {
        match self {
            Group::Fan { cmd: FanCmd::Check } => Command::FanCheck,
            Group::Divisor { cmd } => match cmd {
                DivisorCmd::Analyze => Command::DivisorAnalyze,
                DivisorCmd::SigmaD => Command::DivisorSigmaD,
                DivisorCmd::Nakai => Command::DivisorNakai,
                DivisorCmd::Stratify => Command::DivisorStratify,
            },
            Group::Ring { cmd: RingCmd::Dims } => Command::RingDims,
            Group::Residue { cmd: ResidueCmd::Eval } => Command::ResidueEval,
            Group::Cup { cmd: CupCmd::Pair } => Command::CupPair,
            Group::Threefold { cmd: ThreefoldCmd::H3 } => Command::ThreefoldH3,
            Group::Hodge { cmd: HodgeCmd::HP2 } => Command::HodgeHp2,
            Group::Hodge { cmd: HodgeCmd::H21 } => Command::HodgeH21,
            Group::Mirror { cmd: MirrorCmd::Check } => Command::MirrorCheck,
            Group::Corpus { cmd: CorpusCmd::Run } => Command::CorpusRun,
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        Some(p) => s = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn execute(cli: &Cli) -> Result<(serde_json::Value, i32), CliError> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(format!("--threads: {e}")))?;
    }
    let text = read_input(cli.global.input.as_deref())?;
    let base = cli.global.input.as_deref().and_then(Path::parent).unwrap_or(Path::new("."));
    let command = cli.group.command();
    let report = commands::run(command, &text, &Options { verify: cli.global.verify, base })?;
    // a corpus with failing cases, or a failed --verify check, is a precondition failure
    let failed = report.get("failed").and_then(|v| v.as_u64()).is_some_and(|n| n > 0)
        || report.get("verified") == Some(&serde_json::Value::Bool(false))
        || report.get("agrees_with_convexity") == Some(&serde_json::Value::Bool(false));
    Ok((report, if failed { 2 } else { 0 }))
}

fn write_output(target: &str, report: &serde_json::Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("JSON value serializes");
    text.push('\n');
    if target == "stdout" {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::fs::write(target, text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("semiample: {e}");
            (e.report(), e.exit_code())
        }
    };
    if let Err(e) = write_output(&cli.global.output, &report) {
        eprintln!("semiample: cannot write {}: {e}", cli.global.output);
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}

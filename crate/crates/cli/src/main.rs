use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hodge_cli::{commands, load, CliError, Flags};
use hodge_core::spaces::MembershipMode;

/// Exact-arithmetic analyzer for mixed Hodge structure documents.
#[derive(Parser)]
#[command(name = "hodge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a document file is well-formed and valid.
    Validate { file: PathBuf },
    /// Print the Hodge-number table(s) of a document.
    HodgeNumbers { file: PathBuf },
    /// Extract the Hodge 1-motive at level p.
    Motive {
        #[arg(short)]
        p: i64,
        /// Cohomological degree (required for gluing documents).
        #[arg(short)]
        n: Option<i64>,
        /// strict (exact lattices) or isogeny (up to finite index).
        #[arg(long, default_value = "isogeny")]
        mode: String,
        file: PathBuf,
    },
    /// List the weight-graded pieces of a gluing or simplicial document.
    Glue { file: PathBuf },
    /// Verify the boundary-map/extension-class commuting square.
    SquareCheck {
        #[arg(short)]
        p: i64,
        /// Cohomological degree; defaults to 2p.
        #[arg(short)]
        n: Option<i64>,
        file: PathBuf,
    },
    /// Build the mixed Hodge structure of a [lattice -> abelian] 1-motive.
    Realize {
        #[arg(short)]
        p: i64,
        file: PathBuf,
    },
}

fn parse_mode(s: &str) -> Result<MembershipMode, CliError> {
    match s {
        "strict" => Ok(MembershipMode::Strict),
        "isogeny" => Ok(MembershipMode::Isogeny),
        other => Err(CliError::Validation(format!(
            "--mode must be strict or isogeny, got {}",
            other
        ))),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (name, file, flags) = match &cli.command {
        Command::Validate { file } => ("validate", file, Flags::default()),
        Command::HodgeNumbers { file } => ("hodge-numbers", file, Flags::default()),
        Command::Motive { p, n, mode, file } => (
            "motive",
            file,
            Flags { p: Some(*p), n: *n, mode: parse_mode(mode)? },
        ),
        Command::Glue { file } => ("glue", file, Flags::default()),
        Command::SquareCheck { p, n, file } => {
            ("square-check", file, Flags { p: Some(*p), n: *n, mode: MembershipMode::Isogeny })
        }
        Command::Realize { p, file } => {
            ("realize", file, Flags { p: Some(*p), n: None, mode: MembershipMode::Isogeny })
        }
    };
    let doc = load(file)?;
    let report = commands::run(name, &doc, &flags)?;
    println!("{}", report.human);
    if let Ok(dir) = std::env::var("HODGE_OUTPUT_DIR") {
        let out = PathBuf::from(dir).join(format!("{}-report.json", name));
        let mut text = serde_json::to_string_pretty(&report.machine)
            .map_err(|e| CliError::Validation(format!("serialization: {}", e)))?;
        text.push('\n');
        std::fs::write(&out, text)
            .map_err(|e| CliError::Validation(format!("{}: {}", out.display(), e)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abmod::cli::{self, ModuleSpec, Options};
use abmod::Error;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "abmod", version, about = "Exact computations with regular (a,b)-modules")]
struct Args {
    /// Working precision (power of b); raises constructed modules and pads
    /// explicit presentations.
    #[arg(long, global = true)]
    precision: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report (or, delta, spectra, widths, alpha, N0).
    Invariants { file: PathBuf },
    /// Decide isomorphism of the jets modulo b^N.
    JetIso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dual module, as a module file.
    Dual { file: PathBuf },
    /// Saturation, as a module file.
    Saturate { file: PathBuf },
    /// Rank-2 classification.
    Classify { file: PathBuf },
    /// Jordan-Hoelder exponents.
    Jh { file: PathBuf },
    /// Dimensions of Hom and Ext^1 from A to B.
    Ext { a: PathBuf, b: PathBuf },
    /// Recognise a random base change at N0 and lift the jet isomorphism.
    VerifyBound {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<ModuleSpec, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    cli::parse_module_file(&text)
}

fn run(args: Args) -> Result<String, Error> {
    let opts = Options::from_env(args.precision);
    let pretty = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("json") + "\n";
    Ok(match args.command {
        Command::Invariants { file } => pretty(cli::cmd_invariants(&load(&file)?, opts)?),
        Command::JetIso { a, b, order, seed } => {
            pretty(cli::cmd_jet_iso(&load(&a)?, &load(&b)?, order, seed, opts)?)
        }
        Command::Dual { file } => cli::cmd_dual(&load(&file)?, opts)?,
        Command::Saturate { file } => cli::cmd_saturate(&load(&file)?, opts)?,
        Command::Classify { file } => pretty(cli::cmd_classify(&load(&file)?, opts)?),
        Command::Jh { file } => pretty(cli::cmd_jh(&load(&file)?, opts)?),
        Command::Ext { a, b } => pretty(cli::cmd_ext(&load(&a)?, &load(&b)?, opts)?),
        Command::VerifyBound { file, seed } => pretty(cli::cmd_verify_bound(&load(&file)?, seed, opts)?),
    })
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("abmod: {e}");
            if let Error::InsufficientPrecision { needed, .. } = &e {
                eprintln!("abmod: rerun with --precision {needed} or a higher ABMOD_MAX_PRECISION");
            }
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}

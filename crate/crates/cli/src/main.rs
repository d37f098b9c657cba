use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gbskit_core::group::{DEFAULT_MAX_BALL, DEFAULT_MAX_DIGITS};
use gbskit_core::{parse_graph, Error, ErrorClass, GbsGroup, Limits};
use serde_json::Value;

mod commands;
mod text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "gbskit", version, about = "Computations in generalized Baumslag-Solitar groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Conjugator search radius.
    #[arg(long, global = true, default_value_t = 3)]
    radius: usize,
    /// Number of sampled pairs for ses-check.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on enumerated conjugator balls.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BALL)]
    max_ball: usize,
    /// Cap on exponent size in decimal digits.
    #[arg(long, global = true, env = "GBSKIT_MAX_DIGITS", default_value_t = DEFAULT_MAX_DIGITS)]
    max_digits: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quasi-isometry class, reduced graph and Δ-image.
    Classify { graph: PathBuf },
    /// Canonical normal form of a word.
    Nf { graph: PathBuf, word: String },
    /// Translation length and elliptic/hyperbolic type.
    Tl { graph: PathBuf, word: String },
    /// Commensuration exponents (p, q) with w a^p w^-1 = a^q.
    Commens { graph: PathBuf, word: String },
    /// Exact value of the modular homomorphism.
    Modulus { graph: PathBuf, word: String },
    /// Twisted-conjugacy classes of the listed words under an automorphism.
    Twisted { graph: PathBuf, automorphism: String, words: PathBuf },
    /// R∞ certificate for an automorphism.
    Certify { graph: PathBuf, automorphism: String },
    /// Checks the projection to the free quotient against sampled twisted pairs.
    SesCheck { graph: PathBuf, automorphism: String },
    /// Counts conjugates of a word in growing Cayley balls.
    ConjGrowth { graph: PathBuf, word: String },
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Input { path: PathBuf, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input { .. } => 2,
            Failure::Core(e) => match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Automorphism => 3,
                ErrorClass::Precondition => 4,
                ErrorClass::Cap => 5,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Input { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input { path: path.to_path_buf(), message: e.to_string() })
}

fn load_group(path: &Path, limits: Limits) -> Result<GbsGroup, Failure> {
    let graph = parse_graph(&read(path)?).map_err(|e| match e {
        Error::Syntax { .. } | Error::LabelZero { .. } | Error::UnknownVertex { .. } | Error::DuplicateName { .. } => {
            Failure::Input { path: path.to_path_buf(), message: e.to_string() }
        }
        other => Failure::Core(other),
    })?;
    Ok(GbsGroup::new(graph)?.with_limits(limits))
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let limits = Limits { max_digits: cli.max_digits, max_ball: cli.max_ball };
    let opts = commands::Options { radius: cli.radius, samples: cli.samples, seed: cli.seed };
    match &cli.command {
        Command::Classify { graph } => commands::classify(&load_group(graph, limits)?),
        Command::Nf { graph, word } => commands::nf(&load_group(graph, limits)?, word),
        Command::Tl { graph, word } => commands::tl(&load_group(graph, limits)?, word),
        Command::Commens { graph, word } => commands::commens(&load_group(graph, limits)?, word),
        Command::Modulus { graph, word } => commands::modulus(&load_group(graph, limits)?, word),
        Command::Twisted { graph, automorphism, words } => {
            commands::twisted(&load_group(graph, limits)?, automorphism, words, &opts)
        }
        Command::Certify { graph, automorphism } => commands::certify(&load_group(graph, limits)?, automorphism),
        Command::SesCheck { graph, automorphism } => {
            commands::ses_check(&load_group(graph, limits)?, automorphism, &opts)
        }
        Command::ConjGrowth { graph, word } => commands::conj_growth(&load_group(graph, limits)?, word, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(value) => {
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("values serialize") + "\n",
                Format::Text => text::render(&value),
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

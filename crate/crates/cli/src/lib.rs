//! The `ssg` command line: solve, classify, generate and benchmark games stored in
//! the plain-text format of [`ssg_core::format`].

pub mod bench;
pub mod classify;
pub mod solve;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ssg_core::format::{parse, serialize};
use ssg_core::generate::{generate, Family, GeneratorSpec, KindWeights};
use ssg_core::{ErrorClass, Game, SsgError};

use solve::{Algorithm, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "ssg", version, about = "Exact solvers for simple stochastic games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute exact values (and optionally optimal strategies).
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Also print greedy optimal strategies.
        #[arg(long)]
        strategies: bool,
        /// Solve a stopping transform with chains of length M if the game is not
        /// stopping. Without M the chain length is 2n + ceil(log2 q).
        #[arg(long, value_name = "M", num_args = 0..=1)]
        make_stopping: Option<Option<usize>>,
        /// Largest feedback vertex set the FEEDBACK solver searches for.
        #[arg(long, default_value_t = 3)]
        fvs_max: usize,
    },
    /// Report the structural parameters of a game.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        fvs_max: usize,
    },
    /// Write a seeded random game.
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time solvers on generated instances.
    Bench {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "auto")]
        solvers: Vec<Algorithm>,
        #[arg(long, default_value_t = 1)]
        instances: usize,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        /// Use single cycles with this many average vertices (ignores --family).
        #[arg(long)]
        averages: Option<usize>,
        #[arg(long, default_value_t = 3)]
        fvs_max: usize,
        /// Also write the rows as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Random,
    Acyclic,
    SingleCycle,
    MaxAcyclic,
    DagPlusK,
    Caterpillar,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Random)]
    pub family: FamilyArg,
    /// Vertex count (chain length for the caterpillar).
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Feedback vertices for dag-plus-k.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Relative weights of max,min,ave,sink vertices.
    #[arg(long, value_parser = parse_weights, default_value = "1,1,1,1")]
    pub weights: KindWeights,
}

impl SpecArgs {
    pub fn to_spec(&self) -> GeneratorSpec {
        let family = match self.family {
            FamilyArg::Random => Family::Random,
            FamilyArg::Acyclic => Family::Acyclic,
            FamilyArg::SingleCycle => Family::SingleCycle,
            FamilyArg::MaxAcyclic => Family::MaxAcyclic,
            FamilyArg::DagPlusK => Family::DagPlusK(self.k),
            FamilyArg::Caterpillar => Family::Caterpillar,
        };
        GeneratorSpec { family, n: self.n, weights: self.weights, seed: self.seed }
    }
}

fn parse_weights(s: &str) -> Result<KindWeights, String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad weight `{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let [max, min, ave, sink] = parts[..] else {
        return Err(format!("expected four weights max,min,ave,sink, got {}", parts.len()));
    };
    Ok(KindWeights { max, min, ave, sink })
}

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Game(SsgError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Game(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<SsgError> for CliError {
    fn from(e: SsgError) -> Self {
        CliError::Game(e)
    }
}

impl CliError {
    /// 1 for bad input, 2 when a solver refuses the game, 3 for internal failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Game(e) => match e.class() {
                ErrorClass::Input => 1,
                ErrorClass::Precondition => 2,
                ErrorClass::Invariant => 3,
            },
        }
    }
}

fn read_game(path: &Path) -> Result<Game, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(parse(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Runs one command and returns what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve { file, algorithm, strategies, make_stopping, fvs_max } => {
            let game = read_game(&file)?;
            let opts = SolveOptions { algorithm, strategies, make_stopping, fvs_max };
            Ok(solve::report(&game, &opts)?)
        }
        Command::Classify { file, fvs_max } => Ok(classify::report(&read_game(&file)?, fvs_max)),
        Command::Generate { spec, output } => {
            let text = serialize(&generate(&spec.to_spec())?);
            match output {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Bench { spec, sizes, solvers, instances, repetitions, averages, fvs_max, csv } => {
            let plan = bench::BenchPlan {
                spec: spec.to_spec(),
                sizes,
                solvers,
                instances,
                repetitions,
                averages,
                fvs_max,
            };
            let rows = bench::run(&plan)?;
            if let Some(path) = csv {
                write_file(&path, &bench::csv(&rows))?;
            }
            Ok(bench::table(&rows))
        }
    }
}

//! `weyman`: sparse resultants and direct images from JSON files.
//!
//! JSON results go to stdout, summaries and diagnostics to stderr.
//! Exit codes: 0 success, 1 mathematical failure, 2 input error,
//! 3 resource limit.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "weyman", version, about = "Sparse resultants and direct images on toric varieties")]
pub struct Cli {
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for the random choices (index subsets, samples).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// `default` for -2K, or `vector:[a,b,...]` for a class.
    #[arg(long, global = true)]
    pub twist: Option<String>,
    /// Truncation exponents, `[e1,e2,...]` or `e1,e2,...`, one per maximal cone.
    #[arg(long = "e-min", global = true)]
    pub e_min: Option<String>,
    /// Raise the lattice point limit and run the stretch targets.
    #[arg(long, global = true)]
    pub heavy: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sparse resultant of the generic system with the given supports.
    Resultant { file: PathBuf },
    /// Weyman complex of a complex of free graded modules.
    DirectImage { file: PathBuf },
    /// Run the acceptance checks.
    Verify {
        #[arg(value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
    /// Administer the strand cache in the directory named by WEYMAN_CACHE_DIR.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Compute and store every strand a resultant problem needs.
    Warm { file: PathBuf },
    Stats,
    Clear,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

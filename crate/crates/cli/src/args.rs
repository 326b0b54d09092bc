use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rcsbr", version, about = "Forward-induction analysis of finite dynamic games")]
pub struct Cli {
    /// Print the report as JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include justifying beliefs for every claimed membership.
    #[arg(long, global = true)]
    pub certify: bool,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a game file, or a type-structure or state-space file against a game.
    Validate {
        path: PathBuf,
        /// Game the file refers to; without it `path` is read as a game.
        #[arg(long)]
        game: Option<PathBuf>,
    },
    /// Compute a solution concept.
    Solve { which: Concept, game: PathBuf },
    /// Rationality and common strong belief in rationality on a type structure.
    Rcsbr {
        game: PathBuf,
        structure: Option<PathBuf>,
        /// Use plain belief at the root (one-shot games only).
        #[arg(long)]
        rcbr: bool,
        /// Check this many random structures instead of reading one.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        /// Largest number of types per player in random structures.
        #[arg(long, default_value_t = 3)]
        max_types: usize,
    },
    /// Real types, closures and separating structures over a host.
    Real {
        game: PathBuf,
        state_space: Option<PathBuf>,
        /// Closure file; owners it omits get minimal closures.
        #[arg(long)]
        closures: Option<PathBuf>,
        /// Report the quadrant of the profile.
        #[arg(long)]
        classify: bool,
        /// Check the projection against the families its quadrant predicts.
        #[arg(long)]
        verify_prop1: bool,
        /// Check this many random hosts and state spaces instead of reading one.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_types: usize,
    },
    /// Build a host, state space and closures realising a target set, then re-check them.
    Construct {
        game: PathBuf,
        /// Target product set as JSON text or a path to a JSON file.
        #[arg(long)]
        target: String,
        /// One of common-degenerate, noncommon-degenerate, common-nondegenerate,
        /// noncommon-nondegenerate.
        #[arg(long)]
        quadrant: String,
        /// Directory for the emitted files.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Concept {
    Sr,
    Fsbrs,
    Mfsbrs,
    PInfinity,
    Fbrs,
}

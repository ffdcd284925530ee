use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "boundchain",
    version,
    about = "Optimal bounded and homologous chains on simplicial complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Complex file (.cplx)
    #[arg(long)]
    pub complex: PathBuf,
    /// Tree decomposition of the 1-skeleton (.td); built with --strategy when absent
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// Decomposition heuristic: min-fill, min-degree or exact-small
    #[arg(long, default_value = "min-fill")]
    pub strategy: String,
    /// Emit a JSON report
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum-weight chain with a given boundary
    SolveObcp {
        #[command(flatten)]
        common: Common,
        /// Target boundary (.chain)
        #[arg(long)]
        boundary: PathBuf,
        /// Weights on the solution's simplices (.w)
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Report non-cycles infeasible without running the tables
        #[arg(long)]
        check_cycle: bool,
    },
    /// Minimum-weight chain homologous to a given chain
    SolveOhcp {
        #[command(flatten)]
        common: Common,
        /// Input chain (.chain)
        #[arg(long)]
        chain: PathBuf,
        /// Weights on the chain's simplices (.w)
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Whether two chains are homologous (exit 2 when not)
    TestHomologous {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Whether a chain bounds (exit 2 when not)
    TestNullHomologous {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Tree decomposition of a complex's 1-skeleton
    BuildDecomposition {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value = "min-fill")]
        strategy: String,
        /// Output file; standard output when absent
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decomposition of the level-d Hasse graph from one of the 1-skeleton
    BuildHasseTd {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        td: PathBuf,
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Degrees, diameter, expansion and the related treewidth bounds of a Hasse graph
    HasseStats {
        /// Complex file; required unless --delta is given
        #[arg(long, required_unless_present = "delta")]
        complex: Option<PathBuf>,
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        /// Use the full complex on N vertices
        #[arg(long, conflicts_with = "complex")]
        delta: Option<usize>,
        /// Measure expansion and treewidth exhaustively
        #[arg(long)]
        exact_expansion: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive reference solvers
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Write random test instances
    Generate {
        #[arg(long)]
        seed: u64,
        /// Dimension of the solution chains
        #[arg(short = 'd', long = "dim", default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 14)]
        max_simplices: usize,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Obcp {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        boundary: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    Ohcp {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exact treewidth of the 1-skeleton, or of the level-d Hasse graph
    Tw {
        #[arg(long)]
        complex: PathBuf,
        #[arg(short = 'd', long = "dim")]
        dim: Option<usize>,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(long)]
        json: bool,
    },
}

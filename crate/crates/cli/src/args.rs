use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact insertion and deletion moves on lattice polytopes.
///
/// Exit status: 0 on success, 1 when a check or construction fails, 2 on
/// usage errors and malformed input.
#[derive(Debug, Parser)]
#[command(name = "lattice-moves", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convex hull of a point list, printed as polytope JSON.
    Hull {
        /// Point list JSON (a bare array or an object with `points`); `-` reads stdin.
        #[arg(long)]
        input: PathBuf,
    },
    /// Insertable points, deletable vertices and planar cells of a polytope.
    Moves(MovesArgs),
    /// Explicit polytope families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Move sequences between normal forms, printed as trace JSON.
    Path {
        #[command(subcommand)]
        kind: PathKind,
    },
    /// The move graph on the polytopes of [0,k]^d.
    Explore(ExploreArgs),
    /// Run the uniform-stationary Markov chain.
    Sample(SampleArgs),
    /// Run a verification suite; JSON report on stdout, table and progress on stderr.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Suppress progress and the table.
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Debug, Args)]
pub struct InputOpts {
    /// Accept unsorted or redundant vertex lists and canonicalize them.
    #[arg(long)]
    pub canonicalize: bool,
}

#[derive(Debug, Args)]
pub struct MovesArgs {
    /// Polytope JSON; `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// Box size k; insertable points are listed inside [0,k]^d.
    #[arg(long = "box")]
    pub k: Option<i64>,
    #[arg(long)]
    pub list_insertable: bool,
    #[arg(long)]
    pub list_deletable: bool,
    /// Whole-plane insertable cells (d = 2 only).
    #[arg(long)]
    pub cells2d: bool,
    #[command(flatten)]
    pub opts: InputOpts,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// The origin and the unit vectors.
    Corner {
        #[arg(long)]
        dim: usize,
        #[arg(long = "box", default_value_t = 1)]
        k: i64,
    },
    /// Polygon with n vertices in which no lattice point can be inserted.
    Pn {
        #[arg(long)]
        n: usize,
    },
    /// Empty (k+1)-simplex in [0,k]^(k+1).
    EmptySimplex {
        #[arg(long)]
        k: i64,
    },
    /// Product of empty simplices where every box point is insertable or deletable.
    Saturating {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: i64,
    },
    /// Cartesian product of two polytopes.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        opts: InputOpts,
    },
}

#[derive(Debug, Subcommand)]
pub enum PathKind {
    /// Alternating moves from a simplex to the corner simplex inside [0,k]^d.
    SimplexToCorner {
        simplex: PathBuf,
        #[arg(long = "box")]
        k: i64,
        #[command(flatten)]
        opts: InputOpts,
    },
    /// Flatten a pentagon, make it strongly flat, then shear it oblique.
    PentagonPipeline {
        pentagon: PathBuf,
        #[command(flatten)]
        opts: InputOpts,
    },
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long = "box")]
    pub k: i64,
    /// Comma-separated vertex counts; both ends of every edge must match.
    #[arg(long, value_delimiter = ',')]
    pub vertices: Option<Vec<usize>>,
    /// Write the graph as JSONL.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the graph as DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Print the number of connected components.
    #[arg(long)]
    pub components: bool,
    /// Print the move distance between two polytopes of the graph.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub distance: Option<Vec<PathBuf>>,
    /// Directory for the graph cache.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[command(flatten)]
    pub opts: InputOpts,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long = "box")]
    pub k: i64,
    #[arg(long)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub burnin: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the histogram as CSV (`canonical_key,count`).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Suite {
    #[value(name = "connectivity-2d")]
    Connectivity2d,
    #[value(name = "connectivity-3d")]
    Connectivity3d,
    SimplexInsertion,
    PnFamily,
    Products,
    Saturating,
    #[value(name = "impossibility-2d")]
    Impossibility2d,
    PentagonPipeline,
    SamplerUniformity,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

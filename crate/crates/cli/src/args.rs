use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "inscriber", version, about = "Exact inscribed realizations of stacked polytopes")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Master seed for randomized sweeps.
    #[arg(long, global = true, env = "INSCRIBER_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Scale of the initial simplex, as "p/q".
    #[arg(long, global = true, default_value = "1")]
    pub scale: String,
    /// Maximum number of halvings in point searches.
    #[arg(long, global = true, default_value_t = 256)]
    pub halving_cap: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the stacked polytope with a given dual tree is inscribable.
    Decide {
        tree: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a verified Delaunay triangulation and inscribed polytope.
    Build(BuildArgs),
    /// Check a polytope or triangulation file exactly.
    Verify {
        file: PathBuf,
        /// "inscribed" or "delaunay:<1..4>"; defaults by file type.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Generate inscribed cyclic polytopes or f-vector tables.
    #[command(subcommand)]
    Generate(Generate),
    /// Random obstruction sweep for a tree with a node of degree at least four.
    Certify {
        tree: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Write the full report as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate export for viewers.
    Export {
        polytope: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Off)]
        format: ExportFormat,
        #[arg(long, default_value_t = 6)]
        digits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// plan.json or tree.json.
    pub input: Option<PathBuf>,
    /// Leaf of the tree whose simplex carries the north pole.
    #[arg(long)]
    pub root: Option<usize>,
    /// Build the path construction with this many inserted points.
    #[arg(long, conflicts_with = "input")]
    pub path: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    Cyclic {
        #[arg(long, value_enum, default_value_t = Method::Spherical)]
        method: Method,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated curve parameters (spherical: positive; trig: half-angle tangents).
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
        #[arg(long, default_value = "polytope.json")]
        out: PathBuf,
    },
    Fvectors {
        #[arg(long)]
        f0_max: u64,
        #[arg(long, default_value = "fvectors.csv")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Standard,
    Spherical,
    Trig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Off,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "satmat", version)]
#[command(about = "Containment, saturation and semisaturation of 0-1 matrix patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A pattern or host source: a file path, or `@NAME` for a built-in pattern
/// (`@I3`, `@I'3`, `@J4`, `@J'4`, `@Q`, `@Q'`, `@Q''`).
#[derive(Args, Debug, Clone)]
pub struct PatternArg {
    /// Pattern file, or @NAME for a built-in pattern
    #[arg(long)]
    pub pattern: String,
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArg {
    /// Host matrix file
    #[arg(long)]
    pub matrix: String,
}

#[derive(Args, Debug, Clone)]
pub struct DimsArg {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
}

#[derive(Args, Debug, Clone, Default)]
pub struct BudgetArg {
    /// Maximum number of search nodes
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Maximum wall-clock seconds
    #[arg(long)]
    pub budget_seconds: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Identity,
    IdentityReflected,
    Jk,
    JkReflected,
    Q,
    QPrime,
    QDoublePrime,
    /// `[0 I_{k-1}; I'_{l+1} 0]`
    Block,
    /// Frame around a pattern 1 (needs --pattern, --rows, --cols)
    Frame,
    /// All-1 corner blocks (needs --pattern, --rows, --cols)
    Corner,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Ik,
    Jk,
    Dichotomy,
    Ssat,
    Extendcorner,
    Witness,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Does the matrix contain the pattern?
    Contains {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// List occurrences in lexicographic order
    Occurrences {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        matrix: MatrixArg,
        /// Stop after this many occurrences
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Minimum weight of a saturating matrix
    Sat {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        dims: DimsArg,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Minimum weight of a semisaturating matrix
    Ssat {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        dims: DimsArg,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Maximum weight of an avoiding matrix
    Ex {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        dims: DimsArg,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Bounded or linear saturation function (best effort)
    Classify {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bounded or linear semisaturation function (decided exactly)
    SsatClassify {
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Build a named pattern or a construction for a pattern
    Construct {
        #[arg(long, value_enum)]
        name: Construction,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// 1-based pattern entry used as the frame pivot, as ROW,COL
        #[arg(long)]
        pivot: Option<String>,
    },
    /// Extremal staircase of a matrix
    Staircase {
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Level structure of a matrix saturating for J'_k
    Levels {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        k: usize,
    },
    /// Check that a matrix witnesses a bounded saturation function
    WitnessCheck {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Search corner-block skeletons for a witness
    WitnessSearch {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest corner block side
        #[arg(long, default_value_t = 10)]
        max_block: usize,
        /// Largest host side
        #[arg(long, default_value_t = 23)]
        max_size: usize,
        /// Scan orders per skeleton
        #[arg(long, default_value_t = 100)]
        restarts: usize,
    },
    /// Grow a witness by inserting empty rows and columns
    Pump {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        t: usize,
    },
    /// Add an all-1 last row and column to a saturating matrix
    Extend {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Remove the extremal staircase of a saturating matrix
    Reduce {
        #[command(flatten)]
        pattern: PatternArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Run the verification suite
    Verify {
        #[arg(value_enum, default_value_t = Scope::All)]
        scope: Scope,
        /// Wall-clock budget of the witness search for Q
        #[arg(long, default_value_t = 600.0)]
        budget_seconds: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Contains { .. } => "contains",
            Command::Occurrences { .. } => "occurrences",
            Command::Sat { .. } => "sat",
            Command::Ssat { .. } => "ssat",
            Command::Ex { .. } => "ex",
            Command::Classify { .. } => "classify",
            Command::SsatClassify { .. } => "ssat-classify",
            Command::Construct { .. } => "construct",
            Command::Staircase { .. } => "staircase",
            Command::Levels { .. } => "levels",
            Command::WitnessCheck { .. } => "witness-check",
            Command::WitnessSearch { .. } => "witness-search",
            Command::Pump { .. } => "pump",
            Command::Extend { .. } => "extend",
            Command::Reduce { .. } => "reduce",
            Command::Verify { .. } => "verify",
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lpa-matrix", version, about = "Exact adjacency-matrix analysis of directed multigraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Graph JSON file.
    #[arg(long, short, global = true, conflicts_with = "graph")]
    pub input: Option<PathBuf>,
    /// Graph JSON given inline.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest vertex count for lattice and series computations.
    #[arg(long, global = true)]
    pub cap_lattice: Option<usize>,
    /// Largest vertex count for the cycle census.
    #[arg(long, global = true)]
    pub cap_census: Option<usize>,
    /// Largest estimated number of monomials to enumerate.
    #[arg(long, global = true)]
    pub cap_monomials: Option<u128>,
    /// Seed for `selftest`.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Summary, lattice, series, aperiodicity and cycle count in one report.
    Analyze {
        /// Also include exitless cycles, block forms and monomial counts.
        #[arg(long)]
        all: bool,
    },
    /// Hereditary saturated sets and their cover relation.
    Ideals {
        /// Classify one vertex set, e.g. `v1,v2`.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
    },
    /// A composition series and its nested block form.
    Series,
    /// Period, aperiodicity and aperiodic index.
    Aperiodicity {
        /// Fail unless the graph is strongly connected and aperiodic; also
        /// expands every vertex to the index level.
        #[arg(long)]
        strict: bool,
    },
    /// Cycle counts through cyclic permutations.
    Cycles {
        #[arg(long)]
        total: bool,
        /// Every cyclic arrangement with its product.
        #[arg(long)]
        census: bool,
        #[arg(long)]
        acyclic_report: bool,
        /// Cycles without exits with their block forms.
        #[arg(long)]
        exitless: bool,
    },
    /// Degree-k monomial counts.
    Paths {
        #[arg(long)]
        k: usize,
        /// Also enumerate the monomials and compare.
        #[arg(long)]
        oracle: bool,
        /// Include the norm table.
        #[arg(long)]
        table: bool,
    },
    /// Expansion in the talented monoid.
    Talented {
        /// Check the level-k expansion of every vertex.
        #[arg(long, value_name = "K")]
        verify_shift: Option<u32>,
        /// Expand one vertex to level k.
        #[arg(long, num_args = 2, value_names = ["VERTEX", "K"])]
        coefficients: Option<Vec<String>>,
    },
    /// Recompute the built-in worked examples.
    PaperExamples,
    /// Randomized agreement checks against brute-force enumeration.
    Selftest {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Ideals { .. } => "ideals",
            Command::Series => "series",
            Command::Aperiodicity { .. } => "aperiodicity",
            Command::Cycles { .. } => "cycles",
            Command::Paths { .. } => "paths",
            Command::Talented { .. } => "talented",
            Command::PaperExamples => "paper-examples",
            Command::Selftest { .. } => "selftest",
        }
    }

    pub fn needs_graph(&self) -> bool {
        !matches!(self, Command::PaperExamples | Command::Selftest { .. })
    }
}

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "matdec", version)]
#[command(
    about = "Binary matroid toolkit: connectivity, growth, minors and decomposer certification"
)]
struct Cli {
    /// Worker threads for candidate enumeration (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Row-reduce matroid files whose leading columns are not an identity
    #[arg(long, global = true)]
    standardize: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct GrowthArgs {
    /// Catalog key or matroid file
    source: String,

    /// Column (extend) or row (coextend) as a bit string, e.g. 110011
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    vector: Option<String>,

    /// List every simple extension / cosimple coextension, grouped by isomorphism class
    #[arg(long)]
    all: bool,

    /// With --all, keep only results inside this class
    #[arg(long, requires = "all")]
    in_class: Option<String>,

    /// Write the resulting matroid file here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Size, rank, simplicity, connectivity and circuit census
    Info {
        /// Catalog key or matroid file
        source: String,
    },
    /// Connectivity function of a set and its separation class
    Lambda {
        source: String,
        /// Comma-separated element ids
        #[arg(long)]
        set: String,
        /// Separation orders to classify against
        #[arg(long, value_delimiter = ',', default_value = "3")]
        k: Vec<usize>,
    },
    /// Single-element extension by a column
    Extend(GrowthArgs),
    /// Single-element coextension by a row
    Coextend(GrowthArgs),
    /// Search for a minor isomorphic to a target
    Minor {
        source: String,
        /// Catalog key or matroid file of the target
        #[arg(long)]
        target: String,
    },
    /// Isomorphism test
    Iso { first: String, second: String },
    /// Certify a k-decomposer
    Check {
        source: String,
        /// Comma-separated ids of the side A
        #[arg(long)]
        side: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Minor-closed class: regular or all-binary
        #[arg(long, default_value = "regular")]
        class: String,
        /// Certification method (see the methods subcommand)
        #[arg(long, default_value = matdec::decomposer::DEFAULT_METHOD)]
        method: String,
        /// Check growths whose parents both keep λ(A) = k − 1 instead of skipping them
        #[arg(long)]
        no_prune: bool,
        /// Compare every verdict against the circuit oracle
        #[arg(long)]
        cross_validate: bool,
        /// Require every applicable case of condition (iii) to hold
        #[arg(long)]
        strict_cases: bool,
        /// Include the coextension/extension tables in the report
        #[arg(long)]
        tables: bool,
        /// Write the full report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Report format; defaults to json for a .json path, markdown otherwise
        #[arg(long)]
        report_format: Option<String>,
        /// Witnesses shown per failing condition (0 shows all)
        #[arg(long, default_value_t = 5)]
        witnesses: usize,
    },
    /// List the registered certification methods
    Methods,
    /// Regenerate a published worked example
    Reproduce {
        /// r12 or counterexample
        scenario: String,
        /// Write the document here instead of standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// How a successful run ended.
pub enum Outcome {
    Positive,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

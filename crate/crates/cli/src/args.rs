use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tracecode::analysis::{DEFAULT_SAMPLES_PER_CLASS, DEFAULT_SEED, DEFAULT_WORK_BUDGET};
use tracecode::Variant;

#[derive(Debug, Parser)]
#[command(
    name = "tracecode",
    version,
    about = "Weight distributions and bounds for trace codes over F_p + uF_p + vF_p + uvF_p"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight distribution, predictions, Griesmer and minimality verdicts.
    Analyze(AnalyzeArgs),
    /// Minimum Lee distance of the dual code.
    Dual(DualArgs),
    /// Character-sum identities and the field subcode.
    Verify(VerifyArgs),
    /// Gray images of chosen codewords as raw bytes plus a JSON sidecar.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Exhaustive when within the work budget, else class-based.
    Auto,
    Exhaustive,
    Class,
    /// Exhaustive over the maximal ideal, sampled over the units.
    Ideal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct CodeArgs {
    #[arg(short = 'p', long = "prime")]
    pub p: u64,
    #[arg(short = 'm', long = "degree")]
    pub m: usize,
    #[arg(short = 'N', long = "order", default_value_t = 1)]
    pub order: u64,
    #[arg(long, default_value_t = Variant::Lift)]
    pub variant: Variant,
    /// Constant-first coefficients of the field modulus, e.g. 2,1,1.
    #[arg(long)]
    pub modulus: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

impl CodeArgs {
    pub fn new(p: u64, m: usize, order: u64, variant: Variant) -> CodeArgs {
        CodeArgs { p, m, order, variant, modulus: None, seed: DEFAULT_SEED, output: None }
    }
}

#[derive(Clone, Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Members checked per class by the class-based method.
    #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_CLASS)]
    pub samples: usize,
    /// Sampled units for the ideal method.
    #[arg(long, default_value_t = 1000)]
    pub unit_samples: usize,
    /// Largest codewords × coordinates product enumerated exhaustively.
    #[arg(long, env = "TRACECODE_WORK_BUDGET", default_value_t = DEFAULT_WORK_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Skip the dual distance search.
    #[arg(long)]
    pub no_dual: bool,
}

impl AnalyzeArgs {
    pub fn new(code: CodeArgs, method: MethodArg) -> AnalyzeArgs {
        AnalyzeArgs {
            code,
            method,
            samples: DEFAULT_SAMPLES_PER_CLASS,
            unit_samples: 1000,
            budget: DEFAULT_WORK_BUDGET,
            format: Format::Json,
            no_dual: false,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct DualArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Weights below this are searched exhaustively (2 or 3).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub cap: u32,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Random inputs per identity.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Also brute-force the field subcode and compare with its tables.
    #[arg(long)]
    pub subcode: bool,
}

impl VerifyArgs {
    pub fn new(code: CodeArgs) -> VerifyArgs {
        VerifyArgs { code, trials: 100, subcode: false }
    }
}

#[derive(Clone, Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Comma-separated ring-element indices r, (a, b, c, d) lexicographic.
    #[arg(long, value_delimiter = ',', required = true)]
    pub rows: Vec<u64>,
}

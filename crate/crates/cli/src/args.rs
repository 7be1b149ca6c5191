use bintri::{Rational, TriangleSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "bintri",
    version,
    about = "Binomial interpolated triangles over exact rationals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Number of rows to build (command-specific default).
    #[arg(long, global = true)]
    pub rows: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Bfile,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a triangle, or one of its derived sequences with --sequence.
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        sequence: Option<SequenceArg>,
        /// Column offset for --sequence column.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ell: i64,
    },
    /// A derived sequence with its recurrence coefficients.
    Sequence {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        kind: SequenceArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ell: i64,
    },
    /// Interpolated binomial transform of a comma-separated list of terms.
    Transform {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
        #[arg(long, allow_hyphen_values = true)]
        u: Rational,
        #[arg(long, allow_hyphen_values = true)]
        v: Rational,
    },
    /// Symmetry and sum-of-above classification.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Run every identity and recurrence check; exit 2 if any fails.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        /// Overwrite entry (n, k) before checking, given as "n,k,value".
        #[arg(long, hide = true, allow_hyphen_values = true)]
        inject: Option<String>,
    },
    /// Match a derived sequence against the embedded OEIS prefixes.
    OeisMatch {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = MatchTarget::LeftDiagonal)]
        sequence: MatchTarget,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ell: i64,
    },
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub u: Rational,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Rational,
    /// Accept a0 = a1 = 0 (the all-zero triangle).
    #[arg(long)]
    pub allow_trivial: bool,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<TriangleSpec, CliError> {
        let (a0, a1) = (self.a0.clone(), self.a1.clone());
        let (alpha, beta) = (self.alpha.clone(), self.beta.clone());
        let (u, v) = (self.u.clone(), self.v.clone());
        let spec = if self.allow_trivial {
            TriangleSpec::new_allow_trivial(a0, a1, alpha, beta, u, v)
        } else {
            TriangleSpec::new(a0, a1, alpha, beta, u, v)
        };
        Ok(spec?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SequenceArg {
    #[value(alias = "rowsum")]
    RowSum,
    #[value(alias = "altsum")]
    AltSum,
    #[value(alias = "risingdiag")]
    RisingDiag,
    Column,
    #[value(alias = "leftdiag")]
    LeftDiagonal,
    #[value(alias = "rightdiag")]
    RightDiagonal,
}

/// What `oeis-match` compares: a derived sequence or the flattened triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatchTarget {
    #[value(alias = "rowsum")]
    RowSum,
    #[value(alias = "altsum")]
    AltSum,
    #[value(alias = "risingdiag")]
    RisingDiag,
    Column,
    #[value(alias = "leftdiag")]
    LeftDiagonal,
    #[value(alias = "rightdiag")]
    RightDiagonal,
    /// Entries read by rows.
    #[value(alias = "rows")]
    Triangle,
}

impl MatchTarget {
    pub fn sequence(self) -> Option<SequenceArg> {
        Some(match self {
            MatchTarget::RowSum => SequenceArg::RowSum,
            MatchTarget::AltSum => SequenceArg::AltSum,
            MatchTarget::RisingDiag => SequenceArg::RisingDiag,
            MatchTarget::Column => SequenceArg::Column,
            MatchTarget::LeftDiagonal => SequenceArg::LeftDiagonal,
            MatchTarget::RightDiagonal => SequenceArg::RightDiagonal,
            MatchTarget::Triangle => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
}

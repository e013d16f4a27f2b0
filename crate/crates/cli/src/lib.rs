//! Library behind the `chanprob` binary: CSV ingestion, naive Bayes
//! fitting/classification, query dispatch and rendering.

pub mod ingest;
pub mod model;
pub mod query;
pub mod render;

use std::fmt;

/// Errors surfaced by the command-line layer.
///
/// `exit_code` maps them to the process exit convention: 2 for validation
/// or parse problems, 3 for math failures (zero validity, empty support).
#[derive(Debug)]
pub enum CliError {
    Core(chanprob::Error),
    Io { path: String, message: String },
    Csv(String),
    EmptyTable,
    RaggedRow { row: usize, expected: usize, found: usize },
    MixedColumn { name: String },
    UnknownColumn { name: String },
    NumericClassColumn { name: String },
    EmptyClass { label: String },
    TooFewRowsForGaussian { feature: String, class: String },
    ZeroVariance { feature: String, class: String },
    IncompleteOverride { feature: String, class: String },
    OverrideWithoutHybrid { feature: String },
    ObservationArity { expected: usize, found: usize },
    BadObservationValue { feature: String, value: String },
    HybridTupling,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "cannot read `{path}`: {message}"),
            CliError::Csv(message) => write!(f, "csv error: {message}"),
            CliError::EmptyTable => write!(f, "the table has no data rows"),
            CliError::RaggedRow {
                row,
                expected,
                found,
            } => write!(f, "row {row} has {found} cells, expected {expected}"),
            CliError::MixedColumn { name } => write!(
                f,
                "column `{name}` mixes numeric and symbolic cells"
            ),
            CliError::UnknownColumn { name } => write!(f, "no column named `{name}`"),
            CliError::NumericClassColumn { name } => {
                write!(f, "class column `{name}` must be symbolic, not numeric")
            }
            CliError::EmptyClass { label } => {
                write!(f, "class `{label}` has no rows")
            }
            CliError::TooFewRowsForGaussian { feature, class } => write!(
                f,
                "feature `{feature}` needs at least 2 rows of class `{class}` to fit a gaussian"
            ),
            CliError::ZeroVariance { feature, class } => write!(
                f,
                "feature `{feature}` is constant within class `{class}`; cannot fit a gaussian"
            ),
            CliError::IncompleteOverride { feature, class } => write!(
                f,
                "gaussian override for feature `{feature}` is missing class `{class}`"
            ),
            CliError::OverrideWithoutHybrid { feature } => write!(
                f,
                "gaussian override for `{feature}` requires --hybrid"
            ),
            CliError::ObservationArity { expected, found } => write!(
                f,
                "observation has {found} values, expected {expected}"
            ),
            CliError::BadObservationValue { feature, value } => write!(
                f,
                "feature `{feature}` expects a numeric observation, got `{value}`"
            ),
            CliError::HybridTupling => {
                write!(f, "hybrid models have no finite tupled channel")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<chanprob::Error> for CliError {
    fn from(e: chanprob::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 for validation errors, 3 for math errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_math() => 3,
            _ => 2,
        }
    }
}

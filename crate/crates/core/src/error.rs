use thiserror::Error;

/// Errors raised by state, channel and inference operations.
///
/// Variants split into two families: malformed inputs (spaces, masks,
/// labels, text syntax) and math failures (zero validity, empty support),
/// so callers can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space `{space}` needs at least one label")]
    EmptySpace { space: String },

    #[error("space `{space}` has duplicate label `{label}`")]
    DuplicateLabel { space: String, label: String },

    #[error("unknown label `{label}` for wire `{space}`")]
    UnknownLabel { space: String, label: String },

    #[error("dimension mismatch: expected {expected}, got {found}{}", context_suffix(.context))]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    #[error("spaces do not match{}", context_suffix(.context))]
    SpaceMismatch { context: &'static str },

    #[error("mask has {found} bits but the state has {expected} wires")]
    MaskLength { expected: usize, found: usize },

    #[error("masks overlap on wire {wire}")]
    MaskOverlap { wire: usize },

    #[error("mask selects no wires")]
    EmptyMask,

    #[error("degenerate mask: disintegration needs both input and output wires")]
    DegenerateMask,

    #[error("tuple arity {found} does not match the {expected} wires of the space")]
    TupleArity { expected: usize, found: usize },

    #[error("negative or non-finite weight {value} at index {index}")]
    InvalidWeight { value: f64, index: usize },

    #[error("cannot build a state from an empty row set")]
    EmptyRows,

    #[error("input `{input}` has zero mass and the fill policy forbids filling")]
    ZeroMassInput { input: String },

    #[error("conditioning undefined: validity {validity} is not above {eps}")]
    ZeroValidity { validity: f64, eps: f64 },

    #[error("cannot normalise: total mass {mass} is not above {eps}")]
    NotNormalizable { mass: f64, eps: f64 },

    #[error("all features assign zero likelihood to the observation")]
    AllFeaturesImpossible,

    #[error("standard deviation must be positive and finite, got {stddev}")]
    InvalidStddev { stddev: f64 },

    #[error("quadrature needs an even subinterval count >= 2, got {n}")]
    BadQuadratureCount { n: usize },

    #[error("quadrature needs lo < hi, got [{lo}, {hi}]")]
    BadQuadratureBounds { lo: f64, hi: f64 },

    #[error("density for `{label}` integrates to {integral}, not 1")]
    UnnormalizedDensity { label: String, integral: f64 },

    #[error("{what}: parse error at byte {position}: {message}")]
    Parse {
        what: &'static str,
        position: usize,
        message: String,
    },
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

impl Error {
    /// True for failures of the math (empty support, zero validity) rather
    /// than of the input syntax or shapes.
    pub fn is_math(&self) -> bool {
        matches!(
            self,
            Error::ZeroMassInput { .. }
                | Error::ZeroValidity { .. }
                | Error::NotNormalizable { .. }
                | Error::AllFeaturesImpossible
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

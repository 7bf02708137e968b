use thiserror::Error;

/// Which half of a formal context an index or name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Objects,
    Attributes,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Objects => f.write_str("object"),
            Side::Attributes => f.write_str("attribute"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8")]
    InvalidUtf8,

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("dimension mismatch: declared {declared} {what}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },

    #[error("line {line}: illegal incidence character {found:?}")]
    IllegalCell { line: usize, found: String },

    #[error("duplicate {side} name {name:?}")]
    DuplicateName { side: Side, name: String },

    #[error("unknown {side} name {name:?}")]
    UnknownName { side: Side, name: String },

    #[error("{side} index {index} out of range (context has {bound})")]
    IndexOutOfRange { side: Side, index: usize, bound: usize },

    #[error("scale size must be at least 1")]
    EmptyScale,

    #[error("concept capacity of {cap} exceeded after {enumerated} concepts")]
    CapacityExceeded { cap: usize, enumerated: usize },

    #[error("relative relevance is undefined: total extent mass is zero")]
    DegenerateRelevance,

    #[error("context is not attribute clarified: attributes {0} and {1} have equal extents")]
    NotClarified(usize, usize),

    #[error("entropy is undefined for a context without objects")]
    EmptyObjectSet,

    #[error("entropic relevance approximation is undefined: context entropy is zero")]
    DegenerateEntropy,

    #[error("subset size {size} out of range 1..={max}")]
    SizeOutOfRange { size: usize, max: usize },

    #[error("{candidates} candidate subsets exceed the combinatorial guard of {guard}")]
    CombinatorialGuard { candidates: u128, guard: u128 },

    #[error("number of random trials must be at least 1")]
    NoTrials,

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// A short stable name for the error, used as the marker in experiment
    /// output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidUtf8 => "invalid-utf8",
            Error::Malformed { .. } => "malformed",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::IllegalCell { .. } => "illegal-cell",
            Error::DuplicateName { .. } => "duplicate-name",
            Error::UnknownName { .. } => "unknown-name",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::EmptyScale => "empty-scale",
            Error::CapacityExceeded { .. } => "capacity-exceeded",
            Error::DegenerateRelevance => "degenerate-relevance",
            Error::NotClarified(..) => "not-clarified",
            Error::EmptyObjectSet => "empty-object-set",
            Error::DegenerateEntropy => "degenerate-entropy",
            Error::SizeOutOfRange { .. } => "size-out-of-range",
            Error::CombinatorialGuard { .. } => "combinatorial-guard",
            Error::NoTrials => "no-trials",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

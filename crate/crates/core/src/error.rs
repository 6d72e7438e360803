use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by curve construction and the analyses.
#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite or otherwise invalid numeric input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A curve degenerated below what the operation can handle
    /// (zero length, vanishing derivative, too few nodes, ...).
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    /// Biarc construction failed at a specific node pair.
    #[error("biarc construction failed at node {node}: {reason}")]
    Biarc { node: usize, reason: String },

    /// Valley tracking lost the contact valley or broke monotonicity.
    #[error("contact tracking failed at sample {index}: {reason}")]
    Tracking { index: usize, reason: String },

    /// A cycle/partition operation received input with the wrong structure.
    #[error("cycle structure error: {0}")]
    CycleStructure(String),

    /// The requested scan size exceeds a guard rail.
    #[error("scan size {n} exceeds limit {limit}")]
    ScanTooLarge { n: usize, limit: usize },

    /// Text parse failure with 1-based line number.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Unknown export table kind.
    #[error("unknown export kind: {0}")]
    UnknownExportKind(String),

    /// No symmetry of the requested kind could be fitted.
    #[error("no symmetry detected: {0}")]
    NoSymmetry(String),
}

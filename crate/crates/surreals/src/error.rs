use thiserror::Error;

/// Errors produced by kernel operations.
///
/// Failures of *verification* (a witness check that does not pass) are not
/// errors; they are data carried by the report types in [`crate::cuts`] and
/// [`crate::verify`]. An `Error` always means the requested computation itself
/// is out of domain or out of the implemented fragment.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A sign sequence does not encode a dyadic rational.
    #[error("not a dyadic rational: {0}")]
    NotDyadic(String),

    /// A value cannot be rendered as a sign sequence
    /// (for example, a normal form with a non-dyadic coefficient).
    #[error("unsupported rendering: {0}")]
    UnsupportedRendering(String),

    /// The option sets of a cut overlap: some left option is >= some right option.
    #[error("overlapping cut: {0}")]
    OverlappingCut(String),

    /// The operation is undefined at zero.
    #[error("zero argument: {0}")]
    ZeroArgument(String),

    /// A recursive evaluation over sampled options failed its acceptance
    /// self-check; no value is returned rather than a possibly wrong one.
    #[error("unresolved recursion: {0}")]
    UnresolvedRecursion(String),

    /// exp/log fragment restriction: arguments with a nonzero real part
    /// (or a monomial coefficient other than 1) are not supported.
    #[error("unsupported real part: {0}")]
    UnsupportedRealPart(String),

    /// A recursion depth limit was exceeded.
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),

    /// Text input could not be parsed; `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse {
        /// Byte offset of the failure in the input string.
        pos: usize,
        /// Human-readable description of what was expected.
        msg: String,
    },
}

/// Convenience alias for kernel results.
pub type Result<T> = std::result::Result<T, Error>;

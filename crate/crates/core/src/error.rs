use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid signature ({p},{q}): p+q must be at least 1")]
    InvalidSignature { p: usize, q: usize },

    #[error("signature mismatch: ({},{}) vs ({},{})", .left.0, .left.1, .right.0, .right.1)]
    SignatureMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("malformed signed diagram {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("sign count mismatch: diagram has {plus} '+' and {minus} '-' boxes but signature is ({p},{q})")]
    SignCount {
        plus: usize,
        minus: usize,
        p: usize,
        q: usize,
    },

    #[error("even nilpotent required: partition {0} mixes odd and even parts")]
    OddPartition(String),

    #[error("zero triple: x = 0 has no limit direction")]
    ZeroTriple,

    #[error("matrix is not in s: it must be block off-diagonal for signature ({p},{q})")]
    NotInS { p: usize, q: usize },

    #[error("no signed diagram of signature ({p},{q}) has the computed rank profile")]
    UnmatchedProfile { p: usize, q: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

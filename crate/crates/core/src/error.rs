use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} appears in more than one block")]
    Overlap { element: usize },

    #[error("blocks do not cover [1..{n}]: {detail}")]
    Cover { n: usize, detail: String },

    #[error("empty block")]
    EmptyBlock,

    #[error("{what}: n = {n} exceeds the supported limit {max}")]
    Limit {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("{0}")]
    Range(String),

    #[error("ground sets differ: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("invalid element pair ({i}, {j}) for n = {n}")]
    Element { i: usize, j: usize, n: usize },

    #[error("invalid restricted-growth sequence: {0}")]
    InvalidRgs(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: member has n = {found}, header says n = {expected}")]
    HeaderMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: duplicate member {member}")]
    DuplicateMember { line: usize, member: String },

    #[error("family is empty")]
    EmptyFamily,

    #[error("family is not {t}-intersecting: {left} and {right} share {shared} blocks")]
    NotIntersecting {
        t: usize,
        left: String,
        right: String,
        shared: usize,
    },

    #[error("premise not met: {0}")]
    PremiseNotMet(String),

    #[error("unknown lemma `{0}` (expected less, less02, less03 or eq5)")]
    UnknownLemma(String),

    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Anchors a partition-level error at a line of a family file.
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            Error::HeaderMismatch {
                expected, found, ..
            } => Error::HeaderMismatch {
                line,
                expected,
                found,
            },
            e @ (Error::DuplicateMember { .. } | Error::AtLine { .. }) => e,
            other => Error::AtLine {
                line,
                inner: Box::new(other),
            },
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

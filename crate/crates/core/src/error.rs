use thiserror::Error;

/// Why a Cayley table failed the group axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDefect {
    NotSquare,
    EntryOutOfRange { row: usize, col: usize },
    NoIdentity,
    NoInverse { element: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for GroupDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDefect::NotSquare => write!(f, "table is not square"),
            GroupDefect::EntryOutOfRange { row, col } => {
                write!(f, "entry ({row}, {col}) out of range")
            }
            GroupDefect::NoIdentity => write!(f, "no two-sided identity"),
            GroupDefect::NoInverse { element } => write!(f, "element {element} has no inverse"),
            GroupDefect::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input is well formed but fails a mathematical validation.
    Validation,
    /// The input could not be read or does not match the schema.
    Input,
    /// An internal consistency assertion failed.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(GroupDefect),
    #[error("generator {index} is not a permutation: {reason}")]
    NotAPermutation { index: usize, reason: String },
    #[error("group closure exceeds the order cap {cap}")]
    ClosureTooLarge { cap: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: u64, n: u64 },

    #[error("rows {i} and {j} violate the orthogonality relations")]
    OrthogonalityFailure { i: usize, j: usize },
    #[error("row {0}: identity value does not equal the stated degree")]
    DegreeMismatch(usize),
    #[error("table has {rows} rows of length {width} but the group has {classes} classes")]
    ClassCountMismatch {
        classes: usize,
        rows: usize,
        width: usize,
    },
    #[error("Galois conjugate of row {row} under sigma_{k} is missing from the table")]
    OrbitNotInTable { row: usize, k: u64 },
    #[error("kernel of row {0} is not a subgroup")]
    NotASubgroup(usize),
    #[error("idempotent of rational class {0} fails e*e = e")]
    NotIdempotent(usize),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("unsupported built-in family: {0}")]
    UnsupportedFamily(String),

    #[error("action is not a homomorphism at ({g}, {h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("matrix of element {g} does not preserve the symplectic form (entry {row}, {col})")]
    NotSymplectic { g: usize, row: usize, col: usize },
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("alternating form is degenerate (rank {rank} of {size})")]
    Degenerate { rank: usize, size: usize },
    #[error("form has odd size {0}")]
    OddRank(usize),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("elementary divisors {0:?} do not pair up")]
    DivisorsDoNotPair(Vec<String>),
    #[error("norm endomorphism is not integral")]
    NonIntegral,
    #[error("sublattice is not contained in the given superlattice")]
    NotContained,
    #[error("restricted form is not {0} times a principal form")]
    NonIntegralInducedForm(String),
    #[error("decomposition check failed: {0}")]
    DecompositionInconsistent(String),

    #[error("component is trivial (dimension 0)")]
    TrivialComponent,
    #[error("inconsistent facts: {0}")]
    InconsistentFacts(String),

    #[error("unknown catalog instance {0:?}")]
    UnknownInstance(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Schema(_) | Error::UnknownInstance(_) | Error::BadParameter(_) => {
                ErrorKind::Input
            }
            Error::NotIdempotent(_)
            | Error::DivisorsDoNotPair(_)
            | Error::NonIntegral
            | Error::DecompositionInconsistent(_) => ErrorKind::Internal,
            _ => ErrorKind::Validation,
        }
    }

    /// Short variant name used in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotAPermutation { .. } => "NotAPermutation",
            Error::ClosureTooLarge { .. } => "ClosureTooLarge",
            Error::ElementOutOfRange(_) => "ElementOutOfRange",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::OrthogonalityFailure { .. } => "OrthogonalityFailure",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::ClassCountMismatch { .. } => "ClassCountMismatch",
            Error::OrbitNotInTable { .. } => "OrbitNotInTable",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotIdempotent(_) => "NotIdempotent",
            Error::GroupMismatch => "GroupMismatch",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::NotSymplectic { .. } => "NotSymplectic",
            Error::MalformedAction(_) => "MalformedAction",
            Error::Degenerate { .. } => "Degenerate",
            Error::OddRank(_) => "OddRank",
            Error::NotAlternating => "NotAlternating",
            Error::DivisorsDoNotPair(_) => "DivisorsDoNotPair",
            Error::NonIntegral => "NonIntegral",
            Error::NotContained => "NotContained",
            Error::NonIntegralInducedForm(_) => "NonIntegralInducedForm",
            Error::DecompositionInconsistent(_) => "DecompositionInconsistent",
            Error::TrivialComponent => "TrivialComponent",
            Error::InconsistentFacts(_) => "InconsistentFacts",
            Error::UnknownInstance(_) => "UnknownInstance",
            Error::BadParameter(_) => "BadParameter",
            Error::Schema(_) => "Schema",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

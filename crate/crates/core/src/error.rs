//! Error types for every layer of the library.

use thiserror::Error;

use crate::object::BoundaryObject;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),
    #[error("strings cross: {0}")]
    CrossingStrings(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("non-contractible loops cannot coexist with through strings")]
    LoopsWithThroughStrings,
    #[error("shading of the core region differs between the two circles")]
    ShadingMismatch,
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch {
        expected: BoundaryObject,
        found: BoundaryObject,
    },
    #[error("index {index} out of range for {generator} at {object}")]
    IndexOutOfRange {
        generator: char,
        index: i64,
        object: BoundaryObject,
    },
    #[error("{generator}{index} does not exist at {object}")]
    WrongObjectForSign {
        generator: char,
        index: i64,
        object: BoundaryObject,
    },
    #[error("index set cannot be realized: {0}")]
    UnrealizableIndexSet(String),
    #[error("tangle is not of Type I")]
    NotTypeI,
    #[error("bad object {0:?}")]
    BadObject(String),
    #[error("bad tangle json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {position}: {token:?}")]
    SyntaxError { position: usize, token: String },
    #[error("term {token:?} at byte {position} is not defined at {object}")]
    IndexOutOfRange {
        position: usize,
        token: String,
        object: BoundaryObject,
    },
    #[error("object mismatch: {0} vs {1}")]
    ObjectMismatch(String, String),
    #[error("word is not of Type I")]
    NotTypeI,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("boundary maps do not compose to zero")]
    NotAComplex,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("coupling constant {0} is not an integer over Z")]
    NonIntegralScalar(String),
    #[error("bad scalar {0:?}")]
    BadScalar(String),
    #[error("unsupported degree bound {0}")]
    BadDegree(usize),
}

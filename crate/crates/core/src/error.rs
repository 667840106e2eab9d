use thiserror::Error;

use crate::lattice::WeightVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for vectors of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("transposition indices must satisfy 1 <= i < j <= n, got ({i}, {j}) with n = {len}")]
    BadTransposition { i: usize, j: usize, len: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vectors must have at least one coordinate")]
    EmptyVector,

    #[error("composition entries must be non-negative, got {0:?}")]
    NegativeEntry(Vec<i64>),

    #[error("label {label} outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("filling has {got} labels but the diagram has {expected} boxes")]
    FillingSize { expected: usize, got: usize },

    #[error("box (column {column}, row {row}) is not a box of the diagram")]
    UnknownBox { column: usize, row: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("points do not share a common coordinate sum")]
    NonConstantSum,

    #[error("Minkowski root segment requires i != j, got i = j = {0}")]
    DegenerateRoot(usize),

    #[error("input set is not M-convex")]
    NotMConvex,

    #[error("reflection hypothesis fails: sigma_({i},{j}) maps a point to {witness}, which is outside S and S + e_{i} - e_{j}")]
    ReflectionHypothesis {
        i: usize,
        j: usize,
        witness: WeightVector,
    },

    #[error("support function needs 2^n subsets; n = {0} exceeds the limit of 20")]
    TooManyCoordinates(usize),

    #[error("chain flip precondition: {0}")]
    ChainPrecondition(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("q and t must lie strictly between 0 and 1, got q = {q}, t = {t}")]
    NonGenericParams { q: String, t: String },

    #[error("could not parse {what}: {input}")]
    Parse { what: &'static str, input: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("certificate step {step} failed: {reason}")]
    Certificate { step: usize, reason: String },
}

//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("nothing to eliminate")]
    NothingToEliminate,
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("polar is not a lattice polygon")]
    NotReflexive,
    #[error("empty support")]
    EmptySupport,
    #[error("non-unimodular chart basis (determinant {0})")]
    NonUnimodular(i64),
    #[error("mutation not admissible for this factor")]
    MutationNotAdmissible,
    #[error("not mutable with this H")]
    NotMutable,
    #[error("slice above height 1 is nonempty")]
    HighSlice,
    #[error("no operator found (raise bounds)")]
    NoOperator,
    #[error("classification inconsistent: {0}")]
    ClassificationInconsistent(String),
    #[error("additive type unresolved: {0}")]
    AdditiveUnresolved(String),
    #[error("section/component incidence unknown")]
    IncidenceUnknown,
    #[error("torsion undetermined (lower bound {lower}, upper bound {upper})")]
    TorsionUndetermined { lower: u64, upper: u64 },
    #[error("semistable only")]
    SemistableOnly,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

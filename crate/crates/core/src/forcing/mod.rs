//! Forcing over finite posets and over binary strings of bounded length.
//!
//! [`poset`] holds the order types, [`dense`] the dense-set machinery and
//! generic filters, [`names`] names and their interpretation, and
//! [`lengthening`] the atomic forcing relation of the string poset together
//! with a semantic oracle for it.

pub mod dense;
pub mod lengthening;
pub mod names;
pub mod poset;

use thiserror::Error;

use crate::hfset::HfError;

pub use dense::{
    descend, generic_filter, is_dense, is_dense_below, is_predense_below, meet_dense, pretame_check, DenseSet,
    GenericFilter, Pretame,
};
pub use lengthening::{definability_grid, eval_at, forces_membership, semantic_forces, GridReport, Kind};
pub use names::{check_name, interpret, Name};
pub use poset::{CondId, FinitePoset, Order, Poset, StringPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("unknown condition {0:?}")]
    UnknownCondition(String),
    #[error("invalid poset: {0}")]
    BadPoset(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("string length bound {0} is too large")]
    BoundTooLarge(usize),
    #[error("dense set #{index} is not dense below the start: nothing in it lies below {witness}")]
    NotDense { index: usize, witness: String },
    #[error("descent got stuck at dense set #{index} below {at}")]
    Stuck { index: usize, at: String },
    #[error("length {length} does not exceed rank {rank}")]
    TooShort { length: usize, rank: usize },
    #[error("at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("too many names: {0}")]
    TooMany(String),
    #[error(transparent)]
    Hf(#[from] HfError),
}

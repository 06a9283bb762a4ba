//! Hereditarily finite sets, their coding-pair trees, and a small forcing
//! workbench.

pub mod adcoding;
pub mod cli;
pub mod codec;
pub mod forcing;
pub mod hfset;
pub mod treealg;

pub use codec::{CodingPair, CodingTree, QuotientStructure};
pub use hfset::{Budget, HfSet};

//! Rank-oracle matroids on small ground sets: closure, contraction,
//! well-ordered bases, (list) coloring and a compactness search over chains
//! of growing matroids.

pub mod bases;
pub mod cli;
pub mod closure;
pub mod coloring;
pub mod compactness;
pub mod constructions;
pub mod contraction;
pub mod error;
pub mod format;
pub mod lemmas;
pub mod matroid;
pub mod set;
pub mod suite;

pub use error::{MatroidError, Result};
pub use matroid::{Limits, Matroid, RankOracle, Verdict};
pub use set::{Element, ElementSet};

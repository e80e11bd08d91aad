use thiserror::Error;

use crate::matroid::AxiomViolation;
use crate::set::{Element, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("element {element} is out of range for a ground set of size {n}")]
    ElementOutOfRange { element: Element, n: usize },

    #[error("{operation} enumerates all subsets of {n} elements, above the exhaustive bound {bound} (raise it with --max-n)")]
    TooLarge {
        operation: &'static str,
        n: usize,
        bound: usize,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("not a matroid: {0}")]
    Axiom(AxiomViolation),

    #[error("no proper coloring exists: element {0} is a loop")]
    NoProperColoring(Element),

    #[error("element {element} is a loop; {what} is undefined on loops")]
    Loop { element: Element, what: &'static str },

    #[error("{0} is not a base")]
    NotABase(ElementSet),

    #[error("element {element} has {available} list colors but the class of base element {class_key} has {needed} members (deficit {})", needed - available)]
    ListTooSmall {
        element: Element,
        class_key: Element,
        available: usize,
        needed: usize,
    },

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("inconsistent chain: level {later} disagrees with level {earlier} on {witness} (rank {later_rank} vs {earlier_rank})")]
    InconsistentChain {
        earlier: usize,
        later: usize,
        witness: ElementSet,
        earlier_rank: usize,
        later_rank: usize,
    },
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;

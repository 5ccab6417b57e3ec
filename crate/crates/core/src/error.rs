use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One of the three defining conditions of an equivalence relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Reflexivity,
    Symmetry,
    Transitivity,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Reflexivity => "reflexivity",
            Condition::Symmetry => "symmetry",
            Condition::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("universe of {0} elements exceeds the supported maximum of {max}", max = crate::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("bad label table: {0}")]
    BadLabels(String),
    #[error("operands live in different universes (sizes {left} and {right})")]
    MixedUniverse { left: usize, right: usize },
    #[error("element {element} is outside a universe of size {size}")]
    BadElement { element: usize, size: usize },
    #[error("blocks do not form a partition: {0}")]
    NotAPartition(String),
    #[error("relation is not an equivalence: {0} fails")]
    NotEquivalence(Condition),
    #[error("map entry {element} -> {image} is outside a codomain of size {codomain}")]
    BadImage {
        element: usize,
        image: usize,
        codomain: usize,
    },
    #[error("map table has {got} entries for a domain of size {expected}")]
    BadMapLength { expected: usize, got: usize },
    #[error("including degree needs a nonempty reference set")]
    EmptyReference,
    #[error("no surjection from {domain} onto {codomain} elements")]
    NoSurjection { domain: usize, codomain: usize },
    #[error("instance does not fit the claim: {0}")]
    BadInstance(String),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub(crate) fn check_same(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::MixedUniverse { left, right })
    }
}

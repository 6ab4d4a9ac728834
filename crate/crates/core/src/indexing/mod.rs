//! The (n, δ)-indexing problem: adversarial channels, indexing decoders and
//! misdecoding accounting.

mod accounting;
mod adversary;
mod decoders;

pub use accounting::{count_misdecodings, misdecoding_bound, MisdecodingBound, MisdecodingReport};
pub use adversary::{action_budget, adversary_generate, AdversaryKind, ChannelMode};
pub use decoders::{
    decode_deletion_greedy, decode_global, decode_min_rsd, decode_min_rspd, decode_two_sided,
    Decoder, OneSidedMode,
};

use crate::strings::ScriptError;

/// One guess per received position: a sent index in `1..=n`, or `None` for
/// `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DecodedIndices {
    guesses: Vec<Option<usize>>,
}

impl DecodedIndices {
    pub fn new(guesses: Vec<Option<usize>>) -> Self {
        Self { guesses }
    }

    pub fn guesses(&self) -> &[Option<usize>] {
        &self.guesses
    }

    pub fn len(&self) -> usize {
        self.guesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guesses.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<usize> {
        self.guesses[j - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndexingError {
    #[error("channel contract violated at received position {position}: {reason}")]
    ContractViolation { position: usize, reason: &'static str },
    #[error("expected {expected} guesses, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{budget} deletions requested from a string of length {n}")]
    BudgetTooLarge { budget: usize, n: usize },
    #[error("parameter out of range: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Script(#[from] ScriptError),
}

//! Insertion/deletion codes: a Reed–Solomon inner code whose symbols are
//! paired, position by position, with a synchronization string.

pub mod gf;
mod insdel;
pub mod reed_solomon;

pub use insdel::{
    assign_unique, code_params, half_error_weight, indexing_procedure, insdel_decode,
    insdel_encode, parse_codeword, transmit, write_codeword, CodeRequest, CodeSymbol,
    HalfErrorWord, IndexingChoice, InsdelCodeParams,
};
pub use reed_solomon::ReedSolomon;

use crate::indexing::IndexingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("symbol {0} is outside the field")]
    SymbolOutOfField(u16),
    #[error("decoding failed with {erasures} erasures: {reason}")]
    DecodeFailure { erasures: usize, reason: &'static str },
    #[error(transparent)]
    Indexing(#[from] IndexingError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

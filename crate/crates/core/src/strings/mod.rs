//! String primitives: symbols, matchings, edit distance, RSD/RSPD and
//! channel transcripts.

mod distance;
mod matching;
mod rspd;
mod transcript;

pub use distance::{
    edit_distance, lcs_len, longest_common_subsequence, relative_suffix_distance,
};
pub(crate) use distance::{rsd_with_cutoff, RsdScratch};
pub use matching::{MatchingError, MonotoneMatching, StringMatching};
pub use rspd::{relative_suffix_pseudo_distance, rspd_at_most, RspdThresholdTable};
pub use transcript::{
    apply_script, channel_layout, suffix_error_density, Column, EditAction, ScriptError,
    Transcript,
};

use std::ops::Deref;

/// Alphabet symbol. Every alphabet is `{0, …, q-1}`.
pub type Symbol = u32;

/// Padding symbol (`⊥`); matches only itself and never occurs in a
/// [`SymbolString`].
pub const PAD: Symbol = Symbol::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StringError {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("alphabet size {0} collides with the padding symbol")]
    AlphabetTooLarge(u64),
    #[error("symbol {symbol} at position {position} is outside alphabet of size {alphabet_size}")]
    SymbolOutOfRange {
        position: usize,
        symbol: Symbol,
        alphabet_size: u32,
    },
}

/// A string over `{0, …, alphabet_size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolString {
    symbols: Vec<Symbol>,
    alphabet_size: u32,
}

impl SymbolString {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: u32) -> Result<Self, StringError> {
        if alphabet_size == 0 {
            return Err(StringError::EmptyAlphabet);
        }
        if alphabet_size == Symbol::MAX {
            return Err(StringError::AlphabetTooLarge(alphabet_size as u64));
        }
        if let Some((position, &symbol)) =
            symbols.iter().enumerate().find(|(_, &s)| s >= alphabet_size)
        {
            return Err(StringError::SymbolOutOfRange {
                position: position + 1,
                symbol,
                alphabet_size,
            });
        }
        Ok(Self {
            symbols,
            alphabet_size,
        })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.symbols
    }
}

impl Deref for SymbolString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl AsRef<[Symbol]> for SymbolString {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

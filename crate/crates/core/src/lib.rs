//! Synchronization strings and insertion/deletion codes.
//!
//! The crate is organised bottom-up:
//!
//! - [`strings`]: edit distance, longest common subsequences, string
//!   matchings, the relative suffix distance (RSD) and pseudo-distance
//!   (RSPD), channel transcripts and suffix error densities.
//! - [`sync_properties`]: verifiers for the ε-synchronization and
//!   ε-self-matching properties and ε-bad-index analysis.
//! - [`construction`]: randomized, certified constructions of such strings
//!   plus their on-disk format.
//! - [`indexing`]: adversarial channels, the indexing decoders and
//!   misdecoding accounting.
//! - [`code`]: a Reed–Solomon inner code and the transformation that turns
//!   it into an insertion/deletion block code by attaching a
//!   synchronization string.
//!
//! All distances are exact rationals ([`Rational`]); no floating point is
//! involved in any threshold decision.

pub mod code;
pub mod construction;
pub mod indexing;
pub mod rational;
pub mod strings;
pub mod sync_properties;

pub use rational::Rational;
pub use strings::{Symbol, SymbolString};

use std::fmt;

use rayon::prelude::*;

use super::{DecodedIndices, IndexingError};
use crate::rational::is_open_unit;
use crate::strings::{longest_common_subsequence, rsd_with_cutoff, RsdScratch, RspdThresholdTable, Symbol};
use crate::Rational;

/// Channel contract for the two-sided decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OneSidedMode {
    InsertionOnly,
    DeletionOnly,
}

/// The indexing decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoder {
    /// Streaming minimum relative suffix distance.
    MinRsd,
    /// Streaming unique prefix within RSPD `1 − eps`.
    MinRspd { eps: Rational },
    /// `⌈1/β⌉` rounds of LCS.
    Global { beta: Rational },
    /// Leftmost embedding, deletion-only channels.
    DeletionGreedy,
    /// Agreement of the leftmost and rightmost embeddings.
    TwoSided(OneSidedMode),
}

impl Decoder {
    pub fn decode(&self, sync: &[Symbol], received: &[Symbol]) -> Result<DecodedIndices, IndexingError> {
        match *self {
            Decoder::MinRsd => Ok(decode_min_rsd(sync, received)),
            Decoder::MinRspd { eps } => decode_min_rspd(sync, received, eps),
            Decoder::Global { beta } => decode_global(sync, received, beta),
            Decoder::DeletionGreedy => decode_deletion_greedy(sync, received),
            Decoder::TwoSided(mode) => decode_two_sided(sync, received, mode),
        }
    }

    /// Never outputs a wrong index (only correct ones or `⊥`).
    pub fn is_error_free(&self) -> bool {
        matches!(self, Decoder::TwoSided(_))
    }

    /// Output at position `j` depends only on the first `j` received symbols.
    pub fn is_streaming(&self) -> bool {
        matches!(self, Decoder::MinRsd | Decoder::MinRspd { .. } | Decoder::DeletionGreedy)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Decoder::MinRsd => "min_rsd",
            Decoder::MinRspd { .. } => "min_rspd",
            Decoder::Global { .. } => "global",
            Decoder::DeletionGreedy => "deletion_greedy",
            Decoder::TwoSided(OneSidedMode::InsertionOnly) => "two_sided_ins",
            Decoder::TwoSided(OneSidedMode::DeletionOnly) => "two_sided_del",
        }
    }
}

impl fmt::Display for Decoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// For each received prefix `R[1..j]`, the `i` minimizing
/// `RSD(S[1..i], R[1..j])`, smallest `i` on ties.
///
/// Prefixes whose last symbol differs from `R[j]` sit at distance exactly 1,
/// so only prefixes ending in `R[j]` can beat the default answer `i = 1`.
/// Each candidate's RSD is abandoned as soon as it reaches the best value
/// found so far.
pub fn decode_min_rsd(sync: &[Symbol], received: &[Symbol]) -> DecodedIndices {
    let mut positions: std::collections::HashMap<Symbol, Vec<usize>> = Default::default();
    for (i, &s) in sync.iter().enumerate() {
        positions.entry(s).or_default().push(i + 1);
    }
    let guesses = (1..=received.len())
        .into_par_iter()
        .map_init(RsdScratch::default, |scratch, j| {
            if sync.is_empty() {
                return None;
            }
            let mut best_i = 1;
            let mut best = (1u64, 1u64);
            if let Some(cands) = positions.get(&received[j - 1]) {
                for &i in cands {
                    if let Some(v) = rsd_with_cutoff(&sync[..i], &received[..j], Some(best), scratch) {
                        best = v;
                        best_i = i;
                        if v.0 == 0 {
                            break;
                        }
                    }
                }
            }
            Some(best_i)
        })
        .collect();
    DecodedIndices::new(guesses)
}

/// For each received prefix, the unique `i` with
/// `RSPD(S[1..i], R[1..j]) ≤ 1 − eps`, or `⊥` when there is none or more
/// than one.
pub fn decode_min_rspd(sync: &[Symbol], received: &[Symbol], eps: Rational) -> Result<DecodedIndices, IndexingError> {
    if !is_open_unit(eps) {
        return Err(IndexingError::InvalidParameter("eps must lie strictly between 0 and 1"));
    }
    let mut table = RspdThresholdTable::new(sync.to_vec(), Rational::from_integer(1) - eps);
    let mut guesses = Vec::with_capacity(received.len());
    for &s in received {
        table.push(s);
        let mut cands = table.candidates();
        let first = cands.next();
        guesses.push(if cands.next().is_some() { None } else { first });
    }
    Ok(DecodedIndices::new(guesses))
}

/// `⌈1/β⌉` rounds of leftmost LCS between `S` and the received positions
/// not matched in earlier rounds. A received position is decoded as `i`
/// when `S[i]` was matched in exactly one round, to that position.
pub fn decode_global(sync: &[Symbol], received: &[Symbol], beta: Rational) -> Result<DecodedIndices, IndexingError> {
    if beta <= Rational::from_integer(0) || beta > Rational::from_integer(1) {
        return Err(IndexingError::InvalidParameter("beta must lie in (0, 1]"));
    }
    let rounds = beta.recip().ceil().to_integer() as usize;
    let mut remaining: Vec<usize> = (1..=received.len()).collect();
    let mut times_matched = vec![0u32; sync.len() + 1];
    let mut partner = vec![0usize; sync.len() + 1];
    for _ in 0..rounds {
        if remaining.is_empty() {
            break;
        }
        let sub: Vec<Symbol> = remaining.iter().map(|&t| received[t - 1]).collect();
        let m = longest_common_subsequence(sync, &sub);
        if m.is_empty() {
            break;
        }
        let mut used = vec![false; sub.len()];
        for &(i, t) in m.pairs() {
            times_matched[i] += 1;
            partner[i] = remaining[t - 1];
            used[t - 1] = true;
        }
        remaining = remaining
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(&t, _)| t)
            .collect();
    }
    let mut guesses = vec![None; received.len()];
    for i in 1..=sync.len() {
        if times_matched[i] == 1 {
            guesses[partner[i] - 1] = Some(i);
        }
    }
    Ok(DecodedIndices::new(guesses))
}

fn leftmost_embedding(short: &[Symbol], long: &[Symbol]) -> Option<Vec<usize>> {
    let mut at = 0;
    let mut out = Vec::with_capacity(short.len());
    for &s in short {
        while at < long.len() && long[at] != s {
            at += 1;
        }
        if at == long.len() {
            return None;
        }
        at += 1;
        out.push(at);
    }
    Some(out)
}

fn rightmost_embedding(short: &[Symbol], long: &[Symbol]) -> Option<Vec<usize>> {
    let mut at = long.len();
    let mut out = vec![0; short.len()];
    for (k, &s) in short.iter().enumerate().rev() {
        while at > 0 && long[at - 1] != s {
            at -= 1;
        }
        if at == 0 {
            return None;
        }
        out[k] = at;
        at -= 1;
    }
    Some(out)
}

/// Greedy leftmost embedding of the received string into `S`. Errors when
/// the received string is not a subsequence of `S`.
pub fn decode_deletion_greedy(sync: &[Symbol], received: &[Symbol]) -> Result<DecodedIndices, IndexingError> {
    let mut at = 0;
    let mut guesses = Vec::with_capacity(received.len());
    for (j, &s) in received.iter().enumerate() {
        while at < sync.len() && sync[at] != s {
            at += 1;
        }
        if at == sync.len() {
            return Err(IndexingError::ContractViolation {
                position: j + 1,
                reason: "received string is not a subsequence of the sent string",
            });
        }
        at += 1;
        guesses.push(Some(at));
    }
    Ok(DecodedIndices::new(guesses))
}

/// Outputs an index only where the leftmost and rightmost embeddings agree;
/// every true embedding lies between the two, so such outputs are correct.
pub fn decode_two_sided(sync: &[Symbol], received: &[Symbol], mode: OneSidedMode) -> Result<DecodedIndices, IndexingError> {
    match mode {
        OneSidedMode::DeletionOnly => {
            let violation = || IndexingError::ContractViolation {
                position: 0,
                reason: "received string is not a subsequence of the sent string",
            };
            let left = leftmost_embedding(received, sync).ok_or_else(violation)?;
            let right = rightmost_embedding(received, sync).ok_or_else(violation)?;
            Ok(DecodedIndices::new(
                left.iter().zip(&right).map(|(&l, &r)| (l == r).then_some(l)).collect(),
            ))
        }
        OneSidedMode::InsertionOnly => {
            let violation = || IndexingError::ContractViolation {
                position: 0,
                reason: "sent string is not a subsequence of the received string",
            };
            let left = leftmost_embedding(sync, received).ok_or_else(violation)?;
            let right = rightmost_embedding(sync, received).ok_or_else(violation)?;
            let mut guesses = vec![None; received.len()];
            for (i, (&l, &r)) in left.iter().zip(&right).enumerate() {
                if l == r {
                    guesses[l - 1] = Some(i + 1);
                }
            }
            Ok(DecodedIndices::new(guesses))
        }
    }
}

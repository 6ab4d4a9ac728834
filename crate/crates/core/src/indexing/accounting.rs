use super::{DecodedIndices, Decoder, IndexingError, OneSidedMode};
use crate::construction::SyncProperty;
use crate::strings::Transcript;
use crate::Rational;

/// Outcome of decoding one transcript.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MisdecodingReport {
    /// Received positions that carry a sent symbol.
    pub transmitted_total: usize,
    pub correctly_decoded: usize,
    /// Transmitted positions decoded wrongly or as `⊥`.
    pub misdecodings: usize,
    /// Non-`⊥` outputs that are wrong, including any index given to an
    /// inserted symbol.
    pub error_free_violations: usize,
}

/// Classifies every received position against the transcript.
pub fn count_misdecodings(t: &Transcript, guesses: &DecodedIndices) -> Result<MisdecodingReport, IndexingError> {
    if guesses.len() != t.received().len() {
        return Err(IndexingError::LengthMismatch {
            expected: t.received().len(),
            got: guesses.len(),
        });
    }
    let mut report = MisdecodingReport::default();
    for (origin, guess) in t.origins().iter().zip(guesses.guesses()) {
        match (origin, guess) {
            (Some(i), g) => {
                report.transmitted_total += 1;
                if *g == Some(*i) {
                    report.correctly_decoded += 1;
                } else {
                    report.misdecodings += 1;
                    if g.is_some() {
                        report.error_free_violations += 1;
                    }
                }
            }
            (None, Some(_)) => report.error_free_violations += 1,
            (None, None) => {}
        }
    }
    Ok(report)
}

/// A misdecoding bound `value`, either inclusive (`≤`) or strict (`<`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MisdecodingBound {
    pub value: Rational,
    pub strict: bool,
}

impl MisdecodingBound {
    /// Whether `count` respects the bound. A strict bound of zero is taken
    /// as met by zero misdecodings: it only arises without any channel
    /// errors.
    pub fn respected_by(&self, count: usize) -> bool {
        let c = Rational::from_integer(count as i64);
        if self.strict {
            c < self.value || (count == 0 && self.value == Rational::from_integer(0))
        } else {
            c <= self.value
        }
    }
}

/// The quoted misdecoding bound of `decoder` against a string of length `n`
/// with the named property at level `eps`, after `insertions` insertions
/// and `deletions` deletions.
///
/// Returns `None` for combinations without a guarantee (RSPD decoding needs
/// a full synchronization string).
pub fn misdecoding_bound(
    decoder: &Decoder,
    property: SyncProperty,
    eps: Rational,
    n: usize,
    insertions: usize,
    deletions: usize,
) -> Option<MisdecodingBound> {
    let one = Rational::from_integer(1);
    let int = |x: usize| Rational::from_integer(x as i64);
    let (di, dr) = (int(insertions), int(deletions));
    let errors = di + dr;
    let inclusive = |value| {
        Some(MisdecodingBound {
            value,
            strict: false,
        })
    };
    match (decoder, property) {
        (Decoder::MinRsd, SyncProperty::FullSync) => inclusive(int(2) * errors / (one - eps)),
        (Decoder::MinRsd, SyncProperty::SelfMatching) => inclusive(int(4) * errors + int(6) * eps * int(n)),
        (Decoder::MinRspd { .. }, SyncProperty::FullSync) => Some(MisdecodingBound {
            value: di / (one - eps) + dr * eps / (one - eps),
            strict: true,
        }),
        (Decoder::MinRspd { .. }, SyncProperty::SelfMatching) => None,
        (Decoder::Global { beta }, _) => {
            let sent_side = int(n) + di - dr;
            inclusive(sent_side * *beta + eps * int(n) / *beta)
        }
        (Decoder::DeletionGreedy, _) => inclusive(eps / (one - eps) * dr),
        (Decoder::TwoSided(OneSidedMode::InsertionOnly), _) => inclusive(di / (one - eps)),
        (Decoder::TwoSided(OneSidedMode::DeletionOnly), _) => inclusive(eps / (one - eps) * dr),
    }
}

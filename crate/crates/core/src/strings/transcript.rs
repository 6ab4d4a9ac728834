use super::{StringMatching, Symbol};
use crate::Rational;

/// One adversarial action. Positions refer to the sent string, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditAction {
    /// Drop the sent symbol at `position`.
    Delete { position: usize },
    /// Emit `symbol` right after sent position `after` has been processed
    /// (`after = 0` inserts before everything). Several insertions at the
    /// same point are emitted in script order.
    Insert { after: usize, symbol: Symbol },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("deletion position {position} outside 1..={len}")]
    DeletionOutOfRange { position: usize, len: usize },
    #[error("insertion point {after} outside 0..={len}")]
    InsertionOutOfRange { after: usize, len: usize },
    #[error("position {0} deleted twice")]
    DuplicateDeletion(usize),
}

/// One column of the channel's view of a transmission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    /// Sent position delivered intact.
    Delivered(usize),
    /// Sent position removed by the adversary.
    Deleted(usize),
    /// Adversarial symbol.
    Inserted(Symbol),
}

/// Orders the effect of a script on a length-`len` transmission, column by
/// column. Independent of the symbols actually sent, so the same layout
/// drives plain strings and codewords alike.
pub fn channel_layout(len: usize, script: &[EditAction]) -> Result<Vec<Column>, ScriptError> {
    let mut deleted = vec![false; len + 1];
    let mut inserts: Vec<Vec<Symbol>> = vec![Vec::new(); len + 1];
    for action in script {
        match *action {
            EditAction::Delete { position } => {
                if position == 0 || position > len {
                    return Err(ScriptError::DeletionOutOfRange { position, len });
                }
                if deleted[position] {
                    return Err(ScriptError::DuplicateDeletion(position));
                }
                deleted[position] = true;
            }
            EditAction::Insert { after, symbol } => {
                if after > len {
                    return Err(ScriptError::InsertionOutOfRange { after, len });
                }
                inserts[after].push(symbol);
            }
        }
    }
    let mut columns = Vec::with_capacity(len + script.len());
    for (after, batch) in inserts.iter().enumerate() {
        if after > 0 {
            columns.push(if deleted[after] {
                Column::Deleted(after)
            } else {
                Column::Delivered(after)
            });
        }
        columns.extend(batch.iter().map(|&s| Column::Inserted(s)));
    }
    Ok(columns)
}

/// A transmission through an insertion/deletion channel together with the
/// alignment between what was sent and what arrived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    script: Vec<EditAction>,
    sent: Vec<Symbol>,
    received: Vec<Symbol>,
    columns: Vec<Column>,
    /// `origin[j]`: sent position behind `received[j]`, if any.
    origin: Vec<Option<usize>>,
    /// `step_errors[k]`: errors charged to sending step `k`, for `k` in
    /// `1..=n`; index `n + 1` collects insertions after the last symbol.
    step_errors: Vec<usize>,
    /// `emitted_through[k]`: received symbols produced through step `k`.
    emitted_through: Vec<usize>,
}

/// Runs `script` against `sent`.
pub fn apply_script(sent: &[Symbol], script: &[EditAction]) -> Result<Transcript, ScriptError> {
    Transcript::new(sent, script)
}

impl Transcript {
    pub fn new(sent: &[Symbol], script: &[EditAction]) -> Result<Self, ScriptError> {
        let n = sent.len();
        let columns = channel_layout(n, script)?;
        let mut received = Vec::with_capacity(columns.len());
        let mut origin = Vec::with_capacity(columns.len());
        let mut step_errors = vec![0usize; n + 2];
        let mut emitted_through = vec![0usize; n + 1];
        let mut processed = 0usize;
        for col in &columns {
            match *col {
                Column::Delivered(p) => {
                    received.push(sent[p - 1]);
                    origin.push(Some(p));
                    processed = p;
                    emitted_through[p] = received.len();
                }
                Column::Deleted(p) => {
                    step_errors[p] += 1;
                    processed = p;
                    emitted_through[p] = received.len();
                }
                Column::Inserted(s) => {
                    received.push(s);
                    origin.push(None);
                    step_errors[processed + 1] += 1;
                }
            }
        }
        Ok(Self {
            script: script.to_vec(),
            sent: sent.to_vec(),
            received,
            columns,
            origin,
            step_errors,
            emitted_through,
        })
    }

    pub fn script(&self) -> &[EditAction] {
        &self.script
    }

    pub fn sent(&self) -> &[Symbol] {
        &self.sent
    }

    pub fn received(&self) -> &[Symbol] {
        &self.received
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    /// Sent position (1-based) behind received position `j` (1-based), or
    /// `None` for an inserted symbol.
    pub fn origin(&self, j: usize) -> Option<usize> {
        self.origin[j - 1]
    }

    pub fn origins(&self) -> &[Option<usize>] {
        &self.origin
    }

    pub fn insertions(&self) -> usize {
        self.origin.iter().filter(|o| o.is_none()).count()
    }

    pub fn deletions(&self) -> usize {
        self.sent.len() + self.insertions() - self.received.len()
    }

    /// The alignment `τ` between sent and received.
    pub fn correspondence(&self) -> StringMatching {
        let (tau1, tau2) = self
            .columns
            .iter()
            .map(|c| match *c {
                Column::Delivered(p) => (Some(self.sent[p - 1]), Some(self.sent[p - 1])),
                Column::Deleted(p) => (Some(self.sent[p - 1]), None),
                Column::Inserted(s) => (None, Some(s)),
            })
            .unzip();
        StringMatching::new(tau1, tau2).expect("layout columns are consistent")
    }

    /// Received symbols emitted once sent position `step` has been handled
    /// (a deletion of `S[step]` included), before any insertion that
    /// follows it.
    pub fn received_prefix_len(&self, step: usize) -> usize {
        self.emitted_through[step]
    }

    /// `𝓔(from, to)`: actions charged to sending steps `from+1..=to`. A
    /// deletion of `S[k]` and insertions right before it are charged to step
    /// `k`; insertions after the final symbol are never counted.
    pub fn error_count(&self, from: usize, to: usize) -> usize {
        if from >= to {
            return 0;
        }
        self.step_errors[from + 1..=to].iter().sum()
    }

    /// Errors charged to each step `1..=n`.
    pub fn step_errors(&self) -> &[usize] {
        &self.step_errors[1..=self.sent.len()]
    }
}

/// Relative suffix error density at sending step `upto`:
/// `max_{1 ≤ i ≤ upto} 𝓔(upto − i, upto) / i`, and `0` for `upto = 0`.
pub fn suffix_error_density(t: &Transcript, upto: usize) -> Rational {
    assert!(upto <= t.sent.len(), "upto {upto} beyond sent length {}", t.sent.len());
    let mut best = Rational::from_integer(0);
    let mut acc = 0usize;
    for i in 1..=upto {
        acc += t.step_errors[upto + 1 - i];
        let v = Rational::new(acc as i64, i as i64);
        if v > best {
            best = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_script_is_identity() {
        let t = apply_script(&[4, 5, 6], &[]).unwrap();
        assert_eq!(t.received(), &[4, 5, 6]);
        let tau = t.correspondence();
        assert_eq!(tau.tau1(), tau.tau2());
        assert_eq!(suffix_error_density(&t, 3), Rational::from_integer(0));
    }

    #[test]
    fn single_deletion() {
        let t = apply_script(&[0, 1, 2], &[EditAction::Delete { position: 2 }]).unwrap();
        assert_eq!(t.received(), &[0, 2]);
        let tau = t.correspondence();
        assert_eq!(tau.tau1(), &[Some(0), Some(1), Some(2)]);
        assert_eq!(tau.tau2(), &[Some(0), None, Some(2)]);
        assert_eq!((t.insertions(), t.deletions()), (0, 1));
    }

    #[test]
    fn insert_then_delete() {
        let script = [
            EditAction::Insert { after: 1, symbol: 5 },
            EditAction::Delete { position: 2 },
        ];
        let t = apply_script(&[0, 1], &script).unwrap();
        assert_eq!(t.received(), &[0, 5]);
        assert_eq!(t.origins(), &[Some(1), None]);
        // both actions are charged to step 2
        assert_eq!(t.error_count(1, 2), 2);
        assert_eq!(t.error_count(0, 1), 0);
    }

    #[test]
    fn deleting_last_symbol_gives_density_one() {
        let t = apply_script(&[0, 1, 2, 3], &[EditAction::Delete { position: 4 }]).unwrap();
        assert_eq!(suffix_error_density(&t, 4), Rational::from_integer(1));
        assert_eq!(suffix_error_density(&t, 3), Rational::from_integer(0));
    }

    #[test]
    fn trailing_insertions_are_outside_every_window() {
        let t = apply_script(&[0, 1], &[EditAction::Insert { after: 2, symbol: 9 }]).unwrap();
        assert_eq!(t.received(), &[0, 1, 9]);
        assert_eq!(t.error_count(0, 2), 0);
        assert_eq!(t.received_prefix_len(2), 2);
    }

    #[test]
    fn prefix_lengths_track_steps() {
        let script = [
            EditAction::Insert { after: 0, symbol: 7 },
            EditAction::Delete { position: 2 },
            EditAction::Insert { after: 2, symbol: 8 },
        ];
        let t = apply_script(&[0, 1, 2], &script).unwrap();
        assert_eq!(t.received(), &[7, 0, 8, 2]);
        assert_eq!(t.received_prefix_len(0), 0);
        assert_eq!(t.received_prefix_len(1), 2);
        assert_eq!(t.received_prefix_len(2), 2);
        assert_eq!(t.received_prefix_len(3), 4);
        assert_eq!(t.step_errors(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_positions() {
        assert_eq!(
            apply_script(&[0], &[EditAction::Delete { position: 2 }]),
            Err(ScriptError::DeletionOutOfRange { position: 2, len: 1 })
        );
        assert_eq!(
            apply_script(&[0], &[EditAction::Insert { after: 2, symbol: 0 }]),
            Err(ScriptError::InsertionOutOfRange { after: 2, len: 1 })
        );
        let twice = [EditAction::Delete { position: 1 }, EditAction::Delete { position: 1 }];
        assert_eq!(apply_script(&[0], &twice), Err(ScriptError::DuplicateDeletion(1)));
    }
}

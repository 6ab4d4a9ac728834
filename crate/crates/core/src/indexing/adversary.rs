use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;

use super::IndexingError;
use crate::rational::floor_mul;
use crate::strings::{EditAction, Symbol};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdversaryKind {
    /// Independent uniformly placed actions.
    UniformRandom,
    /// One contiguous run of deletions and insertions at a single point.
    Burst,
    /// Inserts copies of upcoming sent symbols to spoof their indices.
    GreedyRepeat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelMode {
    InsDel,
    DeletionOnly,
    InsertionOnly,
}

macro_rules! named_enum {
    ($ty:ty, $($variant:path => $name:literal),+) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($variant => $name),+ }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok($variant),)+
                    other => Err(format!("unknown value `{other}`")),
                }
            }
        }
    };
}

named_enum!(AdversaryKind,
    AdversaryKind::UniformRandom => "uniform_random",
    AdversaryKind::Burst => "burst",
    AdversaryKind::GreedyRepeat => "greedy_repeat");

named_enum!(ChannelMode,
    ChannelMode::InsDel => "insdel",
    ChannelMode::DeletionOnly => "del_only",
    ChannelMode::InsertionOnly => "ins_only");

/// `⌊n·δ⌋`, the number of actions an adversary spends.
pub fn action_budget(n: usize, delta: Rational) -> usize {
    floor_mul(n, delta)
}

/// Generates exactly `⌊n·δ⌋` actions against `sent` (`n = |sent|`).
/// Inserted symbols are drawn from `0..alphabet_size` unless they copy sent
/// symbols.
pub fn adversary_generate<R: Rng + ?Sized>(
    kind: AdversaryKind,
    sent: &[Symbol],
    alphabet_size: u32,
    delta: Rational,
    mode: ChannelMode,
    rng: &mut R,
) -> Result<Vec<EditAction>, IndexingError> {
    if *delta.numer() < 0 {
        return Err(IndexingError::InvalidParameter("delta must be non-negative"));
    }
    if alphabet_size == 0 {
        return Err(IndexingError::InvalidParameter("alphabet must be non-empty"));
    }
    let n = sent.len();
    let budget = action_budget(n, delta);
    if mode == ChannelMode::DeletionOnly && budget > n {
        return Err(IndexingError::BudgetTooLarge { budget, n });
    }
    let script = match kind {
        AdversaryKind::UniformRandom => uniform(n, budget, alphabet_size, mode, rng),
        AdversaryKind::Burst => burst(n, budget, alphabet_size, mode, rng),
        AdversaryKind::GreedyRepeat => match mode {
            ChannelMode::InsDel => spoof_insdel(sent, budget, alphabet_size, rng),
            ChannelMode::InsertionOnly => spoof_insertions(sent, budget, alphabet_size, rng),
            ChannelMode::DeletionOnly => spoof_deletions(sent, budget, rng),
        },
    };
    debug_assert_eq!(script.len(), budget);
    Ok(script)
}

fn random_insertions<R: Rng + ?Sized>(n: usize, count: usize, q: u32, rng: &mut R) -> Vec<EditAction> {
    (0..count)
        .map(|_| EditAction::Insert {
            after: rng.gen_range(0..=n),
            symbol: rng.gen_range(0..q),
        })
        .collect()
}

fn random_deletions<R: Rng + ?Sized>(
    n: usize,
    count: usize,
    taken: &[bool],
    rng: &mut R,
) -> Vec<EditAction> {
    let free: Vec<usize> = (1..=n).filter(|&p| !taken[p]).collect();
    let mut picked: Vec<usize> = sample(rng, free.len(), count).into_iter().map(|x| free[x]).collect();
    picked.sort_unstable();
    picked.into_iter().map(|position| EditAction::Delete { position }).collect()
}

fn uniform<R: Rng + ?Sized>(n: usize, budget: usize, q: u32, mode: ChannelMode, rng: &mut R) -> Vec<EditAction> {
    let deletions = match mode {
        ChannelMode::DeletionOnly => budget,
        ChannelMode::InsertionOnly => 0,
        ChannelMode::InsDel => (0..budget).filter(|_| rng.gen_bool(0.5)).count().min(n),
    };
    let mut script = random_deletions(n, deletions, &vec![false; n + 1], rng);
    script.extend(random_insertions(n, budget - deletions, q, rng));
    script
}

fn burst<R: Rng + ?Sized>(n: usize, budget: usize, q: u32, mode: ChannelMode, rng: &mut R) -> Vec<EditAction> {
    let deletions = match mode {
        ChannelMode::DeletionOnly => budget,
        ChannelMode::InsertionOnly => 0,
        ChannelMode::InsDel => budget.div_ceil(2).min(n),
    };
    let start = rng.gen_range(1..=n - deletions + 1);
    let mut script: Vec<EditAction> = (start..start + deletions)
        .map(|position| EditAction::Delete { position })
        .collect();
    let after = if deletions > 0 { start + deletions - 1 } else { start - 1 };
    script.extend((deletions..budget).map(|_| EditAction::Insert {
        after,
        symbol: rng.gen_range(0..q),
    }));
    script
}

fn spoof_block(budget: usize) -> usize {
    (budget / 4).clamp(1, 8)
}

/// Deletes `S[p+1..p+w]` and inserts copies of `S[p+w+1..p+2w]` after `p`,
/// so the copies look like a clean continuation and the genuine symbols
/// look like repeats.
fn spoof_insdel<R: Rng + ?Sized>(sent: &[Symbol], budget: usize, q: u32, rng: &mut R) -> Vec<EditAction> {
    let n = sent.len();
    let w = spoof_block(budget);
    let mut taken = vec![false; n + 1];
    let mut script = Vec::with_capacity(budget);
    let mut failures = 0;
    while budget - script.len() >= 2 * w && n > 2 * w && failures < 32 {
        let p = rng.gen_range(0..n - 2 * w);
        if (p + 1..=p + w).any(|x| taken[x]) {
            failures += 1;
            continue;
        }
        taken[p + 1..=p + w].fill(true);
        script.extend((p + 1..=p + w).map(|position| EditAction::Delete { position }));
        for x in p + w + 1..=p + 2 * w {
            script.push(EditAction::Insert {
                after: p,
                symbol: sent[x - 1],
            });
        }
    }
    let rest = budget - script.len();
    script.extend(spoof_insertions(sent, rest, q, rng));
    script
}

/// Inserts copies of the next `w` sent symbols right before them.
fn spoof_insertions<R: Rng + ?Sized>(sent: &[Symbol], budget: usize, q: u32, rng: &mut R) -> Vec<EditAction> {
    let n = sent.len();
    if n == 0 {
        return random_insertions(n, budget, q, rng);
    }
    let w = spoof_block(budget).min(n);
    let mut script = Vec::with_capacity(budget);
    while script.len() < budget {
        let chunk = w.min(budget - script.len());
        let p = rng.gen_range(0..=n - chunk);
        for x in p + 1..=p + chunk {
            script.push(EditAction::Insert {
                after: p,
                symbol: sent[x - 1],
            });
        }
    }
    script
}

/// Deletes runs `S[p..q)` that end right before a symbol `S[q] = S[p]`, so a
/// leftmost matcher pulls `S[q]` back onto `p`. Leftover budget becomes
/// uniform deletions.
fn spoof_deletions<R: Rng + ?Sized>(sent: &[Symbol], budget: usize, rng: &mut R) -> Vec<EditAction> {
    let n = sent.len();
    let mut next_equal = vec![usize::MAX; n + 1];
    let mut last_seen = std::collections::HashMap::new();
    for p in (1..=n).rev() {
        if let Some(&q) = last_seen.get(&sent[p - 1]) {
            next_equal[p] = q;
        }
        last_seen.insert(sent[p - 1], p);
    }
    let mut taken = vec![false; n + 1];
    let mut used = 0;
    let mut starts: Vec<usize> = (1..=n).collect();
    starts.shuffle(rng);
    for p in starts {
        let q = next_equal[p];
        if q == usize::MAX || q - p > budget - used {
            continue;
        }
        if (p..q).any(|x| taken[x]) || taken[q] {
            continue;
        }
        taken[p..q].fill(true);
        used += q - p;
        if used == budget {
            break;
        }
    }
    let mut script: Vec<EditAction> = (1..=n)
        .filter(|&x| taken[x])
        .map(|position| EditAction::Delete { position })
        .collect();
    script.extend(random_deletions(n, budget - used, &taken, rng));
    script
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::apply_script;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const KINDS: [AdversaryKind; 3] = [
        AdversaryKind::UniformRandom,
        AdversaryKind::Burst,
        AdversaryKind::GreedyRepeat,
    ];
    const MODES: [ChannelMode; 3] = [
        ChannelMode::InsDel,
        ChannelMode::DeletionOnly,
        ChannelMode::InsertionOnly,
    ];

    #[test]
    fn zero_delta_is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s: Vec<Symbol> = (0..10).collect();
        for kind in KINDS {
            for mode in MODES {
                let script = adversary_generate(kind, &s, 10, Rational::from_integer(0), mode, &mut rng).unwrap();
                assert!(script.is_empty());
            }
        }
    }

    #[test]
    fn counts_and_modes_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s: Vec<Symbol> = (0..40).map(|i| i % 7).collect();
        for kind in KINDS {
            for mode in MODES {
                for seed_round in 0..20 {
                    let delta = Rational::new(seed_round % 5 + 1, 10);
                    let script = adversary_generate(kind, &s, 7, delta, mode, &mut rng).unwrap();
                    assert_eq!(script.len(), action_budget(40, delta), "{kind} {mode}");
                    let t = apply_script(&s, &script).unwrap();
                    match mode {
                        ChannelMode::DeletionOnly => assert_eq!(t.insertions(), 0),
                        ChannelMode::InsertionOnly => assert_eq!(t.deletions(), 0),
                        ChannelMode::InsDel => {}
                    }
                }
            }
        }
    }

    #[test]
    fn deletion_count_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s: Vec<Symbol> = (0..10).collect();
        let script = adversary_generate(
            AdversaryKind::UniformRandom,
            &s,
            10,
            Rational::new(1, 5),
            ChannelMode::DeletionOnly,
            &mut rng,
        )
        .unwrap();
        assert_eq!(script.len(), 2);
        assert!(script.iter().all(|a| matches!(a, EditAction::Delete { .. })));
    }

    #[test]
    fn too_many_deletions_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = adversary_generate(
            AdversaryKind::Burst,
            &[0, 1],
            2,
            Rational::from_integer(2),
            ChannelMode::DeletionOnly,
            &mut rng,
        );
        assert_eq!(r, Err(IndexingError::BudgetTooLarge { budget: 4, n: 2 }));
    }

    #[test]
    fn names_roundtrip() {
        for kind in KINDS {
            assert_eq!(kind.as_str().parse::<AdversaryKind>().unwrap(), kind);
        }
        for mode in MODES {
            assert_eq!(mode.to_string().parse::<ChannelMode>().unwrap(), mode);
        }
        assert!("sideways".parse::<ChannelMode>().is_err());
    }
}

//! Verifiers for the ε-synchronization and ε-self-matching properties and
//! ε-bad-index analysis.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::strings::{edit_distance, MonotoneMatching, Symbol};
use crate::Rational;

/// A triple `(i, j, k)`, `1 ≤ i < j < k ≤ n + 1`, whose neighbouring
/// intervals `S[i, j)` and `S[j, k)` are too close:
/// `ED(S[i,j), S[j,k)) ≤ (1 − ε)(k − i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SyncViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub edit_distance: usize,
}

impl SyncViolation {
    /// Re-checks the violation from scratch.
    pub fn recheck(&self, s: &[Symbol], eps: Rational) -> bool {
        let (i, j, k) = (self.i, self.j, self.k);
        if !(1 <= i && i < j && j < k && k <= s.len() + 1) {
            return false;
        }
        let ed = edit_distance(&s[i - 1..j - 1], &s[j - 1..k - 1]);
        ed == self.edit_distance && sync_triple_fails(ed, k - i, eps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Triple(SyncViolation),
    /// A self-matching with at least `ε·|S|` bad pairs.
    BadMatching(MonotoneMatching),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    /// Whether the witness (if any) still proves a violation of `s` at
    /// `eps`, using only the string primitives. A passing verdict has
    /// nothing to re-check and returns `true`.
    pub fn witness_is_valid(&self, s: &[Symbol], eps: Rational) -> bool {
        match (&self.holds, &self.witness) {
            (true, None) => true,
            (false, Some(Witness::Triple(v))) => v.recheck(s, eps),
            (false, Some(Witness::BadMatching(m))) => {
                m.is_valid_between(s, s) && m.good_pairs() == 0 && too_many_bad(m.len(), s.len(), eps)
            }
            _ => false,
        }
    }
}

fn sync_triple_fails(ed: usize, span: usize, eps: Rational) -> bool {
    // ED ≤ (1 − ε)·span, i.e. den·ED ≤ (den − num)·span
    let (num, den) = (*eps.numer() as u128, *eps.denom() as u128);
    den * ed as u128 <= (den - num) * span as u128
}

fn too_many_bad(bad: usize, len: usize, eps: Rational) -> bool {
    // bad ≥ ε·len
    let (num, den) = (*eps.numer() as u128, *eps.denom() as u128);
    den * bad as u128 >= num * len as u128
}

fn check_eps(eps: Rational) {
    assert!(
        crate::rational::is_open_unit(eps),
        "eps must lie strictly between 0 and 1, got {eps}"
    );
}

/// Checks the ε-synchronization property over every triple
/// `1 ≤ i < j < k ≤ n + 1` and reports the lexicographically first
/// violation.
///
/// For fixed `(i, j)` the left interval is fixed and the right one grows one
/// symbol at a time, so a single LCS column per `k` suffices.
pub fn check_synchronization(s: &[Symbol], eps: Rational) -> PropertyVerdict {
    check_eps(eps);
    let n = s.len();
    let first = (1..=n).into_par_iter().find_map_first(|i| {
        let mut col = Vec::with_capacity(n + 1);
        for j in i + 1..=n {
            let left = &s[i - 1..j - 1];
            col.clear();
            col.resize(left.len() + 1, 0u32);
            for k in j + 1..=n + 1 {
                let sym = s[k - 2];
                let mut diag = 0u32;
                for x in 1..=left.len() {
                    let up = col[x];
                    col[x] = if left[x - 1] == sym { diag + 1 } else { up.max(col[x - 1]) };
                    diag = up;
                }
                let lcs = col[left.len()] as usize;
                let ed = left.len() + (k - j) - 2 * lcs;
                if sync_triple_fails(ed, k - i, eps) {
                    return Some(SyncViolation {
                        i,
                        j,
                        k,
                        edit_distance: ed,
                    });
                }
            }
        }
        None
    });
    match first {
        None => PropertyVerdict::pass(),
        Some(v) => PropertyVerdict {
            holds: false,
            witness: Some(Witness::Triple(v)),
        },
    }
}

/// Maximum number of bad pairs over monotone self-matchings of `s`, with a
/// witness made only of bad pairs.
///
/// Dropping the good pairs of a self-matching keeps it monotone and keeps
/// its bad count, so the answer is an LCS of `s` with itself in which the
/// diagonal pairs `(a, a)` are forbidden.
pub fn max_bad_self_matching(s: &[Symbol]) -> (usize, MonotoneMatching) {
    let n = s.len();
    let w = n + 1;
    let mut t = vec![0u32; w * w];
    for a in 1..=n {
        for b in 1..=n {
            t[a * w + b] = if a != b && s[a - 1] == s[b - 1] {
                t[(a - 1) * w + b - 1] + 1
            } else {
                t[(a - 1) * w + b].max(t[a * w + b - 1])
            };
        }
    }
    let count = t[n * w + n] as usize;
    let mut pairs = Vec::with_capacity(count);
    let (mut a, mut b) = (n, n);
    while a > 0 && b > 0 {
        let here = t[a * w + b];
        if here == 0 {
            break;
        }
        if a != b && s[a - 1] == s[b - 1] && here == t[(a - 1) * w + b - 1] + 1 {
            pairs.push((a, b));
            a -= 1;
            b -= 1;
        } else if t[(a - 1) * w + b] == here {
            a -= 1;
        } else {
            b -= 1;
        }
    }
    pairs.reverse();
    (count, MonotoneMatching::from_sorted(pairs))
}

/// ε-self-matching: every monotone self-matching has fewer than `ε·|S|`
/// bad pairs.
pub fn check_self_matching(s: &[Symbol], eps: Rational) -> PropertyVerdict {
    check_eps(eps);
    let (count, witness) = max_bad_self_matching(s);
    if too_many_bad(count, s.len(), eps) {
        PropertyVerdict {
            holds: false,
            witness: Some(Witness::BadMatching(witness)),
        }
    } else {
        PropertyVerdict::pass()
    }
}

/// Indices lying in some interval that fails the ε-self-matching property,
/// each with one such interval (1-based, inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadIndexReport {
    pub eps: Rational,
    pub blamed: BTreeMap<usize, (usize, usize)>,
}

impl BadIndexReport {
    pub fn bad_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.blamed.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.blamed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blamed.is_empty()
    }

    pub fn is_bad(&self, index: usize) -> bool {
        self.blamed.contains_key(&index)
    }
}

/// Finds every ε-bad index.
///
/// For each start `i` the diagonal-forbidden self-LCS table of `S[i..]` is
/// grown in L-shaped layers, so after layer `len` the value for the
/// interval `[i, i + len − 1]` is available; this costs `O(n²)` per start.
/// Each index blames the failing interval with the smallest start, then the
/// smallest end, that contains it.
pub fn find_bad_indices(s: &[Symbol], eps: Rational) -> BadIndexReport {
    check_eps(eps);
    let n = s.len();
    let failing_ends: Vec<Vec<usize>> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let sub = &s[i - 1..];
            let m = sub.len();
            let w = m + 1;
            let mut t = vec![0u32; w * w];
            let mut ends = Vec::new();
            let cell = |t: &[u32], a: usize, b: usize| -> u32 {
                if a != b && sub[a - 1] == sub[b - 1] {
                    t[(a - 1) * w + b - 1] + 1
                } else {
                    t[(a - 1) * w + b].max(t[a * w + b - 1])
                }
            };
            for len in 1..=m {
                for a in 1..len {
                    t[a * w + len] = cell(&t, a, len);
                }
                for b in 1..=len {
                    t[len * w + b] = cell(&t, len, b);
                }
                if too_many_bad(t[len * w + len] as usize, len, eps) {
                    ends.push(i + len - 1);
                }
            }
            ends
        })
        .collect();
    let mut blamed = BTreeMap::new();
    for (offset, ends) in failing_ends.iter().enumerate() {
        let i = offset + 1;
        for k in i..=n {
            if blamed.contains_key(&k) {
                continue;
            }
            // smallest failing end ≥ k for this start
            let pos = ends.partition_point(|&j| j < k);
            if let Some(&j) = ends.get(pos) {
                blamed.insert(k, (i, j));
            }
        }
    }
    BadIndexReport { eps, blamed }
}

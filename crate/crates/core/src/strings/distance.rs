use super::{MonotoneMatching, Symbol, PAD};
use crate::Rational;

/// Length of a longest common subsequence, in `O(|a|·|b|)` time and
/// `O(|b|)` memory.
pub fn lcs_len(a: &[Symbol], b: &[Symbol]) -> usize {
    let mut row = vec![0u32; b.len() + 1];
    for &x in a {
        let mut diag = 0u32;
        for (j, &y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[b.len()] as usize
}

/// Insertion/deletion distance.
pub fn edit_distance(a: &[Symbol], b: &[Symbol]) -> usize {
    a.len() + b.len() - 2 * lcs_len(a, b)
}

/// A maximum common subsequence as a monotone matching. Among maximum
/// matchings the one with the lexicographically smallest sequence of `b`
/// positions is returned.
pub fn longest_common_subsequence(a: &[Symbol], b: &[Symbol]) -> MonotoneMatching {
    let (n, m) = (a.len(), b.len());
    let w = m + 1;
    // suffix[i][j] = LCS(a[i..], b[j..])
    let mut suffix = vec![0u32; (n + 1) * w];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            suffix[i * w + j] = if a[i] == b[j] {
                suffix[(i + 1) * w + j + 1] + 1
            } else {
                suffix[(i + 1) * w + j].max(suffix[i * w + j + 1])
            };
        }
    }
    let mut pairs = Vec::with_capacity(suffix[0] as usize);
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        let here = suffix[i * w + j];
        if here == 0 {
            break;
        }
        if a[i] == b[j] && here == suffix[(i + 1) * w + j + 1] + 1 {
            pairs.push((i + 1, j + 1));
            i += 1;
            j += 1;
        } else if suffix[(i + 1) * w + j] == here {
            i += 1;
        } else {
            j += 1;
        }
    }
    MonotoneMatching::from_sorted(pairs)
}

/// Relative suffix distance: the maximum over `k` of the edit distance of
/// the `⊥`-padded length-`k` suffixes divided by `2k`.
pub fn relative_suffix_distance(a: &[Symbol], b: &[Symbol]) -> Rational {
    let mut scratch = RsdScratch::default();
    let (num, den) = rsd_with_cutoff(a, b, None, &mut scratch).expect("no cutoff given");
    Rational::new(num as i64, den as i64)
}

/// Reusable table for repeated RSD evaluations.
#[derive(Default)]
pub(crate) struct RsdScratch {
    table: Vec<u32>,
}

/// RSD as a fraction `(num, den)`. With a cutoff `(p, q)`, returns `None` as
/// soon as the running maximum reaches `p/q`.
///
/// Over the reversed, padded strings the suffix pair of length `k` is the
/// prefix pair of length `k`, so the value at `k` is `(k − T[k][k]) / k`
/// where `T` is the prefix LCS table. The table is filled in L-shaped
/// layers so the diagonal entry of layer `k` is available before layer
/// `k + 1` is touched.
pub(crate) fn rsd_with_cutoff(
    a: &[Symbol],
    b: &[Symbol],
    cutoff: Option<(u64, u64)>,
    scratch: &mut RsdScratch,
) -> Option<(u64, u64)> {
    let k_max = a.len().max(b.len());
    if k_max == 0 {
        return Some((0, 1));
    }
    let ra = |x: usize| if x <= a.len() { a[a.len() - x] } else { PAD };
    let rb = |y: usize| if y <= b.len() { b[b.len() - y] } else { PAD };
    let w = k_max + 1;
    scratch.table.clear();
    scratch.table.resize(w * w, 0);
    let t = &mut scratch.table;
    let mut best = (0u64, 1u64);
    for k in 1..=k_max {
        let bk = rb(k);
        for x in 1..k {
            t[x * w + k] = if ra(x) == bk {
                t[(x - 1) * w + k - 1] + 1
            } else {
                t[(x - 1) * w + k].max(t[x * w + k - 1])
            };
        }
        let ak = ra(k);
        for y in 1..=k {
            t[k * w + y] = if ak == rb(y) {
                t[(k - 1) * w + y - 1] + 1
            } else {
                t[(k - 1) * w + y].max(t[k * w + y - 1])
            };
        }
        let num = (k as u64) - t[k * w + k] as u64;
        let den = k as u64;
        if num * best.1 > best.0 * den {
            best = (num, den);
        }
        if let Some((p, q)) = cutoff {
            if best.0 * q >= p * best.1 {
                return None;
            }
        }
    }
    Some(best)
}

use super::Symbol;
use crate::Rational;

/// A ratio `num/den`; `None` is `+∞`.
type Ratio = Option<(u64, u64)>;

fn ratio_le(x: Ratio, y: Ratio) -> bool {
    match (x, y) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some((a, b)), Some((c, d))) => a * d <= c * b,
    }
}

fn ratio_max(x: Ratio, y: Ratio) -> Ratio {
    if ratio_le(x, y) {
        y
    } else {
        x
    }
}

fn ratio_min(x: Ratio, y: Ratio) -> Ratio {
    if ratio_le(x, y) {
        x
    } else {
        y
    }
}

/// Relative suffix pseudo-distance from `c` (sent side) to `received`.
///
/// Returns `None` when every matching has a suffix window with no symbol of
/// `c` but at least one star, i.e. the distance is infinite. That happens
/// exactly when `c` is empty and `received` is not.
///
/// `d[i][j][l]` is the best value over matchings of the length-`i` suffix
/// of `c` to the length-`j` suffix of `received` whose first row holds `l`
/// stars; the second row then holds `i + l − j` stars and the whole
/// matching contributes the window ratio `(l + i + l − j) / i`.
pub fn relative_suffix_pseudo_distance(c: &[Symbol], received: &[Symbol]) -> Option<Rational> {
    let (n, m) = (c.len(), received.len());
    let idx = |i: usize, j: usize, l: usize| (i * (m + 1) + j) * (m + 1) + l;
    let mut d: Vec<Ratio> = vec![None; (n + 1) * (m + 1) * (m + 1)];
    d[idx(0, 0, 0)] = Some((0, 1));
    for i in 0..=n {
        for j in 0..=m {
            for l in j.saturating_sub(i)..=j {
                if i == 0 && j == 0 {
                    continue;
                }
                let whole: Ratio = if i == 0 {
                    None
                } else {
                    Some(((2 * l + i - j) as u64, i as u64))
                };
                let mut best: Ratio = None;
                let mut seen = false;
                if i >= 1 && j >= 1 && l < j && c[n - i] == received[m - j] {
                    best = ratio_min(best, d[idx(i - 1, j - 1, l)]);
                    seen = true;
                }
                if j >= 1 && l >= 1 {
                    best = ratio_min(best, d[idx(i, j - 1, l - 1)]);
                    seen = true;
                }
                if i >= 1 && i + l > j {
                    best = ratio_min(best, d[idx(i - 1, j, l)]);
                    seen = true;
                }
                d[idx(i, j, l)] = if seen { ratio_max(whole, best) } else { None };
            }
        }
    }
    let best = (m.saturating_sub(n)..=m).fold(None, |acc, l| ratio_min(acc, d[idx(n, m, l)]));
    best.map(|(p, q)| Rational::new(p as i64, q as i64))
}

/// `RSPD(c, received) ≤ theta`, decided by a quadratic-time route that is
/// independent of the cubic table above.
pub fn rspd_at_most(c: &[Symbol], received: &[Symbol], theta: Rational) -> bool {
    let mut table = RspdThresholdTable::new(c.to_vec(), theta);
    for &s in received {
        table.push(s);
    }
    table.within(c.len())
}

/// Streaming threshold test of `RSPD(S[1..p], received) ≤ θ` for every
/// prefix length `p` at once.
///
/// With `θ = a/b` a window is within the threshold iff
/// `b·stars − a·(symbols of S) ≤ 0`, so each matching column gets an
/// integer weight (match `−a`, deleted `b − a`, inserted `b`) and the test
/// becomes "every suffix sum ≤ 0". `cells[p]` keeps the smallest achievable
/// `max(0, largest suffix sum)` over matchings of `S[1..p]` with the
/// received prefix; the prefix passes iff it is zero.
#[derive(Debug, Clone)]
pub struct RspdThresholdTable {
    sent: Vec<Symbol>,
    weight_match: i64,
    weight_delete: i64,
    weight_insert: i64,
    cells: Vec<i64>,
    scratch: Vec<i64>,
    received_len: usize,
}

impl RspdThresholdTable {
    pub fn new(sent: Vec<Symbol>, theta: Rational) -> Self {
        assert!(*theta.numer() >= 0, "threshold must be non-negative");
        let (a, b) = (*theta.numer(), *theta.denom());
        let mut cells = vec![0i64; sent.len() + 1];
        for p in 1..=sent.len() {
            cells[p] = (cells[p - 1] + b - a).max(0);
        }
        Self {
            scratch: vec![0; sent.len() + 1],
            sent,
            weight_match: -a,
            weight_delete: b - a,
            weight_insert: b,
            cells,
            received_len: 0,
        }
    }

    /// Appends one received symbol.
    pub fn push(&mut self, symbol: Symbol) {
        let prev = &self.cells;
        let cur = &mut self.scratch;
        cur[0] = (prev[0] + self.weight_insert).max(0);
        for p in 1..=self.sent.len() {
            let mut v = (prev[p] + self.weight_insert).min(cur[p - 1] + self.weight_delete);
            if self.sent[p - 1] == symbol {
                v = v.min(prev[p - 1] + self.weight_match);
            }
            cur[p] = v.max(0);
        }
        std::mem::swap(&mut self.cells, &mut self.scratch);
        self.received_len += 1;
    }

    pub fn received_len(&self) -> usize {
        self.received_len
    }

    /// Whether `RSPD(S[1..p], received) ≤ θ`.
    pub fn within(&self, p: usize) -> bool {
        self.cells[p] == 0
    }

    /// All prefix lengths `p ≥ 1` within the threshold.
    pub fn candidates(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.sent.len()).filter(move |&p| self.cells[p] == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_strings_are_at_zero() {
        let s = [0, 1, 2, 0];
        assert_eq!(relative_suffix_pseudo_distance(&s, &s), Some(Rational::from_integer(0)));
        assert_eq!(relative_suffix_pseudo_distance(&[], &[]), Some(Rational::from_integer(0)));
    }

    #[test]
    fn single_substitution() {
        // (0,*),(*,1) ends in a window with no sent symbol; (*,1),(0,*) gives 2/1.
        assert_eq!(relative_suffix_pseudo_distance(&[0], &[1]), Some(Rational::from_integer(2)));
    }

    #[test]
    fn infinite_only_for_empty_sent_side() {
        assert_eq!(relative_suffix_pseudo_distance(&[], &[3]), None);
        assert_eq!(relative_suffix_pseudo_distance(&[3], &[]), Some(Rational::from_integer(1)));
    }

    #[test]
    fn threshold_agrees_on_small_cases() {
        let theta = Rational::new(3, 4);
        assert!(rspd_at_most(&[0, 1, 2], &[0, 1, 2], theta));
        assert!(!rspd_at_most(&[0], &[1], theta));
        assert!(rspd_at_most(&[0], &[1], Rational::from_integer(2)));
        assert!(!rspd_at_most(&[], &[1], Rational::from_integer(100)));
    }
}

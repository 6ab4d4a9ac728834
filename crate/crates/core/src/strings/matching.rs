use super::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingError {
    #[error("string matching rows have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("column {0} has '*' in both rows")]
    DoubleStar(usize),
    #[error("column {column} pairs different symbols {first} and {second}")]
    SymbolMismatch {
        column: usize,
        first: Symbol,
        second: Symbol,
    },
    #[error("pair {0} breaks strict monotonicity")]
    NotMonotone(usize),
    #[error("index 0 in pair {0}; pairs are 1-based")]
    ZeroIndex(usize),
}

/// Ordered index pairs `(a_i, b_i)`, 1-based, strictly increasing in both
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonotoneMatching {
    pairs: Vec<(usize, usize)>,
}

impl MonotoneMatching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, MatchingError> {
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            if a == 0 || b == 0 {
                return Err(MatchingError::ZeroIndex(idx));
            }
            if idx > 0 {
                let (pa, pb) = pairs[idx - 1];
                if a <= pa || b <= pb {
                    return Err(MatchingError::NotMonotone(idx));
                }
            }
        }
        Ok(Self { pairs })
    }

    pub(crate) fn from_sorted(pairs: Vec<(usize, usize)>) -> Self {
        debug_assert!(Self::new(pairs.clone()).is_ok());
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs with `a_i ≠ b_i` (meaningful for self-matchings).
    pub fn bad_pairs(&self) -> usize {
        self.pairs.iter().filter(|(a, b)| a != b).count()
    }

    /// Pairs with `a_i = b_i`.
    pub fn good_pairs(&self) -> usize {
        self.pairs.len() - self.bad_pairs()
    }

    /// Checks that every pair lies inside both strings and joins equal
    /// symbols.
    pub fn is_valid_between(&self, a: &[Symbol], b: &[Symbol]) -> bool {
        self.pairs.iter().all(|&(x, y)| {
            x >= 1 && y >= 1 && x <= a.len() && y <= b.len() && a[x - 1] == b[y - 1]
        })
    }
}

/// An alignment `τ = (τ₁, τ₂)` where `None` plays the role of `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringMatching {
    tau1: Vec<Option<Symbol>>,
    tau2: Vec<Option<Symbol>>,
}

impl StringMatching {
    pub fn new(
        tau1: Vec<Option<Symbol>>,
        tau2: Vec<Option<Symbol>>,
    ) -> Result<Self, MatchingError> {
        if tau1.len() != tau2.len() {
            return Err(MatchingError::LengthMismatch(tau1.len(), tau2.len()));
        }
        for (column, (x, y)) in tau1.iter().zip(&tau2).enumerate() {
            match (x, y) {
                (None, None) => return Err(MatchingError::DoubleStar(column + 1)),
                (Some(f), Some(s)) if f != s => {
                    return Err(MatchingError::SymbolMismatch {
                        column: column + 1,
                        first: *f,
                        second: *s,
                    })
                }
                _ => {}
            }
        }
        Ok(Self { tau1, tau2 })
    }

    /// Canonical alignment of a monotone matching: between consecutive
    /// matched pairs, the unmatched symbols of `a` come first, then those
    /// of `b`.
    pub fn from_monotone(
        a: &[Symbol],
        b: &[Symbol],
        m: &MonotoneMatching,
    ) -> Result<Self, MatchingError> {
        if let Some(bad) = m
            .pairs()
            .iter()
            .position(|&(x, y)| x > a.len() || y > b.len() || a[x - 1] != b[y - 1])
        {
            let (x, y) = m.pairs()[bad];
            return Err(MatchingError::SymbolMismatch {
                column: bad + 1,
                first: a.get(x - 1).copied().unwrap_or(super::PAD),
                second: b.get(y - 1).copied().unwrap_or(super::PAD),
            });
        }
        let mut tau1 = Vec::with_capacity(a.len() + b.len());
        let mut tau2 = Vec::with_capacity(a.len() + b.len());
        let (mut ia, mut ib) = (0, 0);
        let ends = m.pairs().iter().copied().chain(std::iter::once((a.len() + 1, b.len() + 1)));
        for (x, y) in ends {
            while ia + 1 < x {
                tau1.push(Some(a[ia]));
                tau2.push(None);
                ia += 1;
            }
            while ib + 1 < y {
                tau1.push(None);
                tau2.push(Some(b[ib]));
                ib += 1;
            }
            if x <= a.len() {
                tau1.push(Some(a[x - 1]));
                tau2.push(Some(b[y - 1]));
                ia = x;
                ib = y;
            }
        }
        Ok(Self { tau1, tau2 })
    }

    pub fn tau1(&self) -> &[Option<Symbol>] {
        &self.tau1
    }

    pub fn tau2(&self) -> &[Option<Symbol>] {
        &self.tau2
    }

    pub fn len(&self) -> usize {
        self.tau1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau1.is_empty()
    }

    /// `del(τ₁)`: the first endpoint string.
    pub fn first(&self) -> Vec<Symbol> {
        self.tau1.iter().flatten().copied().collect()
    }

    /// `del(τ₂)`: the second endpoint string.
    pub fn second(&self) -> Vec<Symbol> {
        self.tau2.iter().flatten().copied().collect()
    }

    /// `(sc(τ₁), sc(τ₂))`.
    pub fn star_counts(&self) -> (usize, usize) {
        (
            self.tau1.iter().filter(|c| c.is_none()).count(),
            self.tau2.iter().filter(|c| c.is_none()).count(),
        )
    }

    /// Insertions plus deletions this alignment spends.
    pub fn cost(&self) -> usize {
        let (a, b) = self.star_counts();
        a + b
    }

    /// Matched columns as 1-based index pairs.
    pub fn to_monotone(&self) -> MonotoneMatching {
        let (mut ia, mut ib) = (0, 0);
        let mut pairs = Vec::new();
        for (x, y) in self.tau1.iter().zip(&self.tau2) {
            if x.is_some() {
                ia += 1;
            }
            if y.is_some() {
                ib += 1;
            }
            if x.is_some() && y.is_some() {
                pairs.push((ia, ib));
            }
        }
        MonotoneMatching::from_sorted(pairs)
    }
}

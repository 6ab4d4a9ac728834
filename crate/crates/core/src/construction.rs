//! Randomized, certified constructions of ε-synchronization and
//! ε-self-matching strings, and their text file format.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{is_open_unit, parse_rational, Fraction};
use crate::strings::{Symbol, SymbolString};
use crate::sync_properties::{check_self_matching, check_synchronization, Witness};
use crate::Rational;

/// Which property a string is certified for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SyncProperty {
    FullSync,
    SelfMatching,
}

impl SyncProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            SyncProperty::FullSync => "full_sync",
            SyncProperty::SelfMatching => "self_matching",
        }
    }

    /// Runs the matching verifier.
    pub fn holds(self, s: &[Symbol], eps: Rational) -> bool {
        match self {
            SyncProperty::FullSync => check_synchronization(s, eps).holds,
            SyncProperty::SelfMatching => check_self_matching(s, eps).holds,
        }
    }
}

impl fmt::Display for SyncProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SyncProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full_sync" => Ok(SyncProperty::FullSync),
            "self_matching" => Ok(SyncProperty::SelfMatching),
            other => Err(format!("unknown property `{other}` (expected full_sync or self_matching)")),
        }
    }
}

/// Alphabet-size constants. The defaults are engineering choices: a
/// certified string is produced by checking, so smaller alphabets only cost
/// more resampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphabetConstants {
    /// Period factor: `t = ⌈period_factor / ε²⌉`.
    pub period_factor: f64,
    /// Residual factor: `q₂ = ⌈residual_factor / ε²⌉`.
    pub residual_factor: f64,
    /// Self-matching factor: `q = ⌈self_matching_factor / ε³⌉`.
    pub self_matching_factor: f64,
}

impl Default for AlphabetConstants {
    fn default() -> Self {
        let e = std::f64::consts::E;
        Self {
            period_factor: 4.0,
            residual_factor: 49.0 * e * e,
            self_matching_factor: 8.0,
        }
    }
}

/// Alphabet for a construction. For full synchronization strings symbols are
/// pairs `(position mod period, residual)` packed as
/// `residual · period + position mod period`; for self-matching strings
/// `period = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphabetPlan {
    pub period: u64,
    pub residual: u64,
}

impl AlphabetPlan {
    pub fn size(&self) -> u64 {
        self.period * self.residual
    }
}

fn ceil_scaled(factor: f64, eps: Rational, power: i32) -> u64 {
    let (num, den) = (*eps.numer() as f64, *eps.denom() as f64);
    let v = factor * den.powi(power) / num.powi(power);
    v.ceil().max(1.0) as u64
}

/// Recommended alphabet for `eps` and `property`.
pub fn recommended_alphabet_size(
    eps: Rational,
    property: SyncProperty,
    constants: &AlphabetConstants,
) -> AlphabetPlan {
    assert!(is_open_unit(eps), "eps must lie strictly between 0 and 1");
    match property {
        SyncProperty::FullSync => AlphabetPlan {
            period: ceil_scaled(constants.period_factor, eps, 2),
            residual: ceil_scaled(constants.residual_factor, eps, 2),
        },
        SyncProperty::SelfMatching => AlphabetPlan {
            period: 1,
            residual: ceil_scaled(constants.self_matching_factor, eps, 3),
        },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionConfig {
    pub constants: AlphabetConstants,
    /// Overrides the recommended alphabet.
    pub alphabet: Option<AlphabetPlan>,
    /// Resampling cap for full synchronization strings; `None` means `100·n`.
    pub max_resamples: Option<usize>,
    /// Redraw cap for self-matching strings.
    pub max_retries: usize,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        Self {
            constants: AlphabetConstants::default(),
            alphabet: None,
            max_resamples: None,
            max_retries: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("eps must lie strictly between 0 and 1")]
    InvalidEps,
    #[error("length must be at least 1")]
    EmptyLength,
    #[error("alphabet of size {0} does not fit the symbol type")]
    AlphabetTooLarge(u64),
    #[error("gave up after {attempts} attempts (seed {seed})")]
    CapExceeded { attempts: usize, seed: u64 },
}

/// A string certified, by running the verifier, to have `property` at
/// level `eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncString {
    body: SymbolString,
    eps: Rational,
    property: SyncProperty,
    seed: u64,
    /// Resamplings (full sync) or redraws (self-matching) spent.
    attempts: usize,
}

impl SyncString {
    /// Certifies `body` by running the verifier; `None` if it fails.
    pub fn certify(
        body: SymbolString,
        eps: Rational,
        property: SyncProperty,
        seed: u64,
    ) -> Option<Self> {
        property.holds(&body, eps).then_some(Self {
            body,
            eps,
            property,
            seed,
            attempts: 0,
        })
    }

    pub fn body(&self) -> &SymbolString {
        &self.body
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.body
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn eps(&self) -> Rational {
        self.eps
    }

    pub fn property(&self) -> SyncProperty {
        self.property
    }

    pub fn alphabet_size(&self) -> u32 {
        self.body.alphabet_size()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// Serializes to the `syncstr v1` text format.
    pub fn to_file_string(&self) -> String {
        SyncFile {
            n: self.len(),
            alphabet_size: self.alphabet_size(),
            eps: self.eps,
            property: self.property,
            seed: self.seed,
            symbols: self.body.to_vec(),
        }
        .to_string()
    }

    /// Parses a file and re-runs the verifier it names.
    pub fn from_file_str(text: &str) -> Result<Self, SyncFileError> {
        let file = SyncFile::parse(text)?;
        let body = SymbolString::new(file.symbols, file.alphabet_size)
            .map_err(|e| SyncFileError::new(2, e.to_string()))?;
        Self::certify(body, file.eps, file.property, file.seed).ok_or_else(|| {
            SyncFileError::new(
                0,
                format!("string does not satisfy {} at eps={}", file.property, Fraction(file.eps)),
            )
        })
    }
}

fn validate(n: usize, eps: Rational) -> Result<(), ConstructionError> {
    if !is_open_unit(eps) {
        return Err(ConstructionError::InvalidEps);
    }
    if n == 0 {
        return Err(ConstructionError::EmptyLength);
    }
    Ok(())
}

fn alphabet_u32(plan: AlphabetPlan) -> Result<u32, ConstructionError> {
    let q = plan.size();
    if q >= Symbol::MAX as u64 || plan.period == 0 || plan.residual == 0 {
        return Err(ConstructionError::AlphabetTooLarge(q));
    }
    Ok(q as u32)
}

/// Builds an ε-synchronization string of length `n`.
///
/// Symbol `i` is `(i mod t, R_i)` with `R_i` uniform over the residual
/// alphabet. While the verifier finds a violating triple `(i, j, k)`, the
/// residuals of `S[i, k)` are redrawn.
pub fn construct_sync_string(
    n: usize,
    eps: Rational,
    seed: u64,
    config: &ConstructionConfig,
) -> Result<SyncString, ConstructionError> {
    validate(n, eps)?;
    let plan = config
        .alphabet
        .unwrap_or_else(|| recommended_alphabet_size(eps, SyncProperty::FullSync, &config.constants));
    let q = alphabet_u32(plan)?;
    let period = plan.period as u32;
    let residual = plan.residual as u32;
    let cap = config.max_resamples.unwrap_or(100 * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symbols: Vec<Symbol> = (0..n)
        .map(|i| rng.gen_range(0..residual) * period + (i as u32 % period))
        .collect();
    let mut attempts = 0;
    loop {
        let verdict = check_synchronization(&symbols, eps);
        let Some(Witness::Triple(v)) = verdict.witness else {
            break;
        };
        if attempts == cap {
            return Err(ConstructionError::CapExceeded { attempts, seed });
        }
        attempts += 1;
        for (pos, sym) in symbols.iter_mut().enumerate().take(v.k - 1).skip(v.i - 1) {
            *sym = rng.gen_range(0..residual) * period + (pos as u32 % period);
        }
    }
    Ok(SyncString {
        body: SymbolString::new(symbols, q).expect("symbols drawn inside the alphabet"),
        eps,
        property: SyncProperty::FullSync,
        seed,
        attempts,
    })
}

/// Builds an ε-self-matching string of length `n` by drawing uniform strings
/// until one passes.
pub fn construct_self_matching_string(
    n: usize,
    eps: Rational,
    seed: u64,
    config: &ConstructionConfig,
) -> Result<SyncString, ConstructionError> {
    validate(n, eps)?;
    let plan = config.alphabet.unwrap_or_else(|| {
        recommended_alphabet_size(eps, SyncProperty::SelfMatching, &config.constants)
    });
    let q = alphabet_u32(plan)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempts in 0..=config.max_retries {
        let symbols: Vec<Symbol> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if check_self_matching(&symbols, eps).holds {
            return Ok(SyncString {
                body: SymbolString::new(symbols, q).expect("symbols drawn inside the alphabet"),
                eps,
                property: SyncProperty::SelfMatching,
                seed,
                attempts,
            });
        }
    }
    Err(ConstructionError::CapExceeded {
        attempts: config.max_retries,
        seed,
    })
}

/// Dispatches on `property`.
pub fn construct(
    property: SyncProperty,
    n: usize,
    eps: Rational,
    seed: u64,
    config: &ConstructionConfig,
) -> Result<SyncString, ConstructionError> {
    match property {
        SyncProperty::FullSync => construct_sync_string(n, eps, seed, config),
        SyncProperty::SelfMatching => construct_self_matching_string(n, eps, seed, config),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct SyncFileError {
    /// 1-based line number; 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl SyncFileError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Raw contents of a `syncstr v1` file, not yet verified.
///
/// ```text
/// syncstr v1 n=<n> q=<q> eps=<p>/<q> property=<full_sync|self_matching> seed=<u64>
/// <symbol> <symbol> ...
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncFile {
    pub n: usize,
    pub alphabet_size: u32,
    pub eps: Rational,
    pub property: SyncProperty,
    pub seed: u64,
    pub symbols: Vec<Symbol>,
}

impl fmt::Display for SyncFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "syncstr v1 n={} q={} eps={} property={} seed={}",
            self.n,
            self.alphabet_size,
            Fraction(self.eps),
            self.property,
            self.seed
        )?;
        let mut first = true;
        for s in &self.symbols {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{s}")?;
        }
        writeln!(f)
    }
}

impl SyncFile {
    pub fn parse(text: &str) -> Result<Self, SyncFileError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| SyncFileError::new(1, "empty file"))?;
        let header_line = text.lines().position(|l| !l.trim().is_empty()).unwrap_or(0) + 1;
        let herr = |m: String| SyncFileError::new(header_line, m);
        let mut words = header.split_whitespace();
        if words.next() != Some("syncstr") || words.next() != Some("v1") {
            return Err(herr("expected header starting with `syncstr v1`".into()));
        }
        let mut fields: [Option<&str>; 5] = [None; 5];
        const KEYS: [&str; 5] = ["n", "q", "eps", "property", "seed"];
        for word in words {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| herr(format!("malformed header field `{word}`")))?;
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| herr(format!("unknown header field `{key}`")))?;
            if fields[slot].replace(value).is_some() {
                return Err(herr(format!("duplicate header field `{key}`")));
            }
        }
        let get = |slot: usize| fields[slot].ok_or_else(|| herr(format!("missing header field `{}`", KEYS[slot])));
        let n: usize = get(0)?.parse().map_err(|_| herr("n is not an integer".into()))?;
        let alphabet_size: u32 = get(1)?.parse().map_err(|_| herr("q is not an integer".into()))?;
        let eps = parse_rational(get(2)?).map_err(|e| herr(e.to_string()))?;
        if !is_open_unit(eps) {
            return Err(herr("eps must lie strictly between 0 and 1".into()));
        }
        let property: SyncProperty = get(3)?.parse().map_err(herr)?;
        let seed: u64 = get(4)?.parse().map_err(|_| herr("seed is not a u64".into()))?;
        let mut symbols = Vec::with_capacity(n);
        for (idx, line) in lines {
            for tok in line.split_whitespace() {
                let v: Symbol = tok
                    .parse()
                    .map_err(|_| SyncFileError::new(idx + 1, format!("`{tok}` is not a symbol")))?;
                if v >= alphabet_size {
                    return Err(SyncFileError::new(
                        idx + 1,
                        format!("symbol {v} outside alphabet of size {alphabet_size}"),
                    ));
                }
                symbols.push(v);
            }
        }
        if symbols.len() != n {
            return Err(SyncFileError::new(
                0,
                format!("header says n={n} but {} symbols follow", symbols.len()),
            ));
        }
        Ok(Self {
            n,
            alphabet_size,
            eps,
            property,
            seed,
            symbols,
        })
    }
}

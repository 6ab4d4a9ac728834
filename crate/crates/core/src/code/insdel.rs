use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::gf::Gf;
use super::{CodeError, ReedSolomon};
use crate::construction::{recommended_alphabet_size, AlphabetConstants, SyncProperty, SyncString};
use crate::indexing::{misdecoding_bound, ChannelMode, DecodedIndices, Decoder, OneSidedMode};
use crate::rational::{ceil_nonneg, floor_nonneg, is_open_unit, parse_rational, Fraction};
use crate::strings::{channel_layout, Column, EditAction, Symbol};
use crate::Rational;

/// Which indexing decoder a code uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexingChoice {
    Global,
    MinRsd,
    MinRspd,
    DeletionGreedy,
    TwoSided,
}

impl IndexingChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexingChoice::Global => "global",
            IndexingChoice::MinRsd => "min_rsd",
            IndexingChoice::MinRspd => "min_rspd",
            IndexingChoice::DeletionGreedy => "deletion_greedy",
            IndexingChoice::TwoSided => "two_sided",
        }
    }
}

impl fmt::Display for IndexingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IndexingChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            IndexingChoice::Global,
            IndexingChoice::MinRsd,
            IndexingChoice::MinRspd,
            IndexingChoice::DeletionGreedy,
            IndexingChoice::TwoSided,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| format!("unknown indexing decoder `{s}`"))
    }
}

/// What to build. `eps` is the total slack: the code aims for rate
/// `> 1 − δ − ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeRequest {
    pub n: usize,
    pub delta: Rational,
    pub eps: Rational,
    pub channel: ChannelMode,
    pub indexing: IndexingChoice,
    /// Level of the synchronization string. Defaults to
    /// `(misdecoding_share · ε)²` for the global decoder (so that
    /// `β = misdecoding_share · ε`) and to `misdecoding_share · ε` otherwise.
    pub sync_eps: Option<Rational>,
    /// Share of `ε` that the global decoder's `β` may take.
    pub misdecoding_share: Rational,
    /// Bound on `log q_sync / log q_inner` as a share of `ε`.
    pub alphabet_share: Rational,
    /// Field width; defaults to the smallest `m` with `2^m ≥ n`.
    pub field_bits: Option<u32>,
    pub constants: AlphabetConstants,
}

impl CodeRequest {
    pub fn new(n: usize, delta: Rational, eps: Rational, channel: ChannelMode, indexing: IndexingChoice) -> Self {
        Self {
            n,
            delta,
            eps,
            channel,
            indexing,
            sync_eps: None,
            misdecoding_share: Rational::new(1, 6),
            alphabet_share: Rational::new(1, 3),
            field_bits: None,
            constants: AlphabetConstants::default(),
        }
    }
}

/// A fully sized code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsdelCodeParams {
    pub n: usize,
    pub delta: Rational,
    pub eps: Rational,
    pub channel: ChannelMode,
    pub indexing: IndexingChoice,
    pub decoder: Decoder,
    pub sync_property: SyncProperty,
    pub sync_eps: Rational,
    pub sync_alphabet: u64,
    pub field_bits: u32,
    /// Independent Reed–Solomon codewords interleaved per position.
    pub layers: usize,
    pub k_msg: usize,
    /// `⌊n·δ⌋`.
    pub budget: usize,
    /// Worst-case misdecodings the decoder's bound allows at this budget.
    pub k_bound: usize,
    /// Half-error weight the inner code is sized for: `n − k_msg`.
    pub radius: usize,
    inner: ReedSolomon,
}

fn bound_as_count(value: Rational, strict: bool) -> usize {
    if strict {
        ceil_nonneg(value).saturating_sub(1)
    } else {
        floor_nonneg(value)
    }
}

fn log2_u64(x: u64) -> f64 {
    (x as f64).log2()
}

/// Sizes a code for `req`.
pub fn code_params(req: &CodeRequest) -> Result<InsdelCodeParams, CodeError> {
    let invalid = |m: &str| Err(CodeError::InvalidParameters(m.to_string()));
    if req.n == 0 {
        return invalid("n must be at least 1");
    }
    if !is_open_unit(req.eps) {
        return invalid("eps must lie strictly between 0 and 1");
    }
    if *req.delta.numer() < 0 || req.delta >= Rational::from_integer(1) {
        return invalid("delta must lie in [0, 1)");
    }
    if !is_open_unit(req.misdecoding_share) || !is_open_unit(req.alphabet_share) {
        return invalid("eps shares must lie strictly between 0 and 1");
    }
    let mode = match (req.indexing, req.channel) {
        (IndexingChoice::DeletionGreedy, ChannelMode::DeletionOnly) => None,
        (IndexingChoice::DeletionGreedy, _) => return invalid("deletion_greedy needs a del_only channel"),
        (IndexingChoice::TwoSided, ChannelMode::DeletionOnly) => Some(OneSidedMode::DeletionOnly),
        (IndexingChoice::TwoSided, ChannelMode::InsertionOnly) => Some(OneSidedMode::InsertionOnly),
        (IndexingChoice::TwoSided, ChannelMode::InsDel) => return invalid("two_sided needs a one-sided channel"),
        _ => None,
    };
    let beta = req.eps * req.misdecoding_share;
    let sync_eps = req.sync_eps.unwrap_or(match req.indexing {
        IndexingChoice::Global => beta * beta,
        _ => beta,
    });
    if !is_open_unit(sync_eps) {
        return invalid("sync_eps must lie strictly between 0 and 1");
    }
    let (decoder, sync_property) = match req.indexing {
        IndexingChoice::Global => {
            let beta = req.sync_eps.map_or(beta, crate::rational::sqrt_or_floor);
            (Decoder::Global { beta }, SyncProperty::SelfMatching)
        }
        IndexingChoice::MinRsd => (Decoder::MinRsd, SyncProperty::FullSync),
        IndexingChoice::MinRspd => (Decoder::MinRspd { eps: sync_eps }, SyncProperty::FullSync),
        IndexingChoice::DeletionGreedy => (Decoder::DeletionGreedy, SyncProperty::FullSync),
        IndexingChoice::TwoSided => (Decoder::TwoSided(mode.expect("checked above")), SyncProperty::FullSync),
    };
    let budget = crate::indexing::action_budget(req.n, req.delta);
    if req.channel == ChannelMode::DeletionOnly && budget > req.n {
        return Err(CodeError::Infeasible(format!("{budget} deletions exceed n = {}", req.n)));
    }
    let splits: &[(usize, usize)] = match req.channel {
        ChannelMode::InsDel => &[(budget, 0), (0, budget)],
        ChannelMode::InsertionOnly => &[(budget, 0)],
        ChannelMode::DeletionOnly => &[(0, budget)],
    };
    let k_bound = splits
        .iter()
        .map(|&(di, dr)| {
            let b = misdecoding_bound(&decoder, sync_property, sync_eps, req.n, di, dr)
                .expect("every configured decoder has a bound");
            bound_as_count(b.value, b.strict)
        })
        .max()
        .unwrap_or(0);
    let max_deletions = if req.channel == ChannelMode::InsertionOnly { 0 } else { budget };
    let radius = if decoder.is_error_free() {
        max_deletions + k_bound
    } else {
        budget + 2 * k_bound
    };
    if radius >= req.n {
        return Err(CodeError::Infeasible(format!(
            "inner radius {radius} (budget {budget}, misdecoding bound {k_bound}) leaves no room for a message at n = {}",
            req.n
        )));
    }
    let k_msg = req.n - radius;
    let field_bits = req
        .field_bits
        .unwrap_or_else(|| (usize::BITS - (req.n.max(2) - 1).leading_zeros()).max(2));
    let inner = ReedSolomon::new(field_bits, req.n, k_msg)?;
    let plan = recommended_alphabet_size(sync_eps, sync_property, &req.constants);
    let sync_alphabet = plan.size();
    if sync_alphabet >= Symbol::MAX as u64 {
        return Err(CodeError::Infeasible(format!(
            "synchronization alphabet {sync_alphabet} does not fit the symbol type"
        )));
    }
    let share = crate::rational::to_f64(req.alphabet_share * req.eps);
    let layers = ((log2_u64(sync_alphabet) / (share * field_bits as f64)).ceil() as usize).max(1);
    Ok(InsdelCodeParams {
        n: req.n,
        delta: req.delta,
        eps: req.eps,
        channel: req.channel,
        indexing: req.indexing,
        decoder,
        sync_property,
        sync_eps,
        sync_alphabet,
        field_bits,
        layers,
        k_msg,
        budget,
        k_bound,
        radius,
        inner,
    })
}

impl InsdelCodeParams {
    pub fn inner_code(&self) -> &ReedSolomon {
        &self.inner
    }

    /// `log₂ q_inner`: bits carried by the inner part of one position.
    pub fn inner_bits(&self) -> u32 {
        self.field_bits * self.layers as u32
    }

    /// `k·log q_C / (n·(log q_C + log q_S))`.
    pub fn rate(&self) -> f64 {
        let c = self.inner_bits() as f64;
        self.k_msg as f64 * c / (self.n as f64 * (c + log2_u64(self.sync_alphabet)))
    }

    /// `R_C · (1 − log q_S / log q_C)`, a lower bound on [`Self::rate`].
    pub fn rate_lower_bound(&self) -> f64 {
        let c = self.inner_bits() as f64;
        self.k_msg as f64 / self.n as f64 * (1.0 - log2_u64(self.sync_alphabet) / c)
    }

    /// `1 − δ − ε`.
    pub fn target_rate(&self) -> f64 {
        1.0 - crate::rational::to_f64(self.delta) - crate::rational::to_f64(self.eps)
    }

    /// One-line, self-describing header.
    pub fn header(&self) -> String {
        let beta = match self.decoder {
            Decoder::Global { beta } => format!(" beta={}", Fraction(beta)),
            _ => String::new(),
        };
        format!(
            "insdel v1 n={} k={} m={} layers={} q_sync={} delta={} eps={} sync_eps={} property={} channel={} decoder={}{} budget={} k_bound={} radius={}",
            self.n,
            self.k_msg,
            self.field_bits,
            self.layers,
            self.sync_alphabet,
            Fraction(self.delta),
            Fraction(self.eps),
            Fraction(self.sync_eps),
            self.sync_property,
            self.channel,
            self.indexing,
            beta,
            self.budget,
            self.k_bound,
            self.radius
        )
    }

    /// Inverse of [`Self::header`].
    pub fn from_header(line: &str) -> Result<Self, String> {
        let mut words = line.split_whitespace();
        if words.next() != Some("insdel") || words.next() != Some("v1") {
            return Err("expected header starting with `insdel v1`".into());
        }
        let mut map = BTreeMap::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| format!("malformed field `{w}`"))?;
            if map.insert(k, v).is_some() {
                return Err(format!("duplicate field `{k}`"));
            }
        }
        let get = |k: &str| map.get(k).copied().ok_or_else(|| format!("missing field `{k}`"));
        let int = |k: &str| -> Result<usize, String> { get(k)?.parse().map_err(|_| format!("`{k}` is not an integer")) };
        let rat = |k: &str| -> Result<Rational, String> { parse_rational(get(k)?).map_err(|e| e.to_string()) };
        let n = int("n")?;
        let k_msg = int("k")?;
        let field_bits = int("m")? as u32;
        let channel: ChannelMode = get("channel")?.parse()?;
        let indexing: IndexingChoice = get("decoder")?.parse()?;
        let sync_eps = rat("sync_eps")?;
        let decoder = match indexing {
            IndexingChoice::Global => Decoder::Global { beta: rat("beta")? },
            IndexingChoice::MinRsd => Decoder::MinRsd,
            IndexingChoice::MinRspd => Decoder::MinRspd { eps: sync_eps },
            IndexingChoice::DeletionGreedy => Decoder::DeletionGreedy,
            IndexingChoice::TwoSided => Decoder::TwoSided(match channel {
                ChannelMode::InsertionOnly => OneSidedMode::InsertionOnly,
                _ => OneSidedMode::DeletionOnly,
            }),
        };
        let inner = ReedSolomon::new(field_bits, n, k_msg).map_err(|e| e.to_string())?;
        Ok(Self {
            n,
            delta: rat("delta")?,
            eps: rat("eps")?,
            channel,
            indexing,
            decoder,
            sync_property: get("property")?.parse()?,
            sync_eps,
            sync_alphabet: get("q_sync")?.parse().map_err(|_| "`q_sync` is not an integer".to_string())?,
            field_bits,
            layers: int("layers")?,
            k_msg,
            budget: int("budget")?,
            k_bound: int("k_bound")?,
            radius: int("radius")?,
            inner,
        })
    }

    fn check_sync(&self, sync: &SyncString) -> Result<(), CodeError> {
        if sync.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                got: sync.len(),
            });
        }
        Ok(())
    }
}

/// One position of a codeword: the inner symbol (one field element per
/// layer) and the synchronization symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSymbol {
    pub inner: Vec<Gf>,
    pub sync: Symbol,
}

/// Per position: the recovered inner symbol, or `None` for an erasure.
pub type HalfErrorWord = Vec<Option<Vec<Gf>>>;

/// Encodes `msg` (`k_msg` inner symbols of `layers` field elements each) and
/// attaches `sync`.
pub fn insdel_encode(msg: &[Vec<Gf>], params: &InsdelCodeParams, sync: &SyncString) -> Result<Vec<CodeSymbol>, CodeError> {
    params.check_sync(sync)?;
    if msg.len() != params.k_msg {
        return Err(CodeError::LengthMismatch {
            expected: params.k_msg,
            got: msg.len(),
        });
    }
    if let Some(bad) = msg.iter().find(|s| s.len() != params.layers) {
        return Err(CodeError::LengthMismatch {
            expected: params.layers,
            got: bad.len(),
        });
    }
    let mut out: Vec<CodeSymbol> = sync
        .symbols()
        .iter()
        .map(|&s| CodeSymbol {
            inner: Vec::with_capacity(params.layers),
            sync: s,
        })
        .collect();
    for layer in 0..params.layers {
        let column: Vec<Gf> = msg.iter().map(|s| s[layer]).collect();
        let word = params.inner.encode(&column)?;
        for (sym, x) in out.iter_mut().zip(word) {
            sym.inner.push(x);
        }
    }
    Ok(out)
}

/// Passes a codeword through a channel running `script` against its
/// positions. Inserted positions carry the script's synchronization symbol
/// and a uniformly random inner symbol.
pub fn transmit<R: Rng + ?Sized>(
    codeword: &[CodeSymbol],
    script: &[EditAction],
    field_bits: u32,
    rng: &mut R,
) -> Result<Vec<CodeSymbol>, CodeError> {
    let layers = codeword.first().map_or(0, |c| c.inner.len());
    let order = 1u32 << field_bits;
    let columns = channel_layout(codeword.len(), script).map_err(crate::indexing::IndexingError::from)?;
    Ok(columns
        .into_iter()
        .filter_map(|c| match c {
            Column::Delivered(p) => Some(codeword[p - 1].clone()),
            Column::Deleted(_) => None,
            Column::Inserted(s) => Some(CodeSymbol {
                inner: (0..layers).map(|_| rng.gen_range(0..order) as Gf).collect(),
                sync: s,
            }),
        })
        .collect())
}

/// Position `i` of the output receives the payload of the unique received
/// position decoded to `i`; positions claimed zero or several times stay
/// erased.
pub fn assign_unique<T: Clone>(payloads: &[T], guesses: &DecodedIndices, n: usize) -> Vec<Option<T>> {
    let mut claims = vec![0u32; n + 1];
    let mut owner = vec![0usize; n + 1];
    for (j, g) in guesses.guesses().iter().enumerate() {
        if let Some(i) = *g {
            claims[i] += 1;
            owner[i] = j;
        }
    }
    (1..=n)
        .map(|i| (claims[i] == 1).then(|| payloads[owner[i]].clone()))
        .collect()
}

/// Runs the configured indexing decoder on the synchronization coordinates
/// and builds the half-error word for the inner decoder.
pub fn indexing_procedure(
    received: &[CodeSymbol],
    params: &InsdelCodeParams,
    sync: &SyncString,
) -> Result<(HalfErrorWord, DecodedIndices), CodeError> {
    params.check_sync(sync)?;
    let sync_part: Vec<Symbol> = received.iter().map(|c| c.sync).collect();
    let guesses = params.decoder.decode(sync.symbols(), &sync_part)?;
    let inner: Vec<Vec<Gf>> = received.iter().map(|c| c.inner.clone()).collect();
    let word = assign_unique(&inner, &guesses, params.n);
    Ok((word, guesses))
}

/// Erasures count 1, wrong symbols count 2.
pub fn half_error_weight<T: PartialEq>(word: &[Option<T>], reference: &[T]) -> usize {
    assert_eq!(word.len(), reference.len());
    word.iter()
        .zip(reference)
        .map(|(w, r)| match w {
            None => 1,
            Some(x) if x == r => 0,
            Some(_) => 2,
        })
        .sum()
}

/// Decodes a received word back to the message.
pub fn insdel_decode(received: &[CodeSymbol], params: &InsdelCodeParams, sync: &SyncString) -> Result<Vec<Vec<Gf>>, CodeError> {
    let (word, _) = indexing_procedure(received, params, sync)?;
    if let Some(bad) = word.iter().flatten().find(|s| s.len() != params.layers) {
        return Err(CodeError::LengthMismatch {
            expected: params.layers,
            got: bad.len(),
        });
    }
    let mut msg = vec![Vec::with_capacity(params.layers); params.k_msg];
    for layer in 0..params.layers {
        let column: Vec<Option<Gf>> = word.iter().map(|s| s.as_ref().map(|v| v[layer])).collect();
        let decoded = params.inner.decode(&column)?;
        for (m, x) in msg.iter_mut().zip(decoded) {
            m.push(x);
        }
    }
    Ok(msg)
}

fn hex_width(bits: u32) -> usize {
    bits.div_ceil(4) as usize
}

/// Serializes a (possibly corrupted) word: the parameter header, then one
/// `<inner> <sync>` line per position, the inner symbol written as one hex
/// integer with layer 0 most significant.
pub fn write_codeword(params: &InsdelCodeParams, word: &[CodeSymbol]) -> String {
    let w = hex_width(params.field_bits);
    let mut out = params.header();
    out.push('\n');
    for sym in word {
        for x in &sym.inner {
            out.push_str(&format!("{x:0w$x}"));
        }
        out.push_str(&format!(" {}\n", sym.sync));
    }
    out
}

/// Inverse of [`write_codeword`].
pub fn parse_codeword(text: &str) -> Result<(InsdelCodeParams, Vec<CodeSymbol>), CodeError> {
    let perr = |line: usize, message: String| CodeError::Parse { line, message };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let params = InsdelCodeParams::from_header(header).map_err(|m| perr(1, m))?;
    let w = hex_width(params.field_bits);
    let mut word = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let (hex, sync) = line
            .trim()
            .split_once(' ')
            .ok_or_else(|| perr(line_no, "expected `<inner> <sync>`".into()))?;
        if hex.len() != w * params.layers || !hex.is_ascii() {
            return Err(perr(line_no, format!("inner symbol must have {} hex digits", w * params.layers)));
        }
        let inner = (0..params.layers)
            .map(|l| {
                let x = Gf::from_str_radix(&hex[l * w..(l + 1) * w], 16)
                    .map_err(|_| perr(line_no, "invalid hex digit".into()))?;
                if !params.inner.field().contains(x) {
                    return Err(perr(line_no, format!("{x} outside the field")));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sync: Symbol = sync
            .trim()
            .parse()
            .map_err(|_| perr(line_no, format!("`{sync}` is not a sync symbol")))?;
        word.push(CodeSymbol { inner, sync });
    }
    Ok((params, word))
}

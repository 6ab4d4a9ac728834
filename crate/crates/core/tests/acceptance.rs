//! Acceptance suite. Run with `cargo test -p syncstr --test acceptance`;
//! pass criterion numbers as arguments to run a subset.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use syncstr::code::{
    assign_unique, code_params, half_error_weight, insdel_decode, insdel_encode, transmit, CodeRequest,
    IndexingChoice, InsdelCodeParams,
};
use syncstr::construction::{
    construct_self_matching_string, construct_sync_string, AlphabetPlan, ConstructionConfig, SyncProperty, SyncString,
};
use syncstr::indexing::{
    adversary_generate, count_misdecodings, misdecoding_bound, AdversaryKind, ChannelMode, DecodedIndices, Decoder,
    OneSidedMode,
};
use syncstr::strings::{
    apply_script, edit_distance, relative_suffix_distance, relative_suffix_pseudo_distance, Transcript,
};
use syncstr::sync_properties::{check_self_matching, max_bad_self_matching};
use syncstr::{Rational, Symbol};

type Check = Result<String, String>;
/// Criterion number, title, time limit and body.
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Check);

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn rng_for(tag: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(tag);
    rng.set_stream(index);
    rng
}

fn random_string(rng: &mut impl Rng, len: usize, q: u32) -> Vec<Symbol> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

fn fmt_secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

// ---------------------------------------------------------------- 1

fn rsd_metric() -> Check {
    let failures: Vec<String> = (0..10_000u64)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = rng_for(1, t);
            let q = rng.gen_range(1..=8);
            let draw = |rng: &mut ChaCha8Rng| {
                let len = rng.gen_range(0..=30);
                random_string(rng, len, q)
            };
            let a = draw(&mut rng);
            // nearby strings make the triangle inequality bite
            let b = if rng.gen_bool(0.5) {
                let mut b = a.clone();
                for _ in 0..rng.gen_range(0..4) {
                    if !b.is_empty() && rng.gen_bool(0.5) {
                        let p = rng.gen_range(0..b.len());
                        b.remove(p);
                    } else {
                        let p = rng.gen_range(0..=b.len());
                        b.insert(p, rng.gen_range(0..q));
                    }
                }
                b
            } else {
                draw(&mut rng)
            };
            let c = draw(&mut rng);
            let ab = relative_suffix_distance(&a, &b);
            let ba = relative_suffix_distance(&b, &a);
            let bc = relative_suffix_distance(&b, &c);
            let ac = relative_suffix_distance(&a, &c);
            let zero = Rational::from_integer(0);
            let one = Rational::from_integer(1);
            let problem = if ab != ba {
                Some("asymmetric")
            } else if [ab, bc, ac].iter().any(|d| *d < zero || *d > one) {
                Some("outside [0, 1]")
            } else if (ab == zero) != (a == b) || relative_suffix_distance(&a, &a) != zero {
                Some("identity of indiscernibles")
            } else if ac > ab + bc {
                Some("triangle inequality")
            } else {
                None
            };
            problem.map(|p| format!("{p}: a={a:?} b={b:?} c={c:?}"))
        })
        .collect();
    match failures.first() {
        None => Ok("10000 triples, 0 violations".into()),
        Some(f) => Err(format!("{} violations, first {f}", failures.len())),
    }
}

// ---------------------------------------------------------------- 2

fn all_strings(max_len: usize, q: u32) -> Vec<Vec<Symbol>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<Symbol>| {
                (0..q).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn is_subsequence(small: &[Symbol], big: &[Symbol]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Every insertion/deletion script can be reordered to delete first, so
/// ED is the cheapest route through some common subsequence of `a`.
fn edit_distance_by_search(a: &[Symbol], b: &[Symbol]) -> usize {
    (0u32..1 << a.len())
        .filter_map(|mask| {
            let kept: Vec<Symbol> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
            is_subsequence(&kept, b).then(|| a.len() + b.len() - 2 * kept.len())
        })
        .min()
        .unwrap()
}

/// Enumerates every string matching from `c` to `d` and evaluates the
/// suffix ratio definition directly. `None` stands for an unbounded value.
fn rspd_by_search(c: &[Symbol], d: &[Symbol]) -> Option<Rational> {
    fn worst(cols: &[(Option<Symbol>, Option<Symbol>)]) -> Option<Rational> {
        let mut best = Some(Rational::from_integer(0));
        for i in 0..cols.len() {
            let suffix = &cols[i..];
            let stars1 = suffix.iter().filter(|c| c.0.is_none()).count() as i64;
            let stars2 = suffix.iter().filter(|c| c.1.is_none()).count() as i64;
            let den = suffix.len() as i64 - stars1;
            let value = (den > 0).then(|| Rational::new(stars1 + stars2, den));
            best = match (best, value) {
                (Some(x), Some(y)) => Some(x.max(y)),
                _ => None,
            };
        }
        best
    }
    fn walk(
        c: &[Symbol],
        d: &[Symbol],
        cols: &mut Vec<(Option<Symbol>, Option<Symbol>)>,
        best: &mut Option<Option<Rational>>,
    ) {
        if c.is_empty() && d.is_empty() {
            let w = worst(cols);
            let better = match (*best, w) {
                (None, _) => true,
                (Some(None), Some(_)) => true,
                (Some(Some(x)), Some(y)) => y < x,
                _ => false,
            };
            if better {
                *best = Some(w);
            }
            return;
        }
        if let (Some(&x), Some(&y)) = (c.first(), d.first()) {
            if x == y {
                cols.push((Some(x), Some(y)));
                walk(&c[1..], &d[1..], cols, best);
                cols.pop();
            }
        }
        if let Some(&x) = c.first() {
            cols.push((Some(x), None));
            walk(&c[1..], d, cols, best);
            cols.pop();
        }
        if let Some(&y) = d.first() {
            cols.push((None, Some(y)));
            walk(c, &d[1..], cols, best);
            cols.pop();
        }
    }
    let mut best = None;
    walk(c, d, &mut Vec::new(), &mut best);
    best.unwrap()
}

fn oracle_equivalence() -> Check {
    let five = all_strings(5, 3);
    let ed_bad: usize = five
        .par_iter()
        .map(|a| five.iter().filter(|b| edit_distance(a, b) != edit_distance_by_search(a, b)).count())
        .sum();
    let four = all_strings(4, 3);
    let rspd_bad: usize = four
        .par_iter()
        .map(|a| {
            four.iter()
                .filter(|b| relative_suffix_pseudo_distance(a, b) != rspd_by_search(a, b))
                .count()
        })
        .sum();
    let detail = format!(
        "edit distance: {} pairs, {ed_bad} mismatches; RSPD: {} pairs, {rspd_bad} mismatches",
        five.len() * five.len(),
        four.len() * four.len()
    );
    if ed_bad + rspd_bad == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 3

fn construction_certification() -> Check {
    let config = ConstructionConfig::default();
    let tally = |property: SyncProperty, n: usize, eps: Rational| -> (usize, usize) {
        let results: Vec<(bool, bool)> = (0..100u64)
            .into_par_iter()
            .map(|seed| {
                let built = match property {
                    SyncProperty::FullSync => construct_sync_string(n, eps, seed, &config),
                    SyncProperty::SelfMatching => construct_self_matching_string(n, eps, seed, &config),
                };
                match built {
                    Ok(s) => {
                        let reread = SyncString::from_file_str(&s.to_file_string()).ok();
                        let same = reread.is_some_and(|t| t.symbols() == s.symbols() && t.eps() == eps && t.property() == property);
                        let ok = same && property.holds(s.symbols(), eps) && s.len() == n;
                        (true, ok)
                    }
                    Err(_) => (false, false),
                }
            })
            .collect();
        let built = results.iter().filter(|r| r.0).count();
        let reverified = results.iter().filter(|r| r.1).count();
        (built, reverified)
    };
    let (a_built, a_ok) = tally(SyncProperty::FullSync, 100, r(1, 2));
    let (b_built, b_ok) = tally(SyncProperty::SelfMatching, 300, r(1, 4));
    let detail = format!(
        "full sync n=100 eps=1/2: {a_built}/100 built, {a_ok} re-verified; self-matching n=300 eps=1/4: {b_built}/100 built, {b_ok} re-verified"
    );
    if a_built >= 95 && b_built >= 95 && a_ok == a_built && b_ok == b_built {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 4

fn with_alphabet(period: u64, residual: u64) -> ConstructionConfig {
    ConstructionConfig {
        alphabet: Some(AlphabetPlan { period, residual }),
        ..ConstructionConfig::default()
    }
}

/// Certified ε-sync strings of length 100: one over the recommended
/// alphabet and one over a small alphabet, where repeated symbols are common.
fn sample_sync_strings() -> Result<Vec<SyncString>, String> {
    [
        (r(1, 2), ConstructionConfig::default()),
        (r(1, 2), with_alphabet(4, 8)),
        (r(1, 4), ConstructionConfig::default()),
        (r(1, 4), with_alphabet(16, 8)),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, (eps, config))| construct_sync_string(100, eps, 40 + i as u64, &config).map_err(|e| e.to_string()))
    .collect()
}

fn prefix_distance() -> Check {
    let mut parts = Vec::new();
    let mut violations = 0;
    for s in sample_sync_strings()? {
        let (sym, eps) = (s.symbols(), s.eps());
        let threshold = Rational::from_integer(1) - eps;
        let bad: usize = (1..=100)
            .into_par_iter()
            .map(|i| {
                (i + 1..=100)
                    .filter(|&j| relative_suffix_distance(&sym[..i], &sym[..j]) <= threshold)
                    .count()
            })
            .sum();
        violations += bad;
        parts.push(format!("eps={eps} q={}: 4950 prefix pairs, {bad} at or below 1-eps", s.alphabet_size()));
    }
    let detail = parts.join("; ");
    if violations == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 5

/// A random maximal-ish monotone self-matching: equal-symbol pairs
/// (diagonal included) are offered in random order and kept when they
/// extend the chain monotonically.
fn random_self_matching(s: &[Symbol], rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for a in 0..s.len() {
        for b in 0..s.len() {
            if s[a] == s[b] {
                candidates.push((a + 1, b + 1));
            }
        }
    }
    candidates.shuffle(rng);
    let keep = rng.gen_range(1..=candidates.len());
    let mut chain: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &candidates[..keep] {
        if chain.contains_key(&a) {
            continue;
        }
        let below = chain.range(..a).next_back().is_none_or(|(_, &pb)| pb < b);
        let above = chain.range(a + 1..).next().is_none_or(|(_, &nb)| nb > b);
        if below && above {
            chain.insert(a, b);
        }
    }
    chain.into_iter().collect()
}

fn self_matching_bound() -> Check {
    let mut parts = Vec::new();
    let mut violations = 0;
    for s in sample_sync_strings()? {
        let (sym, eps) = (s.symbols(), s.eps());
        let n = sym.len() as i64;
        let holds = |good: usize, bad: usize| Rational::from_integer(bad as i64) <= eps * (n - good as i64);
        let bad_random = (0..1000u64)
            .into_par_iter()
            .filter(|&t| {
                let mut rng = rng_for(5, t);
                let m = random_self_matching(sym, &mut rng);
                let good = m.iter().filter(|(a, b)| a == b).count();
                !holds(good, m.len() - good)
            })
            .count();
        let (best, witness) = max_bad_self_matching(sym);
        let best_ok = holds(witness.good_pairs(), best) && witness.is_valid_between(sym, sym);
        violations += bad_random + usize::from(!best_ok);
        parts.push(format!(
            "eps={eps} q={}: 1000 random matchings, {bad_random} violations; maximum bad count {best}",
            s.alphabet_size()
        ));
    }
    let detail = parts.join("; ");
    if violations == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 6 & 7

const DELTAS: [(i64, i64); 3] = [(1, 20), (1, 10), (1, 5)];
const KINDS: [AdversaryKind; 3] = [AdversaryKind::UniformRandom, AdversaryKind::Burst, AdversaryKind::GreedyRepeat];
const TRIALS: u64 = 100;

struct Family {
    label: &'static str,
    decoder: Decoder,
    mode: ChannelMode,
    lengths: &'static [usize],
    limit: Duration,
    check_streaming: bool,
}

#[derive(Default)]
struct Row {
    trials: usize,
    max_misdecodings: usize,
    bound_violations: usize,
    error_free_violations: usize,
    streaming_violations: usize,
    half_error_violations: usize,
    max_half_error: usize,
}

struct FamilyResult {
    label: &'static str,
    rows: Vec<(usize, Rational, Row)>,
    elapsed: Duration,
    limit: Duration,
}

fn streaming_consistent(decoder: &Decoder, sync: &[Symbol], received: &[Symbol], full: &DecodedIndices) -> bool {
    (1..received.len()).all(|j| {
        decoder
            .decode(sync, &received[..j])
            .map(|d| d.guesses() == &full.guesses()[..j])
            .unwrap_or(false)
    })
}

fn half_error_of(t: &Transcript, guesses: &DecodedIndices) -> usize {
    let n = t.sent().len();
    let word = assign_unique(t.origins(), guesses, n);
    let reference: Vec<Option<usize>> = (1..=n).map(Some).collect();
    half_error_weight(&word, &reference)
}

fn run_family(family: &Family, strings: &BTreeMap<(SyncProperty, usize), SyncString>, property: SyncProperty) -> FamilyResult {
    let start = Instant::now();
    let mut rows = Vec::new();
    for &n in family.lengths {
        let sync = &strings[&(property, n)];
        for (di, &(p, q)) in DELTAS.iter().enumerate() {
            let delta = r(p, q);
            let outcomes: Vec<Row> = (0..TRIALS)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = rng_for(600 + n as u64 * 10 + di as u64, trial);
                    let kind = KINDS[trial as usize % KINDS.len()];
                    let script = adversary_generate(kind, sync.symbols(), sync.alphabet_size(), delta, family.mode, &mut rng)
                        .expect("valid adversary parameters");
                    let t = apply_script(sync.symbols(), &script).expect("adversary scripts are valid");
                    let guesses = family.decoder.decode(sync.symbols(), t.received()).expect("contract respected");
                    let report = count_misdecodings(&t, &guesses).unwrap();
                    let bound = misdecoding_bound(&family.decoder, property, sync.eps(), n, t.insertions(), t.deletions())
                        .expect("decoder has a bound for this string");
                    let budget = script.len();
                    let weight = half_error_of(&t, &guesses);
                    let allowed = if family.decoder.is_error_free() {
                        budget + report.misdecodings
                    } else {
                        budget + 2 * report.misdecodings
                    };
                    Row {
                        trials: 1,
                        max_misdecodings: report.misdecodings,
                        bound_violations: usize::from(!bound.respected_by(report.misdecodings)),
                        error_free_violations: if family.decoder.is_error_free() { report.error_free_violations } else { 0 },
                        streaming_violations: usize::from(
                            family.check_streaming && !streaming_consistent(&family.decoder, sync.symbols(), t.received(), &guesses),
                        ),
                        half_error_violations: usize::from(weight > allowed),
                        max_half_error: weight,
                    }
                })
                .collect();
            let mut row = Row::default();
            for o in outcomes {
                row.trials += o.trials;
                row.max_misdecodings = row.max_misdecodings.max(o.max_misdecodings);
                row.bound_violations += o.bound_violations;
                row.error_free_violations += o.error_free_violations;
                row.streaming_violations += o.streaming_violations;
                row.half_error_violations += o.half_error_violations;
                row.max_half_error = row.max_half_error.max(o.max_half_error);
            }
            rows.push((n, delta, row));
        }
    }
    FamilyResult {
        label: family.label,
        rows,
        elapsed: start.elapsed(),
        limit: family.limit,
    }
}

fn misdecoding_families() -> Vec<FamilyResult> {
    // small alphabets keep repeated symbols, and so misdecodings, in play
    let mut strings = BTreeMap::new();
    for n in [100, 200, 300] {
        let s = construct_sync_string(n, r(1, 4), 60 + n as u64, &with_alphabet(16, 16)).expect("full sync string");
        strings.insert((SyncProperty::FullSync, n), s);
    }
    for n in [200, 300] {
        let s = construct_self_matching_string(n, r(1, 64), 70 + n as u64, &with_alphabet(1, 4096))
            .expect("self-matching string");
        strings.insert((SyncProperty::SelfMatching, n), s);
    }
    let min = |m: u64| Duration::from_secs(60 * m);
    let full = [
        Family {
            label: "min-RSD",
            decoder: Decoder::MinRsd,
            mode: ChannelMode::InsDel,
            lengths: &[200, 300],
            limit: min(15),
            check_streaming: false,
        },
        Family {
            label: "min-RSPD",
            decoder: Decoder::MinRspd { eps: r(1, 4) },
            mode: ChannelMode::InsDel,
            lengths: &[100, 200, 300],
            limit: min(20),
            check_streaming: false,
        },
        Family {
            label: "deletion-greedy",
            decoder: Decoder::DeletionGreedy,
            mode: ChannelMode::DeletionOnly,
            lengths: &[200, 300],
            limit: min(1),
            check_streaming: true,
        },
        Family {
            label: "two-sided ins-only",
            decoder: Decoder::TwoSided(OneSidedMode::InsertionOnly),
            mode: ChannelMode::InsertionOnly,
            lengths: &[200, 300],
            limit: min(1),
            check_streaming: false,
        },
        Family {
            label: "two-sided del-only",
            decoder: Decoder::TwoSided(OneSidedMode::DeletionOnly),
            mode: ChannelMode::DeletionOnly,
            lengths: &[200, 300],
            limit: min(1),
            check_streaming: false,
        },
    ];
    let global = Family {
        label: "global beta=1/8",
        decoder: Decoder::Global { beta: r(1, 8) },
        mode: ChannelMode::InsDel,
        lengths: &[200, 300],
        limit: min(2),
        check_streaming: false,
    };
    let mut out: Vec<FamilyResult> = full.iter().map(|f| run_family(f, &strings, SyncProperty::FullSync)).collect();
    out.push(run_family(&global, &strings, SyncProperty::SelfMatching));
    out
}

fn report_families(results: &[FamilyResult]) -> (Check, Check) {
    let mut lines6 = Vec::new();
    let mut lines7 = Vec::new();
    let mut ok6 = true;
    let mut ok7 = true;
    for f in results {
        let in_time = f.elapsed < f.limit;
        ok6 &= in_time;
        lines6.push(format!(
            "    {}: {} (limit {})",
            f.label,
            fmt_secs(f.elapsed),
            fmt_secs(f.limit)
        ));
        for (n, delta, row) in &f.rows {
            let row_ok = row.bound_violations + row.error_free_violations + row.streaming_violations == 0;
            ok6 &= row_ok;
            ok7 &= row.half_error_violations == 0;
            lines6.push(format!(
                "      n={n} delta={delta}: {} trials, max misdecodings {}, bound violations {}, error-free violations {}, streaming violations {}",
                row.trials, row.max_misdecodings, row.bound_violations, row.error_free_violations, row.streaming_violations
            ));
            lines7.push(format!(
                "      {} n={n} delta={delta}: max half-error weight {}, violations {}",
                f.label, row.max_half_error, row.half_error_violations
            ));
        }
    }
    let six = lines6.join("\n");
    let seven = lines7.join("\n");
    (
        if ok6 { Ok(format!("all rows within bounds\n{six}")) } else { Err(format!("violations or timeouts\n{six}")) },
        if ok7 { Ok(format!("all trials within budget\n{seven}")) } else { Err(format!("violations\n{seven}")) },
    )
}

// ---------------------------------------------------------------- 8 & 9

fn random_message(params: &InsdelCodeParams, rng: &mut ChaCha8Rng) -> Vec<Vec<u16>> {
    let order = 1u32 << params.field_bits;
    (0..params.k_msg)
        .map(|_| (0..params.layers).map(|_| rng.gen_range(0..order) as u16).collect())
        .collect()
}

/// Runs `trials` encode, channel, decode round trips; returns the number of
/// exact recoveries.
fn codec_trials(params: &InsdelCodeParams, sync: &SyncString, tag: u64, trials: u64) -> usize {
    (0..trials)
        .into_par_iter()
        .filter(|&trial| {
            let mut rng = rng_for(tag, trial);
            let msg = random_message(params, &mut rng);
            let word = insdel_encode(&msg, params, sync).expect("encodable");
            let kind = KINDS[trial as usize % KINDS.len()];
            let script = adversary_generate(kind, sync.symbols(), sync.alphabet_size(), params.delta, params.channel, &mut rng)
                .expect("valid adversary parameters");
            let received = transmit(&word, &script, params.field_bits, &mut rng).expect("valid script");
            insdel_decode(&received, params, sync).ok() == Some(msg)
        })
        .count()
}

fn end_to_end() -> Check {
    let req = CodeRequest::new(256, r(1, 10), r(3, 10), ChannelMode::InsDel, IndexingChoice::Global);
    let params = code_params(&req).map_err(|e| e.to_string())?;
    let sync = construct_self_matching_string(params.n, params.sync_eps, 8, &ConstructionConfig::default())
        .map_err(|e| e.to_string())?;
    let recovered = codec_trials(&params, &sync, 800, 100);
    let detail = format!(
        "n={} k={} field=2^{} layers={} q_sync={} sync_eps={} radius={} k_bound={}; {recovered}/100 recovered; rate {:.4} (lower bound {:.4}) vs target {:.4}",
        params.n,
        params.k_msg,
        params.field_bits,
        params.layers,
        params.sync_alphabet,
        params.sync_eps,
        params.radius,
        params.k_bound,
        params.rate(),
        params.rate_lower_bound(),
        params.target_rate()
    );
    if recovered == 100 && params.rate() > params.target_rate() && params.field_bits >= 8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn one_sided_codes() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for (channel, tag) in [(ChannelMode::DeletionOnly, 900), (ChannelMode::InsertionOnly, 901)] {
        let mut req = CodeRequest::new(256, r(3, 20), r(3, 10), channel, IndexingChoice::TwoSided);
        req.sync_eps = Some(r(1, 4));
        let params = code_params(&req).map_err(|e| e.to_string())?;
        let sync = construct_sync_string(params.n, params.sync_eps, tag, &ConstructionConfig::default())
            .map_err(|e| e.to_string())?;
        let recovered = codec_trials(&params, &sync, tag, 100);
        ok &= recovered == 100 && params.decoder.is_error_free();
        parts.push(format!(
            "{channel}: k={} radius={} budget={} misdecoding bound={}, {recovered}/100 recovered",
            params.k_msg, params.radius, params.budget, params.k_bound
        ));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------- 10

fn robustness() -> Check {
    let (n, eps) = (300usize, r(1, 4));
    let gamma = eps / 4;
    let corrupted = syncstr::rational::floor_mul(n, gamma);
    let loosened = eps + gamma * 2;
    let mut parts = Vec::new();
    let mut ok = true;
    for (label, config) in [("recommended", ConstructionConfig::default()), ("q=64", with_alphabet(1, 64))] {
        let passed = (0..50u64)
            .into_par_iter()
            .filter(|&seed| {
                let s = match construct_self_matching_string(n, eps, 1000 + seed, &config) {
                    Ok(s) => s,
                    Err(_) => return false,
                };
                let mut rng = rng_for(10, seed);
                let mut body = s.symbols().to_vec();
                for pos in rand::seq::index::sample(&mut rng, n, corrupted) {
                    // copying symbols from elsewhere manufactures new matches
                    body[pos] = if rng.gen_bool(0.5) { body[rng.gen_range(0..n)] } else { rng.gen_range(0..s.alphabet_size()) };
                }
                check_self_matching(&body, loosened).holds
            })
            .count();
        ok &= passed == 50;
        parts.push(format!("{label} alphabet: {passed}/50 pass"));
    }
    let detail = format!("n={n} eps={eps}, {corrupted} positions corrupted, checked at {loosened}: {}", parts.join(", "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ----------------------------------------------------------------

fn main() -> ExitCode {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |c: u32| selected.is_empty() || selected.contains(&c);
    let mut failed = 0;
    let mut emit = |number: u32, title: &str, limit: Option<Duration>, elapsed: Duration, outcome: Check| {
        let late = limit.is_some_and(|l| elapsed >= l);
        let (tag, detail) = match outcome {
            Ok(d) if !late => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d} (over time limit)")),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        let limit = limit.map_or(String::new(), |l| format!(" / limit {}", fmt_secs(l)));
        println!("[{tag}] {number:>2} {title} ({}{limit}): {detail}", fmt_secs(elapsed));
    };
    let timed = |f: fn() -> Check| {
        let start = Instant::now();
        let out = f();
        (start.elapsed(), out)
    };
    let secs = Duration::from_secs;

    let simple: [Criterion; 5] = [
        (1, "RSD metric axioms", Some(secs(10)), rsd_metric),
        (2, "oracle equivalence", Some(secs(60)), oracle_equivalence),
        (3, "construction certification", Some(secs(600)), construction_certification),
        (4, "prefix distance of sync strings", None, prefix_distance),
        (5, "self-matching bound", None, self_matching_bound),
    ];
    for (number, title, limit, f) in simple {
        if wanted(number) {
            let (elapsed, out) = timed(f);
            emit(number, title, limit, elapsed, out);
        }
    }
    if wanted(6) || wanted(7) {
        let start = Instant::now();
        let families = misdecoding_families();
        let elapsed = start.elapsed();
        let (six, seven) = report_families(&families);
        if wanted(6) {
            emit(6, "misdecoding bounds", None, elapsed, six);
        }
        if wanted(7) {
            emit(7, "half-error reduction", None, elapsed, seven);
        }
    }
    let rest: [Criterion; 3] = [
        (8, "end-to-end insdel code", Some(secs(600)), end_to_end),
        (9, "one-sided codes", Some(secs(300)), one_sided_codes),
        (10, "self-matching robustness", None, robustness),
    ];
    for (number, title, limit, f) in rest {
        if wanted(number) {
            let (elapsed, out) = timed(f);
            emit(number, title, limit, elapsed, out);
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

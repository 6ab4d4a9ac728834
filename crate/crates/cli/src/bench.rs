use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use syncstr::code::IndexingChoice;
use syncstr::construction::{construct, AlphabetPlan, ConstructionConfig, SyncProperty, SyncString};
use syncstr::indexing::{
    adversary_generate, count_misdecodings, misdecoding_bound, AdversaryKind, ChannelMode, Decoder, OneSidedMode,
};
use syncstr::rational::{sqrt_or_floor, Fraction};
use syncstr::strings::apply_script;
use syncstr::Rational;

use crate::report::{trial_seed, Document, BENCH_SCHEMA, SEED_DERIVATION};
use crate::{parse_alphabet, parse_property, parse_rational, parse_unit, CliError, Outcome, OutputArgs};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// global, min_rsd, min_rspd, deletion_greedy or two_sided.
    #[arg(long)]
    pub decoder: IndexingChoice,
    /// insdel, del_only or ins_only; defaults to what the decoder supports.
    #[arg(long)]
    pub channel: Option<ChannelMode>,
    /// uniform_random, burst or greedy_repeat.
    #[arg(long, default_value = "uniform_random")]
    pub adversary: AdversaryKind,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Level of the synchronization string.
    #[arg(long, value_parser = parse_unit, default_value = "1/2")]
    pub eps: Rational,
    /// Property of the string; self_matching for the global decoder,
    /// full_sync otherwise.
    #[arg(long, value_parser = parse_property)]
    pub property: Option<SyncProperty>,
    /// Error fractions, comma separated.
    #[arg(long, value_parser = parse_rational, value_delimiter = ',', default_value = "1/20,1/10,1/5")]
    pub delta: Vec<Rational>,
    /// Round parameter of the global decoder; defaults to √eps.
    #[arg(long, value_parser = parse_unit)]
    pub beta: Option<Rational>,
    /// Trials per delta.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Master seed; also seeds the string construction.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use this string file instead of constructing one.
    #[arg(long)]
    pub string: Option<PathBuf>,
    /// Alphabet override `PxR` for the constructed string.
    #[arg(long, value_parser = parse_alphabet)]
    pub alphabet: Option<AlphabetPlan>,
    /// Add per-row wall time in milliseconds (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct BenchConfig {
    decoder: String,
    channel: &'static str,
    adversary: &'static str,
    n: usize,
    eps: String,
    property: &'static str,
    alphabet_size: u32,
    string_seed: u64,
    deltas: Vec<String>,
    trials: usize,
    master_seed: u64,
    seed_derivation: &'static str,
}

#[derive(Serialize, Clone)]
struct BenchRow {
    schema: &'static str,
    /// `trial` or `aggregate`.
    row: &'static str,
    decoder: String,
    delta: String,
    /// Counter the seed was derived from; empty on the aggregate.
    counter: Option<u64>,
    seed: Option<u64>,
    d_i: usize,
    d_r: usize,
    /// Per trial: the count. Aggregate: the largest count.
    misdecodings: usize,
    error_free_violations: usize,
    /// Exact bound `p/q`; empty on the aggregate.
    bound: String,
    bound_strict: Option<bool>,
    bound_respected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

fn resolve_decoder(args: &BenchArgs, eps: Rational) -> Result<(Decoder, ChannelMode), CliError> {
    let default_channel = match args.decoder {
        IndexingChoice::DeletionGreedy | IndexingChoice::TwoSided => ChannelMode::DeletionOnly,
        _ => ChannelMode::InsDel,
    };
    let channel = args.channel.unwrap_or(default_channel);
    let decoder = match (args.decoder, channel) {
        (IndexingChoice::MinRsd, _) => Decoder::MinRsd,
        (IndexingChoice::MinRspd, _) => Decoder::MinRspd { eps },
        (IndexingChoice::Global, _) => Decoder::Global {
            beta: args.beta.unwrap_or_else(|| sqrt_or_floor(eps)),
        },
        (IndexingChoice::DeletionGreedy, ChannelMode::DeletionOnly) => Decoder::DeletionGreedy,
        (IndexingChoice::TwoSided, ChannelMode::DeletionOnly) => Decoder::TwoSided(OneSidedMode::DeletionOnly),
        (IndexingChoice::TwoSided, ChannelMode::InsertionOnly) => Decoder::TwoSided(OneSidedMode::InsertionOnly),
        (choice, channel) => {
            return Err(CliError::usage(format!("decoder {choice} does not support the {channel} channel")))
        }
    };
    Ok((decoder, channel))
}

fn load_string(args: &BenchArgs) -> Result<SyncString, CliError> {
    if let Some(path) = &args.string {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        return SyncString::from_file_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())));
    }
    let property = args.property.unwrap_or(match args.decoder {
        IndexingChoice::Global => SyncProperty::SelfMatching,
        _ => SyncProperty::FullSync,
    });
    let config = ConstructionConfig {
        alphabet: args.alphabet,
        ..ConstructionConfig::default()
    };
    construct(property, args.n, args.eps, args.seed, &config).map_err(|e| CliError::run(format!("construction: {e}")))
}

pub fn run(args: &BenchArgs) -> Result<Outcome, CliError> {
    if args.n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    if let Some(d) = args.delta.iter().find(|d| **d < Rational::from_integer(0) || **d > Rational::from_integer(1)) {
        return Err(CliError::usage(format!("delta {d} must lie in [0, 1]")));
    }
    let sync = load_string(args)?;
    let eps = sync.eps();
    let (decoder, channel) = resolve_decoder(args, eps)?;
    if misdecoding_bound(&decoder, sync.property(), eps, sync.len(), 0, 0).is_none() {
        return Err(CliError::usage(format!("{decoder} has no bound on a {} string", sync.property())));
    }

    let jobs: Vec<(Rational, u64)> = args
        .delta
        .iter()
        .enumerate()
        .flat_map(|(d, &delta)| (0..args.trials).map(move |t| (delta, (d * args.trials + t) as u64)))
        .collect();
    let rows: Vec<Result<BenchRow, CliError>> = jobs
        .par_iter()
        .map(|&(delta, counter)| {
            let start = Instant::now();
            let seed = trial_seed(args.seed, counter);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let script = adversary_generate(args.adversary, sync.symbols(), sync.alphabet_size(), delta, channel, &mut rng)
                .map_err(CliError::run)?;
            let t = apply_script(sync.symbols(), &script).map_err(CliError::run)?;
            let guesses = decoder.decode(sync.symbols(), t.received()).map_err(CliError::run)?;
            let report = count_misdecodings(&t, &guesses).map_err(CliError::run)?;
            let bound = misdecoding_bound(&decoder, sync.property(), eps, sync.len(), t.insertions(), t.deletions())
                .expect("checked above");
            let respected = bound.respected_by(report.misdecodings)
                && !(decoder.is_error_free() && report.error_free_violations > 0);
            Ok(BenchRow {
                schema: BENCH_SCHEMA,
                row: "trial",
                decoder: decoder.name().to_string(),
                delta: Fraction(delta).to_string(),
                counter: Some(counter),
                seed: Some(seed),
                d_i: t.insertions(),
                d_r: t.deletions(),
                misdecodings: report.misdecodings,
                error_free_violations: report.error_free_violations,
                bound: Fraction(bound.value).to_string(),
                bound_strict: Some(bound.strict),
                bound_respected: respected,
                wall_ms: args.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
            })
        })
        .collect();
    let rows: Vec<BenchRow> = rows.into_iter().collect::<Result<_, _>>()?;

    let aggregate = BenchRow {
        schema: BENCH_SCHEMA,
        row: "aggregate",
        decoder: decoder.name().to_string(),
        delta: "all".into(),
        counter: None,
        seed: None,
        d_i: rows.iter().map(|r| r.d_i).sum(),
        d_r: rows.iter().map(|r| r.d_r).sum(),
        misdecodings: rows.iter().map(|r| r.misdecodings).max().unwrap_or(0),
        error_free_violations: rows.iter().map(|r| r.error_free_violations).sum(),
        bound: String::new(),
        bound_strict: None,
        bound_respected: rows.iter().all(|r| r.bound_respected),
        wall_ms: args.timing.then(|| rows.iter().filter_map(|r| r.wall_ms).sum()),
    };
    let config = BenchConfig {
        decoder: match decoder {
            Decoder::Global { beta } => format!("global beta={}", Fraction(beta)),
            other => other.name().to_string(),
        },
        channel: channel.as_str(),
        adversary: args.adversary.as_str(),
        n: sync.len(),
        eps: Fraction(eps).to_string(),
        property: sync.property().as_str(),
        alphabet_size: sync.alphabet_size(),
        string_seed: sync.seed(),
        deltas: args.delta.iter().map(|d| Fraction(*d).to_string()).collect(),
        trials: args.trials,
        master_seed: args.seed,
        seed_derivation: SEED_DERIVATION,
    };
    let doc = Document {
        schema: BENCH_SCHEMA,
        config: &config,
        rows: &rows,
        aggregate: &aggregate,
    };
    print!("{}", doc.render(args.output.format));
    Ok(if aggregate.bound_respected { Outcome::Pass } else { Outcome::Violation })
}

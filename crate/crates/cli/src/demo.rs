use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use syncstr::code::gf::Gf;
use syncstr::code::{
    code_params, half_error_weight, indexing_procedure, insdel_decode, insdel_encode, transmit, CodeError, CodeRequest,
    IndexingChoice,
};
use syncstr::construction::{construct, ConstructionConfig};
use syncstr::indexing::{adversary_generate, AdversaryKind, ChannelMode};
use syncstr::rational::Fraction;
use syncstr::Rational;

use crate::report::{render_record, trial_seed, DEMO_SCHEMA, SEED_DERIVATION};
use crate::{parse_rational, parse_unit, CliError, Outcome, OutputArgs};

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Error fraction the code is built for; the adversary spends all of it.
    #[arg(long, value_parser = parse_rational, default_value = "1/10")]
    pub delta: Rational,
    /// Rate slack: the code aims for rate above 1 − delta − eps.
    #[arg(long, value_parser = parse_unit, default_value = "3/10")]
    pub eps: Rational,
    /// insdel, del_only or ins_only.
    #[arg(long, default_value = "insdel")]
    pub channel: ChannelMode,
    /// global, min_rsd, min_rspd, deletion_greedy or two_sided.
    #[arg(long, default_value = "global")]
    pub decoder: IndexingChoice,
    /// Level of the synchronization string; derived from eps by default.
    #[arg(long, value_parser = parse_unit)]
    pub sync_eps: Option<Rational>,
    /// Inner field width in bits.
    #[arg(long)]
    pub field_bits: Option<u32>,
    #[arg(long, default_value = "uniform_random")]
    pub adversary: AdversaryKind,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Master seed; also seeds the string construction.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct DemoReport {
    schema: &'static str,
    n: usize,
    k: usize,
    delta: String,
    eps: String,
    channel: &'static str,
    decoder: String,
    sync_property: &'static str,
    sync_eps: String,
    sync_alphabet: u64,
    field_bits: u32,
    layers: usize,
    budget: usize,
    misdecoding_allowance: usize,
    radius: usize,
    rate: String,
    rate_lower_bound: String,
    target_rate: String,
    adversary: &'static str,
    trials: usize,
    recoveries: usize,
    failures: usize,
    wrong_messages: usize,
    max_half_error_weight: usize,
    master_seed: u64,
    seed_derivation: &'static str,
}

enum TrialOutcome {
    Recovered,
    Failed,
    Wrong,
}

pub fn run(args: &DemoArgs) -> Result<Outcome, CliError> {
    let mut req = CodeRequest::new(args.n, args.delta, args.eps, args.channel, args.decoder);
    req.sync_eps = args.sync_eps;
    req.field_bits = args.field_bits;
    let p = code_params(&req).map_err(CliError::usage)?;
    let sync = construct(p.sync_property, p.n, p.sync_eps, args.seed, &ConstructionConfig::default())
        .map_err(|e| CliError::run(format!("construction: {e}")))?;
    let order = 1u32 << p.field_bits;

    let results: Vec<Result<(TrialOutcome, usize), CliError>> = (0..args.trials as u64)
        .into_par_iter()
        .map(|counter| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(args.seed, counter));
            let msg: Vec<Vec<Gf>> = (0..p.k_msg)
                .map(|_| (0..p.layers).map(|_| rng.gen_range(0..order) as Gf).collect())
                .collect();
            let word = insdel_encode(&msg, &p, &sync).map_err(CliError::run)?;
            let script = adversary_generate(args.adversary, sync.symbols(), sync.alphabet_size(), p.delta, p.channel, &mut rng)
                .map_err(CliError::run)?;
            let received = transmit(&word, &script, p.field_bits, &mut rng).map_err(CliError::run)?;
            let (half, _) = indexing_procedure(&received, &p, &sync).map_err(CliError::run)?;
            let reference: Vec<Vec<Gf>> = word.iter().map(|c| c.inner.clone()).collect();
            let weight = half_error_weight(&half, &reference);
            let outcome = match insdel_decode(&received, &p, &sync) {
                Ok(out) if out == msg => TrialOutcome::Recovered,
                Ok(_) => TrialOutcome::Wrong,
                Err(CodeError::DecodeFailure { .. }) => TrialOutcome::Failed,
                Err(e) => return Err(CliError::run(e)),
            };
            Ok((outcome, weight))
        })
        .collect();
    let results: Vec<(TrialOutcome, usize)> = results.into_iter().collect::<Result<_, _>>()?;

    let count = |f: fn(&TrialOutcome) -> bool| results.iter().filter(|(o, _)| f(o)).count();
    let report = DemoReport {
        schema: DEMO_SCHEMA,
        n: p.n,
        k: p.k_msg,
        delta: Fraction(p.delta).to_string(),
        eps: Fraction(p.eps).to_string(),
        channel: p.channel.as_str(),
        decoder: p.decoder.name().to_string(),
        sync_property: p.sync_property.as_str(),
        sync_eps: Fraction(p.sync_eps).to_string(),
        sync_alphabet: p.sync_alphabet,
        field_bits: p.field_bits,
        layers: p.layers,
        budget: p.budget,
        misdecoding_allowance: p.k_bound,
        radius: p.radius,
        rate: format!("{:.6}", p.rate()),
        rate_lower_bound: format!("{:.6}", p.rate_lower_bound()),
        target_rate: format!("{:.6}", p.target_rate()),
        adversary: args.adversary.as_str(),
        trials: args.trials,
        recoveries: count(|o| matches!(o, TrialOutcome::Recovered)),
        failures: count(|o| matches!(o, TrialOutcome::Failed)),
        wrong_messages: count(|o| matches!(o, TrialOutcome::Wrong)),
        max_half_error_weight: results.iter().map(|(_, w)| *w).max().unwrap_or(0),
        master_seed: args.seed,
        seed_derivation: SEED_DERIVATION,
    };
    print!("{}", render_record(&report, args.output.format));
    Ok(if report.recoveries == report.trials { Outcome::Pass } else { Outcome::Violation })
}

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use syncstr::construction::{construct as build, AlphabetPlan, ConstructionConfig, SyncFile, SyncProperty};
use syncstr::rational::Fraction;
use syncstr::sync_properties::{check_self_matching, check_synchronization, PropertyVerdict, Witness};
use syncstr::Rational;

use crate::report::{render_record, CONSTRUCT_SCHEMA, VERIFY_SCHEMA};
use crate::{parse_alphabet, parse_property, parse_unit, CliError, Outcome, OutputArgs};

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// String length.
    #[arg(long)]
    pub n: usize,
    /// Property level, as p/q or a decimal.
    #[arg(long, value_parser = parse_unit)]
    pub eps: Rational,
    /// full_sync or self_matching.
    #[arg(long, value_parser = parse_property, default_value = "full_sync")]
    pub property: SyncProperty,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Alphabet override `PxR` (period times residual).
    #[arg(long, value_parser = parse_alphabet)]
    pub alphabet: Option<AlphabetPlan>,
    /// Where to write the string.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct ConstructSummary {
    schema: &'static str,
    path: String,
    n: usize,
    eps: String,
    property: &'static str,
    alphabet_size: u32,
    seed: u64,
    /// Resamplings for full_sync, redraws for self_matching.
    attempts: usize,
}

pub fn construct(args: &ConstructArgs) -> Result<Outcome, CliError> {
    if args.n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let config = ConstructionConfig {
        alphabet: args.alphabet,
        ..ConstructionConfig::default()
    };
    let s = build(args.property, args.n, args.eps, args.seed, &config).map_err(|e| match e {
        syncstr::construction::ConstructionError::CapExceeded { .. } => {
            CliError::run(format!("construction failed: {e}; rerun with --seed {} to reproduce", args.seed))
        }
        other => CliError::usage(other),
    })?;
    std::fs::write(&args.out, s.to_file_string())
        .map_err(|e| CliError::run(format!("cannot write {}: {e}", args.out.display())))?;
    let summary = ConstructSummary {
        schema: CONSTRUCT_SCHEMA,
        path: args.out.display().to_string(),
        n: s.len(),
        eps: Fraction(s.eps()).to_string(),
        property: s.property().as_str(),
        alphabet_size: s.alphabet_size(),
        seed: s.seed(),
        attempts: s.attempts(),
    };
    print!("{}", render_record(&summary, args.output.format));
    Ok(Outcome::Pass)
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// String file written by `construct`.
    pub path: PathBuf,
    /// Level to check at; defaults to the file's own.
    #[arg(long, value_parser = parse_unit)]
    pub eps: Option<Rational>,
    /// Property to check; defaults to the file's own.
    #[arg(long, value_parser = parse_property)]
    pub property: Option<SyncProperty>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    path: String,
    n: usize,
    eps: String,
    property: &'static str,
    holds: bool,
    /// `triple i=.. j=.. k=.. ed=..` or `matching a:b a:b ...` (1-based).
    witness: String,
}

fn witness_text(verdict: &PropertyVerdict) -> String {
    match &verdict.witness {
        None => String::new(),
        Some(Witness::Triple(v)) => format!("triple i={} j={} k={} ed={}", v.i, v.j, v.k, v.edit_distance),
        Some(Witness::BadMatching(m)) => {
            let pairs: Vec<String> = m.pairs().iter().map(|(a, b)| format!("{a}:{b}")).collect();
            format!("matching {}", pairs.join(" "))
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&args.path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.path.display())))?;
    let file = SyncFile::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", args.path.display())))?;
    let eps = args.eps.unwrap_or(file.eps);
    let property = args.property.unwrap_or(file.property);
    let verdict = match property {
        SyncProperty::FullSync => check_synchronization(&file.symbols, eps),
        SyncProperty::SelfMatching => check_self_matching(&file.symbols, eps),
    };
    let report = VerifyReport {
        schema: VERIFY_SCHEMA,
        path: args.path.display().to_string(),
        n: file.n,
        eps: Fraction(eps).to_string(),
        property: property.as_str(),
        holds: verdict.holds,
        witness: witness_text(&verdict),
    };
    print!("{}", render_record(&report, args.output.format));
    Ok(if verdict.holds { Outcome::Pass } else { Outcome::Violation })
}

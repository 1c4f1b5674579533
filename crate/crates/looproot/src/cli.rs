//! The `looproot` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use looproot_core::catalog::{named, BUILTIN};
use looproot_core::loop_classifier::{
    build_root_function, classify_root_function, closure_oracle, enumerate_loop_subsystems, materialize_window,
    oracle_generators, verify_root_function, LoopEnumeration, Violation,
};
use looproot_core::roots::DEFAULT_SAFETY_CAP;
use looproot_core::subsystems::enumerate_subsystems;
use looproot_core::{CartanMatrix, HeightBound, RootSystem};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::formats::{
    compact_map, parse_gcm, tsv, tuple, AffineRootRecord, ClassifiedPairRecord, CosetFamilyRecord, RootRecord,
    RootsReport, ScalingsRecord, SubsystemRecord,
};

pub const SAFETY_CAP_ENV: &str = "LOOPROOT_SAFETY_CAP";

#[derive(Debug, Parser)]
#[command(name = "looproot", version, about = "Root subsystems of loop extensions of root systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// GCM file: {"labels": [...], "matrix": [[...]]}. Takes precedence over --type.
    #[arg(long, global = true)]
    pub gcm: Option<PathBuf>,
    /// Built-in matrix: a1..an, b2.., c2.., d4.., e6..e8, f4, g2, a1~.
    #[arg(long = "type", global = true)]
    pub type_name: Option<String>,
    /// Keep only roots of height at most this; required for non-finite matrices.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub height_bound: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 picks automatically.
    #[arg(long, global = true, default_value_t = 0)]
    pub parallelism: usize,
    /// Run metadata on stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the roots, sorted by height then coordinates.
    Roots {
        #[arg(long)]
        positive: bool,
    },
    /// Enumerate root subsystems with their simple systems.
    Subsystems {
        #[arg(long, default_value_t = looproot_core::subsystems::DEFAULT_RANK_BOUND)]
        rank_bound: usize,
    },
    /// Basic scaling functions on the simple roots, by both routes.
    Scalings,
    /// Read a coset family and print its classified pair.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Read a classified pair and print its coset family.
    Build {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check a coset family, optionally against the brute-force closure.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(1..))]
        window: i64,
    },
    /// Enumerate all classified pairs within the bounds.
    Census {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        modulus_bound: i64,
        /// Bound on |x̄| for zero-modulus coordinates; defaults to the modulus bound.
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        offset_bound: Option<i64>,
        #[arg(long)]
        no_singletons: bool,
        #[arg(long, default_value_t = looproot_core::subsystems::DEFAULT_RANK_BOUND)]
        rank_bound: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Subsystems { .. } => "subsystems",
            Command::Scalings => "scalings",
            Command::Classify { .. } => "classify",
            Command::Build { .. } => "build",
            Command::Verify { .. } => "verify",
            Command::Census { .. } => "census",
        }
    }
}

/// Output of a successful or failed run: what goes to stdout, and the error if any.
pub struct Outcome {
    pub stdout: String,
    pub error: Option<CliError>,
}

impl From<Result<String, CliError>> for Outcome {
    fn from(r: Result<String, CliError>) -> Self {
        match r {
            Ok(stdout) => Outcome { stdout, error: None },
            Err(e) => Outcome { stdout: String::new(), error: Some(e) },
        }
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let start = Instant::now();
    let outcome = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    if cli.verbose {
        eprintln!(
            "looproot {} command={} threads={} elapsed={:.3?}",
            env!("CARGO_PKG_VERSION"),
            cli.command.name(),
            rayon::current_num_threads(),
            start.elapsed()
        );
    }
    match outcome.error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if cli.parallelism > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.parallelism).build_global() {
            if cli.verbose {
                eprintln!("looproot: thread pool already configured: {e}");
            }
        }
    }
    let ambient = match load_gcm(cli).and_then(|g| generate(&g, cli.height_bound)) {
        Ok(a) => a,
        Err(e) => return Err(e).into(),
    };
    match &cli.command {
        Command::Roots { positive } => roots(&ambient, *positive, cli).into(),
        Command::Subsystems { rank_bound } => subsystems(&ambient, *rank_bound, cli).into(),
        Command::Scalings => scalings(&ambient, cli).into(),
        Command::Classify { input } => classify(&ambient, input, cli).into(),
        Command::Build { input } => build(&ambient, input, cli).into(),
        Command::Verify { input, oracle, window } => verify(&ambient, input, oracle.then_some(*window), cli),
        Command::Census { modulus_bound, offset_bound, no_singletons, rank_bound } => {
            let bounds = LoopEnumeration {
                modulus_bound: *modulus_bound,
                offset_bound: offset_bound.unwrap_or(*modulus_bound),
                include_singletons: !no_singletons,
                rank_bound: *rank_bound,
            };
            census(&ambient, &bounds, cli).into()
        }
    }
}

fn load_gcm(cli: &Cli) -> Result<CartanMatrix, CliError> {
    if let Some(path) = &cli.gcm {
        return Ok(parse_gcm(&read(path)?)?);
    }
    match &cli.type_name {
        Some(name) => named(name).ok_or_else(|| {
            CliError::Usage(format!("unknown --type {name}; built-ins include {}", BUILTIN.join(", ")))
        }),
        None => Err(CliError::Usage("one of --gcm or --type is required".into())),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::domain("cli", "Io", format!("{}: {e}", path.display())))
}

fn safety_cap() -> Result<usize, CliError> {
    match std::env::var(SAFETY_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SAFETY_CAP_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_SAFETY_CAP),
    }
}

fn generate(gcm: &CartanMatrix, height_bound: Option<u64>) -> Result<RootSystem, CliError> {
    let bound = height_bound.map_or(HeightBound::UnboundedFinite, HeightBound::Bounded);
    Ok(RootSystem::generate_with_cap(gcm, bound, safety_cap()?)?)
}

fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn parse_input<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| crate::formats::FormatError::from(e).into())
}

fn roots(ambient: &RootSystem, positive: bool, cli: &Cli) -> Result<String, CliError> {
    let labels = ambient.gcm().labels();
    let records: Vec<RootRecord> = ambient
        .roots()
        .iter()
        .filter(|r| !positive || r.is_positive())
        .map(|r| RootRecord::new(r, labels))
        .collect();
    Ok(match cli.format {
        Format::Json => emit_json(&RootsReport {
            labels: labels.to_vec(),
            height_bound: cli.height_bound,
            complete: ambient.is_complete(),
            count: records.len(),
            roots: records,
        }),
        Format::Tsv => tsv(
            &["label", "coords", "coroot", "height"],
            records.iter().map(|r| vec![r.label.clone(), tuple(&r.coords), tuple(&r.coroot), r.height.to_string()]),
        ),
    })
}

fn subsystems(ambient: &RootSystem, rank_bound: usize, cli: &Cli) -> Result<String, CliError> {
    let subs = enumerate_subsystems(ambient, rank_bound)?;
    let records: Vec<SubsystemRecord> = subs.iter().map(SubsystemRecord::new).collect();
    Ok(match cli.format {
        Format::Json => emit_json(&json!({ "count": records.len(), "subsystems": records })),
        Format::Tsv => tsv(
            &["size", "rank", "gamma", "cartan", "components"],
            records.iter().map(|r| {
                vec![
                    r.roots.len().to_string(),
                    r.gamma.len().to_string(),
                    serde_json::to_string(&r.gamma).unwrap(),
                    serde_json::to_string(&r.cartan).unwrap(),
                    serde_json::to_string(&r.components).unwrap(),
                ]
            }),
        ),
    })
}

fn scalings(ambient: &RootSystem, cli: &Cli) -> Result<String, CliError> {
    let gcm = ambient.gcm();
    let record = ScalingsRecord::new(&gcm.rows(), gcm.labels());
    Ok(match cli.format {
        Format::Json => emit_json(&record),
        Format::Tsv => tsv(
            &["m", "case", "padic", "closed_form", "agree"],
            record.basics.iter().map(|b| {
                vec![
                    compact_map(&b.m),
                    b.case.clone(),
                    b.padic.to_string(),
                    b.closed_form.to_string(),
                    record.agree.map_or("n/a".into(), |a| a.to_string()),
                ]
            }),
        ),
    })
}

fn pair_rows(records: &[ClassifiedPairRecord]) -> String {
    tsv(
        &["support", "gamma", "m", "xbar"],
        records.iter().map(|r| {
            vec![
                serde_json::to_string(&r.support).unwrap(),
                serde_json::to_string(&r.gamma).unwrap(),
                compact_map(&r.m),
                compact_map(&r.xbar),
            ]
        }),
    )
}

fn classify(ambient: &RootSystem, input: &Path, cli: &Cli) -> Result<String, CliError> {
    let record: CosetFamilyRecord = parse_input(input)?;
    let cf = record.to_family(ambient)?;
    let pair = classify_root_function(&cf, ambient)?;
    let out = ClassifiedPairRecord::new(&pair);
    Ok(match cli.format {
        Format::Json => emit_json(&out),
        Format::Tsv => pair_rows(&[out]),
    })
}

fn family_output(cf: &CosetFamilyRecord, format: Format) -> String {
    match format {
        Format::Json => emit_json(cf),
        Format::Tsv => tsv(
            &["root", "offset", "modulus"],
            cf.entries.iter().map(|e| vec![tuple(&e.root), e.offset.to_string(), e.modulus.to_string()]),
        ),
    }
}

fn build(ambient: &RootSystem, input: &Path, cli: &Cli) -> Result<String, CliError> {
    let record: ClassifiedPairRecord = parse_input(input)?;
    let pair = record.to_pair(ambient)?;
    let cf = build_root_function(&pair)?;
    Ok(family_output(&CosetFamilyRecord::new(&cf), cli.format))
}

fn violation_json(v: &Violation) -> Value {
    let kind = match v {
        Violation::NotInAmbient(_) => "NotInAmbient",
        Violation::NotNormalized(_) => "NotNormalized",
        Violation::SupportNotClosed { .. } => "SupportNotClosed",
        Violation::Containment { .. } => "Containment",
        Violation::Equality { .. } => "Equality",
    };
    let mut out = json!({ "kind": kind, "message": v.to_string() });
    if let Some((a, b)) = v.pair() {
        out["alpha"] = json!(a.coords());
        out["beta"] = json!(b.coords());
    }
    out
}

fn verify(ambient: &RootSystem, input: &Path, window: Option<i64>, cli: &Cli) -> Outcome {
    let cf = match parse_input::<CosetFamilyRecord>(input).and_then(|r| Ok(r.to_family(ambient)?)) {
        Ok(cf) => cf,
        Err(e) => return Err(e).into(),
    };
    let mut report = json!({ "valid": true });
    let mut error = None;
    if let Err(v) = verify_root_function(&cf, ambient) {
        report["valid"] = json!(false);
        report["violation"] = violation_json(&v);
        error = Some(looproot_core::LoopError::NotARootFunction(v).into());
    } else if let Some(window) = window {
        match oracle_report(ambient, &cf, window) {
            Ok((value, err)) => {
                report["oracle"] = value;
                error = err;
            }
            Err(e) => error = Some(e),
        }
    }
    let stdout = match cli.format {
        Format::Json => emit_json(&report),
        Format::Tsv => {
            let v = &report["violation"];
            let cell = |x: &Value| if x.is_null() { String::new() } else { x.to_string() };
            let o = &report["oracle"];
            tsv(
                &["valid", "violation", "alpha", "beta", "oracle_agrees"],
                [vec![
                    report["valid"].to_string(),
                    v["kind"].as_str().unwrap_or("").to_string(),
                    cell(&v["alpha"]),
                    cell(&v["beta"]),
                    cell(&o["agrees"]),
                ]],
            )
        }
    };
    Outcome { stdout, error }
}

/// Runs the closure oracle on the Γ-generator set and compares with the predicted window.
fn oracle_report(
    ambient: &RootSystem,
    cf: &looproot_core::CosetFamily,
    window: i64,
) -> Result<(Value, Option<CliError>), CliError> {
    let pair = classify_root_function(cf, ambient)?;
    let gens = oracle_generators(&pair);
    let predicted = materialize_window(cf, window);
    let got = closure_oracle(&gens, ambient, window)?;
    let extra: Vec<AffineRootRecord> = got.difference(&predicted).map(AffineRootRecord::new).collect();
    let missing: Vec<AffineRootRecord> = predicted.difference(&got).map(AffineRootRecord::new).collect();
    let error = if !extra.is_empty() {
        Some(CliError::domain("cli", "OracleExceedsPrediction", format!("{} affine roots outside the classified family", extra.len())))
    } else if !missing.is_empty() {
        Some(CliError::domain(
            "cli",
            "GeneratorShortfall",
            format!("the simple-root generators reach {} of {} predicted affine roots", got.len(), predicted.len()),
        ))
    } else {
        None
    };
    let value = json!({
        "window": window,
        "generators": gens.iter().map(AffineRootRecord::new).collect::<Vec<_>>(),
        "predicted": predicted.len(),
        "generated": got.len(),
        "agrees": extra.is_empty() && missing.is_empty(),
        "extra": extra,
        "missing": missing,
    });
    Ok((value, error))
}

fn census(ambient: &RootSystem, bounds: &LoopEnumeration, cli: &Cli) -> Result<String, CliError> {
    let pairs = enumerate_loop_subsystems(ambient, bounds)?;
    let mut keyed: Vec<(String, ClassifiedPairRecord)> = pairs
        .par_iter()
        .map(|p| {
            let cf = build_root_function(p)?;
            verify_root_function(&cf, ambient).map_err(looproot_core::LoopError::NotARootFunction)?;
            let record = ClassifiedPairRecord::new(p);
            Ok((serde_json::to_string(&record).expect("records serialize"), record))
        })
        .collect::<Result<_, CliError>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let records: Vec<ClassifiedPairRecord> = keyed.into_iter().map(|(_, r)| r).collect();
    Ok(match cli.format {
        Format::Json => emit_json(&json!({
            "modulus_bound": bounds.modulus_bound,
            "offset_bound": bounds.offset_bound,
            "singletons": bounds.include_singletons,
            "count": records.len(),
            "pairs": records,
        })),
        Format::Tsv => pair_rows(&records),
    })
}

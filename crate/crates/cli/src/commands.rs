//! Command-line surface and the command implementations.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use grassdense::engine::{EngineConfig, DEFAULT_BUDGET};
use grassdense::families::{self, EngineBackend};
use grassdense::oracle::{self, Mode, OracleClass, OracleConfig};
use grassdense::sweep::{verify_sweep, SweepBounds};
use grassdense::{DimensionVector, Engine, Status};

use crate::cache::{self, Cache};
use crate::record::{Method, OracleSummary, Settings, VerdictRecord};
use crate::render;

pub const EXIT_DENSE: i32 = 0;
pub const EXIT_SPARSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "grassdense",
    version,
    about = "Decide whether PGL(n) has a dense orbit on a product of Grassmannians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide one dimension vector such as "1^2,2^2;3".
    Decide(DecideArgs),
    /// Compare the rule engine with the oracle over all small vectors.
    Verify(VerifyArgs),
    /// Rebuild the classification of dense vectors of one size.
    Classify(ClassifyArgs),
    /// List normalized vectors within bounds.
    Enumerate(EnumerateArgs),
    /// Generate a family of dense vectors from a base vector.
    Family(FamilyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleUse {
    /// Rules only.
    Off,
    /// Rules, then sampling if the rules are inconclusive.
    Auto,
    /// Always sample, alongside the rules.
    Force,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Modular,
    Rational,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Modular => Mode::Modular,
            ModeArg::Rational => Mode::Rational,
        }
    }
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    pub vector: String,
    #[arg(long, value_enum, default_value_t = OracleUse::Auto)]
    pub oracle: OracleUse,
    #[arg(long, value_enum, default_value_t = ModeArg::Modular)]
    pub mode: ModeArg,
    /// Print the full record as JSON.
    #[arg(long)]
    pub json: bool,
    /// Print the certificate as an indented tree.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Neither read nor write the verdict cache.
    #[arg(long)]
    pub no_cache: bool,
    /// Cache file; defaults to $GRASSDENSE_CACHE or the user cache directory.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub max_n: u32,
    /// Defaults to n + 1.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub size: u32,
    /// Also write the classification as JSON to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print only the finite list, one vector per line.
    #[arg(long)]
    pub tail_only: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub max_n: u32,
    /// Defaults to n + 1.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Largest entry; defaults to n - 1.
    #[arg(long)]
    pub max_size: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Fibonacci,
    Repeat,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub kind: FamilyKind,
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub depth: usize,
    /// Skip the oracle check of each member.
    #[arg(long)]
    pub no_check: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Result of a command: text for stdout, text for stderr, exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Outcome {
        Outcome {
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
            ..Outcome::default()
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decide(a) => decide(&a),
        Command::Verify(a) => verify(&a),
        Command::Classify(a) => classify(&a),
        Command::Enumerate(a) => enumerate(&a),
        Command::Family(a) => family(&a),
    }
}

fn exit_code(s: Status) -> i32 {
    match s {
        Status::Dense => EXIT_DENSE,
        Status::Sparse => EXIT_SPARSE,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn oracle_config(mode: Mode, seed: u64, samples: usize) -> OracleConfig {
    OracleConfig {
        samples,
        seed,
        mode,
        ..OracleConfig::default()
    }
}

/// Runs the deciders according to `settings` without touching the cache.
pub fn compute_record(v: &DimensionVector, use_oracle: OracleUse, settings: Settings) -> Result<VerdictRecord, String> {
    let engine = Engine::new(EngineConfig {
        budget: settings.budget,
        ..EngineConfig::default()
    });
    let report = engine.decide(v);
    let engine_status = report.verdict.status;
    let trace: Vec<_> = report
        .verdict
        .certificate
        .as_ref()
        .map(|c| c.tree.steps().into_iter().cloned().collect())
        .unwrap_or_default();
    let sample = use_oracle == OracleUse::Force
        || (use_oracle == OracleUse::Auto && engine_status == Status::Unknown);
    let oracle_report = if sample {
        let cfg = oracle_config(settings.mode, settings.seed, settings.samples);
        Some(oracle::oracle_decide(v, &cfg).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let oracle_status = oracle_report.as_ref().map(|o| match o.class {
        OracleClass::CertifiedDense => Status::Dense,
        OracleClass::MonteCarloSparse => Status::Sparse,
    });
    let (status, method) = match (engine_status, oracle_status) {
        (s, None) => (s, Method::Engine),
        (Status::Unknown, Some(o)) => (o, Method::Oracle),
        (s, Some(o)) if s == o => (s, Method::Both),
        (_, Some(_)) => (Status::Unknown, Method::Both),
    };
    Ok(VerdictRecord {
        vector: v.clone(),
        status,
        method,
        trivially_sparse: v.is_trivially_sparse(),
        trace,
        oracle: oracle_report.as_ref().map(OracleSummary::from),
        settings,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: now(),
    })
}

pub fn decide(a: &DecideArgs) -> Outcome {
    let v: DimensionVector = match a.vector.parse() {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    if a.samples == 0 {
        return Outcome::usage("--samples must be at least 1");
    }
    let settings = Settings {
        oracle: format!("{:?}", a.oracle).to_lowercase(),
        mode: a.mode.into(),
        seed: a.seed,
        samples: a.samples,
        budget: a.budget,
    };
    let mut out = Outcome::default();
    let mut cache = if a.no_cache {
        None
    } else {
        a.cache.clone().or_else(cache::default_path).and_then(|p| match Cache::open(&p) {
            Ok(c) => Some(c),
            Err(e) => {
                let _ = writeln!(out.stderr, "warning: cache {} unavailable: {e}", p.display());
                None
            }
        })
    };
    let cached = cache.as_ref().and_then(|c| c.get(&v, &settings)).cloned();
    let record = match cached {
        Some(r) => r,
        None => {
            let r = match compute_record(&v, a.oracle, settings) {
                Ok(r) => r,
                Err(e) => return Outcome::usage(e),
            };
            if r.status != Status::Unknown {
                if let Some(c) = cache.as_mut() {
                    if let Err(e) = c.append(&r) {
                        let _ = writeln!(out.stderr, "warning: could not write cache: {e}");
                    }
                }
            }
            r
        }
    };
    if record.method == Method::Both && record.status == Status::Unknown {
        let _ = writeln!(out.stderr, "warning: rules and oracle disagree on {v}");
    }
    if a.json {
        out.stdout = serde_json::to_string_pretty(&record).expect("records serialize") + "\n";
    } else {
        let _ = writeln!(out.stdout, "{} ({})", record.status, record.reason());
        if a.trace && !record.trace.is_empty() {
            out.stdout += &render::trace_tree(&record.trace);
        }
    }
    out.code = exit_code(record.status);
    out
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    if a.max_n < 2 || a.samples == 0 {
        return Outcome::usage("need --max-n >= 2 and --samples >= 1");
    }
    let bounds = SweepBounds {
        max_n: a.max_n,
        max_len: a.max_len,
        seed: a.seed,
        samples: a.samples,
    };
    match verify_sweep(&Engine::default(), bounds) {
        Ok(r) => Outcome {
            stdout: if a.json {
                serde_json::to_string_pretty(&r).expect("reports serialize") + "\n"
            } else {
                r.summary()
            },
            stderr: String::new(),
            code: if r.disagreements.is_empty() { 0 } else { 1 },
        },
        Err(e) => Outcome::usage(e),
    }
}

pub fn classify(a: &ClassifyArgs) -> Outcome {
    let backend = EngineBackend::new(Some(OracleConfig {
        seed: a.seed,
        ..OracleConfig::default()
    }));
    let c = match families::classify_size(a.size, &backend) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let mut out = Outcome::default();
    if let Some(path) = &a.out {
        let json = serde_json::to_string_pretty(&c).expect("classifications serialize") + "\n";
        if let Err(e) = std::fs::write(path, json) {
            return Outcome::usage(format!("{}: {e}", path.display()));
        }
    }
    out.stdout = if a.tail_only { c.tail_lines() } else { c.to_text() };
    out.code = if c.unresolved.is_empty() { 0 } else { EXIT_UNKNOWN };
    out
}

pub fn enumerate(a: &EnumerateArgs) -> Outcome {
    let max_len = a.max_len.unwrap_or(a.max_n as usize + 1);
    let max_size = a.max_size.unwrap_or(a.max_n.saturating_sub(1));
    let vs: Vec<DimensionVector> = families::enumerate_vectors(a.max_n, max_len, max_size).collect();
    let stdout = if a.json {
        serde_json::to_string(&vs).expect("vectors serialize") + "\n"
    } else {
        vs.iter().map(|v| format!("{v}\n")).collect()
    };
    Outcome {
        stdout,
        ..Outcome::default()
    }
}

#[derive(serde::Serialize)]
struct FamilyMember {
    vector: DimensionVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleSummary>,
}

pub fn family(a: &FamilyArgs) -> Outcome {
    let base: DimensionVector = match a.base.parse() {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e),
    };
    let members = match a.kind {
        FamilyKind::Fibonacci => families::fibonacci_family(&base, a.depth),
        FamilyKind::Repeat => families::repeat_family(&base, a.depth),
    };
    let members = match members {
        Ok(m) => m,
        Err(e) => return Outcome::usage(e),
    };
    let mut rows = Vec::new();
    let mut all_dense = true;
    for v in members {
        let oracle = if a.no_check {
            None
        } else {
            let cfg = OracleConfig {
                seed: a.seed,
                stop_at_witness: true,
                ..OracleConfig::default()
            };
            match oracle::oracle_decide(&v, &cfg) {
                Ok(r) => Some(OracleSummary::from(&r)),
                Err(e) => return Outcome::usage(e),
            }
        };
        all_dense &= oracle.as_ref().is_none_or(|o| o.class == OracleClass::CertifiedDense);
        rows.push(FamilyMember { vector: v, oracle });
    }
    let mut out = Outcome::default();
    if a.json {
        out.stdout = serde_json::to_string_pretty(&rows).expect("members serialize") + "\n";
    } else {
        for r in &rows {
            match &r.oracle {
                Some(o) => {
                    let _ = writeln!(out.stdout, "{}\t{:?}", r.vector, o.class);
                }
                None => {
                    let _ = writeln!(out.stdout, "{}", r.vector);
                }
            }
        }
    }
    out.code = if all_dense { 0 } else { EXIT_SPARSE };
    out
}

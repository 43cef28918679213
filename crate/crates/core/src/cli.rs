//! Command-line front end. Reports go to stdout as JSON, a one-line summary
//! per input to stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ald::FlatAugmentedLink;
use crate::augment::flatten;
use crate::diagram::parse_pd;
use crate::fiber_graph::{analyze, build_gb, Certificate, FiberGraph, Outcome, Verdict};
use crate::moves::{
    deplumb, fill_a_circle, fill_b_circles, lift_alternating, make_locally_alternating, replay_program,
    standard_surface_chi, FillKind, FillRecord, FilledStructure, HopfRecord, MoveError, ProgramEntry,
};
use crate::pipeline::{run_pd, variant, with_unbounded_face, PipelineError, PipelineOutput};
use crate::random::random_ald;
use crate::stallings::{
    build_fstar_filled, nielsen_generates, verify, FstarError, GeneratorMap, NielsenError, NielsenTrace,
    OracleError, OracleVerdict,
};

pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "augfiber", version, about = "Decide fibration of flat augmented links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SignConvention {
    #[default]
    Plus,
    Minus,
    Alternate,
}

impl SignConvention {
    pub fn sign(self, k: usize) -> i8 {
        match self {
            SignConvention::Plus => 1,
            SignConvention::Minus => -1,
            SignConvention::Alternate if k.is_multiple_of(2) => 1,
            SignConvention::Alternate => -1,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Source {
    /// Input file: `.json` for an ALD record, anything else is PD code.
    pub input: PathBuf,
    /// Face id (in tracing order) to use as the unbounded face of a PD input.
    #[arg(long)]
    pub unbounded: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline to a fibration verdict.
    Analyze {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        unbounded: Option<usize>,
        /// Cross-check with the Stallings oracle.
        #[arg(long)]
        verify: bool,
        /// Write the Nielsen trace (implies --verify).
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Encircle twist regions and flatten a PD diagram.
    Augment(Source),
    /// Remove full twists from a PD diagram that already has crossing circles.
    Flatten(Source),
    /// Apply ±1 fillings; without --program every circle is filled.
    Fill {
        #[command(flatten)]
        source: Source,
        /// JSON list of `{circle, kind, sign}`.
        #[arg(long)]
        program: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        sign_convention: SignConvention,
    },
    /// Remove A-circles, recording the Hopf bands.
    Deplumb(Source),
    /// Lift a locally alternating record to a flat one with a tree graph.
    Lift {
        #[command(flatten)]
        source: Source,
        /// Treat a flat input as its locally alternating version.
        #[arg(long)]
        make_alternating: bool,
        #[arg(long, value_enum, default_value_t)]
        sign_convention: SignConvention,
    },
    /// Decide fibration with the Stallings oracle only.
    Verify {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        unbounded: Option<usize>,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Print a seeded random ALD.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// Print G_B in DOT format.
    ExportDot(Source),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("bad JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Moves(#[from] MoveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Fstar(#[from] FstarError),
    #[error(transparent)]
    Nielsen(#[from] NielsenError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> String {
        match self {
            CliError::Io { .. } => "cli.Io".into(),
            CliError::Json(_) => "cli.Json".into(),
            CliError::Usage(_) => "cli.Usage".into(),
            CliError::Pipeline(e) => e.code(),
            CliError::Moves(e) => format!("moves.{}", variant(e)),
            CliError::Oracle(OracleError::Fstar(e)) | CliError::Fstar(e) => {
                format!("stallings-oracle.{}", variant(e))
            }
            CliError::Oracle(OracleError::Nielsen(e)) | CliError::Nielsen(e) => {
                format!("stallings-oracle.{}", variant(e))
            }
            CliError::Oracle(e) => format!("stallings-oracle.{}", variant(e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub outcome: Outcome,
    /// Whether the oracle and the graph criterion agree.
    pub agrees: bool,
    pub images: BTreeMap<String, String>,
    pub verdict: OracleVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveLog {
    Deplumb { records: Vec<HopfRecord>, chi_delta: i64 },
    FillA(FillRecord),
    FillB { structure: FilledStructure },
    Lift { program: Vec<ProgramEntry>, replays_to_input: bool },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stages {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<PipelineOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ald: Option<FlatAugmentedLink>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<FiberGraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_ald: Option<FlatAugmentedLink>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filled_images: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub digest: String,
    pub stages: Stages,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<MoveLog>,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            return EXIT_ERROR;
        }
        if let Some(o) = &self.oracle {
            if self.verdict.is_none() {
                return o.outcome.exit_code();
            }
        }
        self.verdict.as_ref().map_or(0, |v| v.outcome.exit_code())
    }

    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms
            .insert(stage.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn summary(&self) -> String {
        if let Some(e) = &self.error {
            return format!("{}: error {}: {}", self.input, e.code, e.message);
        }
        let outcome = self
            .verdict
            .as_ref()
            .map(|v| v.outcome)
            .or(self.oracle.as_ref().map(|o| o.outcome));
        let mut s = match outcome {
            Some(o) => format!("{}: {o:?}", self.input),
            None => format!("{}: ok", self.input),
        };
        if let Some(v) = &self.verdict {
            for c in &v.certificates {
                s.push_str(&format!("; {}", describe(c)));
            }
        }
        if let Some(o) = &self.oracle {
            s.push_str(if o.agrees { "; oracle agrees" } else { "; ORACLE DISAGREES" });
        }
        s
    }
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::SpanningTree { edges } => format!("spanning tree [{}]", edges.join(",")),
        Certificate::Disconnected { components } => format!("{} components", components.len()),
        Certificate::Cycle { edges } => format!("cycle [{}]", edges.join(",")),
        Certificate::Reason { text } => text.clone(),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn to_text(bytes: Vec<u8>) -> Result<String, CliError> {
    String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("input is not UTF-8: {e}")))
}

/// Loads an ALD, running the diagram pipeline for PD input.
fn load(report: &mut Report, path: &Path, unbounded: Option<usize>) -> Result<FlatAugmentedLink, CliError> {
    let bytes = read(path)?;
    report.input = path.display().to_string();
    report.digest = hex::encode(Sha256::digest(&bytes));
    let text = to_text(bytes)?;
    if is_json(path) {
        if unbounded.is_some() {
            return Err(CliError::Usage("--unbounded applies to PD input only".into()));
        }
        let ald = FlatAugmentedLink::from_json(&text).map_err(|e| CliError::Json(e.to_string()))?;
        report.stages.ald = Some(ald.clone());
        return Ok(ald);
    }
    let out = report.time("diagram", || run_pd(&text, unbounded))?;
    let ald = out.ald.clone();
    report.stages.chi = Some(out.chi);
    report.stages.diagram = Some(out);
    report.stages.ald = Some(ald.clone());
    Ok(ald)
}

fn error_info(e: &CliError) -> ErrorInfo {
    ErrorInfo {
        code: e.code(),
        message: e.to_string(),
    }
}

fn finish(mut report: Report, result: Result<(), CliError>) -> Report {
    if let Err(e) = result {
        report.error = Some(error_info(&e));
    }
    report
}

fn oracle_report(report: &mut Report, ald: &FlatAugmentedLink, trace_path: Option<&Path>) -> Result<(), CliError> {
    let v = report.time("oracle", || verify(ald))?;
    if let Some(p) = trace_path {
        let trace = v.trace.clone().unwrap_or_default();
        write(p, &trace.to_json())?;
    }
    report.moves.push(MoveLog::Deplumb {
        chi_delta: v.hopf.iter().map(HopfRecord::chi_delta).sum(),
        records: v.hopf.clone(),
    });
    let graph_outcome = analyze(ald).outcome;
    report.oracle = Some(OracleReport {
        outcome: v.outcome,
        agrees: v.outcome == graph_outcome,
        images: v.map.rendered(),
        verdict: v,
    });
    Ok(())
}

pub fn cmd_analyze(path: &Path, unbounded: Option<usize>, check: bool, trace: Option<&Path>) -> Report {
    let mut report = Report::default();
    let result = (|| {
        let ald = load(&mut report, path, unbounded)?;
        report.stages.graph = Some(build_gb(&ald));
        let verdict = report.time("analyze", || analyze(&ald));
        let applicable = verdict.outcome != Outcome::Inapplicable;
        report.verdict = Some(verdict);
        if (check || trace.is_some()) && applicable {
            oracle_report(&mut report, &ald, trace)?;
        }
        Ok(())
    })();
    finish(report, result)
}

pub fn cmd_verify(path: &Path, unbounded: Option<usize>, trace: Option<&Path>) -> Report {
    let mut report = Report::default();
    let result = (|| {
        let ald = load(&mut report, path, unbounded)?;
        oracle_report(&mut report, &ald, trace)
    })();
    finish(report, result)
}

pub fn cmd_deplumb(path: &Path, unbounded: Option<usize>) -> Report {
    let mut report = Report::default();
    let result = (|| {
        let ald = load(&mut report, path, unbounded)?;
        let (base, records) = deplumb(&ald);
        report.stages.chi.get_or_insert(standard_surface_chi(&ald));
        report.moves.push(MoveLog::Deplumb {
            chi_delta: records.iter().map(HopfRecord::chi_delta).sum(),
            records,
        });
        report.stages.graph = Some(build_gb(&base));
        report.stages.output_ald = Some(base);
        Ok(())
    })();
    finish(report, result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillEntry {
    pub circle: String,
    pub kind: FillKind,
    pub sign: i8,
}

pub fn cmd_fill(path: &Path, unbounded: Option<usize>, program: Option<&Path>, signs: SignConvention) -> Report {
    let mut report = Report::default();
    let result = (|| {
        let ald = load(&mut report, path, unbounded)?;
        let program: Vec<FillEntry> = match program {
            Some(p) => serde_json::from_str(&to_text(read(p)?)?).map_err(|e| CliError::Json(e.to_string()))?,
            None => {
                let c = ald.canonical();
                c.a_circles
                    .iter()
                    .map(|a| (a.id.clone(), FillKind::A))
                    .chain(c.b_circles.iter().map(|b| (b.id.clone(), FillKind::B)))
                    .enumerate()
                    .map(|(k, (circle, kind))| FillEntry {
                        circle,
                        kind,
                        sign: signs.sign(k),
                    })
                    .collect()
            }
        };
        let mut cur = ald.clone();
        let mut b_ids = vec![];
        let mut b_signs = vec![];
        for entry in &program {
            match entry.kind {
                FillKind::A => {
                    let (next, record) = fill_a_circle(&cur, &entry.circle, entry.sign)?;
                    report.moves.push(MoveLog::FillA(record));
                    cur = next;
                }
                FillKind::B => {
                    b_ids.push(entry.circle.clone());
                    b_signs.push(entry.sign);
                }
                FillKind::Pair => {
                    return Err(CliError::Usage("pair entries belong to lift programs".into()));
                }
            }
        }
        let (base, records) = deplumb(&cur);
        if !records.is_empty() {
            report.moves.push(MoveLog::Deplumb {
                chi_delta: records.iter().map(HopfRecord::chi_delta).sum(),
                records,
            });
        }
        report.stages.graph = Some(build_gb(&base));
        let structure = fill_b_circles(&base, &b_ids, &b_signs)?;
        let verdict = if structure.unfilled.is_empty() {
            let map = build_fstar_filled(&structure)?;
            report.stages.filled_images = Some(map.rendered());
            filled_verdict(&map)?
        } else {
            analyze(&base)
        };
        report.moves.push(MoveLog::FillB { structure });
        report.verdict = Some(verdict);
        Ok(())
    })();
    finish(report, result)
}

fn filled_verdict(map: &GeneratorMap) -> Result<Verdict, CliError> {
    let out = nielsen_generates(&map.images, map.rank())?;
    Ok(Verdict {
        outcome: if out.generates {
            Outcome::Fibered
        } else {
            Outcome::NotFibered
        },
        certificates: vec![Certificate::Reason {
            text: format!(
                "Nielsen reduction of the filled map: {} moves, generates = {}",
                out.trace.steps.len(),
                out.generates
            ),
        }],
    })
}

pub fn cmd_lift(path: &Path, unbounded: Option<usize>, make_alternating: bool, signs: SignConvention) -> Report {
    let mut report = Report::default();
    let result = (|| {
        let mut ald = load(&mut report, path, unbounded)?;
        if make_alternating {
            ald = make_locally_alternating(&ald);
        }
        let (lifted, program) = lift_alternating(&ald, signs.sign(0))?;
        let replays = replay_program(&lifted, &program) == ald.canonical();
        report.moves.push(MoveLog::Lift {
            program,
            replays_to_input: replays,
        });
        report.stages.graph = Some(build_gb(&lifted));
        report.verdict = Some(analyze(&lifted));
        report.stages.output_ald = Some(lifted);
        Ok(())
    })();
    finish(report, result)
}

pub fn cmd_random(seed: u64, size: usize) -> FlatAugmentedLink {
    random_ald(seed, size)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentOutput {
    pub digest: String,
    pub twist_regions: Vec<crate::augment::TwistRegion>,
    pub augmented: Option<String>,
    pub flat: String,
    pub instructions: Vec<crate::augment::FillingInstruction>,
}

pub fn cmd_augment(path: &Path, unbounded: Option<usize>) -> Result<AugmentOutput, CliError> {
    let bytes = read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let out = run_pd(&to_text(bytes)?, unbounded)?;
    Ok(AugmentOutput {
        digest,
        twist_regions: out.twist_regions,
        augmented: out.augmented,
        flat: out.flat,
        instructions: out.instructions,
    })
}

pub fn cmd_flatten(path: &Path, unbounded: Option<usize>) -> Result<AugmentOutput, CliError> {
    let bytes = read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let mut d = parse_pd(&to_text(bytes)?).map_err(PipelineError::from)?;
    if let Some(f) = unbounded {
        d = with_unbounded_face(&d, f)?;
    }
    let (flat, instructions) = flatten(&d).map_err(PipelineError::from)?;
    Ok(AugmentOutput {
        digest,
        twist_regions: vec![],
        augmented: None,
        flat: flat.to_string(),
        instructions,
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(value: &impl Serialize) {
    out(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")));
}

fn emit_reports(reports: Vec<Report>) -> i32 {
    for r in &reports {
        eprintln!("{}", r.summary());
    }
    let code = reports.iter().map(Report::exit_code).max().unwrap_or(0);
    if reports.len() == 1 {
        emit(&reports[0]);
    } else {
        emit(&reports);
    }
    code
}

fn simple<T: Serialize>(result: Result<T, CliError>) -> i32 {
    match result {
        Ok(v) => {
            emit(&v);
            0
        }
        Err(e) => {
            eprintln!("error {}: {e}", e.code());
            emit(&error_info(&e));
            EXIT_ERROR
        }
    }
}

/// Per-input trace file: the given path for one input, `<stem>.<k>.<ext>`
/// for several.
fn trace_path(base: Option<&PathBuf>, k: usize, n: usize) -> Option<PathBuf> {
    let base = base?;
    if n == 1 {
        return Some(base.clone());
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("trace");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("json");
    Some(base.with_file_name(format!("{stem}.{k}.{ext}")))
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze {
            inputs,
            unbounded,
            verify,
            emit_trace,
        } => {
            let n = inputs.len();
            let reports = inputs
                .par_iter()
                .enumerate()
                .map(|(k, p)| {
                    let t = trace_path(emit_trace.as_ref(), k, n);
                    cmd_analyze(p, unbounded, verify, t.as_deref())
                })
                .collect();
            emit_reports(reports)
        }
        Command::Verify {
            inputs,
            unbounded,
            emit_trace,
        } => {
            let n = inputs.len();
            let reports = inputs
                .par_iter()
                .enumerate()
                .map(|(k, p)| {
                    let t = trace_path(emit_trace.as_ref(), k, n);
                    cmd_verify(p, unbounded, t.as_deref())
                })
                .collect();
            emit_reports(reports)
        }
        Command::Augment(s) => simple(cmd_augment(&s.input, s.unbounded)),
        Command::Flatten(s) => simple(cmd_flatten(&s.input, s.unbounded)),
        Command::Fill {
            source,
            program,
            sign_convention,
        } => emit_reports(vec![cmd_fill(
            &source.input,
            source.unbounded,
            program.as_deref(),
            sign_convention,
        )]),
        Command::Deplumb(s) => emit_reports(vec![cmd_deplumb(&s.input, s.unbounded)]),
        Command::Lift {
            source,
            make_alternating,
            sign_convention,
        } => emit_reports(vec![cmd_lift(
            &source.input,
            source.unbounded,
            make_alternating,
            sign_convention,
        )]),
        Command::Random { seed, size } => {
            out(&format!("{}\n", cmd_random(seed, size).to_json()));
            0
        }
        Command::ExportDot(s) => {
            let mut report = Report::default();
            match load(&mut report, &s.input, s.unbounded) {
                Ok(ald) => {
                    out(&build_gb(&ald).to_dot());
                    0
                }
                Err(e) => {
                    eprintln!("error {}: {e}", e.code());
                    EXIT_ERROR
                }
            }
        }
    }
}

/// Nielsen trace of a report's oracle run, if any.
pub fn report_trace(report: &Report) -> Option<&NielsenTrace> {
    report.oracle.as_ref()?.verdict.trace.as_ref()
}

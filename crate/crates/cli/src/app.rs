//! Subcommands. Each writes its report to the given writer and returns the
//! process exit code; errors are left to the caller to render.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pnasync_core::classify::{self, Class, Evidence, Route};
use pnasync_core::reach::{self, check_determinism, DEFAULT_CAP};
use pnasync_core::semantics::{self, Distinction, Side};
use pnasync_core::structure::StructuralWitness;
use pnasync_core::theorems::CheckConfig;
use pnasync_core::transform::{self, DEFAULT_PRIORITY_CAP};
use pnasync_core::{corpus, enumerate, ElementId, Error, Net, PriorityAssignment};
use serde::Serialize;
use thiserror::Error;

use crate::format::{self, FormatError, NetDocument};
use crate::parallel;
use crate::report::*;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "pnasync", version, about = "Asynchronous implementations of 1-safe Petri nets")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a net file for structural errors.
    Validate {
        file: PathBuf,
        /// Also reject silent transitions.
        #[arg(long)]
        plain: bool,
    },
    /// Explore the reachable markings.
    Reach {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Build an asynchronous implementation.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// `t:p1,p2,...`, least preplace first; asymm mode only.
        #[arg(long)]
        priority: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List failure pairs with maximal refusals up to a trace length.
    Failures {
        file: PathBuf,
        #[arg(long)]
        maxlen: usize,
    },
    /// Decide failures equivalence; exit 0 iff equivalent.
    Equiv { first: PathBuf, second: PathBuf },
    /// Decide class membership.
    Classify {
        file: PathBuf,
        /// Route for FA(B), SA(B) and AA(B); default runs both for FA(B)
        /// and SA(B) and AA(B) structurally first.
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        #[arg(long, default_value_t = DEFAULT_PRIORITY_CAP)]
        gcap: usize,
        #[arg(long)]
        timings: bool,
    },
    /// Cross-check the characterizations on enumerated or sampled nets.
    CheckTheorems {
        /// Defaults to 3 when enumerating, 4 when sampling.
        #[arg(long)]
        max_places: Option<usize>,
        #[arg(long)]
        max_trans: Option<usize>,
        /// Sample instead of enumerating.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_PRIORITY_CAP)]
        gcap: usize,
        #[arg(long)]
        timings: bool,
    },
    /// The built-in figure nets.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    List,
    Emit { id: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Full,
    Symm,
    Asymm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RouteArg {
    Structural,
    Behavioral,
    Both,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Structural => Route::Structural,
            RouteArg::Behavioral => Route::Behavioral,
            RouteArg::Both => Route::Both,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Format { source: FormatError::Invalid(e), .. } => error_kind(e),
            CliError::Format { .. } => "syntax",
            CliError::Core(e) => error_kind(e),
            CliError::Usage(_) => "usage",
        }
    }

    pub fn to_json(&self) -> String {
        let report = ErrorReport { error: ErrorBody { kind: self.kind(), message: self.to_string() } };
        serde_json::to_string(&report).expect("error report serializes")
    }
}

impl From<io::Error> for CliError {
    fn from(source: io::Error) -> Self {
        CliError::Io { path: "<output>".into(), source }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let shown = path.display().to_string();
    let mut text = String::new();
    let result = if shown == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|source| CliError::Io { path: shown, source })?;
    Ok(text)
}

fn load(path: &Path) -> Result<NetDocument, CliError> {
    let text = read_text(path)?;
    format::parse(&text).map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).expect("report serializes");
    writeln!(out)?;
    Ok(())
}

fn list(ids: &[ElementId]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn set<'a, I: IntoIterator<Item = &'a ElementId>>(ids: I) -> String {
    let v: Vec<ElementId> = ids.into_iter().cloned().collect();
    format!("{{{}}}", list(&v))
}

fn describe_witness(w: &StructuralWitness) -> String {
    let mut s = format!("{} t=[{}] p=[{}]", w.pattern.as_str(), list(&w.transitions), list(&w.places));
    for m in &w.markings {
        let _ = write!(s, " {}", set(m));
    }
    s
}

fn describe_distinction(d: &Distinction, first: &str, second: &str) -> String {
    let owner = match d.side {
        Side::First => first,
        Side::Second => second,
    };
    format!("{} only in {} (maximal refusal {})", d.witness, owner, set(&d.maximal_refusal))
}

fn describe_priority(g: &PriorityAssignment) -> String {
    let text = g.to_string();
    if text.is_empty() {
        "priority (no branched transitions)".into()
    } else {
        format!("priority {text}")
    }
}

fn describe(e: &Evidence) -> String {
    match e {
        Evidence::Structural(w) => describe_witness(w),
        Evidence::Failure(d) => describe_distinction(d, "net", "implementation"),
        Evidence::Priority(g) => describe_priority(g),
        Evidence::NoPriority { tried, first, witness } => format!(
            "none of {tried} priorities works; first ({}) fails with {}",
            describe_priority(first),
            describe_distinction(witness, "net", "implementation")
        ),
    }
}

/// Parses repeated `t:p1,p2` options on top of the canonical assignment.
pub fn parse_priorities(net: &Net, orders: &[String]) -> Result<PriorityAssignment, CliError> {
    let mut g = PriorityAssignment::canonical(net);
    for order in orders {
        let (t, places) = order
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("priority `{order}` is not of the form t:p1,p2")))?;
        let t = ElementId::parse(t)?;
        let order = places.split(',').map(ElementId::parse).collect::<Result<Vec<_>, _>>()?;
        g.set(net, t, order)?;
    }
    Ok(g)
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file, plain } => {
            let text = read_text(file)?;
            let (name, builder) = format::parse_builder(&text)
                .map_err(|source| CliError::Format { path: file.display().to_string(), source })?;
            let diags = builder.validate(*plain);
            let valid = !diags.has_errors();
            if json {
                let diagnostics = diags.iter().map(Into::into).collect();
                emit_json(out, &ValidateReport { net: name, valid, diagnostics })?;
            } else if valid {
                let places = builder.places.len();
                let transitions = builder.observables.len() + builder.silents.len();
                writeln!(out, "{name}: valid ({places} places, {transitions} transitions)")?;
            } else {
                writeln!(out, "{name}: invalid")?;
                for d in diags.iter() {
                    writeln!(out, "  {}: {}", d.code.as_str(), d.message)?;
                }
            }
            Ok(if valid { EXIT_PASS } else { EXIT_FAIL })
        }

        Command::Reach { file, cap } => {
            let doc = load(file)?;
            let net = &doc.net;
            let graph = reach::reachability(net, *cap)?;
            let order = graph.canonical_order();
            let mut position = vec![0; graph.len()];
            for (pos, &i) in order.iter().enumerate() {
                position[i] = pos;
            }
            let contact_free = graph.contact_free();
            let deterministic =
                if net.is_plain() && contact_free { Some(check_determinism(net, &graph)?) } else { None };
            let markings: Vec<Vec<String>> = order
                .iter()
                .map(|&i| net.ids_of(graph.state(i)).iter().map(ToString::to_string).collect())
                .collect();
            let mut edges: Vec<EdgeJson> = graph
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    from: position[e.source],
                    transition: net.transition_id(e.transition).to_string(),
                    to: position[e.target],
                })
                .collect();
            edges.sort_by(|a, b| (a.from, &a.transition, a.to).cmp(&(b.from, &b.transition, b.to)));
            if json {
                let initial = position[graph.root()];
                emit_json(out, &ReachReport { net: doc.name, initial, markings, edges, contact_free, deterministic })?;
            } else {
                writeln!(out, "{}: {} markings, {} edges", doc.name, markings.len(), edges.len())?;
                writeln!(out, "contact-free: {contact_free}")?;
                if let Some((m, t)) = graph.contact_witness() {
                    let ids = net.ids_of(graph.state(m));
                    writeln!(out, "contact: {} at {}", net.transition_id(t), set(&ids))?;
                }
                if let Some(d) = deterministic {
                    writeln!(out, "deterministic: {d}")?;
                }
                let initial = position[graph.root()];
                for (i, m) in markings.iter().enumerate() {
                    let flag = if i == initial { " (initial)" } else { "" };
                    writeln!(out, "M{i} {{{}}}{flag}", m.join(","))?;
                }
            }
            Ok(if contact_free { EXIT_PASS } else { EXIT_FAIL })
        }

        Command::Transform { file, mode, priority, output } => {
            let doc = load(file)?;
            if !priority.is_empty() && !matches!(mode, Mode::Asymm) {
                return Err(CliError::Usage("--priority applies to --mode asymm only".into()));
            }
            let inet = match mode {
                Mode::Full => transform::fully_async(&doc.net)?,
                Mode::Symm => transform::symm_async(&doc.net)?,
                Mode::Asymm => transform::asymm_async(&doc.net, &parse_priorities(&doc.net, priority)?)?,
            };
            let suffix = match mode {
                Mode::Full => "fi",
                Mode::Symm => "si",
                Mode::Asymm => "ai",
            };
            let g = inet.priority().cloned();
            let result = NetDocument { name: format!("{}_{suffix}", doc.name), net: inet.into_net() };
            let text = format::serialize(&result);
            if let Some(path) = output {
                std::fs::write(path, &text)
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            }
            if json {
                emit_json(
                    out,
                    &TransformReport {
                        net: result.name,
                        mode: suffix,
                        priority: g.as_ref().map(Into::into),
                        places: result.net.place_count(),
                        transitions: result.net.transition_count(),
                        text,
                    },
                )?;
            } else if output.is_none() {
                out.write_all(text.as_bytes())?;
            }
            Ok(EXIT_PASS)
        }

        Command::Failures { file, maxlen } => {
            let doc = load(file)?;
            let machine = semantics::machine(&doc.net, DEFAULT_CAP)?;
            let pairs = machine.failures_up_to(*maxlen);
            if json {
                let failures = pairs.iter().map(Into::into).collect();
                emit_json(out, &FailuresReport { net: doc.name, maxlen: *maxlen, failures })?;
            } else {
                for p in &pairs {
                    writeln!(out, "{p}")?;
                }
            }
            Ok(EXIT_PASS)
        }

        Command::Equiv { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let distinction = semantics::failures_equivalent(&a.net, &b.net)?;
            let code = if distinction.is_some() { EXIT_FAIL } else { EXIT_PASS };
            if json {
                let distinction = distinction.as_ref().map(|d| DistinctionJson::new(d, "first", "second"));
                emit_json(
                    out,
                    &EquivReport { first: a.name, second: b.name, equivalent: code == EXIT_PASS, distinction },
                )?;
            } else {
                match distinction {
                    None => writeln!(out, "equivalent")?,
                    Some(d) => writeln!(out, "inequivalent: {}", describe_distinction(&d, &a.name, &b.name))?,
                }
            }
            Ok(code)
        }

        Command::Classify { file, route, gcap, timings } => {
            let doc = load(file)?;
            let start = Instant::now();
            let report = classify::classify_report(&doc.net, route.map(Into::into), *gcap)?;
            let elapsed = timings.then(|| Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 });
            if json {
                emit_json(out, &ClassifyReport::new(&doc.name, &report, elapsed))?;
            } else {
                writeln!(out, "{}", doc.name)?;
                for v in &report.verdicts {
                    writeln!(out, "  {:<6} {:<7} {}", v.class.as_str(), v.verdict.as_str(), v.route.as_str())?;
                    for e in &v.evidence {
                        writeln!(out, "         {}", describe(e))?;
                    }
                }
                if let Some(t) = elapsed {
                    writeln!(out, "time: {:.1} ms", t.total_ms)?;
                }
            }
            Ok(EXIT_PASS)
        }

        Command::CheckTheorems { max_places, max_trans, seed, samples, jobs, gcap, timings } => {
            let sampling = seed.is_some() || samples.is_some();
            let default = if sampling { 4 } else { 3 };
            let (p, t) = (max_places.unwrap_or(default), max_trans.unwrap_or(default));
            if p > enumerate::MAX_DIMENSION || t > enumerate::MAX_DIMENSION {
                return Err(CliError::Usage(format!("bounds above {} are not supported", enumerate::MAX_DIMENSION)));
            }
            let config = CheckConfig { g_cap: *gcap, ..CheckConfig::default() };
            let start = Instant::now();
            let (source, summary) = if sampling {
                let (seed, count) = (seed.unwrap_or(0), samples.unwrap_or(10_000));
                let nets = enumerate::sample(p, t, seed, count);
                (format!("sample of {count} nets up to ({p},{t}), seed {seed}"), parallel::check_all(nets, &config, *jobs))
            } else {
                let nets = enumerate::exhaustive(p, t);
                (format!("all nets up to ({p},{t})"), parallel::check_all(nets, &config, *jobs))
            };
            let elapsed = timings.then(|| Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 });
            let code = if summary.violations.is_empty() { EXIT_PASS } else { EXIT_FAIL };
            if json {
                emit_json(out, &TheoremsReport::new(source, &summary, elapsed))?;
            } else {
                writeln!(out, "{source}: {} nets checked", summary.nets)?;
                if summary.aa_skipped > 0 {
                    writeln!(out, "{} nets skipped AA(B) behavioral checks (--gcap)", summary.aa_skipped)?;
                }
                for v in &summary.violations {
                    let doc = NetDocument { name: "violation".into(), net: v.net.clone() };
                    writeln!(out, "violation {}: {}", v.check.as_str(), v.detail)?;
                    for line in format::serialize(&doc).lines() {
                        writeln!(out, "    {line}")?;
                    }
                }
                writeln!(out, "{} violations", summary.violations.len())?;
                if let Some(t) = elapsed {
                    writeln!(out, "time: {:.1} ms", t.total_ms)?;
                }
            }
            Ok(code)
        }

        Command::Corpus { action: CorpusAction::List } => {
            let entries = corpus::builtin_corpus();
            if json {
                let items: Vec<CorpusItem> = entries
                    .iter()
                    .map(|e| CorpusItem {
                        id: e.id,
                        name: e.name,
                        expected: e.expected.iter().map(|(c, v)| (c.as_str(), v.as_str())).collect(),
                    })
                    .collect();
                emit_json(out, &items)?;
            } else {
                for e in &entries {
                    let expected: BTreeMap<&str, &str> =
                        e.expected.iter().map(|(c, v)| (c.as_str(), v.as_str())).collect();
                    let summary: Vec<String> = Class::ALL
                        .iter()
                        .filter_map(|c| expected.get(c.as_str()).map(|v| format!("{}={v}", c.as_str())))
                        .collect();
                    let line = format!("{:<10} {:<6} {}", e.id, e.name, summary.join(" "));
                    writeln!(out, "{}", line.trim_end())?;
                }
            }
            Ok(EXIT_PASS)
        }

        Command::Corpus { action: CorpusAction::Emit { id } } => {
            let entry = corpus::lookup(id).ok_or_else(|| CliError::Usage(format!("no corpus net `{id}`")))?;
            let text = format::serialize(&NetDocument { name: entry.name.into(), net: entry.net });
            out.write_all(text.as_bytes())?;
            Ok(EXIT_PASS)
        }
    }
}

//! JSON shapes of every command's output.
//!
//! Sets are emitted as sorted arrays and maps as `BTreeMap`s, so the same
//! input always serializes to the same bytes.

use std::collections::BTreeMap;

use pnasync_core::classify::{ClassReport, ClassVerdict, Evidence};
use pnasync_core::semantics::{Distinction, FailurePair, Side};
use pnasync_core::structure::StructuralWitness;
use pnasync_core::theorems::{Summary, Violation};
use pnasync_core::{Diagnostic, ElementId, Error, PriorityAssignment};
use serde::Serialize;

use crate::format::{serialize, NetDocument};

fn names<'a, I: IntoIterator<Item = &'a ElementId>>(ids: I) -> Vec<String> {
    ids.into_iter().map(ToString::to_string).collect()
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

/// Stable kebab-case name of a library error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidId(_) => "invalid-id",
        Error::UnknownElement(_) => "unknown-element",
        Error::NotATransition(_) => "not-a-transition",
        Error::EmptyStep => "empty-step",
        Error::StepNotEnabled => "step-not-enabled",
        Error::InvalidNet(_) => "invalid-net",
        Error::NotPlain => "not-plain",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::ContactViolation => "contact-violation",
        Error::Divergent => "divergent",
        Error::AlphabetMismatch => "alphabet-mismatch",
        Error::WrongImplementation { .. } => "wrong-implementation",
        Error::MalformedPriority(_) => "malformed-priority",
        Error::PriorityCapExceeded { .. } => "priority-cap-exceeded",
        Error::TheoremViolation(_) => "theorem-violation",
    }
}

#[derive(Debug, Serialize)]
pub struct DiagnosticJson {
    pub severity: &'static str,
    pub code: &'static str,
    pub message: String,
    pub element: Option<String>,
}

impl From<&Diagnostic> for DiagnosticJson {
    fn from(d: &Diagnostic) -> Self {
        DiagnosticJson {
            severity: match d.severity {
                pnasync_core::Severity::Error => "error",
                pnasync_core::Severity::Warning => "warning",
            },
            code: d.code.as_str(),
            message: d.message.clone(),
            element: d.element.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub net: String,
    pub valid: bool,
    pub diagnostics: Vec<DiagnosticJson>,
}

#[derive(Debug, Serialize)]
pub struct EdgeJson {
    pub from: usize,
    pub transition: String,
    pub to: usize,
}

#[derive(Debug, Serialize)]
pub struct ReachReport {
    pub net: String,
    /// Index of the initial marking in `markings`.
    pub initial: usize,
    pub markings: Vec<Vec<String>>,
    pub edges: Vec<EdgeJson>,
    pub contact_free: bool,
    /// Only for plain nets.
    pub deterministic: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct TransformReport {
    pub net: String,
    pub mode: &'static str,
    pub priority: Option<PriorityJson>,
    pub places: usize,
    pub transitions: usize,
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct PriorityJson {
    /// `t:p1,p2 u:q,r`, branched transitions only.
    pub compact: String,
    /// Every transition's preset, least first.
    pub orders: BTreeMap<String, Vec<String>>,
}

impl From<&PriorityAssignment> for PriorityJson {
    fn from(g: &PriorityAssignment) -> Self {
        PriorityJson {
            compact: g.to_string(),
            orders: g.iter().map(|(t, o)| (t.to_string(), names(o))).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FailurePairJson {
    pub text: String,
    pub trace: Vec<String>,
    pub refusal: Vec<String>,
}

impl From<&FailurePair> for FailurePairJson {
    fn from(p: &FailurePair) -> Self {
        FailurePairJson { text: p.to_string(), trace: names(&p.trace), refusal: names(&p.refusal) }
    }
}

#[derive(Debug, Serialize)]
pub struct FailuresReport {
    pub net: String,
    pub maxlen: usize,
    pub failures: Vec<FailurePairJson>,
}

#[derive(Debug, Serialize)]
pub struct DistinctionJson {
    pub witness: FailurePairJson,
    /// Which side has the witness in its failures.
    pub side: &'static str,
    pub maximal_refusal: Vec<String>,
}

impl DistinctionJson {
    pub fn new(d: &Distinction, first: &'static str, second: &'static str) -> Self {
        DistinctionJson {
            witness: (&d.witness).into(),
            side: match d.side {
                Side::First => first,
                Side::Second => second,
            },
            maximal_refusal: names(&d.maximal_refusal),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EquivReport {
    pub first: String,
    pub second: String,
    pub equivalent: bool,
    pub distinction: Option<DistinctionJson>,
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub pattern: &'static str,
    pub transitions: Vec<String>,
    pub places: Vec<String>,
    pub markings: Vec<Vec<String>>,
}

impl From<&StructuralWitness> for WitnessJson {
    fn from(w: &StructuralWitness) -> Self {
        WitnessJson {
            pattern: w.pattern.as_str(),
            transitions: names(&w.transitions),
            places: names(&w.places),
            markings: w.markings.iter().map(names).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EvidenceJson {
    Structural(WitnessJson),
    Failure(DistinctionJson),
    Priority(PriorityJson),
    NoPriority { tried: usize, first: PriorityJson, witness: DistinctionJson },
}

impl From<&Evidence> for EvidenceJson {
    fn from(e: &Evidence) -> Self {
        match e {
            Evidence::Structural(w) => EvidenceJson::Structural(w.into()),
            Evidence::Failure(d) => EvidenceJson::Failure(DistinctionJson::new(d, "net", "implementation")),
            Evidence::Priority(g) => EvidenceJson::Priority(g.into()),
            Evidence::NoPriority { tried, first, witness } => EvidenceJson::NoPriority {
                tried: *tried,
                first: first.into(),
                witness: DistinctionJson::new(witness, "net", "implementation"),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub class: &'static str,
    pub verdict: &'static str,
    pub route: &'static str,
    pub evidence: Vec<EvidenceJson>,
}

impl From<&ClassVerdict> for VerdictJson {
    fn from(v: &ClassVerdict) -> Self {
        VerdictJson {
            class: v.class.as_str(),
            verdict: v.verdict.as_str(),
            route: v.route.as_str(),
            evidence: v.evidence.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub net: String,
    pub verdicts: Vec<VerdictJson>,
    pub timings: Option<Timings>,
}

impl ClassifyReport {
    pub fn new(net: &str, report: &ClassReport, timings: Option<Timings>) -> Self {
        ClassifyReport {
            net: net.to_string(),
            verdicts: report.verdicts.iter().map(Into::into).collect(),
            timings,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ViolationJson {
    pub check: &'static str,
    pub detail: String,
    pub net: String,
}

impl From<&Violation> for ViolationJson {
    fn from(v: &Violation) -> Self {
        let doc = NetDocument { name: "violation".into(), net: v.net.clone() };
        ViolationJson { check: v.check.as_str(), detail: v.detail.clone(), net: serialize(&doc) }
    }
}

#[derive(Debug, Serialize)]
pub struct TheoremsReport {
    pub source: String,
    pub nets: usize,
    pub aa_skipped: usize,
    pub violations: Vec<ViolationJson>,
    pub timings: Option<Timings>,
}

impl TheoremsReport {
    pub fn new(source: String, summary: &Summary, timings: Option<Timings>) -> Self {
        TheoremsReport {
            source,
            nets: summary.nets,
            aa_skipped: summary.aa_skipped,
            violations: summary.violations.iter().map(Into::into).collect(),
            timings,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CorpusItem {
    pub id: &'static str,
    pub name: &'static str,
    pub expected: BTreeMap<&'static str, &'static str>,
}

//! Membership in the asynchronously implementable classes and the classic
//! structural classes.
//!
//! FA(B), SA(B) and AA(B) can each be decided behaviorally, by comparing
//! the failures of a net with those of its implementation, or
//! structurally. When both routes run they must agree; a disagreement is
//! reported as [`Error::TheoremViolation`] and never turned into a verdict.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::net::Net;
use crate::reach::{self, MarkingGraph};
use crate::semantics::{self, Distinction, NormalizedMachine};
use crate::structure::{self, StructuralWitness};
use crate::transform::{self, ImplementationNet, PriorityAssignment, DEFAULT_PRIORITY_CAP};

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    FAB,
    SAB,
    AAB,
    FC,
    EFC,
    BFC,
    SPL,
    ESPL,
}

impl Class {
    pub const ALL: [Class; 8] = [
        Class::FAB,
        Class::SAB,
        Class::AAB,
        Class::FC,
        Class::EFC,
        Class::BFC,
        Class::SPL,
        Class::ESPL,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Class::FAB => "FA(B)",
            Class::SAB => "SA(B)",
            Class::AAB => "AA(B)",
            Class::FC => "FC",
            Class::EFC => "EFC",
            Class::BFC => "BFC",
            Class::SPL => "SPL",
            Class::ESPL => "ESPL",
        }
    }

    /// Accepts the display name or the bare letters (`fab`, `FA(B)`).
    pub fn parse(text: &str) -> Option<Class> {
        let key: alloc::string::String = text
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_uppercase())
            .collect();
        Class::ALL.into_iter().find(|c| {
            let name: alloc::string::String = c.as_str().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
            name == key
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    In,
    Out,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::In => "in",
            Verdict::Out => "out",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn of(member: bool) -> Verdict {
        if member {
            Verdict::In
        } else {
            Verdict::Out
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    Structural,
    Behavioral,
    Both,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Structural => "structural",
            Route::Behavioral => "behavioral",
            Route::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Structural(StructuralWitness),
    /// A failure pair on which the net and an implementation differ.
    Failure(Distinction),
    /// The priority assignment whose implementation is equivalent.
    Priority(PriorityAssignment),
    /// Every assignment was tried; the first one is shown with its witness.
    NoPriority {
        tried: usize,
        first: PriorityAssignment,
        witness: Distinction,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVerdict {
    pub class: Class,
    pub verdict: Verdict,
    pub route: Route,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub verdicts: Vec<ClassVerdict>,
}

impl ClassReport {
    pub fn get(&self, class: Class) -> Option<&ClassVerdict> {
        self.verdicts.iter().find(|v| v.class == class)
    }

    pub fn verdict(&self, class: Class) -> Verdict {
        self.get(class).map_or(Verdict::Unknown, |v| v.verdict)
    }
}

/// A plain, contact-free, divergence-free net with its marking graph and
/// normalized failures machine, computed once and shared by all checks.
#[derive(Debug, Clone)]
pub struct Analysis<'a> {
    pub net: &'a Net,
    pub graph: MarkingGraph,
    pub machine: NormalizedMachine,
}

impl<'a> Analysis<'a> {
    pub fn new(net: &'a Net) -> Result<Self, Error> {
        Self::with_cap(net, reach::DEFAULT_CAP)
    }

    pub fn with_cap(net: &'a Net, cap: usize) -> Result<Self, Error> {
        if !net.is_plain() {
            return Err(Error::NotPlain);
        }
        let graph = reach::reachability(net, cap)?;
        if !graph.contact_free() {
            return Err(Error::ContactViolation);
        }
        let machine = semantics::normalize(net, &graph)?;
        Ok(Analysis { net, graph, machine })
    }

    /// Compares the net with an implementation of it.
    pub fn compare(&self, inet: &ImplementationNet) -> Result<Option<Distinction>, Error> {
        let m = semantics::machine(inet.net(), reach::DEFAULT_CAP)?;
        self.machine.compare(&m)
    }
}

fn agree(
    class: Class,
    structural: (Verdict, Vec<Evidence>),
    behavioral: (Verdict, Vec<Evidence>),
) -> Result<ClassVerdict, Error> {
    if structural.0 != behavioral.0 {
        return Err(Error::TheoremViolation(format!(
            "{}: structural route says {}, behavioral route says {}",
            class.as_str(),
            structural.0.as_str(),
            behavioral.0.as_str()
        )));
    }
    let mut evidence = structural.1;
    evidence.extend(behavioral.1);
    Ok(ClassVerdict { class, verdict: behavioral.0, route: Route::Both, evidence })
}

fn from_witness(w: Option<StructuralWitness>) -> (Verdict, Vec<Evidence>) {
    match w {
        Some(w) => (Verdict::Out, alloc::vec![Evidence::Structural(w)]),
        None => (Verdict::In, Vec::new()),
    }
}

fn from_distinction(d: Option<Distinction>) -> (Verdict, Vec<Evidence>) {
    match d {
        Some(d) => (Verdict::Out, alloc::vec![Evidence::Failure(d)]),
        None => (Verdict::In, Vec::new()),
    }
}

fn decide(
    class: Class,
    route: Route,
    structural: impl FnOnce() -> (Verdict, Vec<Evidence>),
    behavioral: impl FnOnce() -> Result<(Verdict, Vec<Evidence>), Error>,
) -> Result<ClassVerdict, Error> {
    match route {
        Route::Structural => {
            let (verdict, evidence) = structural();
            Ok(ClassVerdict { class, verdict, route, evidence })
        }
        Route::Behavioral => {
            let (verdict, evidence) = behavioral()?;
            Ok(ClassVerdict { class, verdict, route, evidence })
        }
        Route::Both => {
            let s = structural();
            agree(class, s, behavioral()?)
        }
    }
}

/// FA(B): `FI(N) ≈ℱ N`, or structurally, no partially reachable conflict.
pub fn in_fab(a: &Analysis<'_>, route: Route) -> Result<ClassVerdict, Error> {
    decide(
        Class::FAB,
        route,
        || from_witness(structure::partially_reachable_conflict(a.net, &a.graph)),
        || Ok(from_distinction(a.compare(&transform::fully_async(a.net)?)?)),
    )
}

/// SA(B): `SI(N) ≈ℱ N`, or structurally, no partially reachable N.
pub fn in_sab(a: &Analysis<'_>, route: Route) -> Result<ClassVerdict, Error> {
    decide(
        Class::SAB,
        route,
        || from_witness(structure::partially_reachable_n(a.net, &a.graph)),
        || Ok(from_distinction(a.compare(&transform::symm_async(a.net)?)?)),
    )
}

/// Structural bounds for AA(B): in without a border-reachable M, out with
/// a reachable M, unknown in between.
pub fn aab_bounds(a: &Analysis<'_>) -> (Verdict, Vec<Evidence>) {
    match structure::lr_border_reachable_m(a.net, &a.graph) {
        None => (Verdict::In, Vec::new()),
        Some(border) => match structure::lr_reachable_m(a.net, &a.graph) {
            Some(full) => (Verdict::Out, alloc::vec![Evidence::Structural(full)]),
            None => (Verdict::Unknown, alloc::vec![Evidence::Structural(border)]),
        },
    }
}

/// Tries every priority assignment in enumeration order; in with the first
/// one whose implementation is equivalent.
pub fn aab_behavioral(a: &Analysis<'_>, g_cap: usize) -> Result<(Verdict, Vec<Evidence>), Error> {
    let mut first: Option<(PriorityAssignment, Distinction)> = None;
    let mut tried = 0;
    for g in transform::enumerate_priorities(a.net, g_cap)? {
        tried += 1;
        match a.compare(&transform::asymm_async(a.net, &g)?)? {
            None => return Ok((Verdict::In, alloc::vec![Evidence::Priority(g)])),
            Some(d) => {
                if first.is_none() {
                    first = Some((g, d));
                }
            }
        }
    }
    let (first, witness) = first.expect("at least one priority assignment");
    Ok((Verdict::Out, alloc::vec![Evidence::NoPriority { tried, first, witness }]))
}

/// AA(B): some `AI_g(N) ≈ℱ N`. With both routes the behavioral verdict
/// must lie within the structural bounds.
pub fn in_aab(a: &Analysis<'_>, route: Route, g_cap: usize) -> Result<ClassVerdict, Error> {
    let class = Class::AAB;
    match route {
        Route::Structural => {
            let (verdict, evidence) = aab_bounds(a);
            Ok(ClassVerdict { class, verdict, route, evidence })
        }
        Route::Behavioral => {
            let (verdict, evidence) = aab_behavioral(a, g_cap)?;
            Ok(ClassVerdict { class, verdict, route, evidence })
        }
        Route::Both => {
            let (bound, mut evidence) = aab_bounds(a);
            let (verdict, behavioral) = aab_behavioral(a, g_cap)?;
            if bound != Verdict::Unknown && bound != verdict {
                return Err(Error::TheoremViolation(format!(
                    "AA(B): behavioral verdict {} outside structural bound {}",
                    verdict.as_str(),
                    bound.as_str()
                )));
            }
            evidence.extend(behavioral);
            Ok(ClassVerdict { class, verdict, route, evidence })
        }
    }
}

fn structural_class(class: Class, w: Option<StructuralWitness>, member: bool) -> ClassVerdict {
    ClassVerdict {
        class,
        verdict: Verdict::of(member),
        route: Route::Structural,
        evidence: w.into_iter().map(Evidence::Structural).collect(),
    }
}

/// All eight verdicts.
///
/// With `route` unset, FA(B) and SA(B) run both routes and AA(B) runs the
/// structural bounds, falling back to priority enumeration only in the
/// gap between them; if that enumeration would exceed `g_cap` the verdict
/// stays unknown. An explicit route applies to all three behavioral classes.
pub fn classify_report(net: &Net, route: Option<Route>, g_cap: usize) -> Result<ClassReport, Error> {
    let a = Analysis::new(net)?;
    let fab = in_fab(&a, route.unwrap_or(Route::Both))?;
    let sab = in_sab(&a, route.unwrap_or(Route::Both))?;
    let aab = match route {
        Some(r) => in_aab(&a, r, g_cap)?,
        None => {
            let (bound, mut evidence) = aab_bounds(&a);
            if bound == Verdict::Unknown {
                match aab_behavioral(&a, g_cap) {
                    Ok((verdict, behavioral)) => {
                        evidence.extend(behavioral);
                        ClassVerdict { class: Class::AAB, verdict, route: Route::Both, evidence }
                    }
                    Err(Error::PriorityCapExceeded { .. }) => {
                        ClassVerdict { class: Class::AAB, verdict: bound, route: Route::Structural, evidence }
                    }
                    Err(e) => return Err(e),
                }
            } else {
                ClassVerdict { class: Class::AAB, verdict: bound, route: Route::Structural, evidence }
            }
        }
    };
    let verdicts = alloc::vec![
        fab,
        sab,
        aab,
        structural_class(Class::FC, structure::static_n(net), structure::is_fc(net)),
        structural_class(Class::EFC, structure::pure_n(net), structure::is_efc(net)),
        structural_class(
            Class::BFC,
            structure::bfc_violation(net, &a.graph),
            structure::is_bfc(net, &a.graph),
        ),
        structural_class(Class::SPL, structure::static_m(net), structure::is_spl(net)),
        structural_class(Class::ESPL, structure::espl_violation(net), structure::is_espl(net)),
    ];
    Ok(ClassReport { verdicts })
}

/// [`classify_report`] with the default policy and priority cap.
pub fn classify(net: &Net) -> Result<ClassReport, Error> {
    classify_report(net, None, DEFAULT_PRIORITY_CAP)
}

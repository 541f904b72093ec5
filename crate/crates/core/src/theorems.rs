//! Cross-checks between the behavioral definitions and the structural
//! characterizations, run net by net.
//!
//! Every disagreement becomes a [`Violation`] record; nothing here panics
//! on a failed check. The structural predicates are taken from a
//! [`Predicates`] table so that a deliberately broken predicate can be
//! swapped in to confirm the harness notices.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::classify::Analysis;
use crate::error::Error;
use crate::net::Net;
use crate::reach::{self, MarkingGraph};
use crate::semantics;
use crate::structure::{self, StructuralWitness};
use crate::transform::{self, ImplementationNet, DEFAULT_PRIORITY_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// FA(B) by failures ⟺ no partially reachable conflict.
    FabCharacterization,
    /// SA(B) by failures ⟺ no partially reachable N.
    SabCharacterization,
    /// No border-reachable M ⇒ AA(B).
    AabLowerBound,
    /// AA(B) ⇒ no reachable M.
    AabUpperBound,
    FabInSab,
    SabInAab,
    FcInSab,
    SabInBfc,
    SplInAab,
    /// FC ⊆ EFC ⊆ BFC, FC ⊆ SPL ⊆ ESPL, EFC ⊆ ESPL.
    StaticInclusions,
    /// Alternative formulations of FC, EFC and SPL agree.
    Formulations,
    /// Reachable N ⇒ conflict, reachable M ⇒ border M.
    PatternMonotonicity,
    WitnessRevalidation,
    FailureInclusion,
    ImplementationContactFree,
    ImplementationDivergenceFree,
    ImplementationShape,
    /// Reachable implementation markings satisfy α (FI, SI) or γ (AI).
    ReachableInvariant,
    /// The net or one of its implementations could not be analysed.
    AnalysisError,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::FabCharacterization => "fab-characterization",
            Check::SabCharacterization => "sab-characterization",
            Check::AabLowerBound => "aab-lower-bound",
            Check::AabUpperBound => "aab-upper-bound",
            Check::FabInSab => "fab-in-sab",
            Check::SabInAab => "sab-in-aab",
            Check::FcInSab => "fc-in-sab",
            Check::SabInBfc => "sab-in-bfc",
            Check::SplInAab => "spl-in-aab",
            Check::StaticInclusions => "static-inclusions",
            Check::Formulations => "formulations",
            Check::PatternMonotonicity => "pattern-monotonicity",
            Check::WitnessRevalidation => "witness-revalidation",
            Check::FailureInclusion => "failure-inclusion",
            Check::ImplementationContactFree => "implementation-contact-free",
            Check::ImplementationDivergenceFree => "implementation-divergence-free",
            Check::ImplementationShape => "implementation-shape",
            Check::ReachableInvariant => "reachable-invariant",
            Check::AnalysisError => "analysis-error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub net: Net,
    pub check: Check,
    pub detail: String,
}

type Search = fn(&Net, &MarkingGraph) -> Option<StructuralWitness>;

/// The reachability-aware pattern searches used by the cross-check.
#[derive(Debug, Clone, Copy)]
pub struct Predicates {
    pub conflict: Search,
    pub n: Search,
    pub m: Search,
    pub border_m: Search,
}

impl Default for Predicates {
    fn default() -> Self {
        Predicates {
            conflict: structure::partially_reachable_conflict,
            n: structure::partially_reachable_n,
            m: structure::lr_reachable_m,
            border_m: structure::lr_border_reachable_m,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    /// Nets with more priority assignments skip the AA(B) behavioral checks.
    pub g_cap: usize,
    pub predicates: Predicates,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { g_cap: DEFAULT_PRIORITY_CAP, predicates: Predicates::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NetOutcome {
    pub violations: Vec<Violation>,
    /// AA(B) behavioral checks were skipped because of the priority cap.
    pub aa_skipped: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub nets: usize,
    pub aa_skipped: usize,
    pub violations: Vec<Violation>,
}

impl Summary {
    pub fn add(&mut self, outcome: NetOutcome) {
        self.nets += 1;
        self.aa_skipped += usize::from(outcome.aa_skipped);
        self.violations.extend(outcome.violations);
    }

    pub fn merge(&mut self, other: Summary) {
        self.nets += other.nets;
        self.aa_skipped += other.aa_skipped;
        self.violations.extend(other.violations);
    }
}

struct Recorder<'a> {
    net: &'a Net,
    violations: Vec<Violation>,
}

impl Recorder<'_> {
    fn require(&mut self, holds: bool, check: Check, detail: impl FnOnce() -> String) {
        if !holds {
            self.violations.push(Violation { net: self.net.clone(), check, detail: detail() });
        }
    }

    fn error(&mut self, what: &str, e: Error) {
        self.require(false, Check::AnalysisError, || format!("{what}: {e}"));
    }
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

/// Checks one implementation: shape, contact- and divergence-freeness,
/// reachable-marking invariant and `ℱ(N) ⊆ ℱ(I)`. Returns whether it is
/// failures equivalent to the origin.
fn check_implementation(a: &Analysis<'_>, inet: &ImplementationNet, rec: &mut Recorder<'_>) -> Option<bool> {
    let label = match inet.priority() {
        Some(g) => format!("{} [{}]", inet.kind().as_str(), g),
        None => String::from(inet.kind().as_str()),
    };
    if let Err(e) = transform::check_shape(inet) {
        rec.require(false, Check::ImplementationShape, || format!("{label}: {e}"));
    }
    let graph = match reach::reachability(inet.net(), reach::DEFAULT_CAP) {
        Ok(g) => g,
        Err(e) => {
            rec.error(&label, e);
            return None;
        }
    };
    rec.require(graph.contact_free(), Check::ImplementationContactFree, || label.clone());
    let divergence_free = semantics::is_divergence_free(inet.net(), &graph);
    rec.require(divergence_free, Check::ImplementationDivergenceFree, || label.clone());
    let invariant = graph.states().iter().all(|m| match inet.priority() {
        Some(_) => transform::gamma_holds(inet, &a.graph, m).unwrap_or(false),
        None => transform::alpha_holds(inet, &a.graph, m).unwrap_or(false),
    });
    rec.require(invariant, Check::ReachableInvariant, || label.clone());
    if !graph.contact_free() || !divergence_free {
        return None;
    }
    let machine = match semantics::normalize(inet.net(), &graph) {
        Ok(m) => m,
        Err(e) => {
            rec.error(&label, e);
            return None;
        }
    };
    match a.machine.first_excess(&machine) {
        Ok(missing) => rec.require(missing.is_none(), Check::FailureInclusion, || {
            format!("{label}: {} not a failure of the implementation", missing.unwrap())
        }),
        Err(e) => rec.error(&label, e),
    }
    match a.machine.compare(&machine) {
        Ok(d) => Some(d.is_none()),
        Err(e) => {
            rec.error(&label, e);
            None
        }
    }
}

/// Runs every cross-check on one plain net.
pub fn check_net(net: &Net, config: &CheckConfig) -> NetOutcome {
    let mut rec = Recorder { net, violations: Vec::new() };
    let a = match Analysis::new(net) {
        Ok(a) => a,
        Err(e) => {
            rec.error("net", e);
            return NetOutcome { violations: rec.violations, aa_skipped: false };
        }
    };
    let p = &config.predicates;
    let g = &a.graph;

    let conflict = (p.conflict)(net, g);
    let n_shape = (p.n)(net, g);
    let m_shape = (p.m)(net, g);
    let border_m = (p.border_m)(net, g);
    for w in [&conflict, &n_shape, &m_shape, &border_m].into_iter().flatten() {
        rec.require(w.revalidate(net, g), Check::WitnessRevalidation, || format!("{w:?}"));
    }
    rec.require(
        implies(n_shape.is_some(), conflict.is_some()) && implies(m_shape.is_some(), border_m.is_some()),
        Check::PatternMonotonicity,
        String::new,
    );

    let fc = structure::is_fc(net);
    let efc = structure::is_efc(net);
    let bfc = structure::is_bfc(net, g);
    let spl = structure::is_spl(net);
    let espl = structure::is_espl(net);
    rec.require(
        fc == structure::is_fc_by_transitions(net)
            && fc == structure::static_n(net).is_none()
            && efc == !structure::has_pure_n(net)
            && spl == structure::static_m(net).is_none(),
        Check::Formulations,
        String::new,
    );
    rec.require(
        implies(fc, efc) && implies(efc, bfc) && implies(fc, spl) && implies(spl, espl) && implies(efc, espl),
        Check::StaticInclusions,
        || format!("fc={fc} efc={efc} bfc={bfc} spl={spl} espl={espl}"),
    );

    let fab = transform::fully_async(net).ok().and_then(|fi| check_implementation(&a, &fi, &mut rec));
    let sab = transform::symm_async(net).ok().and_then(|si| check_implementation(&a, &si, &mut rec));

    let mut aab = None;
    let mut aa_skipped = false;
    match transform::enumerate_priorities(net, config.g_cap) {
        Ok(priorities) => {
            let mut any = false;
            let mut complete = true;
            for prio in priorities {
                match transform::asymm_async(net, &prio) {
                    Ok(ai) => match check_implementation(&a, &ai, &mut rec) {
                        Some(eq) => any |= eq,
                        None => complete = false,
                    },
                    Err(e) => {
                        rec.error("AI", e);
                        complete = false;
                    }
                }
            }
            if complete || any {
                aab = Some(any);
            }
        }
        Err(Error::PriorityCapExceeded { .. }) => aa_skipped = true,
        Err(e) => rec.error("priorities", e),
    }

    if let Some(fab) = fab {
        rec.require(fab == conflict.is_none(), Check::FabCharacterization, || {
            format!("behavioral {fab}, conflict witness {conflict:?}")
        });
    }
    if let Some(sab) = sab {
        rec.require(sab == n_shape.is_none(), Check::SabCharacterization, || {
            format!("behavioral {sab}, N witness {n_shape:?}")
        });
        rec.require(implies(fc, sab), Check::FcInSab, String::new);
        rec.require(implies(sab, bfc), Check::SabInBfc, String::new);
    }
    if let (Some(fab), Some(sab)) = (fab, sab) {
        rec.require(implies(fab, sab), Check::FabInSab, String::new);
    }
    if let Some(aab) = aab {
        rec.require(implies(border_m.is_none(), aab), Check::AabLowerBound, || {
            format!("no border M but behavioral {aab}")
        });
        rec.require(implies(aab, m_shape.is_none()), Check::AabUpperBound, || {
            format!("behavioral in but M witness {m_shape:?}")
        });
        rec.require(implies(spl, aab), Check::SplInAab, String::new);
        if let Some(sab) = sab {
            rec.require(implies(sab, aab), Check::SabInAab, String::new);
        }
    }
    NetOutcome { violations: rec.violations, aa_skipped }
}

/// Runs [`check_net`] over a stream of nets.
pub fn cross_check<I: IntoIterator<Item = Net>>(nets: I, config: &CheckConfig) -> Summary {
    let mut summary = Summary::default();
    for net in nets {
        summary.add(check_net(&net, config));
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn figure_corpus_has_no_violations() {
        let nets = corpus::builtin_corpus().into_iter().filter(|e| e.net.is_plain()).map(|e| e.net);
        let summary = cross_check(nets, &CheckConfig::default());
        assert_eq!(summary.violations, []);
        assert_eq!(summary.aa_skipped, 0);
        assert_eq!(summary.nets, 11);
    }

    fn negated_conflict(net: &Net, g: &MarkingGraph) -> Option<StructuralWitness> {
        match structure::partially_reachable_conflict(net, g) {
            Some(_) => None,
            None => Some(StructuralWitness {
                pattern: structure::Pattern::Conflict,
                transitions: Vec::new(),
                places: Vec::new(),
                markings: Vec::new(),
            }),
        }
    }

    #[test]
    fn corrupted_predicate_is_caught() {
        let mut config = CheckConfig::default();
        config.predicates.conflict = negated_conflict;
        let summary = cross_check([corpus::fig2(), corpus::msc()], &config);
        assert!(summary.violations.iter().any(|v| v.check == Check::FabCharacterization));
    }

    #[test]
    fn priority_cap_skips_aa() {
        let config = CheckConfig { g_cap: 2, ..CheckConfig::default() };
        let outcome = check_net(&corpus::fig8l(), &config);
        assert!(outcome.aa_skipped);
        assert_eq!(outcome.violations, []);
    }

    #[test]
    fn non_plain_net_is_an_analysis_error() {
        let outcome = check_net(&corpus::fig5a(), &CheckConfig::default());
        assert_eq!(outcome.violations.len(), 1);
        assert_eq!(outcome.violations[0].check, Check::AnalysisError);
    }
}

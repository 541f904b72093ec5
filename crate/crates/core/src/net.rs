//! Nets with silent transitions: construction, well-formedness and the
//! firing rule.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitSet;
use crate::error::Error;
use crate::id::{id, ElementId, ElementKind};

/// A global state: the set of marked places of one particular net.
///
/// Markings index into the canonically ordered place table of the net
/// they were created for and are meaningless for any other net.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Marking(pub(crate) BitSet);

impl Marking {
    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn contains(&self, place: usize) -> bool {
        self.0.contains(place)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> crate::bits::Iter<'_> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Marking) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Canonical order: lexicographic on the sorted place lists.
    pub fn cmp_canonical(&self, other: &Marking) -> core::cmp::Ordering {
        self.0.cmp_members(&other.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiagnosticCode {
    DuplicateId,
    ArcBetweenPlaces,
    ArcBetweenTransitions,
    UnknownArcEndpoint,
    EmptyPreset,
    UnknownInitialPlace,
    MisplacedDerivedName,
    SilentTransition,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::DuplicateId => "duplicate-id",
            DiagnosticCode::ArcBetweenPlaces => "arc-between-places",
            DiagnosticCode::ArcBetweenTransitions => "arc-between-transitions",
            DiagnosticCode::UnknownArcEndpoint => "unknown-arc-endpoint",
            DiagnosticCode::EmptyPreset => "empty-preset",
            DiagnosticCode::UnknownInitialPlace => "unknown-initial-place",
            DiagnosticCode::MisplacedDerivedName => "misplaced-derived-name",
            DiagnosticCode::SilentTransition => "silent-transition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub message: String,
    pub element: Option<ElementId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.0.iter().any(|d| d.severity == Severity::Error)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Diagnostic> {
        self.0.iter()
    }

    fn error(&mut self, code: DiagnosticCode, message: String, element: Option<&ElementId>) {
        self.0.push(Diagnostic {
            severity: Severity::Error,
            code,
            message,
            element: element.cloned(),
        });
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(&d.message)?;
        }
        Ok(())
    }
}

/// The raw `(S, O, U, F, M0)` tuple, before any checking.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NetBuilder {
    pub places: BTreeSet<ElementId>,
    pub observables: BTreeSet<ElementId>,
    pub silents: BTreeSet<ElementId>,
    pub flow: BTreeSet<(ElementId, ElementId)>,
    pub initial: BTreeSet<ElementId>,
}

impl NetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(mut self, name: &str) -> Self {
        self.places.insert(id(name));
        self
    }

    pub fn marked(mut self, name: &str) -> Self {
        self.places.insert(id(name));
        self.initial.insert(id(name));
        self
    }

    pub fn trans(mut self, name: &str) -> Self {
        self.observables.insert(id(name));
        self
    }

    pub fn silent(mut self, name: &str) -> Self {
        self.silents.insert(id(name));
        self
    }

    pub fn arc(mut self, from: &str, to: &str) -> Self {
        self.flow.insert((id(from), id(to)));
        self
    }

    /// Checks the restrictions every τ-net must satisfy, and plainness when
    /// `expect_plain` is set. An empty result means the tuple is valid.
    pub fn validate(&self, expect_plain: bool) -> Diagnostics {
        let mut diags = Diagnostics::default();
        let is_place = |x: &ElementId| self.places.contains(x);
        let is_trans = |x: &ElementId| self.observables.contains(x) || self.silents.contains(x);

        for x in self.places.iter().filter(|x| is_trans(x)) {
            diags.error(
                DiagnosticCode::DuplicateId,
                format!("{x} is declared both as place and transition"),
                Some(x),
            );
        }
        for x in self.observables.intersection(&self.silents) {
            diags.error(
                DiagnosticCode::DuplicateId,
                format!("{x} is declared both observable and silent"),
                Some(x),
            );
        }
        for x in &self.places {
            if matches!(x.kind(), ElementKind::Collector { .. }) {
                diags.error(
                    DiagnosticCode::MisplacedDerivedName,
                    format!("collector name {x} used for a place"),
                    Some(x),
                );
            }
        }
        for x in self.observables.iter().chain(&self.silents) {
            if matches!(x.kind(), ElementKind::Buffer { .. }) {
                diags.error(
                    DiagnosticCode::MisplacedDerivedName,
                    format!("buffer name {x} used for a transition"),
                    Some(x),
                );
            }
        }

        for (from, to) in &self.flow {
            for end in [from, to] {
                if !is_place(end) && !is_trans(end) {
                    diags.error(
                        DiagnosticCode::UnknownArcEndpoint,
                        format!("arc {from} -> {to} refers to undeclared {end}"),
                        Some(end),
                    );
                }
            }
            if is_place(from) && is_place(to) {
                diags.error(
                    DiagnosticCode::ArcBetweenPlaces,
                    format!("arc {from} -> {to} connects two places"),
                    Some(from),
                );
            }
            if is_trans(from) && is_trans(to) {
                diags.error(
                    DiagnosticCode::ArcBetweenTransitions,
                    format!("arc {from} -> {to} connects two transitions"),
                    Some(from),
                );
            }
        }

        for t in self.observables.iter().chain(&self.silents) {
            let has_input = self.flow.iter().any(|(s, x)| x == t && is_place(s));
            if !has_input {
                diags.error(
                    DiagnosticCode::EmptyPreset,
                    format!("transition {t} has an empty preset"),
                    Some(t),
                );
            }
        }

        for p in self.initial.iter().filter(|p| !is_place(p)) {
            diags.error(
                DiagnosticCode::UnknownInitialPlace,
                format!("initial marking refers to unknown place {p}"),
                Some(p),
            );
        }

        if expect_plain {
            for u in &self.silents {
                diags.error(
                    DiagnosticCode::SilentTransition,
                    format!("silent transitions present: {u}"),
                    Some(u),
                );
            }
        }
        diags
    }

    /// Indexes the tuple into a [`Net`], rejecting invalid τ-nets.
    pub fn build(self) -> Result<Net, Error> {
        let diags = self.validate(false);
        if diags.has_errors() {
            return Err(Error::InvalidNet(diags));
        }
        Ok(Net::index(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Place(usize),
    Transition(usize),
}

/// A valid τ-net, indexed for fast firing.
///
/// Places and transitions are stored in ascending identifier order; every
/// index-based API refers to those tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    places: Vec<ElementId>,
    transitions: Vec<ElementId>,
    silent: BitSet,
    observables: Vec<usize>,
    obs_of: Vec<Option<usize>>,
    pre: Vec<BitSet>,
    post: Vec<BitSet>,
    place_pre: Vec<BitSet>,
    place_post: Vec<BitSet>,
    initial: Marking,
    lookup: BTreeMap<ElementId, Node>,
}

impl Net {
    fn index(b: NetBuilder) -> Net {
        let places: Vec<ElementId> = b.places.into_iter().collect();
        let mut transitions: Vec<ElementId> =
            b.observables.iter().chain(&b.silents).cloned().collect();
        transitions.sort();

        let mut lookup = BTreeMap::new();
        for (i, p) in places.iter().enumerate() {
            lookup.insert(p.clone(), Node::Place(i));
        }
        for (i, t) in transitions.iter().enumerate() {
            lookup.insert(t.clone(), Node::Transition(i));
        }

        let (np, nt) = (places.len(), transitions.len());
        let mut silent = BitSet::empty(nt);
        let mut observables = Vec::new();
        let mut obs_of = Vec::with_capacity(nt);
        for (i, t) in transitions.iter().enumerate() {
            if b.silents.contains(t) {
                silent.insert(i);
                obs_of.push(None);
            } else {
                obs_of.push(Some(observables.len()));
                observables.push(i);
            }
        }

        let mut pre = alloc::vec![BitSet::empty(np); nt];
        let mut post = alloc::vec![BitSet::empty(np); nt];
        let mut place_pre = alloc::vec![BitSet::empty(nt); np];
        let mut place_post = alloc::vec![BitSet::empty(nt); np];
        for (from, to) in &b.flow {
            match (lookup[from], lookup[to]) {
                (Node::Place(s), Node::Transition(t)) => {
                    pre[t].insert(s);
                    place_post[s].insert(t);
                }
                (Node::Transition(t), Node::Place(s)) => {
                    post[t].insert(s);
                    place_pre[s].insert(t);
                }
                _ => unreachable!("validated flow"),
            }
        }
        let initial = Marking(BitSet::from_indices(
            np,
            b.initial.iter().map(|p| match lookup[p] {
                Node::Place(i) => i,
                Node::Transition(_) => unreachable!("validated initial marking"),
            }),
        ));

        Net {
            places,
            transitions,
            silent,
            observables,
            obs_of,
            pre,
            post,
            place_pre,
            place_post,
            initial,
            lookup,
        }
    }

    /// Reconstructs the raw tuple.
    pub fn to_builder(&self) -> NetBuilder {
        let mut b = NetBuilder::new();
        b.places = self.places.iter().cloned().collect();
        for (i, t) in self.transitions.iter().enumerate() {
            if self.silent.contains(i) {
                b.silents.insert(t.clone());
            } else {
                b.observables.insert(t.clone());
            }
            for s in self.pre[i].iter() {
                b.flow.insert((self.places[s].clone(), t.clone()));
            }
            for s in self.post[i].iter() {
                b.flow.insert((t.clone(), self.places[s].clone()));
            }
        }
        b.initial = self.ids_of(&self.initial).into_iter().collect();
        b
    }

    pub fn validate(&self, expect_plain: bool) -> Diagnostics {
        self.to_builder().validate(expect_plain)
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn places(&self) -> &[ElementId] {
        &self.places
    }

    pub fn transitions(&self) -> &[ElementId] {
        &self.transitions
    }

    pub fn place_id(&self, place: usize) -> &ElementId {
        &self.places[place]
    }

    pub fn transition_id(&self, t: usize) -> &ElementId {
        &self.transitions[t]
    }

    /// Transition indices of the observable transitions, ascending.
    pub fn observable_indices(&self) -> &[usize] {
        &self.observables
    }

    pub fn observables(&self) -> impl Iterator<Item = &ElementId> + '_ {
        self.observables.iter().map(move |&t| &self.transitions[t])
    }

    pub fn silents(&self) -> impl Iterator<Item = &ElementId> + '_ {
        self.silent.iter().map(move |t| &self.transitions[t])
    }

    pub fn observable_count(&self) -> usize {
        self.observables.len()
    }

    /// Position of transition `t` among the observables.
    pub fn observable_position(&self, t: usize) -> Option<usize> {
        self.obs_of[t]
    }

    pub fn is_silent(&self, t: usize) -> bool {
        self.silent.contains(t)
    }

    pub fn is_plain(&self) -> bool {
        self.silent.is_empty()
    }

    pub fn node(&self, x: &ElementId) -> Option<Node> {
        self.lookup.get(x).copied()
    }

    pub fn place_index(&self, x: &ElementId) -> Option<usize> {
        match self.node(x) {
            Some(Node::Place(i)) => Some(i),
            _ => None,
        }
    }

    pub fn transition_index(&self, x: &ElementId) -> Option<usize> {
        match self.node(x) {
            Some(Node::Transition(i)) => Some(i),
            _ => None,
        }
    }

    fn require_transition(&self, x: &ElementId) -> Result<usize, Error> {
        match self.node(x) {
            Some(Node::Transition(i)) => Ok(i),
            Some(Node::Place(_)) => Err(Error::NotATransition(x.clone())),
            None => Err(Error::UnknownElement(x.clone())),
        }
    }

    /// Preset of transition `t` as a place set.
    pub fn pre(&self, t: usize) -> &BitSet {
        &self.pre[t]
    }

    pub fn post(&self, t: usize) -> &BitSet {
        &self.post[t]
    }

    /// Transitions consuming from `place`.
    pub fn place_post(&self, place: usize) -> &BitSet {
        &self.place_post[place]
    }

    /// Transitions producing into `place`.
    pub fn place_pre(&self, place: usize) -> &BitSet {
        &self.place_pre[place]
    }

    pub fn preset(&self, x: &ElementId) -> Result<BTreeSet<ElementId>, Error> {
        Ok(match self.node(x).ok_or_else(|| Error::UnknownElement(x.clone()))? {
            Node::Place(s) => self.place_pre[s].iter().map(|t| self.transitions[t].clone()).collect(),
            Node::Transition(t) => self.pre[t].iter().map(|s| self.places[s].clone()).collect(),
        })
    }

    pub fn postset(&self, x: &ElementId) -> Result<BTreeSet<ElementId>, Error> {
        Ok(match self.node(x).ok_or_else(|| Error::UnknownElement(x.clone()))? {
            Node::Place(s) => self.place_post[s].iter().map(|t| self.transitions[t].clone()).collect(),
            Node::Transition(t) => self.post[t].iter().map(|s| self.places[s].clone()).collect(),
        })
    }

    pub fn initial(&self) -> &Marking {
        &self.initial
    }

    pub fn empty_marking(&self) -> Marking {
        Marking(BitSet::empty(self.places.len()))
    }

    pub fn marking<'a, I>(&self, places: I) -> Result<Marking, Error>
    where
        I: IntoIterator<Item = &'a ElementId>,
    {
        let mut m = self.empty_marking();
        for p in places {
            match self.node(p) {
                Some(Node::Place(i)) => {
                    m.0.insert(i);
                }
                _ => return Err(Error::UnknownElement(p.clone())),
            }
        }
        Ok(m)
    }

    /// Convenience form of [`Net::marking`] for names; panics on unknown places.
    pub fn marking_of(&self, names: &[&str]) -> Marking {
        let ids: Vec<ElementId> = names.iter().map(|n| id(n)).collect();
        self.marking(ids.iter()).expect("unknown place")
    }

    pub fn ids_of(&self, m: &Marking) -> Vec<ElementId> {
        m.iter().map(|s| self.places[s].clone()).collect()
    }

    /// Def. of enabledness: `•t ⊆ M` and `(M \ •t) ∩ t• = ∅`.
    #[inline]
    pub fn enabled(&self, m: &Marking, t: usize) -> bool {
        self.pre[t].is_subset(&m.0) && self.covered_without_contact(m, t)
    }

    /// `•t ⊆ M` but firing `t` would put a second token on a place.
    #[inline]
    pub fn contact_at(&self, m: &Marking, t: usize) -> bool {
        self.pre[t].is_subset(&m.0) && !self.covered_without_contact(m, t)
    }

    #[inline]
    fn covered_without_contact(&self, m: &Marking, t: usize) -> bool {
        m.0.difference(&self.pre[t]).is_disjoint(&self.post[t])
    }

    /// Fires a single transition without checking enabledness.
    #[inline]
    pub fn fire_unchecked(&self, m: &Marking, t: usize) -> Marking {
        let mut next = m.0.difference(&self.pre[t]);
        next.union_with(&self.post[t]);
        Marking(next)
    }

    fn step_indices(&self, step: &[ElementId]) -> Result<Vec<usize>, Error> {
        if step.is_empty() {
            return Err(Error::EmptyStep);
        }
        let mut idx: Vec<usize> = step
            .iter()
            .map(|t| self.require_transition(t))
            .collect::<Result<_, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    /// Whether the set of transitions `step` can fire together from `m`:
    /// each is enabled and they are pairwise independent.
    pub fn step_enabled(&self, m: &Marking, step: &[ElementId]) -> Result<bool, Error> {
        let idx = self.step_indices(step)?;
        let all_enabled = idx.iter().all(|&t| self.enabled(m, t));
        let independent = idx.iter().enumerate().all(|(i, &t)| {
            idx[i + 1..].iter().all(|&u| {
                self.pre[t].is_disjoint(&self.pre[u]) && self.post[t].is_disjoint(&self.post[u])
            })
        });
        Ok(all_enabled && independent)
    }

    /// Fires a step: `(M \ ⋃ •t) ∪ ⋃ t•`.
    pub fn fire(&self, m: &Marking, step: &[ElementId]) -> Result<Marking, Error> {
        if !self.step_enabled(m, step)? {
            return Err(Error::StepNotEnabled);
        }
        let idx = self.step_indices(step)?;
        let mut next = m.0.clone();
        for &t in &idx {
            next.difference_with(&self.pre[t]);
        }
        for &t in &idx {
            next.union_with(&self.post[t]);
        }
        Ok(Marking(next))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ids(names: &[&str]) -> BTreeSet<ElementId> {
        names.iter().map(|n| id(n)).collect()
    }

    #[test]
    fn presets_and_postsets_of_figure_nets() {
        let fig2 = corpus::fig2();
        let fig3 = corpus::fig3();
        let fig4c = corpus::fig4c();
        assert_eq!(fig2.preset(&id("b")).unwrap(), ids(&["p1"]));
        assert_eq!(fig3.preset(&id("b")).unwrap(), ids(&["p1", "p2"]));
        assert_eq!(fig4c.postset(&id("p")).unwrap(), ids(&["a", "b"]));
        assert!(fig2.postset(&id("a")).unwrap().is_empty());
        assert_eq!(fig2.preset(&id("zz")), Err(Error::UnknownElement(id("zz"))));
    }

    #[test]
    fn isolated_place_and_empty_flow() {
        let net = NetBuilder::new().place("p").place("q").trans("t").arc("q", "t").build().unwrap();
        assert!(net.preset(&id("p")).unwrap().is_empty());
        assert!(net.postset(&id("p")).unwrap().is_empty());
        let bare = NetBuilder::new().place("p").build().unwrap();
        assert!(bare.postset(&id("p")).unwrap().is_empty());
    }

    #[test]
    fn validate_reports_each_defect() {
        assert!(corpus::fig2().validate(true).is_empty());

        let empty_pre = NetBuilder::new().place("p").trans("t").arc("t", "p");
        let d = empty_pre.validate(false);
        assert_eq!(d.0.len(), 1);
        assert_eq!(d.0[0].code, DiagnosticCode::EmptyPreset);
        assert!(d.0[0].message.contains("empty preset"));
        assert!(matches!(empty_pre.build(), Err(Error::InvalidNet(_))));

        let typed = NetBuilder::new()
            .place("p")
            .place("q")
            .trans("a")
            .trans("b")
            .arc("p", "a")
            .arc("q", "b")
            .arc("p", "q")
            .arc("a", "b");
        let codes: Vec<_> = typed.validate(false).iter().map(|d| d.code).collect();
        assert!(codes.contains(&DiagnosticCode::ArcBetweenPlaces));
        assert!(codes.contains(&DiagnosticCode::ArcBetweenTransitions));

        let mut unknown = NetBuilder::new().place("p").trans("a").arc("p", "a");
        unknown.initial.insert(id("ghost"));
        assert_eq!(
            unknown.validate(false).0[0].code,
            DiagnosticCode::UnknownInitialPlace
        );

        let silent = NetBuilder::new().marked("p").silent("u").arc("p", "u");
        assert!(silent.validate(false).is_empty());
        let d = silent.validate(true);
        assert_eq!(d.0[0].code, DiagnosticCode::SilentTransition);
        assert!(d.0[0].message.contains("silent transitions present"));
    }

    #[test]
    fn step_enabledness() {
        let fig4b = corpus::fig4b();
        let m0 = fig4b.initial().clone();
        assert!(fig4b.step_enabled(&m0, &[id("a")]).unwrap());
        assert!(!fig4b.step_enabled(&m0, &[id("a"), id("b")]).unwrap());
        let fig3 = corpus::fig3();
        assert!(!fig3.step_enabled(fig3.initial(), &[id("b")]).unwrap());
        assert_eq!(fig3.step_enabled(fig3.initial(), &[]), Err(Error::EmptyStep));
        assert_eq!(
            fig3.step_enabled(fig3.initial(), &[id("p1")]),
            Err(Error::NotATransition(id("p1")))
        );
    }

    #[test]
    fn firing() {
        let fig2 = corpus::fig2();
        let after = fig2.fire(&fig2.marking_of(&["p1"]), &[id("a")]).unwrap();
        assert!(after.is_empty());

        let fig4c = corpus::fig4c();
        let pq = fig4c.marking_of(&["p", "q"]);
        assert_eq!(fig4c.fire(&pq, &[id("a")]).unwrap(), pq);

        let msc = corpus::msc();
        let m = msc.fire(&msc.marking_of(&["p1", "p2"]), &[id("msend")]).unwrap();
        assert_eq!(m, msc.marking_of(&["p2", "p3", "p4"]));

        assert_eq!(
            fig2.fire(&fig2.empty_marking(), &[id("a")]),
            Err(Error::StepNotEnabled)
        );
    }

    #[test]
    fn independent_step_fires_together() {
        let net = NetBuilder::new()
            .marked("p")
            .marked("q")
            .place("r")
            .place("s")
            .trans("a")
            .trans("b")
            .arc("p", "a")
            .arc("a", "r")
            .arc("q", "b")
            .arc("b", "s")
            .build()
            .unwrap();
        let m = net.fire(net.initial(), &[id("a"), id("b")]).unwrap();
        assert_eq!(m, net.marking_of(&["r", "s"]));
    }

    #[test]
    fn builder_round_trip() {
        for entry in corpus::builtin_corpus() {
            assert_eq!(entry.net.to_builder().build().unwrap(), entry.net);
        }
    }
}

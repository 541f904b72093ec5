//! Weak transitions, divergence and failures semantics.
//!
//! The failures set of a net is infinite in general, so it is represented by
//! a [`NormalizedMachine`]: the subset construction over τ-closed sets of
//! reachable markings, each node labelled with the maximal refusal sets of
//! its stable markings. Two divergence-free nets are failures equivalent
//! exactly when their machines agree on every common trace.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bits::BitSet;
use crate::error::Error;
use crate::id::ElementId;
use crate::net::{Marking, Net};
use crate::reach::{self, MarkingGraph};

/// A failure pair `⟨σ, X⟩`: after the weak trace `σ` a stable marking can be
/// reached in which no transition of `X` is enabled.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FailurePair {
    pub trace: Vec<ElementId>,
    pub refusal: BTreeSet<ElementId>,
}

impl FailurePair {
    pub fn new(trace: &[&str], refusal: &[&str]) -> Self {
        FailurePair {
            trace: trace.iter().map(|t| crate::id::id(t)).collect(),
            refusal: refusal.iter().map(|t| crate::id::id(t)).collect(),
        }
    }
}

/// Renders as `<trace>/<refusal>`, e.g. `-/{a}` or `a,b/{}`.
impl fmt::Display for FailurePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trace.is_empty() {
            f.write_str("-")?;
        }
        for (i, t) in self.trace.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("/{")?;
        for (i, x) in self.refusal.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Least superset of `ms` closed under single silent firings.
pub fn tau_closure(net: &Net, ms: &BTreeSet<Marking>) -> BTreeSet<Marking> {
    let mut closed = ms.clone();
    let mut work: Vec<Marking> = ms.iter().cloned().collect();
    while let Some(m) = work.pop() {
        for t in 0..net.transition_count() {
            if net.is_silent(t) && net.enabled(&m, t) {
                let next = net.fire_unchecked(&m, t);
                if closed.insert(next.clone()) {
                    work.push(next);
                }
            }
        }
    }
    closed
}

/// No silent transition is enabled at `m`.
pub fn is_stable(net: &Net, m: &Marking) -> bool {
    (0..net.transition_count()).all(|t| !net.is_silent(t) || !net.enabled(m, t))
}

/// Whether no reachable marking starts an infinite chain of silent steps,
/// i.e. the silent edges of the graph form no cycle.
pub fn is_divergence_free(net: &Net, graph: &MarkingGraph) -> bool {
    let n = graph.len();
    let mut indegree = alloc::vec![0usize; n];
    for e in graph.edges() {
        if net.is_silent(e.transition) {
            indegree[e.target] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&s| indegree[s] == 0).collect();
    let mut removed = 0;
    while let Some(s) = ready.pop() {
        removed += 1;
        for e in graph.successors(s) {
            if net.is_silent(e.transition) {
                indegree[e.target] -= 1;
                if indegree[e.target] == 0 {
                    ready.push(e.target);
                }
            }
        }
    }
    removed == n
}

/// `τ*`-closure of the markings reached by firing the observable `t` from
/// some member of `node`. Empty when `t` is not weakly possible.
pub fn weak_step(
    net: &Net,
    node: &BTreeSet<Marking>,
    t: &ElementId,
) -> Result<BTreeSet<Marking>, Error> {
    let ti = net
        .transition_index(t)
        .ok_or_else(|| Error::UnknownElement(t.clone()))?;
    if net.is_silent(ti) {
        return Err(Error::NotATransition(t.clone()));
    }
    let fired: BTreeSet<Marking> = node
        .iter()
        .filter(|m| net.enabled(m, ti))
        .map(|m| net.fire_unchecked(m, ti))
        .collect();
    Ok(tau_closure(net, &fired))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct MachineNode {
    states: Vec<usize>,
    refusals: Vec<BitSet>,
    next: Vec<Option<usize>>,
}

/// Deterministic trace automaton with refusal antichains; a finite
/// canonical form of the failures set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedMachine {
    observables: Vec<ElementId>,
    nodes: Vec<MachineNode>,
}

impl NormalizedMachine {
    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn observables(&self) -> &[ElementId] {
        &self.observables
    }

    /// Graph states making up a node, ascending.
    pub fn states(&self, node: usize) -> &[usize] {
        &self.nodes[node].states
    }

    pub fn marking_set(&self, node: usize, graph: &MarkingGraph) -> BTreeSet<Marking> {
        self.nodes[node]
            .states
            .iter()
            .map(|&s| graph.state(s).clone())
            .collect()
    }

    /// Maximal refusal sets at a node, as observable positions.
    pub fn refusal_bits(&self, node: usize) -> &[BitSet] {
        &self.nodes[node].refusals
    }

    pub fn refusals(&self, node: usize) -> Vec<BTreeSet<ElementId>> {
        self.nodes[node]
            .refusals
            .iter()
            .map(|x| self.ids(x))
            .collect()
    }

    pub fn successor(&self, node: usize, observable: usize) -> Option<usize> {
        self.nodes[node].next[observable]
    }

    /// Follows a trace from the root.
    pub fn after(&self, trace: &[ElementId]) -> Option<usize> {
        trace.iter().try_fold(self.root(), |node, t| {
            let o = self.observables.binary_search(t).ok()?;
            self.successor(node, o)
        })
    }

    fn ids(&self, set: &BitSet) -> BTreeSet<ElementId> {
        set.iter().map(|o| self.observables[o].clone()).collect()
    }

    fn covers(&self, node: usize, x: &BitSet) -> bool {
        self.nodes[node].refusals.iter().any(|y| x.is_subset(y))
    }

    /// Whether `⟨trace, refusal⟩` is a failure pair.
    pub fn accepts(&self, pair: &FailurePair) -> bool {
        let Some(node) = self.after(&pair.trace) else {
            return false;
        };
        let mut x = BitSet::empty(self.observables.len());
        for r in &pair.refusal {
            match self.observables.binary_search(r) {
                Ok(o) => {
                    x.insert(o);
                }
                Err(_) => return false,
            }
        }
        self.covers(node, &x)
    }

    /// All failure pairs with traces of length at most `max_len`, refusals
    /// given by their maximal elements only.
    pub fn failures_up_to(&self, max_len: usize) -> BTreeSet<FailurePair> {
        let mut out = BTreeSet::new();
        let mut level: Vec<(usize, Vec<ElementId>)> = alloc::vec![(self.root(), Vec::new())];
        for depth in 0..=max_len {
            let mut next_level = Vec::new();
            for (node, trace) in level {
                for x in &self.nodes[node].refusals {
                    out.insert(FailurePair {
                        trace: trace.clone(),
                        refusal: self.ids(x),
                    });
                }
                if depth < max_len {
                    for (o, succ) in self.nodes[node].next.iter().enumerate() {
                        if let Some(succ) = succ {
                            let mut t = trace.clone();
                            t.push(self.observables[o].clone());
                            next_level.push((*succ, t));
                        }
                    }
                }
            }
            level = next_level;
        }
        out
    }

    /// Least witness in `ℱ(self) △ ℱ(other)`, or `None` when equivalent.
    pub fn compare(&self, other: &NormalizedMachine) -> Result<Option<Distinction>, Error> {
        self.check_alphabet(other)?;
        Ok(first_difference(self, other, true, true))
    }

    /// Least witness in `ℱ(self) \ ℱ(other)`, or `None` when included.
    pub fn first_excess(&self, other: &NormalizedMachine) -> Result<Option<FailurePair>, Error> {
        self.check_alphabet(other)?;
        Ok(first_difference(self, other, true, false).map(|d| d.witness))
    }

    fn check_alphabet(&self, other: &NormalizedMachine) -> Result<(), Error> {
        if self.observables == other.observables {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// A failure pair of one net that the other net lacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distinction {
    pub witness: FailurePair,
    /// The net whose failures contain the witness.
    pub side: Side,
    /// A maximal refusal of that net after the same trace that includes
    /// the witness refusal.
    pub maximal_refusal: BTreeSet<ElementId>,
}

struct Candidate {
    trace: Vec<usize>,
    refusal: BitSet,
    maximal: BitSet,
    side: Side,
}

/// Refusal order: smaller sets first, then lexicographic.
fn cmp_refusals(a: &BitSet, b: &BitSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp_members(b))
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        self.trace
            .len()
            .cmp(&other.trace.len())
            .then_with(|| self.trace.cmp(&other.trace))
            .then_with(|| cmp_refusals(&self.refusal, &other.refusal))
            == Ordering::Less
    }
}

/// Least subset of `x` not covered by any member of `antichain`.
fn least_uncovered(x: &BitSet, antichain: &[BitSet]) -> Option<BitSet> {
    let covered = |s: &BitSet| antichain.iter().any(|y| s.is_subset(y));
    if covered(x) {
        return None;
    }
    let items: Vec<usize> = x.iter().collect();
    for k in 1..=items.len() {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let mut s = x.cleared();
            for &i in &pick {
                s.insert(items[i]);
            }
            if !covered(&s) {
                return Some(s);
            }
            let Some(i) = (0..k).rev().find(|&i| pick[i] < items.len() - k + i) else {
                break;
            };
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    unreachable!("x itself is uncovered")
}

/// Breadth-first walk over common traces in length-then-lexicographic
/// order, collecting the least distinguishing failure pair.
fn first_difference(
    a: &NormalizedMachine,
    b: &NormalizedMachine,
    a_minus_b: bool,
    b_minus_a: bool,
) -> Option<Distinction> {
    let nobs = a.observables.len();
    let mut best: Option<Candidate> = None;
    let offer = |c: Candidate, best: &mut Option<Candidate>| {
        if best.as_ref().is_none_or(|b| c.better_than(b)) {
            *best = Some(c);
        }
    };

    let mut visited = BTreeSet::new();
    visited.insert((a.root(), b.root()));
    let mut level: Vec<(usize, usize, Vec<usize>)> = alloc::vec![(a.root(), b.root(), Vec::new())];
    let mut depth = 0;
    while !level.is_empty() {
        for (x, y, trace) in &level {
            let sides = [(a, *x, b, *y, a_minus_b, Side::First), (b, *y, a, *x, b_minus_a, Side::Second)];
            for (m1, n1, m2, n2, wanted, side) in sides {
                if !wanted {
                    continue;
                }
                for x in &m1.nodes[n1].refusals {
                    if let Some(r) = least_uncovered(x, &m2.nodes[n2].refusals) {
                        offer(
                            Candidate { trace: trace.clone(), refusal: r, maximal: x.clone(), side },
                            &mut best,
                        );
                    }
                }
            }
        }
        let mut next_level = Vec::new();
        for (x, y, trace) in &level {
            for o in 0..nobs {
                let step = (a.nodes[*x].next[o], b.nodes[*y].next[o]);
                let extended = || {
                    let mut t = trace.clone();
                    t.push(o);
                    t
                };
                match step {
                    (Some(x2), Some(y2)) => {
                        if visited.insert((x2, y2)) {
                            next_level.push((x2, y2, extended()));
                        }
                    }
                    (Some(x2), None) if a_minus_b => offer(
                        Candidate {
                            trace: extended(),
                            refusal: BitSet::empty(nobs),
                            maximal: a.nodes[x2].refusals[0].clone(),
                            side: Side::First,
                        },
                        &mut best,
                    ),
                    (None, Some(y2)) if b_minus_a => offer(
                        Candidate {
                            trace: extended(),
                            refusal: BitSet::empty(nobs),
                            maximal: b.nodes[y2].refusals[0].clone(),
                            side: Side::Second,
                        },
                        &mut best,
                    ),
                    _ => {}
                }
            }
        }
        if best.as_ref().is_some_and(|c| c.trace.len() <= depth) {
            break;
        }
        level = next_level;
        depth += 1;
    }

    best.map(|c| Distinction {
        witness: FailurePair {
            trace: c.trace.iter().map(|&o| a.observables[o].clone()).collect(),
            refusal: a.ids(&c.refusal),
        },
        side: c.side,
        maximal_refusal: a.ids(&c.maximal),
    })
}

/// Builds the normalized machine of a contact-free, divergence-free net.
pub fn normalize(net: &Net, graph: &MarkingGraph) -> Result<NormalizedMachine, Error> {
    if graph.cap_hit() {
        return Err(Error::CapExceeded { cap: graph.len() });
    }
    if !graph.contact_free() {
        return Err(Error::ContactViolation);
    }
    if !is_divergence_free(net, graph) {
        return Err(Error::Divergent);
    }

    let nobs = net.observable_count();
    let n = graph.len();
    // Per state: silent successors, observable successors, refusal if stable.
    let mut silent_next: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    let mut obs_next: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
    let mut refusal: Vec<Option<BitSet>> = alloc::vec![None; n];
    for s in 0..n {
        let mut enabled = BitSet::empty(nobs);
        for e in graph.successors(s) {
            match net.observable_position(e.transition) {
                Some(o) => {
                    enabled.insert(o);
                    obs_next[s].push((o, e.target));
                }
                None => silent_next[s].push(e.target),
            }
        }
        if silent_next[s].is_empty() {
            refusal[s] = Some(BitSet::full(nobs).difference(&enabled));
        }
    }

    let close = |seed: BitSet| -> BitSet {
        let mut closed = seed.clone();
        let mut work: Vec<usize> = seed.iter().collect();
        while let Some(s) = work.pop() {
            for &t in &silent_next[s] {
                if closed.insert(t) {
                    work.push(t);
                }
            }
        }
        closed
    };

    let mut nodes: Vec<MachineNode> = Vec::new();
    let mut index: BTreeMap<BitSet, usize> = BTreeMap::new();
    let mut pending: Vec<BitSet> = Vec::new();

    let mut intern = |set: BitSet, nodes: &mut Vec<MachineNode>, pending: &mut Vec<BitSet>| -> usize {
        if let Some(&i) = index.get(&set) {
            return i;
        }
        let i = nodes.len();
        let mut refusals: Vec<BitSet> = Vec::new();
        for s in set.iter() {
            if let Some(r) = &refusal[s] {
                if refusals.iter().any(|q| r.is_subset(q)) {
                    continue;
                }
                refusals.retain(|q| !q.is_subset(r));
                refusals.push(r.clone());
            }
        }
        refusals.sort_by(|x, y| x.cmp_members(y));
        nodes.push(MachineNode {
            states: set.iter().collect(),
            refusals,
            next: alloc::vec![None; nobs],
        });
        index.insert(set.clone(), i);
        pending.push(set);
        i
    };

    let root = close(BitSet::from_indices(n, [graph.root()]));
    intern(root, &mut nodes, &mut pending);
    let mut cursor = 0;
    while cursor < nodes.len() {
        let set = pending[cursor].clone();
        let mut by_obs: Vec<Option<BitSet>> = alloc::vec![None; nobs];
        for s in set.iter() {
            for &(o, t) in &obs_next[s] {
                by_obs[o].get_or_insert_with(|| BitSet::empty(n)).insert(t);
            }
        }
        for (o, targets) in by_obs.into_iter().enumerate() {
            if let Some(targets) = targets {
                let succ = intern(close(targets), &mut nodes, &mut pending);
                nodes[cursor].next[o] = Some(succ);
            }
        }
        cursor += 1;
    }

    Ok(NormalizedMachine {
        observables: net.observables().cloned().collect(),
        nodes,
    })
}

/// Explores and normalizes in one go.
pub fn machine(net: &Net, cap: usize) -> Result<NormalizedMachine, Error> {
    let graph = reach::reachability(net, cap)?;
    normalize(net, &graph)
}

/// Failure pairs with traces up to `max_len`, maximal refusals only.
pub fn failures_up_to(
    net: &Net,
    graph: &MarkingGraph,
    max_len: usize,
) -> Result<BTreeSet<FailurePair>, Error> {
    Ok(normalize(net, graph)?.failures_up_to(max_len))
}

fn same_alphabet(n1: &Net, n2: &Net) -> Result<(), Error> {
    if n1.observables().eq(n2.observables()) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

/// Decides `ℱ(n1) = ℱ(n2)`; on inequality returns the least distinguishing
/// pair: shortest trace, then lexicographically least trace, then least
/// refusal (fewest elements, then lexicographic).
pub fn failures_equivalent(n1: &Net, n2: &Net) -> Result<Option<Distinction>, Error> {
    same_alphabet(n1, n2)?;
    let m1 = machine(n1, reach::DEFAULT_CAP)?;
    let m2 = machine(n2, reach::DEFAULT_CAP)?;
    m1.compare(&m2)
}

/// Decides `ℱ(n1) ⊆ ℱ(n2)`; returns the least pair of `n1` missing in `n2`.
pub fn failures_included(n1: &Net, n2: &Net) -> Result<Option<FailurePair>, Error> {
    same_alphabet(n1, n2)?;
    let m1 = machine(n1, reach::DEFAULT_CAP)?;
    let m2 = machine(n2, reach::DEFAULT_CAP)?;
    m1.first_excess(&m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::id::id;
    use crate::net::NetBuilder;
    use crate::reach::{reachability, DEFAULT_CAP};
    use crate::transform::{asymm_async, fully_async, symm_async, PriorityAssignment};
    use alloc::vec;

    fn set(net: &Net, ms: &[&[&str]]) -> BTreeSet<Marking> {
        ms.iter().map(|m| net.marking_of(m)).collect()
    }

    fn refusal_sets(names: &[&[&str]]) -> Vec<BTreeSet<ElementId>> {
        names
            .iter()
            .map(|r| r.iter().map(|x| id(x)).collect())
            .collect()
    }

    #[test]
    fn tau_closure_examples() {
        let plain = corpus::fig3();
        let ms = set(&plain, &[&["p1"], &["p2"]]);
        assert_eq!(tau_closure(&plain, &ms), ms);

        let fi = fully_async(&corpus::fig2()).unwrap();
        let fi = fi.net();
        assert_eq!(
            tau_closure(fi, &set(fi, &[&["p1"]])),
            set(fi, &[&["p1"], &["b.p1.a"], &["b.p1.b"]])
        );

        let si = symm_async(&corpus::fig3()).unwrap();
        let si = si.net();
        assert_eq!(
            tau_closure(si, &set(si, &[&["p1"]])),
            set(si, &[&["p1"], &["b.p1.b"]])
        );
    }

    #[test]
    fn stability() {
        let plain = corpus::fig2();
        assert!(is_stable(&plain, plain.initial()));
        let fi = fully_async(&corpus::fig2()).unwrap();
        assert!(!is_stable(fi.net(), &fi.net().marking_of(&["p1"])));
        assert!(is_stable(fi.net(), &fi.net().marking_of(&["b.p1.a"])));
    }

    #[test]
    fn divergence() {
        for entry in corpus::builtin_corpus() {
            let g = reachability(&entry.net, DEFAULT_CAP).unwrap();
            assert!(is_divergence_free(&entry.net, &g), "{}", entry.id);
        }
        let fi = fully_async(&corpus::fig3()).unwrap();
        let g = reachability(fi.net(), DEFAULT_CAP).unwrap();
        assert!(is_divergence_free(fi.net(), &g));

        let looping = NetBuilder::new()
            .marked("s")
            .silent("t")
            .trans("a")
            .arc("s", "t")
            .arc("t", "s")
            .arc("s", "a")
            .build()
            .unwrap();
        let g = reachability(&looping, DEFAULT_CAP).unwrap();
        assert!(!is_divergence_free(&looping, &g));
        assert_eq!(normalize(&looping, &g), Err(Error::Divergent));
    }

    #[test]
    fn weak_steps() {
        let plain = corpus::fig2();
        assert_eq!(
            weak_step(&plain, &set(&plain, &[&["p1"]]), &id("a")).unwrap(),
            set(&plain, &[&[]])
        );

        let fi = fully_async(&corpus::fig2()).unwrap();
        let fi = fi.net();
        let root = tau_closure(fi, &set(fi, &[&["p1"]]));
        assert_eq!(weak_step(fi, &root, &id("a")).unwrap(), set(fi, &[&[]]));
        let empty = set(fi, &[&[]]);
        assert!(weak_step(fi, &empty, &id("b")).unwrap().is_empty());
        assert_eq!(
            weak_step(fi, &root, &id("u.a.p1")),
            Err(Error::NotATransition(id("u.a.p1")))
        );
    }

    #[test]
    fn normalized_fig2() {
        let net = corpus::fig2();
        let m = machine(&net, DEFAULT_CAP).unwrap();
        assert_eq!(m.refusals(m.root()), refusal_sets(&[&[]]));
        let after_a = m.after(&[id("a")]).unwrap();
        assert_eq!(m.refusals(after_a), refusal_sets(&[&["a", "b"]]));

        let fi = fully_async(&net).unwrap();
        let m = machine(fi.net(), DEFAULT_CAP).unwrap();
        assert_eq!(m.refusals(m.root()), refusal_sets(&[&["a"], &["b"]]));
        let g = reachability(fi.net(), DEFAULT_CAP).unwrap();
        assert_eq!(
            m.marking_set(m.root(), &g),
            tau_closure(fi.net(), &set(fi.net(), &[&["p1"]]))
        );
    }

    #[test]
    fn dead_net_has_single_node() {
        let net = corpus::fig9();
        let m = machine(&net, DEFAULT_CAP).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.refusals(0), refusal_sets(&[&["a", "b", "c"]]));
    }

    #[test]
    fn failures_up_to_examples() {
        let net = corpus::fig3();
        let g = reachability(&net, DEFAULT_CAP).unwrap();
        let expected: BTreeSet<_> = [
            FailurePair::new(&[], &["b"]),
            FailurePair::new(&["a"], &["a", "b"]),
        ]
        .into();
        assert_eq!(failures_up_to(&net, &g, 1).unwrap(), expected);

        let si = symm_async(&net).unwrap();
        let g = reachability(si.net(), DEFAULT_CAP).unwrap();
        assert!(failures_up_to(si.net(), &g, 0)
            .unwrap()
            .contains(&FailurePair::new(&[], &["a", "b"])));

        let unmarked = corpus::fig4a();
        let g = reachability(&unmarked, DEFAULT_CAP).unwrap();
        assert_eq!(
            failures_up_to(&unmarked, &g, 0).unwrap(),
            [FailurePair::new(&[], &["a", "b"])].into()
        );
    }

    #[test]
    fn equivalence_examples() {
        let fig2 = corpus::fig2();
        let fi = fully_async(&fig2).unwrap();
        let d = failures_equivalent(&fig2, fi.net()).unwrap().unwrap();
        assert_eq!(d.witness, FailurePair::new(&[], &["a"]));
        assert_eq!(d.side, Side::Second);

        let fig3 = corpus::fig3();
        let g = PriorityAssignment::from_orders(&fig3, &[("b", &["p1", "p2"])]).unwrap();
        let ai = asymm_async(&fig3, &g).unwrap();
        assert_eq!(failures_equivalent(&fig3, ai.net()).unwrap(), None);

        for entry in corpus::builtin_corpus() {
            assert_eq!(failures_equivalent(&entry.net, &entry.net).unwrap(), None);
        }
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        assert_eq!(
            failures_equivalent(&corpus::fig2(), &corpus::fig9()),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn witness_prefers_shorter_traces() {
        // n1 refuses nothing initially but deadlocks after a; n2 can do a twice.
        let n1 = NetBuilder::new().marked("p").place("q").trans("a").arc("p", "a").arc("a", "q").build().unwrap();
        let n2 = NetBuilder::new()
            .marked("p")
            .place("q")
            .place("r")
            .trans("a")
            .arc("p", "a")
            .arc("a", "q")
            .build()
            .unwrap();
        assert_eq!(failures_equivalent(&n1, &n2).unwrap(), None);
        let loop_net = NetBuilder::new().marked("p").trans("a").arc("p", "a").arc("a", "p").build().unwrap();
        let d = failures_equivalent(&n1, &loop_net).unwrap().unwrap();
        assert_eq!(d.witness, FailurePair::new(&["a"], &["a"]));
        assert_eq!(d.side, Side::First);
        assert_eq!(
            failures_included(&n1, &loop_net).unwrap(),
            Some(FailurePair::new(&["a"], &["a"]))
        );
        assert_eq!(
            failures_included(&loop_net, &n1).unwrap(),
            Some(FailurePair::new(&["a", "a"], &[]))
        );
    }

    #[test]
    fn accepts_is_downward_closed() {
        let fi = fully_async(&corpus::fig2()).unwrap();
        let m = machine(fi.net(), DEFAULT_CAP).unwrap();
        assert!(m.accepts(&FailurePair::new(&[], &["a"])));
        assert!(m.accepts(&FailurePair::new(&[], &[])));
        assert!(!m.accepts(&FailurePair::new(&[], &["a", "b"])));
        assert!(!m.accepts(&FailurePair::new(&["a", "a"], &[])));
        let _ = vec![0u8];
    }
}

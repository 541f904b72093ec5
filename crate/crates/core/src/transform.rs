//! Asynchronous implementations of plain nets.
//!
//! Each construction replaces some consuming arcs `s -> t` by a chain
//! `s -> t_s -> s_t -> t` through a silent collector `t_s` and a buffer
//! place `s_t`. Arcs from transitions to places are never touched.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitSet;
use crate::error::Error;
use crate::id::{ElementId, ElementKind};
use crate::net::{Marking, Net, NetBuilder};
use crate::reach::MarkingGraph;

/// Default bound on the number of priority assignments enumerated per net.
pub const DEFAULT_PRIORITY_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ImplKind {
    /// Every consuming arc is buffered.
    Full,
    /// Only the arcs into transitions with more than one preplace.
    Symmetric,
    /// All but the arc from the minimal preplace, chained by priority.
    Asymmetric,
}

impl ImplKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImplKind::Full => "FI",
            ImplKind::Symmetric => "SI",
            ImplKind::Asymmetric => "AI",
        }
    }
}

/// For every observable transition, a total order on its preset, listed
/// from minimal to maximal. Tokens are collected maximal first; the
/// minimal place feeds the transition directly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PriorityAssignment {
    orders: BTreeMap<ElementId, Vec<ElementId>>,
}

impl PriorityAssignment {
    /// Every preset in canonical place order.
    pub fn canonical(net: &Net) -> Self {
        let orders = net
            .observable_indices()
            .iter()
            .map(|&t| {
                let pre = net.pre(t).iter().map(|s| net.place_id(s).clone()).collect();
                (net.transition_id(t).clone(), pre)
            })
            .collect();
        PriorityAssignment { orders }
    }

    /// The canonical assignment with the listed transitions overridden.
    pub fn from_orders(net: &Net, orders: &[(&str, &[&str])]) -> Result<Self, Error> {
        let mut g = Self::canonical(net);
        for (t, places) in orders {
            let t = ElementId::parse(t).map_err(|_| Error::MalformedPriority(format!("bad transition {t:?}")))?;
            let places = places
                .iter()
                .map(|p| ElementId::parse(p).map_err(|_| Error::MalformedPriority(format!("bad place {p:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            g.set(net, t, places)?;
        }
        Ok(g)
    }

    /// Replaces the order of one transition, checking it against the net.
    pub fn set(&mut self, net: &Net, t: ElementId, order: Vec<ElementId>) -> Result<(), Error> {
        let ti = match net.transition_index(&t) {
            Some(i) if !net.is_silent(i) => i,
            _ => return Err(Error::MalformedPriority(format!("{t} is not an observable transition"))),
        };
        let pre: BTreeSet<&ElementId> = net.pre(ti).iter().map(|s| net.place_id(s)).collect();
        let listed: BTreeSet<&ElementId> = order.iter().collect();
        if listed.len() != order.len() || listed != pre {
            return Err(Error::MalformedPriority(format!(
                "order for {t} must list its preset exactly once"
            )));
        }
        self.orders.insert(t, order);
        Ok(())
    }

    /// Checks that every observable transition has a permutation of its preset.
    pub fn validate(&self, net: &Net) -> Result<(), Error> {
        let expected: BTreeSet<&ElementId> = net.observables().collect();
        let given: BTreeSet<&ElementId> = self.orders.keys().collect();
        if expected != given {
            return Err(Error::MalformedPriority(String::from(
                "assignment must cover exactly the observable transitions",
            )));
        }
        for (t, order) in &self.orders {
            self.clone().set(net, t.clone(), order.clone())?;
        }
        Ok(())
    }

    pub fn order(&self, t: &ElementId) -> Option<&[ElementId]> {
        self.orders.get(t).map(Vec::as_slice)
    }

    pub fn min_of(&self, t: &ElementId) -> Option<&ElementId> {
        self.orders.get(t).and_then(|o| o.first())
    }

    /// The place just below `s` in the order of `t`.
    pub fn predecessor(&self, s: &ElementId, t: &ElementId) -> Option<&ElementId> {
        let order = self.orders.get(t)?;
        let i = order.iter().position(|x| x == s)?;
        i.checked_sub(1).map(|j| &order[j])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementId, &[ElementId])> {
        self.orders.iter().map(|(t, o)| (t, o.as_slice()))
    }
}

/// Renders the orders of transitions with at least two preplaces as
/// `t:p1,p2 u:q,r`; unary transitions carry no information.
impl fmt::Display for PriorityAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, order) in self.orders.iter().filter(|(_, o)| o.len() > 1) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{t}:")?;
            for (i, p) in order.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

/// `∏ |•t|!` over observable transitions, saturating.
pub fn priority_count(net: &Net) -> u128 {
    net.observable_indices().iter().fold(1u128, |acc, &t| {
        let k = net.pre(t).len() as u128;
        (1..=k).fold(acc, |a, i| a.saturating_mul(i))
    })
}

/// All priority assignments in lexicographic order: transitions in
/// canonical order, the first one varying slowest, each preset permuted
/// lexicographically by canonical place order.
pub fn enumerate_priorities(net: &Net, cap: usize) -> Result<Priorities, Error> {
    let count = priority_count(net);
    if count > cap as u128 {
        return Err(Error::PriorityCapExceeded { count, cap });
    }
    let base = PriorityAssignment::canonical(net);
    let mut transitions = Vec::new();
    let mut perms = Vec::new();
    for (t, order) in base.orders.iter() {
        if order.len() > 1 {
            transitions.push(t.clone());
            perms.push(permutations(order));
        }
    }
    Ok(Priorities {
        counter: alloc::vec![0; transitions.len()],
        base,
        transitions,
        perms,
        done: false,
    })
}

fn permutations(items: &[ElementId]) -> Vec<Vec<ElementId>> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    let mut out = Vec::new();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // next lexicographic permutation
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else {
            return out;
        };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
}

/// Iterator returned by [`enumerate_priorities`].
#[derive(Debug, Clone)]
pub struct Priorities {
    base: PriorityAssignment,
    transitions: Vec<ElementId>,
    perms: Vec<Vec<Vec<ElementId>>>,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for Priorities {
    type Item = PriorityAssignment;

    fn next(&mut self) -> Option<PriorityAssignment> {
        if self.done {
            return None;
        }
        let mut g = self.base.clone();
        for (k, t) in self.transitions.iter().enumerate() {
            g.orders.insert(t.clone(), self.perms[k][self.counter[k]].clone());
        }
        self.done = true;
        for k in (0..self.counter.len()).rev() {
            self.counter[k] += 1;
            if self.counter[k] < self.perms[k].len() {
                self.done = false;
                break;
            }
            self.counter[k] = 0;
        }
        Some(g)
    }
}

/// An implementation net together with how it was derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplementationNet {
    net: Net,
    kind: ImplKind,
    priority: Option<PriorityAssignment>,
    origin: Net,
    /// Original place of each place of `net`, if it is not a buffer.
    original: Vec<Option<usize>>,
    /// Per place of `net`, the original places its token stands for.
    images: Vec<BitSet>,
}

impl ImplementationNet {
    pub fn net(&self) -> &Net {
        &self.net
    }

    pub fn into_net(self) -> Net {
        self.net
    }

    pub fn kind(&self) -> ImplKind {
        self.kind
    }

    pub fn priority(&self) -> Option<&PriorityAssignment> {
        self.priority.as_ref()
    }

    pub fn origin(&self) -> &Net {
        &self.origin
    }

    fn back(&self, m: &Marking) -> Marking {
        let mut out = self.origin.empty_marking();
        for s in m.iter() {
            out.0.union_with(&self.images[s]);
        }
        out
    }

    /// Images of the marked places are pairwise disjoint and their union is
    /// reachable in the origin.
    fn back_invariant(&self, graph: &MarkingGraph, m: &Marking) -> bool {
        let mut seen = BitSet::empty(self.origin.place_count());
        for s in m.iter() {
            if !self.images[s].is_disjoint(&seen) {
                return false;
            }
            seen.union_with(&self.images[s]);
        }
        graph.contains(&Marking(seen))
    }

    fn require(&self, kinds: &[ImplKind], expected: &'static str) -> Result<(), Error> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(Error::WrongImplementation { expected })
        }
    }
}

fn require_plain(n: &Net) -> Result<(), Error> {
    if n.is_plain() {
        Ok(())
    } else {
        Err(Error::NotPlain)
    }
}

/// Chains `s -> u.t.s -> b.s.t -> target` in place of the arc `s -> t`.
fn buffer_arc(b: &mut NetBuilder, s: &ElementId, t: &ElementId, target: &ElementId) {
    let buf = ElementId::buffer(s, t);
    let col = ElementId::collector(t, s);
    b.flow.remove(&(s.clone(), t.clone()));
    b.flow.insert((s.clone(), col.clone()));
    b.flow.insert((col.clone(), buf.clone()));
    b.flow.insert((buf.clone(), target.clone()));
    b.places.insert(buf);
    b.silents.insert(col);
}

fn finish(
    origin: &Net,
    b: NetBuilder,
    kind: ImplKind,
    priority: Option<PriorityAssignment>,
) -> Result<ImplementationNet, Error> {
    let net = b.build()?;
    let np = origin.place_count();
    let mut original = Vec::with_capacity(net.place_count());
    let mut images = Vec::with_capacity(net.place_count());
    for p in net.places() {
        let mut image = BitSet::empty(np);
        match p.kind() {
            ElementKind::Buffer { place, transition } => {
                original.push(None);
                let s = ElementId::parse(place)?;
                let t = ElementId::parse(transition)?;
                match &priority {
                    Some(g) => {
                        let order = g.order(&t).unwrap_or(&[]);
                        let from = order.iter().position(|x| *x == s).unwrap_or(order.len());
                        for x in &order[from..] {
                            image.insert(origin.place_index(x).ok_or_else(|| Error::UnknownElement(x.clone()))?);
                        }
                    }
                    None => {
                        image.insert(origin.place_index(&s).ok_or(Error::UnknownElement(s))?);
                    }
                }
            }
            _ => {
                let s = origin.place_index(p).ok_or_else(|| Error::UnknownElement(p.clone()))?;
                original.push(Some(s));
                image.insert(s);
            }
        }
        images.push(image);
    }
    Ok(ImplementationNet {
        net,
        kind,
        priority,
        origin: origin.clone(),
        original,
        images,
    })
}

fn buffered(n: &Net, only_branched: bool) -> Result<ImplementationNet, Error> {
    require_plain(n)?;
    let mut b = n.to_builder();
    for &t in n.observable_indices() {
        if only_branched && n.pre(t).len() <= 1 {
            continue;
        }
        let tid = n.transition_id(t);
        for s in n.pre(t).iter() {
            buffer_arc(&mut b, n.place_id(s), tid, tid);
        }
    }
    let kind = if only_branched { ImplKind::Symmetric } else { ImplKind::Full };
    finish(n, b, kind, None)
}

/// FI(N): every arc from a place to a transition is buffered.
pub fn fully_async(n: &Net) -> Result<ImplementationNet, Error> {
    buffered(n, false)
}

/// SI(N): only transitions with at least two preplaces get buffers. The
/// result equals `n` when no such transition exists.
pub fn symm_async(n: &Net) -> Result<ImplementationNet, Error> {
    buffered(n, true)
}

/// AI_g(N): for each transition the non-minimal preplaces are collected
/// in decreasing priority, each collector also taking the buffer of the
/// place above it; the transition takes the minimal place and the last
/// buffer.
pub fn asymm_async(n: &Net, g: &PriorityAssignment) -> Result<ImplementationNet, Error> {
    require_plain(n)?;
    g.validate(n)?;
    let mut b = n.to_builder();
    for (t, order) in g.iter() {
        for i in 1..order.len() {
            let target = if i == 1 {
                t.clone()
            } else {
                ElementId::collector(t, &order[i - 1])
            };
            buffer_arc(&mut b, &order[i], t, &target);
        }
    }
    finish(n, b, ImplKind::Asymmetric, Some(g.clone()))
}

/// τ←: moves buffered tokens back to their original place.
pub fn tau_back(inet: &ImplementationNet, m: &Marking) -> Result<Marking, Error> {
    inet.require(&[ImplKind::Full, ImplKind::Symmetric], "FI or SI")?;
    Ok(inet.back(m))
}

/// τ⇐: a buffer `s_t` stands for every preplace of `t` from `s` upwards.
pub fn tau_back_chain(inet: &ImplementationNet, m: &Marking) -> Result<Marking, Error> {
    inet.require(&[ImplKind::Asymmetric], "AI")?;
    Ok(inet.back(m))
}

/// α: τ←(M) is reachable in the origin and τ← is injective on M.
/// `graph` is the marking graph of the origin.
pub fn alpha_holds(inet: &ImplementationNet, graph: &MarkingGraph, m: &Marking) -> Result<bool, Error> {
    inet.require(&[ImplKind::Full, ImplKind::Symmetric], "FI or SI")?;
    Ok(inet.back_invariant(graph, m))
}

/// γ: τ⇐(M) is reachable in the origin and the back-images of the marked
/// places are pairwise disjoint.
pub fn gamma_holds(inet: &ImplementationNet, graph: &MarkingGraph, m: &Marking) -> Result<bool, Error> {
    inet.require(&[ImplKind::Asymmetric], "AI")?;
    Ok(inet.back_invariant(graph, m))
}

/// d(M): marked original places that still have a consumer in the origin.
pub fn d_measure(inet: &ImplementationNet, m: &Marking) -> usize {
    m.iter()
        .filter(|&s| matches!(inet.original[s], Some(o) if !inet.origin.place_post(o).is_empty()))
        .count()
}

/// e(M): marked original places with a consumer that has several preplaces.
pub fn e_measure(inet: &ImplementationNet, m: &Marking) -> Result<usize, Error> {
    inet.require(&[ImplKind::Symmetric], "SI")?;
    let origin = &inet.origin;
    Ok(m.iter()
        .filter(|&s| match inet.original[s] {
            Some(o) => origin.place_post(o).iter().any(|t| origin.pre(t).len() > 1),
            None => false,
        })
        .count())
}

/// Re-derives the places, silent transitions and flow of an implementation
/// from its origin by the defining set equations and compares them with
/// the stored net. Returns a description of the first mismatch.
pub fn check_shape(inet: &ImplementationNet) -> Result<(), String> {
    let n = &inet.origin;
    let flow = n.to_builder().flow;
    let places: BTreeSet<ElementId> = n.places().iter().cloned().collect();
    let observables: BTreeSet<ElementId> = n.observables().cloned().collect();

    // (place, transition, next) triples of the buffered arcs
    let mut chains: BTreeSet<(ElementId, ElementId, ElementId)> = BTreeSet::new();
    for (s, t) in flow.iter().filter(|(s, _)| places.contains(s)) {
        let pre_len = flow.iter().filter(|(_, x)| x == t).count();
        match inet.kind {
            ImplKind::Full => {
                chains.insert((s.clone(), t.clone(), t.clone()));
            }
            ImplKind::Symmetric if pre_len > 1 => {
                chains.insert((s.clone(), t.clone(), t.clone()));
            }
            ImplKind::Symmetric => {}
            ImplKind::Asymmetric => {
                let g = inet.priority.as_ref().ok_or("AI without priority")?;
                if g.min_of(t) == Some(s) {
                    continue;
                }
                let below = g.predecessor(s, t).ok_or("place missing from priority")?;
                let next = if g.min_of(t) == Some(below) {
                    t.clone()
                } else {
                    ElementId::collector(t, below)
                };
                chains.insert((s.clone(), t.clone(), next));
            }
        }
    }

    let s_tau: BTreeSet<ElementId> = chains.iter().map(|(s, t, _)| ElementId::buffer(s, t)).collect();
    let u_new: BTreeSet<ElementId> = chains.iter().map(|(s, t, _)| ElementId::collector(t, s)).collect();
    let mut expected_flow: BTreeSet<(ElementId, ElementId)> = flow
        .iter()
        .filter(|(s, t)| !places.contains(s) || !chains.iter().any(|(cs, ct, _)| cs == s && ct == t))
        .cloned()
        .collect();
    for (s, t, next) in &chains {
        let buf = ElementId::buffer(s, t);
        let col = ElementId::collector(t, s);
        expected_flow.insert((s.clone(), col.clone()));
        expected_flow.insert((col, buf.clone()));
        expected_flow.insert((buf, next.clone()));
    }

    let actual = inet.net.to_builder();
    let expected_places: BTreeSet<ElementId> = places.union(&s_tau).cloned().collect();
    if actual.places != expected_places {
        return Err(format!("places differ: {:?} vs {:?}", actual.places, expected_places));
    }
    if actual.observables != observables {
        return Err(String::from("observable transitions differ"));
    }
    if actual.silents != u_new {
        return Err(format!("silent transitions differ: {:?} vs {:?}", actual.silents, u_new));
    }
    if actual.flow != expected_flow {
        let extra: Vec<_> = actual.flow.difference(&expected_flow).collect();
        let missing: Vec<_> = expected_flow.difference(&actual.flow).collect();
        return Err(format!("flow differs: extra {extra:?}, missing {missing:?}"));
    }
    let initial: BTreeSet<ElementId> = n.ids_of(n.initial()).into_iter().collect();
    if actual.initial != initial {
        return Err(String::from("initial marking differs"));
    }
    Ok(())
}

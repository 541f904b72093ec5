//! Structural and reachability-aware net classes.
//!
//! The semi-structural patterns look for shared preplaces between
//! transitions whose presets are (partially) covered by some reachable
//! marking. Searches run over transitions in canonical order, then places,
//! then markings in breadth-first order, so the first witness found is
//! reproducible. All predicates expect plain nets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::id::ElementId;
use crate::net::{Marking, Net};
use crate::reach::MarkingGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    /// `t ≠ u` share `p`; a reachable marking covers `•t` or `•u`.
    Conflict,
    /// A conflict in which `|•u| > 1`. Without markings: the static N.
    N,
    /// `p ∈ •t ∩ •u`, `q ∈ •u ∩ •v`, `p ≠ q`; markings cover `•t ∪ •u` and
    /// `•u ∪ •v`. Without markings: the static M.
    M,
    /// As [`Pattern::M`], but the markings only cover `•t` and `•v`.
    BorderM,
    /// `p ∈ •t ∩ •u`, `q ∈ •u`, `q ∉ •t`.
    PureN,
    /// `u`, `v` share `p` and a reachable marking covers exactly one preset.
    UnequalEnabling,
    /// `u ∈ p• ∩ q•`, `t ∈ p• \ q•`, `v ∈ q• \ p•`.
    IncomparablePostsets,
}

impl Pattern {
    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::Conflict => "conflict",
            Pattern::N => "N",
            Pattern::M => "M",
            Pattern::BorderM => "borderM",
            Pattern::PureN => "pureN",
            Pattern::UnequalEnabling => "unequalEnabling",
            Pattern::IncomparablePostsets => "incomparablePostsets",
        }
    }
}

/// The concrete transitions, places and reachable markings making up a
/// pattern occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralWitness {
    pub pattern: Pattern,
    /// `[t, u]` or `[t, u, v]`.
    pub transitions: Vec<ElementId>,
    /// `[p]` or `[p, q]`.
    pub places: Vec<ElementId>,
    pub markings: Vec<BTreeSet<ElementId>>,
}

impl StructuralWitness {
    fn new(net: &Net, pattern: Pattern, ts: &[usize], ps: &[usize], ms: &[&Marking]) -> Self {
        StructuralWitness {
            pattern,
            transitions: ts.iter().map(|&t| net.transition_id(t).clone()).collect(),
            places: ps.iter().map(|&p| net.place_id(p).clone()).collect(),
            markings: ms.iter().map(|m| net.ids_of(m).into_iter().collect()).collect(),
        }
    }

    /// Checks the witness against the net, and its markings against the
    /// marking graph of the net.
    pub fn revalidate(&self, net: &Net, graph: &MarkingGraph) -> bool {
        let Some(ts) = self
            .transitions
            .iter()
            .map(|t| net.transition_index(t))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let Some(ps) = self.places.iter().map(|p| net.place_index(p)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        let Ok(ms) = self
            .markings
            .iter()
            .map(|m| net.marking(m.iter()))
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        if !ms.iter().all(|m| graph.contains(m)) {
            return false;
        }
        let pre = |t: usize| net.pre(t);
        let covers = |m: &Marking, set: &BitSet| set.is_subset(m.bits());
        match (self.pattern, ts.as_slice(), ps.as_slice(), ms.as_slice()) {
            (Pattern::Conflict, &[t, u], &[p], [m]) => {
                t != u
                    && pre(t).contains(p)
                    && pre(u).contains(p)
                    && (covers(m, pre(t)) || covers(m, pre(u)))
            }
            (Pattern::N, &[t, u], &[p], ms) if ms.len() <= 1 => {
                t != u
                    && pre(t).contains(p)
                    && pre(u).contains(p)
                    && pre(u).len() > 1
                    && ms.iter().all(|m| covers(m, pre(t)) || covers(m, pre(u)))
            }
            (Pattern::M | Pattern::BorderM, &[t, u, v], &[p, q], ms) => {
                let shape = t != u
                    && u != v
                    && p != q
                    && pre(t).contains(p)
                    && pre(u).contains(p)
                    && pre(u).contains(q)
                    && pre(v).contains(q);
                let marked = match (self.pattern, ms) {
                    (Pattern::M, []) => true,
                    (Pattern::M, [m1, m2]) => {
                        covers(m1, &pre(t).union(pre(u))) && covers(m2, &pre(v).union(pre(u)))
                    }
                    (Pattern::BorderM, [m1, m2]) => covers(m1, pre(t)) && covers(m2, pre(v)),
                    _ => false,
                };
                shape && marked
            }
            (Pattern::PureN, &[t, u], &[p, q], []) => {
                pre(t).contains(p) && pre(u).contains(p) && pre(u).contains(q) && !pre(t).contains(q)
            }
            (Pattern::UnequalEnabling, &[u, v], &[p], [m]) => {
                u != v && pre(u).contains(p) && pre(v).contains(p) && covers(m, pre(u)) != covers(m, pre(v))
            }
            (Pattern::IncomparablePostsets, &[t, u, v], &[p, q], []) => {
                let post_p = net.place_post(p);
                let post_q = net.place_post(q);
                post_p.contains(u)
                    && post_q.contains(u)
                    && post_p.contains(t)
                    && !post_q.contains(t)
                    && post_q.contains(v)
                    && !post_p.contains(v)
            }
            _ => false,
        }
    }
}

/// First state (in breadth-first order) whose marking includes `set`.
fn first_cover<'g>(graph: &'g MarkingGraph, set: &BitSet) -> Option<&'g Marking> {
    graph.states().iter().find(|m| set.is_subset(m.bits()))
}

fn transitions(net: &Net) -> core::ops::Range<usize> {
    0..net.transition_count()
}

fn shared_conflict(net: &Net, graph: &MarkingGraph, need_branched_u: bool) -> Option<StructuralWitness> {
    let covers: Vec<Option<&Marking>> = transitions(net).map(|t| first_cover(graph, net.pre(t))).collect();
    for t in transitions(net) {
        for u in transitions(net) {
            if t == u || (need_branched_u && net.pre(u).len() <= 1) {
                continue;
            }
            let Some(p) = net.pre(t).intersection(net.pre(u)).first() else {
                continue;
            };
            let m = match (covers[t], covers[u]) {
                (Some(a), Some(b)) => Some(if graph.index_of(a) <= graph.index_of(b) { a } else { b }),
                (a, b) => a.or(b),
            };
            if let Some(m) = m {
                let pattern = if need_branched_u { Pattern::N } else { Pattern::Conflict };
                return Some(StructuralWitness::new(net, pattern, &[t, u], &[p], &[m]));
            }
        }
    }
    None
}

/// `t ≠ u` with a common preplace, one of whose presets is covered by a
/// reachable marking.
pub fn partially_reachable_conflict(net: &Net, graph: &MarkingGraph) -> Option<StructuralWitness> {
    shared_conflict(net, graph, false)
}

/// A partially reachable conflict in which `u` has at least two preplaces.
pub fn partially_reachable_n(net: &Net, graph: &MarkingGraph) -> Option<StructuralWitness> {
    shared_conflict(net, graph, true)
}

fn m_shapes(net: &Net) -> Vec<(usize, usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for t in transitions(net) {
        for u in transitions(net) {
            if t == u {
                continue;
            }
            let left = net.pre(t).intersection(net.pre(u));
            if left.is_empty() {
                continue;
            }
            for v in transitions(net) {
                if v == u {
                    continue;
                }
                let right = net.pre(u).intersection(net.pre(v));
                let pair = left.iter().find_map(|p| right.iter().find(|&q| q != p).map(|q| (p, q)));
                if let Some((p, q)) = pair {
                    out.push((t, u, v, p, q));
                }
            }
        }
    }
    out
}

/// An M-shape `t ← p → u ← q → v` where reachable markings cover
/// `•t ∪ •u` and `•u ∪ •v`.
pub fn lr_reachable_m(net: &Net, graph: &MarkingGraph) -> Option<StructuralWitness> {
    m_shapes(net).into_iter().find_map(|(t, u, v, p, q)| {
        let m1 = first_cover(graph, &net.pre(t).union(net.pre(u)))?;
        let m2 = first_cover(graph, &net.pre(v).union(net.pre(u)))?;
        Some(StructuralWitness::new(net, Pattern::M, &[t, u, v], &[p, q], &[m1, m2]))
    })
}

/// As [`lr_reachable_m`], but the markings need only cover `•t` and `•v`.
pub fn lr_border_reachable_m(net: &Net, graph: &MarkingGraph) -> Option<StructuralWitness> {
    m_shapes(net).into_iter().find_map(|(t, u, v, p, q)| {
        let m1 = first_cover(graph, net.pre(t))?;
        let m2 = first_cover(graph, net.pre(v))?;
        Some(StructuralWitness::new(net, Pattern::BorderM, &[t, u, v], &[p, q], &[m1, m2]))
    })
}

fn place_pairs(net: &Net) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = net.place_count();
    (0..n).flat_map(move |p| (0..n).map(move |q| (p, q)))
}

/// Place-based free choice: distinct places sharing a transition both
/// have a single posttransition.
pub fn is_fc(net: &Net) -> bool {
    place_pairs(net).all(|(p, q)| {
        let (a, b) = (net.place_post(p), net.place_post(q));
        p == q || a.is_disjoint(b) || (a.len() == 1 && b.len() == 1)
    })
}

/// Transition-based free choice: distinct transitions sharing a place
/// both have a single preplace.
pub fn is_fc_by_transitions(net: &Net) -> bool {
    transitions(net).all(|t| {
        transitions(net).all(|u| {
            t == u || net.pre(t).is_disjoint(net.pre(u)) || (net.pre(t).len() == 1 && net.pre(u).len() == 1)
        })
    })
}

/// An N-shape ignoring reachability; absent exactly for free choice nets.
pub fn static_n(net: &Net) -> Option<StructuralWitness> {
    for t in transitions(net) {
        for u in transitions(net) {
            if t != u && net.pre(u).len() > 1 {
                if let Some(p) = net.pre(t).intersection(net.pre(u)).first() {
                    return Some(StructuralWitness::new(net, Pattern::N, &[t, u], &[p], &[]));
                }
            }
        }
    }
    None
}

/// Places sharing a transition have equal postsets.
pub fn is_efc(net: &Net) -> bool {
    place_pairs(net).all(|(p, q)| {
        let (a, b) = (net.place_post(p), net.place_post(q));
        a.is_disjoint(b) || a == b
    })
}

/// `p ∈ •t ∩ •u`, `q ∈ •u \ •t`.
pub fn pure_n(net: &Net) -> Option<StructuralWitness> {
    for t in transitions(net) {
        for u in transitions(net) {
            let Some(p) = net.pre(t).intersection(net.pre(u)).first() else {
                continue;
            };
            if let Some(q) = net.pre(u).difference(net.pre(t)).first() {
                return Some(StructuralWitness::new(net, Pattern::PureN, &[t, u], &[p, q], &[]));
            }
        }
    }
    None
}

pub fn has_pure_n(net: &Net) -> bool {
    pure_n(net).is_some()
}

/// Transitions sharing a preplace with a reachable marking covering the
/// preset of one but not the other; absent exactly for BFC nets.
pub fn bfc_violation(net: &Net, graph: &MarkingGraph) -> Option<StructuralWitness> {
    for u in transitions(net) {
        for v in transitions(net) {
            if u == v {
                continue;
            }
            let Some(p) = net.pre(u).intersection(net.pre(v)).first() else {
                continue;
            };
            let hit = graph
                .states()
                .iter()
                .find(|m| net.pre(u).is_subset(m.bits()) != net.pre(v).is_subset(m.bits()));
            if let Some(m) = hit {
                return Some(StructuralWitness::new(net, Pattern::UnequalEnabling, &[u, v], &[p], &[m]));
            }
        }
    }
    None
}

pub fn is_bfc(net: &Net, graph: &MarkingGraph) -> bool {
    bfc_violation(net, graph).is_none()
}

/// Distinct places sharing a transition: one has a single posttransition.
pub fn is_spl(net: &Net) -> bool {
    place_pairs(net).all(|(p, q)| {
        let (a, b) = (net.place_post(p), net.place_post(q));
        p == q || a.is_disjoint(b) || a.len() == 1 || b.len() == 1
    })
}

/// An M-shape ignoring reachability; absent exactly for simple nets.
pub fn static_m(net: &Net) -> Option<StructuralWitness> {
    m_shapes(net)
        .into_iter()
        .next()
        .map(|(t, u, v, p, q)| StructuralWitness::new(net, Pattern::M, &[t, u, v], &[p, q], &[]))
}

/// Places sharing a transition have postsets ordered by inclusion.
pub fn is_espl(net: &Net) -> bool {
    espl_violation(net).is_none()
}

pub fn espl_violation(net: &Net) -> Option<StructuralWitness> {
    for (p, q) in place_pairs(net) {
        let (a, b) = (net.place_post(p), net.place_post(q));
        let Some(u) = a.intersection(b).first() else {
            continue;
        };
        if let (Some(t), Some(v)) = (a.difference(b).first(), b.difference(a).first()) {
            return Some(StructuralWitness::new(
                net,
                Pattern::IncomparablePostsets,
                &[t, u, v],
                &[p, q],
                &[],
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::id::id;
    use crate::net::NetBuilder;
    use crate::reach::{reachability, DEFAULT_CAP};

    fn graph(net: &Net) -> MarkingGraph {
        reachability(net, DEFAULT_CAP).unwrap()
    }

    fn names(ids: &[ElementId]) -> Vec<&str> {
        ids.iter().map(|x| x.as_str()).collect()
    }

    fn marking(names: &[&str]) -> BTreeSet<ElementId> {
        names.iter().map(|n| id(n)).collect()
    }

    fn m_chain() -> Net {
        NetBuilder::new()
            .marked("p")
            .marked("q")
            .trans("t")
            .trans("u")
            .trans("v")
            .arc("p", "t")
            .arc("p", "u")
            .arc("q", "u")
            .arc("q", "v")
            .build()
            .unwrap()
    }

    #[test]
    fn conflicts() {
        let fig2 = corpus::fig2();
        let w = partially_reachable_conflict(&fig2, &graph(&fig2)).unwrap();
        assert_eq!(names(&w.transitions), ["a", "b"]);
        assert_eq!(names(&w.places), ["p1"]);
        assert_eq!(w.markings, [marking(&["p1"])]);
        assert!(w.revalidate(&fig2, &graph(&fig2)));

        let fig4a = corpus::fig4a();
        assert_eq!(partially_reachable_conflict(&fig4a, &graph(&fig4a)), None);

        let single = NetBuilder::new().marked("p").trans("t").arc("p", "t").build().unwrap();
        assert_eq!(partially_reachable_conflict(&single, &graph(&single)), None);
    }

    #[test]
    fn n_shapes() {
        let fig3 = corpus::fig3();
        let w = partially_reachable_n(&fig3, &graph(&fig3)).unwrap();
        assert_eq!(names(&w.transitions), ["a", "b"]);
        assert_eq!(names(&w.places), ["p1"]);
        assert_eq!(w.markings, [marking(&["p1"])]);

        let fig2 = corpus::fig2();
        assert_eq!(partially_reachable_n(&fig2, &graph(&fig2)), None);

        let fig4b = corpus::fig4b();
        let w = partially_reachable_n(&fig4b, &graph(&fig4b)).unwrap();
        assert_eq!(names(&w.transitions), ["a", "b"]);
        assert_eq!(names(&w.places), ["p1"]);
        assert!(w.revalidate(&fig4b, &graph(&fig4b)));
    }

    #[test]
    fn m_shapes_in_figure_nets() {
        let fig8l = corpus::fig8l();
        let g = graph(&fig8l);
        assert_eq!(lr_reachable_m(&fig8l, &g), None);
        let w = lr_border_reachable_m(&fig8l, &g).unwrap();
        assert_eq!(names(&w.transitions), ["t", "u", "v"]);
        assert_eq!(names(&w.places), ["q", "s"]);
        assert_eq!(w.markings, [marking(&["p", "q", "r"]), marking(&["q", "r", "s"])]);
        assert!(w.revalidate(&fig8l, &g));

        let fig8r = corpus::fig8r();
        let g = graph(&fig8r);
        assert_eq!(lr_reachable_m(&fig8r, &g), None);
        let w = lr_border_reachable_m(&fig8r, &g).unwrap();
        assert_eq!(names(&w.transitions), ["t", "u", "v"]);

        let fig9 = corpus::fig9();
        assert_eq!(lr_reachable_m(&fig9, &graph(&fig9)), None);

        let fig2 = corpus::fig2();
        assert_eq!(lr_border_reachable_m(&fig2, &graph(&fig2)), None);

        let chain = m_chain();
        let g = graph(&chain);
        let w = lr_reachable_m(&chain, &g).unwrap();
        assert_eq!(names(&w.transitions), ["t", "u", "v"]);
        assert_eq!(names(&w.places), ["p", "q"]);
        assert_eq!(w.markings, [marking(&["p", "q"]), marking(&["p", "q"])]);
        assert!(w.revalidate(&chain, &g));
    }

    #[test]
    fn free_choice_family() {
        let cases = [
            (corpus::fig4a(), false, false, true),
            (corpus::fig4b(), false, true, true),
            (corpus::fig4c(), false, false, true),
        ];
        for (net, fc, efc, bfc) in cases {
            let g = graph(&net);
            assert_eq!(is_fc(&net), fc);
            assert_eq!(is_fc_by_transitions(&net), fc);
            assert_eq!(static_n(&net).is_none(), fc);
            assert_eq!(is_efc(&net), efc);
            assert_eq!(has_pure_n(&net), !efc);
            assert_eq!(is_bfc(&net, &g), bfc);
        }
        assert!(is_fc(&corpus::fig2()));
        assert!(is_efc(&corpus::fig5b()));
    }

    #[test]
    fn bfc_violation_in_fig3() {
        let fig3 = corpus::fig3();
        let g = graph(&fig3);
        let w = bfc_violation(&fig3, &g).unwrap();
        assert_eq!(names(&w.transitions), ["a", "b"]);
        assert!(w.revalidate(&fig3, &g));
    }

    #[test]
    fn simple_family() {
        let fig9 = corpus::fig9();
        assert!(!is_spl(&fig9));
        assert!(!is_espl(&fig9));
        let w = espl_violation(&fig9).unwrap();
        assert_eq!(names(&w.transitions), ["a", "b", "c"]);
        assert!(w.revalidate(&fig9, &graph(&fig9)));

        let fig4b = corpus::fig4b();
        assert!(!is_spl(&fig4b));
        assert!(is_espl(&fig4b));
        assert!(static_m(&fig4b).is_some());

        let unary = corpus::fig2();
        assert!(is_spl(&unary));
        assert!(is_espl(&unary));
        assert_eq!(static_m(&unary), None);
    }

    #[test]
    fn pure_n_examples() {
        let fig4a = corpus::fig4a();
        let w = pure_n(&fig4a).unwrap();
        assert_eq!(names(&w.transitions), ["a", "b"]);
        assert_eq!(names(&w.places), ["p1", "p2"]);
        assert!(w.revalidate(&fig4a, &graph(&fig4a)));
        assert!(!has_pure_n(&corpus::fig4b()));
        let disjoint = NetBuilder::new()
            .place("p")
            .place("q")
            .trans("a")
            .trans("b")
            .arc("p", "a")
            .arc("q", "b")
            .build()
            .unwrap();
        assert!(!has_pure_n(&disjoint));
    }

    #[test]
    fn static_m_matches_spl_on_corpus() {
        for entry in corpus::builtin_corpus() {
            assert_eq!(static_m(&entry.net).is_none(), is_spl(&entry.net), "{}", entry.id);
        }
    }

    #[test]
    fn tampered_witness_fails_revalidation() {
        let fig2 = corpus::fig2();
        let g = graph(&fig2);
        let mut w = partially_reachable_conflict(&fig2, &g).unwrap();
        w.markings = alloc::vec![marking(&[])];
        assert!(!w.revalidate(&fig2, &g));
        w.transitions[1] = id("a");
        assert!(!w.revalidate(&fig2, &g));
    }
}

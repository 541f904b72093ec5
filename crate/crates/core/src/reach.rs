//! Breadth-first exploration of the marking graph.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::net::{Marking, Net};

/// Default bound on the number of explored markings.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub transition: usize,
    pub target: usize,
}

/// Reachable markings with their singleton firings.
///
/// States are numbered in breadth-first discovery order, transitions being
/// tried in canonical order, so state 0 is the initial marking and the
/// numbering is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkingGraph {
    states: Vec<Marking>,
    index: BTreeMap<Marking, usize>,
    edges: Vec<Edge>,
    /// Per state, the range of its outgoing edges in `edges`.
    out: Vec<(usize, usize)>,
    contact_free: bool,
    contact_witness: Option<(usize, usize)>,
    cap_hit: bool,
}

impl MarkingGraph {
    /// Explores at most `cap` markings. When the cap is hit the graph is
    /// truncated and flagged rather than rejected.
    pub fn explore(net: &Net, cap: usize) -> MarkingGraph {
        let mut g = MarkingGraph {
            states: Vec::new(),
            index: BTreeMap::new(),
            edges: Vec::new(),
            out: Vec::new(),
            contact_free: true,
            contact_witness: None,
            cap_hit: false,
        };
        let root = net.initial().clone();
        g.index.insert(root.clone(), 0);
        g.states.push(root);

        let mut next = 0;
        while next < g.states.len() {
            let m = g.states[next].clone();
            let start = g.edges.len();
            for t in 0..net.transition_count() {
                if net.contact_at(&m, t) {
                    if g.contact_free {
                        g.contact_witness = Some((next, t));
                    }
                    g.contact_free = false;
                    continue;
                }
                if !net.enabled(&m, t) {
                    continue;
                }
                let m2 = net.fire_unchecked(&m, t);
                let target = match g.index.get(&m2) {
                    Some(&i) => i,
                    None => {
                        if g.states.len() >= cap {
                            g.cap_hit = true;
                            continue;
                        }
                        let i = g.states.len();
                        g.index.insert(m2.clone(), i);
                        g.states.push(m2);
                        i
                    }
                };
                g.edges.push(Edge { source: next, transition: t, target });
            }
            g.out.push((start, g.edges.len()));
            next += 1;
        }
        g
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn states(&self) -> &[Marking] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &Marking {
        &self.states[i]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, m: &Marking) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Marking) -> bool {
        self.index.contains_key(m)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn successors(&self, state: usize) -> &[Edge] {
        let (a, b) = self.out[state];
        &self.edges[a..b]
    }

    pub fn contact_free(&self) -> bool {
        self.contact_free
    }

    /// First (state, transition) pair found violating contact-freeness.
    pub fn contact_witness(&self) -> Option<(usize, usize)> {
        self.contact_witness
    }

    pub fn cap_hit(&self) -> bool {
        self.cap_hit
    }

    /// State indices sorted by the canonical order of their markings.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.states.len()).collect();
        order.sort_by(|&a, &b| self.states[a].cmp_canonical(&self.states[b]));
        order
    }

    pub(crate) fn require_complete(&self, cap: usize) -> Result<(), Error> {
        if self.cap_hit {
            Err(Error::CapExceeded { cap })
        } else {
            Ok(())
        }
    }
}

/// The full reachability graph; fails if more than `cap` markings exist.
pub fn reachability(net: &Net, cap: usize) -> Result<MarkingGraph, Error> {
    let g = MarkingGraph::explore(net, cap);
    g.require_complete(cap)?;
    Ok(g)
}

/// Whether every state has at most one successor per observable
/// transition. Holds for every plain net.
pub fn check_determinism(net: &Net, graph: &MarkingGraph) -> Result<bool, Error> {
    if !net.is_plain() {
        return Err(Error::NotPlain);
    }
    Ok((0..graph.len()).all(|s| {
        let succ = graph.successors(s);
        succ.iter().enumerate().all(|(i, e)| {
            succ[i + 1..]
                .iter()
                .all(|f| f.transition != e.transition || f.target == e.target)
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::net::NetBuilder;
    use crate::transform::fully_async;

    #[test]
    fn fig2_has_two_markings() {
        let net = corpus::fig2();
        let g = reachability(&net, DEFAULT_CAP).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edges().len(), 2);
        assert!(g.contains(&net.marking_of(&["p1"])));
        assert!(g.contains(&net.empty_marking()));
        assert!(g.contact_free());
    }

    #[test]
    fn unmarked_net_has_only_the_empty_marking() {
        let net = corpus::fig4a();
        let g = reachability(&net, DEFAULT_CAP).unwrap();
        assert_eq!(g.states(), &[net.empty_marking()]);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn fig8_left_markings() {
        let net = corpus::fig8l();
        let g = reachability(&net, DEFAULT_CAP).unwrap();
        for m in [&["i"][..], &["p", "q", "r"], &["q", "r", "s"]] {
            assert!(g.contains(&net.marking_of(m)), "{m:?}");
        }
    }

    #[test]
    fn cap_is_an_explicit_error() {
        let net = corpus::fig8l();
        assert_eq!(reachability(&net, 2), Err(Error::CapExceeded { cap: 2 }));
        let partial = MarkingGraph::explore(&net, 2);
        assert!(partial.cap_hit());
        assert_eq!(partial.len(), 2);
    }

    #[test]
    fn contact_is_flagged_but_exploration_completes() {
        // t moves the token from p to q while q may already be marked.
        let net = NetBuilder::new()
            .marked("p")
            .marked("q")
            .trans("t")
            .trans("w")
            .arc("p", "t")
            .arc("t", "q")
            .arc("q", "w")
            .build()
            .unwrap();
        let g = reachability(&net, DEFAULT_CAP).unwrap();
        assert!(!g.contact_free());
        let (state, t) = g.contact_witness().unwrap();
        assert_eq!(g.state(state), &net.marking_of(&["p", "q"]));
        assert_eq!(net.transition_id(t).as_str(), "t");
        // after w consumes q, t can fire
        assert!(g.contains(&net.marking_of(&["q"])));
    }

    #[test]
    fn determinism_of_plain_nets() {
        for entry in corpus::builtin_corpus() {
            if !entry.net.is_plain() {
                continue;
            }
            let g = reachability(&entry.net, DEFAULT_CAP).unwrap();
            assert!(check_determinism(&entry.net, &g).unwrap(), "{}", entry.id);
        }
        let fi = fully_async(&corpus::fig2()).unwrap();
        let g = reachability(fi.net(), DEFAULT_CAP).unwrap();
        assert_eq!(check_determinism(fi.net(), &g), Err(Error::NotPlain));
    }

    #[test]
    fn exploration_is_reproducible() {
        let net = corpus::msc();
        let a = reachability(&net, DEFAULT_CAP).unwrap();
        let b = reachability(&net, DEFAULT_CAP).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_order(), b.canonical_order());
    }
}

//! Slow, definition-by-definition reference computations.
//!
//! Nothing here reuses the indexed firing rule, marking graph or normalized
//! machine of `pnasync-core`: nets are read back into their raw flow
//! relation and every notion is evaluated literally on sets of names.

use std::collections::{BTreeMap, BTreeSet};

use pnasync_core::{ElementId, FailurePair, Net};

pub type Names = BTreeSet<ElementId>;

/// The raw tuple of a net with presets and postsets as name sets.
#[derive(Debug, Clone)]
pub struct RawNet {
    pub places: Names,
    pub observables: Names,
    pub silents: Names,
    pub pre: BTreeMap<ElementId, Names>,
    pub post: BTreeMap<ElementId, Names>,
    pub initial: Names,
}

impl RawNet {
    pub fn new(net: &Net) -> Self {
        let b = net.to_builder();
        let mut pre: BTreeMap<ElementId, Names> = BTreeMap::new();
        let mut post: BTreeMap<ElementId, Names> = BTreeMap::new();
        for t in b.observables.iter().chain(&b.silents) {
            pre.insert(t.clone(), Names::new());
            post.insert(t.clone(), Names::new());
        }
        for (x, y) in &b.flow {
            if b.places.contains(x) {
                pre.get_mut(y).unwrap().insert(x.clone());
            } else {
                post.get_mut(x).unwrap().insert(y.clone());
            }
        }
        RawNet {
            places: b.places,
            observables: b.observables,
            silents: b.silents,
            pre,
            post,
            initial: b.initial,
        }
    }

    pub fn transitions(&self) -> impl Iterator<Item = &ElementId> {
        self.pre.keys()
    }

    /// Postset of a place.
    pub fn consumers(&self, s: &ElementId) -> Names {
        self.pre.iter().filter(|(_, p)| p.contains(s)).map(|(t, _)| t.clone()).collect()
    }

    pub fn enabled(&self, m: &Names, t: &ElementId) -> bool {
        let pre = &self.pre[t];
        pre.is_subset(m) && m.difference(pre).all(|s| !self.post[t].contains(s))
    }

    pub fn fire(&self, m: &Names, t: &ElementId) -> Names {
        let mut out: Names = m.difference(&self.pre[t]).cloned().collect();
        out.extend(self.post[t].iter().cloned());
        out
    }

    pub fn stable(&self, m: &Names) -> bool {
        self.silents.iter().all(|u| !self.enabled(m, u))
    }

    pub fn refusal(&self, m: &Names) -> Names {
        self.observables.iter().filter(|t| !self.enabled(m, t)).cloned().collect()
    }
}

/// All reachable markings, by naive closure.
pub fn reachable(net: &Net) -> BTreeSet<Names> {
    let raw = RawNet::new(net);
    let mut seen = BTreeSet::from([raw.initial.clone()]);
    let mut work = vec![raw.initial.clone()];
    while let Some(m) = work.pop() {
        for t in raw.transitions() {
            if raw.enabled(&m, t) {
                let next = raw.fire(&m, t);
                if seen.insert(next.clone()) {
                    work.push(next);
                }
            }
        }
    }
    seen
}

/// Whether some reachable marking covers a preset but firing would put a
/// second token on a place.
pub fn has_contact(net: &Net) -> bool {
    let raw = RawNet::new(net);
    reachable(net).iter().any(|m| {
        raw.transitions()
            .any(|t| raw.pre[t].is_subset(m) && !raw.enabled(m, t))
    })
}

/// Every subset of the places of `net`.
pub fn all_markings(net: &Net) -> Vec<Names> {
    let places: Vec<&ElementId> = net.places().iter().collect();
    assert!(places.len() < 24, "too many places for subset enumeration");
    (0u32..1 << places.len())
        .map(|bits| {
            places
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, p)| (*p).clone())
                .collect()
        })
        .collect()
}

/// All failure pairs `⟨σ, X⟩` with `|σ| ≤ max_len`, refusals reduced to
/// their maximal elements, by exploring every firing sequence.
pub fn failures(net: &Net, max_len: usize) -> BTreeSet<FailurePair> {
    let raw = RawNet::new(net);
    let mut refusals: BTreeMap<Vec<ElementId>, BTreeSet<Names>> = BTreeMap::new();
    let mut seen: BTreeSet<(Names, Vec<ElementId>)> = BTreeSet::new();
    let mut work = vec![(raw.initial.clone(), Vec::new())];
    while let Some((m, trace)) = work.pop() {
        if !seen.insert((m.clone(), trace.clone())) {
            continue;
        }
        if raw.stable(&m) {
            refusals.entry(trace.clone()).or_default().insert(raw.refusal(&m));
        }
        for t in raw.transitions() {
            if !raw.enabled(&m, t) {
                continue;
            }
            let mut next_trace = trace.clone();
            if raw.observables.contains(t) {
                if trace.len() == max_len {
                    continue;
                }
                next_trace.push(t.clone());
            }
            work.push((raw.fire(&m, t), next_trace));
        }
    }
    let mut out = BTreeSet::new();
    for (trace, sets) in refusals {
        for x in &sets {
            if !sets.iter().any(|y| x != y && x.is_subset(y)) {
                out.insert(FailurePair { trace: trace.clone(), refusal: x.clone() });
            }
        }
    }
    out
}

/// Downward closure check: is `pair` below some reported maximal pair?
pub fn covered(pairs: &BTreeSet<FailurePair>, pair: &FailurePair) -> bool {
    pairs.iter().any(|p| p.trace == pair.trace && pair.refusal.is_subset(&p.refusal))
}

fn shares(a: &Names, b: &Names) -> bool {
    !a.is_disjoint(b)
}

/// Partially reachable conflict, literally.
pub fn has_conflict(net: &Net) -> bool {
    let raw = RawNet::new(net);
    let reach = reachable(net);
    let found = raw.transitions().any(|t| {
        raw.transitions().any(|u| {
            t != u
                && shares(&raw.pre[t], &raw.pre[u])
                && reach.iter().any(|m| raw.pre[t].is_subset(m) || raw.pre[u].is_subset(m))
        })
    });
    found
}

/// Partially reachable N, literally.
pub fn has_n(net: &Net) -> bool {
    let raw = RawNet::new(net);
    let reach = reachable(net);
    let found = raw.transitions().any(|t| {
        raw.transitions().any(|u| {
            t != u
                && raw.pre[u].len() > 1
                && shares(&raw.pre[t], &raw.pre[u])
                && reach.iter().any(|m| raw.pre[t].is_subset(m) || raw.pre[u].is_subset(m))
        })
    });
    found
}

fn m_pattern(net: &Net, border: bool) -> bool {
    let raw = RawNet::new(net);
    let reach = reachable(net);
    let ts: Vec<&ElementId> = raw.transitions().collect();
    for &t in &ts {
        for &u in &ts {
            for &v in &ts {
                if t == u || u == v {
                    continue;
                }
                let left: Names = raw.pre[t].intersection(&raw.pre[u]).cloned().collect();
                let right: Names = raw.pre[u].intersection(&raw.pre[v]).cloned().collect();
                let distinct = left.iter().any(|p| right.iter().any(|q| p != q));
                if !distinct {
                    continue;
                }
                let (need1, need2): (Names, Names) = if border {
                    (raw.pre[t].clone(), raw.pre[v].clone())
                } else {
                    (
                        raw.pre[t].union(&raw.pre[u]).cloned().collect(),
                        raw.pre[v].union(&raw.pre[u]).cloned().collect(),
                    )
                };
                if reach.iter().any(|m| need1.is_subset(m)) && reach.iter().any(|m| need2.is_subset(m)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Left and right reachable M, literally.
pub fn has_m(net: &Net) -> bool {
    m_pattern(net, false)
}

/// Left and right border reachable M, literally.
pub fn has_border_m(net: &Net) -> bool {
    m_pattern(net, true)
}

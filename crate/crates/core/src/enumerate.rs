//! Small-net generators for brute-force checking.
//!
//! A net with `np` places and `nt` transitions is encoded as the bit
//! string `pre ‖ post ‖ marking`, with `pre` and `post` as row-major
//! place × transition matrices. Exhaustive enumeration keeps an encoding
//! only if no renaming of places and transitions yields a smaller one,
//! so every isomorphism class appears exactly once.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::net::{Net, NetBuilder};
use crate::reach::MarkingGraph;

/// Largest `np`, `nt` accepted; keeps the encoding within 128 bits.
pub const MAX_DIMENSION: usize = 7;

fn place_name(i: usize) -> alloc::string::String {
    format!("p{}", i + 1)
}

fn transition_name(i: usize) -> alloc::string::String {
    format!("t{}", i + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shape {
    np: usize,
    nt: usize,
}

impl Shape {
    fn bits(self) -> usize {
        2 * self.np * self.nt + self.np
    }

    fn pre_bit(self, p: usize, t: usize) -> usize {
        p * self.nt + t
    }

    fn post_bit(self, p: usize, t: usize) -> usize {
        self.np * self.nt + p * self.nt + t
    }

    fn mark_bit(self, p: usize) -> usize {
        2 * self.np * self.nt + p
    }

    fn encode(self, pre: &[Vec<bool>], post: &[Vec<bool>], marked: &[bool]) -> u128 {
        let mut code = 0u128;
        for p in 0..self.np {
            for t in 0..self.nt {
                if pre[p][t] {
                    code |= 1 << self.pre_bit(p, t);
                }
                if post[p][t] {
                    code |= 1 << self.post_bit(p, t);
                }
            }
            if marked[p] {
                code |= 1 << self.mark_bit(p);
            }
        }
        code
    }

    /// Encoding after renaming place `p` to `pp[p]` and transition `t` to `tp[t]`.
    fn permute(self, code: u128, pp: &[usize], tp: &[usize]) -> u128 {
        let mut out = 0u128;
        for (p, &p2) in pp.iter().enumerate() {
            for (t, &t2) in tp.iter().enumerate() {
                if code >> self.pre_bit(p, t) & 1 == 1 {
                    out |= 1 << self.pre_bit(p2, t2);
                }
                if code >> self.post_bit(p, t) & 1 == 1 {
                    out |= 1 << self.post_bit(p2, t2);
                }
            }
            if code >> self.mark_bit(p) & 1 == 1 {
                out |= 1 << self.mark_bit(p2);
            }
        }
        out
    }

    fn every_transition_has_input(self, code: u128) -> bool {
        (0..self.nt).all(|t| (0..self.np).any(|p| code >> self.pre_bit(p, t) & 1 == 1))
    }

    fn decode(self, code: u128) -> Net {
        let mut b = NetBuilder::new();
        for p in 0..self.np {
            let name = place_name(p);
            b = if code >> self.mark_bit(p) & 1 == 1 { b.marked(&name) } else { b.place(&name) };
        }
        for t in 0..self.nt {
            b = b.trans(&transition_name(t));
        }
        for p in 0..self.np {
            for t in 0..self.nt {
                if code >> self.pre_bit(p, t) & 1 == 1 {
                    b = b.arc(&place_name(p), &transition_name(t));
                }
                if code >> self.post_bit(p, t) & 1 == 1 {
                    b = b.arc(&transition_name(t), &place_name(p));
                }
            }
        }
        b.build().expect("enumerated nets are valid")
    }
}

/// Place permutations and transition permutations of the current shape.
type Renamings = (Vec<Vec<usize>>, Vec<Vec<usize>>);

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (1..n).rev().find(|&i| idx[i - 1] < idx[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
}

fn contact_free(net: &Net) -> bool {
    MarkingGraph::explore(net, usize::MAX).contact_free()
}

/// Every valid, plain, contact-free net with `1..=max_places` places and
/// `1..=max_transitions` transitions, one per isomorphism class.
///
/// Order: by place count, then transition count, then encoding. Isolated
/// places are allowed; places are named `p1…`, transitions `t1…`.
pub fn exhaustive(max_places: usize, max_transitions: usize) -> Exhaustive {
    assert!(
        max_places <= MAX_DIMENSION && max_transitions <= MAX_DIMENSION,
        "bounds above {MAX_DIMENSION} are not supported"
    );
    let mut shapes = Vec::new();
    for np in 1..=max_places {
        for nt in 1..=max_transitions {
            shapes.push(Shape { np, nt });
        }
    }
    Exhaustive { shapes, current: 0, code: 0, perms: None }
}

/// Iterator returned by [`exhaustive`].
#[derive(Debug, Clone)]
pub struct Exhaustive {
    shapes: Vec<Shape>,
    current: usize,
    code: u128,
    perms: Option<Renamings>,
}

impl Exhaustive {
    fn is_canonical(&self, shape: Shape, code: u128) -> bool {
        let (pps, tps) = self.perms.as_ref().unwrap();
        pps.iter().all(|pp| tps.iter().all(|tp| shape.permute(code, pp, tp) >= code))
    }
}

impl Iterator for Exhaustive {
    type Item = Net;

    fn next(&mut self) -> Option<Net> {
        while let Some(&shape) = self.shapes.get(self.current) {
            if self.perms.is_none() {
                self.perms = Some((all_permutations(shape.np), all_permutations(shape.nt)));
            }
            let end = 1u128 << shape.bits();
            while self.code < end {
                let code = self.code;
                self.code += 1;
                if !shape.every_transition_has_input(code) || !self.is_canonical(shape, code) {
                    continue;
                }
                let net = shape.decode(code);
                if contact_free(&net) {
                    return Some(net);
                }
            }
            self.current += 1;
            self.code = 0;
            self.perms = None;
        }
        None
    }
}

/// `count` valid, plain, contact-free nets drawn reproducibly from `seed`,
/// each with `1..=max_places` places and `1..=max_transitions` transitions.
/// Not isomorphism-reduced.
pub fn sample(max_places: usize, max_transitions: usize, seed: u64, count: usize) -> Sample {
    Sample {
        rng: ChaCha8Rng::seed_from_u64(seed),
        max_places,
        max_transitions,
        remaining: if max_places == 0 || max_transitions == 0 { 0 } else { count },
    }
}

/// Iterator returned by [`sample`].
#[derive(Debug, Clone)]
pub struct Sample {
    rng: ChaCha8Rng,
    max_places: usize,
    max_transitions: usize,
    remaining: usize,
}

impl Sample {
    fn draw(&mut self) -> Net {
        let rng = &mut self.rng;
        let shape = Shape {
            np: rng.random_range(1..=self.max_places),
            nt: rng.random_range(1..=self.max_transitions),
        };
        let mut pre = alloc::vec![alloc::vec![false; shape.nt]; shape.np];
        let mut post = alloc::vec![alloc::vec![false; shape.nt]; shape.np];
        let marked: Vec<bool> = (0..shape.np).map(|_| rng.random_bool(0.5)).collect();
        for p in 0..shape.np {
            for t in 0..shape.nt {
                pre[p][t] = rng.random_bool(0.35);
                post[p][t] = rng.random_bool(0.35);
            }
        }
        for t in 0..shape.nt {
            if pre.iter().all(|row| !row[t]) {
                pre[rng.random_range(0..shape.np)][t] = true;
            }
        }
        shape.decode(shape.encode(&pre, &post, &marked))
    }
}

impl Iterator for Sample {
    type Item = Net;

    fn next(&mut self) -> Option<Net> {
        if self.remaining == 0 {
            return None;
        }
        loop {
            let net = self.draw();
            if contact_free(&net) {
                self.remaining -= 1;
                return Some(net);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_place_one_transition() {
        let nets: Vec<Net> = exhaustive(1, 1).collect();
        // p -> t with optional t -> p, p marked or not
        assert_eq!(nets.len(), 4);
    }

    #[test]
    fn zero_bounds_give_nothing() {
        assert_eq!(exhaustive(0, 3).count(), 0);
        assert_eq!(exhaustive(3, 0).count(), 0);
        assert_eq!(sample(0, 3, 1, 10).count(), 0);
    }

    #[test]
    fn isomorphic_copies_are_dropped() {
        // two places, one transition consuming from exactly one of them
        let nets: Vec<Net> = exhaustive(2, 1)
            .filter(|n| n.place_count() == 2)
            .filter(|n| n.pre(0).len() == 1 && n.post(0).is_empty() && n.initial().is_empty())
            .collect();
        assert_eq!(nets.len(), 1);
    }

    #[test]
    fn enumerated_nets_are_valid_and_contact_free() {
        for net in exhaustive(2, 2) {
            assert!(net.validate(true).is_empty());
            assert!(contact_free(&net));
        }
    }

    #[test]
    fn samples_are_reproducible() {
        let a: Vec<Net> = sample(4, 4, 7, 50).collect();
        let b: Vec<Net> = sample(4, 4, 7, 50).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        let c: Vec<Net> = sample(4, 4, 8, 50).collect();
        assert_ne!(a, c);
        for net in &a {
            assert!(net.place_count() <= 4 && net.transition_count() <= 4);
            assert!(contact_free(net));
        }
    }

    #[test]
    fn permutation_lists() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(1), [[0]]);
    }
}

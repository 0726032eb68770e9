//! Planarity through the interlacement orbit: `F` is planar exactly when
//! some Euler system has a bipartite interlacement graph.

use std::collections::{HashSet, VecDeque};

use super::{euler_system, interlacement, FourRegularGraph};
use crate::simple_graph::canonical_key_of_masks;

/// Distinct interlacement graphs visited before giving up.
pub const DEFAULT_PLANARITY_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    Nonplanar,
    BudgetExceeded,
}

impl std::fmt::Display for Planarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Planarity::Planar => "yes",
            Planarity::Nonplanar => "no",
            Planarity::BudgetExceeded => "budget_exceeded",
        })
    }
}

/// Breadth-first search over simple local complements of `I(C)`.
///
/// Local complementation acts separately on each component of `I(C)`, so
/// each component is searched on its own and `cap` bounds the total number
/// of distinct states. States on at most 8 vertices are deduplicated up to
/// isomorphism; larger ones by their labelled adjacency. Components on more
/// than 64 vertices report [`Planarity::BudgetExceeded`].
pub fn is_planar(g: &FourRegularGraph, cap: usize) -> Planarity {
    let i = interlacement(g, &euler_system(g));
    let mut budget = cap;
    for comp in i.components() {
        if comp.len() <= 2 {
            continue;
        }
        let Some(masks) = i.induced(&comp).masks() else {
            return Planarity::BudgetExceeded;
        };
        match search(masks, &mut budget) {
            Some(true) => {}
            Some(false) => return Planarity::Nonplanar,
            None => return Planarity::BudgetExceeded,
        }
    }
    Planarity::Planar
}

fn key(masks: &[u64]) -> Vec<u64> {
    if masks.len() <= 8 {
        vec![canonical_key_of_masks(masks)]
    } else {
        masks.to_vec()
    }
}

fn search(start: Vec<u64>, budget: &mut usize) -> Option<bool> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(&start));
    queue.push_back(start);
    while let Some(m) = queue.pop_front() {
        if bipartite(&m) {
            return Some(true);
        }
        for v in 0..m.len() {
            let next = local_complement(&m, v);
            let k = key(&next);
            if seen.contains(&k) {
                continue;
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            seen.insert(k);
            queue.push_back(next);
        }
    }
    Some(false)
}

fn local_complement(m: &[u64], v: usize) -> Vec<u64> {
    let nb = m[v];
    let mut out = m.to_vec();
    let mut rest = nb;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out[w] ^= nb & !(1u64 << w);
    }
    out
}

fn bipartite(m: &[u64]) -> bool {
    let n = m.len();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let mut rest = m[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

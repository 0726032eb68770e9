//! Detachment and the cut moves: connected sum, separation, balanced mutation.

use super::{half_edge, vertex_of, EdgeId, Endpoint, FourRegularGraph, HalfEdge, Pairing, Transition};
use crate::error::{Error, Result};

/// Detaches every vertex with `Some(pairing)`, splicing its half-edges
/// together along that pairing. Returns the remaining graph (kept vertices
/// in their original order) and the number of vertex-free closed arcs.
pub fn detach_vertices(g: &FourRegularGraph, pairings: &[Option<Pairing>]) -> (FourRegularGraph, usize) {
    assert_eq!(pairings.len(), g.vertex_count());
    let removed = |h: HalfEdge| pairings[vertex_of(h)].is_some();
    let mut new_index = vec![usize::MAX; g.vertex_count()];
    let mut names = Vec::new();
    for (v, p) in pairings.iter().enumerate() {
        if p.is_none() {
            new_index[v] = names.len();
            names.push(g.name(v).to_string());
        }
    }
    let remap = |h: HalfEdge| half_edge(new_index[vertex_of(h)], super::slot_of(h));

    let mut used = vec![false; 4 * g.vertex_count()];
    let mut edges = Vec::new();
    for &[a, b] in g.edges() {
        for (h, x) in [(a, b), (b, a)] {
            if removed(h) || used[h] {
                continue;
            }
            // Walk from the kept end `h` through removed vertices until the
            // path re-emerges at a kept half-edge.
            let mut x = x;
            while removed(x) {
                used[x] = true;
                let y = half_edge(vertex_of(x), pairings[vertex_of(x)].unwrap().partner(super::slot_of(x)));
                used[y] = true;
                x = g.mate(y);
            }
            used[h] = true;
            used[x] = true;
            edges.push([remap(h), remap(x)]);
        }
    }
    let mut free = 0;
    for start in 0..used.len() {
        if used[start] {
            continue;
        }
        free += 1;
        let mut x = start;
        while !used[x] {
            used[x] = true;
            let y = half_edge(vertex_of(x), pairings[vertex_of(x)].unwrap().partner(super::slot_of(x)));
            used[y] = true;
            x = g.mate(y);
        }
    }
    (FourRegularGraph::from_half_edges(names, edges), free)
}

/// `F_t`: removes the vertex of `t`, joining its half-edges in the pairs of `t`.
pub fn detachment(g: &FourRegularGraph, t: Transition) -> FourRegularGraph {
    detachment_with_free_loops(g, t).0
}

/// As [`detachment`], also reporting how many vertex-free closed arcs were discarded.
pub fn detachment_with_free_loops(g: &FourRegularGraph, t: Transition) -> (FourRegularGraph, usize) {
    let mut p = vec![None; g.vertex_count()];
    p[t.vertex] = Some(t.pairing);
    detach_vertices(g, &p)
}

/// How the four free half-edges are rejoined when two edges are cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMatching {
    /// `e1 = {a1,b1}`, `e2 = {a2,b2}` become `{a1,a2}`, `{b1,b2}`.
    Straight,
    /// They become `{a1,b2}`, `{b1,a2}`.
    Crossed,
}

/// Rejoins edges `e1` and `e2` of one graph according to `matching`; the
/// new edges take the places of `e1` and `e2` in the edge list.
pub fn rejoin(g: &FourRegularGraph, e1: EdgeId, e2: EdgeId, matching: SumMatching) -> Result<FourRegularGraph> {
    check_edge(g, e1)?;
    check_edge(g, e2)?;
    if e1 == e2 {
        return Err(Error::input("the two edges must differ"));
    }
    let [a1, b1] = g.edge(e1);
    let [a2, b2] = g.edge(e2);
    let (n1, n2) = match matching {
        SumMatching::Straight => ([a1, a2], [b1, b2]),
        SumMatching::Crossed => ([a1, b2], [b1, a2]),
    };
    let mut edges = g.edges().to_vec();
    edges[e1] = n1;
    edges[e2] = n2;
    Ok(FourRegularGraph::from_half_edges(g.names().to_vec(), edges))
}

fn check_edge(g: &FourRegularGraph, e: EdgeId) -> Result<()> {
    if e >= g.edge_count() {
        return Err(Error::input(format!("edge {e} not found")));
    }
    Ok(())
}

/// Connected sum of `g1` and `g2` along `e1 ∈ g1`, `e2 ∈ g2`. The result
/// lists `g1`'s vertices first; `e2` is renumbered by `g1.edge_count()`.
pub fn connected_sum(
    g1: &FourRegularGraph,
    e1: EdgeId,
    g2: &FourRegularGraph,
    e2: EdgeId,
    matching: SumMatching,
) -> Result<FourRegularGraph> {
    check_edge(g1, e1)?;
    check_edge(g2, e2)?;
    let union = g1.disjoint_union(g2)?;
    rejoin(&union, e1, g1.edge_count() + e2, matching)
}

/// Cuts the 2-edge cut `{e1, e2}` and reconnects each side to itself.
pub fn separation(g: &FourRegularGraph, e1: EdgeId, e2: EdgeId) -> Result<FourRegularGraph> {
    check_edge(g, e1)?;
    check_edge(g, e2)?;
    if e1 == e2 {
        return Err(Error::input("the two edges must differ"));
    }
    let side = components_without(g, &[e1, e2]);
    let [a1, b1] = g.edge(e1);
    let [a2, b2] = g.edge(e2);
    let s = |h: HalfEdge| side[vertex_of(h)];
    let is_cut = s(a1) != s(b1) && s(a2) != s(b2) && {
        let mut x = [s(a1), s(b1)];
        let mut y = [s(a2), s(b2)];
        x.sort_unstable();
        y.sort_unstable();
        x == y
    };
    if !is_cut {
        return Err(Error::input(format!("edges {e1} and {e2} do not form a 2-edge cut")));
    }
    let matching = if s(a1) == s(a2) { SumMatching::Straight } else { SumMatching::Crossed };
    rejoin(g, e1, e2, matching)
}

/// Component label of every vertex once the listed edges are removed.
fn components_without(g: &FourRegularGraph, cut: &[EdgeId]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for slot in 0..4 {
                let h = half_edge(v, slot);
                if cut.contains(&g.edge_of(h)) {
                    continue;
                }
                let w = vertex_of(g.mate(h));
                if label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Two of the four edges of a 4-edge cut, grouped together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutPair(pub EdgeId, pub EdgeId);

/// How the half-edges of each cut pair are rejoined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reattachment {
    /// Every edge stays as it is.
    Identity,
    /// In each pair the two far-side half-edges trade places.
    Swap,
    /// Explicit new edges; each must reuse the half-edges of one pair and cross the cut.
    Explicit(Vec<(Endpoint, Endpoint)>),
}

/// Balanced mutation across the 4-edge cut formed by the two pairs.
///
/// The sides are found by 2-colouring the components left after removing
/// the four edges; every cut edge must join the two colours.
pub fn balanced_mutation(g: &FourRegularGraph, cut: [CutPair; 2], reattachment: &Reattachment) -> Result<FourRegularGraph> {
    let ids = [cut[0].0, cut[0].1, cut[1].0, cut[1].1];
    for &e in &ids {
        check_edge(g, e)?;
    }
    for i in 0..4 {
        if ids[i + 1..].contains(&ids[i]) {
            return Err(Error::input("the four cut edges must be distinct"));
        }
    }
    let side = cut_sides(g, &ids)?;
    // Orient each cut edge as (near, far) with `near` on side 0.
    let oriented: Vec<[HalfEdge; 2]> = ids
        .iter()
        .map(|&e| {
            let [a, b] = g.edge(e);
            if side[vertex_of(a)] == 0 {
                [a, b]
            } else {
                [b, a]
            }
        })
        .collect();
    let new_edges: Vec<[HalfEdge; 2]> = match reattachment {
        Reattachment::Identity => oriented.clone(),
        Reattachment::Swap => vec![
            [oriented[0][0], oriented[1][1]],
            [oriented[1][0], oriented[0][1]],
            [oriented[2][0], oriented[3][1]],
            [oriented[3][0], oriented[2][1]],
        ],
        Reattachment::Explicit(list) => {
            if list.len() != 4 {
                return Err(Error::input("an explicit reattachment lists four edges"));
            }
            let mut out = Vec::new();
            for (pair, chunk) in list.chunks(2).enumerate() {
                let mut pool: Vec<HalfEdge> = oriented[2 * pair..2 * pair + 2].iter().flatten().copied().collect();
                pool.sort_unstable();
                let mut got: Vec<HalfEdge> = chunk.iter().flat_map(|&(a, b)| [a.half_edge(), b.half_edge()]).collect();
                got.sort_unstable();
                if got != pool {
                    return Err(Error::input(format!("reattachment of pair {pair} must reuse exactly its four half-edges")));
                }
                for &(a, b) in chunk {
                    if side[a.vertex] == side[b.vertex] {
                        return Err(Error::input("reattachment creates an edge that does not cross the cut"));
                    }
                    out.push([a.half_edge(), b.half_edge()]);
                }
            }
            out
        }
    };
    let mut edges = g.edges().to_vec();
    for (&e, &ne) in ids.iter().zip(&new_edges) {
        edges[e] = ne;
    }
    Ok(FourRegularGraph::from_half_edges(g.names().to_vec(), edges))
}

/// Side (0 or 1) of every vertex for a 4-edge cut; errors if the edges do not form one.
fn cut_sides(g: &FourRegularGraph, ids: &[EdgeId; 4]) -> Result<Vec<u8>> {
    let comp = components_without(g, ids);
    let k = comp.iter().max().map_or(0, |m| m + 1);
    let mut color = vec![u8::MAX; k];
    let adj: Vec<(usize, usize)> = ids
        .iter()
        .map(|&e| {
            let [a, b] = g.edge(e);
            (comp[vertex_of(a)], comp[vertex_of(b)])
        })
        .collect();
    for &(start, _) in &adj {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &(x, y) in &adj {
                for (p, q) in [(x, y), (y, x)] {
                    if p != c {
                        continue;
                    }
                    if color[q] == u8::MAX {
                        color[q] = 1 - color[c];
                        stack.push(q);
                    } else if color[q] == color[c] {
                        return Err(Error::input("the four edges do not form an edge cut"));
                    }
                }
            }
        }
    }
    Ok(comp.into_iter().map(|c| if color[c] == u8::MAX { 0 } else { color[c] }).collect())
}

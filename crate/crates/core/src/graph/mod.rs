//! The half-edge model of 4-regular graphs.
//!
//! Every vertex owns four slots `0..4`; half-edge `4 * v + s` sits in slot
//! `s` of vertex `v`. An edge is a pair of distinct half-edges, so loops use
//! two slots of one vertex and parallel edges are unrestricted.
//!
//! The three transitions at a vertex are indexed globally:
//! `t0 = {01|23}`, `t1 = {02|13}`, `t2 = {03|12}`.

mod circuits;
mod moves;
mod orientation;
mod planar;
mod touch;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, GraphError, Result};

pub use circuits::{
    count_circuits, euler_system, interlacement, kappa_transform, trace_partition, transition_labels,
    Circuit, CircuitPartition, EulerSystem, LabelKind, TransitionLabels,
};
pub(crate) use circuits::add_interlacements;
pub use moves::{
    balanced_mutation, connected_sum, detach_vertices, detachment, detachment_with_free_loops, rejoin, separation,
    CutPair, Reattachment, SumMatching,
};
pub use orientation::{balanced_orientation, BalancedOrientation, HalfEdgeRole};
pub use planar::{is_planar, Planarity, DEFAULT_PLANARITY_CAP};
pub use touch::{touch_graph, TouchGraph};

/// Index of a half-edge: `4 * vertex + slot`.
pub type HalfEdge = usize;

/// Index of an edge in a graph's edge list.
pub type EdgeId = usize;

#[inline]
pub fn half_edge(vertex: usize, slot: u8) -> HalfEdge {
    4 * vertex + slot as usize
}

#[inline]
pub fn vertex_of(h: HalfEdge) -> usize {
    h / 4
}

#[inline]
pub fn slot_of(h: HalfEdge) -> u8 {
    (h % 4) as u8
}

/// One of the three ways to split the four slots of a vertex into two pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pairing {
    /// `{01|23}`
    P0,
    /// `{02|13}`
    P1,
    /// `{03|12}`
    P2,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::P0, Pairing::P1, Pairing::P2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// The slot paired with `slot`.
    #[inline]
    pub fn partner(self, slot: u8) -> u8 {
        slot ^ (self as u8 + 1)
    }

    /// The pairing in which slots `a != b` share a pair.
    pub fn joining(a: u8, b: u8) -> Self {
        debug_assert!(a != b && a < 4 && b < 4);
        Self::from_index(((a ^ b) - 1) as usize).expect("distinct slots")
    }

    /// The two pairings other than `self`, in index order.
    pub fn others(self) -> [Pairing; 2] {
        let mut it = Self::ALL.into_iter().filter(|&p| p != self);
        [it.next().unwrap(), it.next().unwrap()]
    }

    /// The pairing differing from both arguments (which must differ).
    pub fn third(a: Pairing, b: Pairing) -> Pairing {
        debug_assert_ne!(a, b);
        Self::from_index(3 - a.index() - b.index()).unwrap()
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.index())
    }
}

/// A transition: a vertex together with a pairing of its slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub vertex: usize,
    pub pairing: Pairing,
}

impl Transition {
    pub fn new(vertex: usize, pairing: Pairing) -> Self {
        Self { vertex, pairing }
    }

    /// Ground-set index in the `(vertex, pairing)` order used by transition matroids.
    pub fn ground_index(self) -> usize {
        3 * self.vertex + self.pairing.index()
    }

    pub fn from_ground_index(i: usize) -> Self {
        Self::new(i / 3, Pairing::from_index(i % 3).unwrap())
    }
}

/// One transition per vertex, stored by vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transversal(Vec<Pairing>);

impl Transversal {
    pub fn new(pairings: Vec<Pairing>) -> Self {
        Self(pairings)
    }

    pub fn uniform(n: usize, p: Pairing) -> Self {
        Self(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, v: usize) -> Pairing {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, p: Pairing) {
        self.0[v] = p;
    }

    pub fn with(&self, v: usize, p: Pairing) -> Self {
        let mut t = self.clone();
        t.0[v] = p;
        t
    }

    pub fn pairings(&self) -> &[Pairing] {
        &self.0
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.0.iter().enumerate().map(|(v, &p)| Transition::new(v, p))
    }

    /// Ground indices of `τ(P)` in the transition matroid.
    pub fn ground_indices(&self) -> Vec<usize> {
        self.transitions().map(Transition::ground_index).collect()
    }

    /// The transversal whose base-3 digit string (vertex 0 most significant) is `index`.
    pub fn from_index(n: usize, mut index: u64) -> Self {
        let mut p = vec![Pairing::P0; n];
        for v in (0..n).rev() {
            p[v] = Pairing::from_index((index % 3) as usize).unwrap();
            index /= 3;
        }
        Self(p)
    }

    pub fn index(&self) -> u64 {
        self.0.iter().fold(0, |acc, p| acc * 3 + p.index() as u64)
    }

    /// Number of transversals on `n` vertices, if it fits in a `u64`.
    pub fn count(n: usize) -> Option<u64> {
        3u64.checked_pow(u32::try_from(n).ok()?)
    }

    /// Iterates all `3^n` transversals in base-3 order.
    pub fn all(n: usize) -> impl Iterator<Item = Transversal> {
        let total = Self::count(n).expect("too many vertices to enumerate");
        (0..total).map(move |i| Self::from_index(n, i))
    }

    /// True when the two transversals differ at every vertex.
    pub fn disjoint_from(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a != b)
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.index())?;
        }
        Ok(())
    }
}

impl FromStr for Transversal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .and_then(|d| Pairing::from_index(d as usize))
                    .ok_or_else(|| Error::input(format!("bad transversal digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Transversal)
    }
}

/// A half-edge given by vertex name and slot.
pub type NamedEnd<'a> = (&'a str, u8);

/// A `(vertex, slot)` pair naming one half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub vertex: usize,
    pub slot: u8,
}

impl Endpoint {
    pub fn new(vertex: usize, slot: u8) -> Self {
        Self { vertex, slot }
    }

    pub fn half_edge(self) -> HalfEdge {
        half_edge(self.vertex, self.slot)
    }

    pub fn of(h: HalfEdge) -> Self {
        Self::new(vertex_of(h), slot_of(h))
    }
}

/// Checks that `edges` uses every slot of every vertex exactly once.
pub fn validate(names: &[String], edges: &[(Endpoint, Endpoint)]) -> std::result::Result<(), GraphError> {
    let mut seen = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if seen.insert(n.as_str(), i).is_some() {
            return Err(GraphError::DuplicateVertex(n.clone()));
        }
    }
    let name = |v: usize| names.get(v).cloned().unwrap_or_else(|| format!("#{v}"));
    let mut used = vec![false; 4 * names.len()];
    for &(a, b) in edges {
        for e in [a, b] {
            if e.vertex >= names.len() {
                return Err(GraphError::UnknownVertex(name(e.vertex)));
            }
            if e.slot > 3 {
                return Err(GraphError::BadSlot { vertex: name(e.vertex), slot: e.slot });
            }
        }
        if a == b {
            return Err(GraphError::SelfPaired { vertex: name(a.vertex), slot: a.slot });
        }
        for e in [a, b] {
            let h = e.half_edge();
            if used[h] {
                return Err(GraphError::DuplicateSlot { vertex: name(e.vertex), slot: e.slot });
            }
            used[h] = true;
        }
    }
    if let Some(h) = used.iter().position(|&u| !u) {
        return Err(GraphError::UnusedSlot { vertex: name(vertex_of(h)), slot: slot_of(h) });
    }
    Ok(())
}

/// A 4-regular multigraph with loops, in half-edge form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourRegularGraph {
    names: Vec<String>,
    mate: Vec<HalfEdge>,
    edges: Vec<[HalfEdge; 2]>,
    edge_of: Vec<EdgeId>,
}

impl FourRegularGraph {
    pub fn new(names: Vec<String>, edges: Vec<(Endpoint, Endpoint)>) -> Result<Self> {
        validate(&names, &edges)?;
        Ok(Self::from_half_edges(
            names,
            edges.into_iter().map(|(a, b)| [a.half_edge(), b.half_edge()]).collect(),
        ))
    }

    /// Builds from already validated half-edge pairs.
    pub(crate) fn from_half_edges(names: Vec<String>, edges: Vec<[HalfEdge; 2]>) -> Self {
        let mut mate = vec![usize::MAX; 4 * names.len()];
        let mut edge_of = vec![usize::MAX; 4 * names.len()];
        for (i, &[a, b]) in edges.iter().enumerate() {
            mate[a] = b;
            mate[b] = a;
            edge_of[a] = i;
            edge_of[b] = i;
        }
        debug_assert!(mate.iter().all(|&m| m != usize::MAX));
        Self { names, mate, edges, edge_of }
    }

    pub fn empty() -> Self {
        Self::from_half_edges(Vec::new(), Vec::new())
    }

    /// Convenience constructor from `(name, slot)` pairs.
    pub fn from_named_edges<S: AsRef<str>>(names: &[S], edges: &[(NamedEnd, NamedEnd)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let ep = |(n, s): (&str, u8)| {
            index
                .get(n)
                .map(|&v| Endpoint::new(v, s))
                .ok_or_else(|| Error::from(GraphError::UnknownVertex(n.to_string())))
        };
        let edges = edges.iter().map(|&(a, b)| Ok((ep(a)?, ep(b)?))).collect::<Result<Vec<_>>>()?;
        Self::new(names, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mate(&self, h: HalfEdge) -> HalfEdge {
        self.mate[h]
    }

    pub fn edge(&self, e: EdgeId) -> [HalfEdge; 2] {
        self.edges[e]
    }

    pub fn edges(&self) -> &[[HalfEdge; 2]] {
        &self.edges
    }

    pub fn edge_of(&self, h: HalfEdge) -> EdgeId {
        self.edge_of[h]
    }

    pub fn endpoints(&self) -> Vec<(Endpoint, Endpoint)> {
        self.edges.iter().map(|&[a, b]| (Endpoint::of(a), Endpoint::of(b))).collect()
    }

    /// `<name>:t<k>`
    pub fn transition_name(&self, t: Transition) -> String {
        format!("{}:{}", self.names[t.vertex], t.pairing)
    }

    pub fn parse_transition(&self, s: &str) -> Result<Transition> {
        let (name, p) = s
            .rsplit_once(':')
            .ok_or_else(|| Error::input(format!("transition {s:?} lacks ':'")))?;
        let v = self
            .vertex_index(name)
            .ok_or_else(|| Error::from(GraphError::UnknownVertex(name.to_string())))?;
        let pairing = p
            .strip_prefix('t')
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(Pairing::from_index)
            .ok_or_else(|| Error::input(format!("bad pairing {p:?}")))?;
        Ok(Transition::new(v, pairing))
    }

    pub fn parse_transversal(&self, s: &str) -> Result<Transversal> {
        let t: Transversal = s.parse()?;
        if t.len() != self.vertex_count() {
            return Err(Error::input(format!(
                "transversal has {} digits but the graph has {} vertices",
                t.len(),
                self.vertex_count()
            )));
        }
        Ok(t)
    }

    /// Component label for every vertex, labels numbered by first vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(v) = stack.pop() {
                for slot in 0..4 {
                    let w = vertex_of(self.mate(half_edge(v, slot)));
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

    /// `c(F)`
    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Disjoint union; vertex names must not collide.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let mut names = self.names.clone();
        for n in &other.names {
            if self.names.contains(n) {
                return Err(GraphError::DuplicateVertex(n.clone()).into());
            }
            names.push(n.clone());
        }
        let shift = 4 * self.vertex_count();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&[a, b]| [a + shift, b + shift]));
        Ok(Self::from_half_edges(names, edges))
    }

    /// Same vertices and the same edges as unordered half-edge pairs.
    pub fn same_edges(&self, other: &Self) -> bool {
        let norm = |g: &Self| {
            let mut e: Vec<[HalfEdge; 2]> = g.edges.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
            e.sort_unstable();
            e
        };
        self.names == other.names && norm(self) == norm(other)
    }

    /// Renders the `.frg` text form.
    pub fn to_frg(&self) -> String {
        let mut out = String::new();
        for n in &self.names {
            out.push_str(&format!("v {n}\n"));
        }
        for &[a, b] in &self.edges {
            out.push_str(&format!(
                "e {}.{} {}.{}\n",
                self.names[vertex_of(a)],
                slot_of(a),
                self.names[vertex_of(b)],
                slot_of(b)
            ));
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&[a, b]| {
                    [
                        (self.names[vertex_of(a)].clone(), slot_of(a)),
                        (self.names[vertex_of(b)].clone(), slot_of(b)),
                    ]
                })
                .collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let edges: Vec<(NamedEnd, NamedEnd)> = j
            .edges
            .iter()
            .map(|[(a, s), (b, t)]| ((a.as_str(), *s), (b.as_str(), *t)))
            .collect();
        Self::from_named_edges(&j.vertices, &edges)
    }
}

/// JSON shape of a graph: vertex names plus `[[name, slot], [name, slot]]` edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[(String, u8); 2]>,
}

/// Unvalidated contents of a `.frg` file.
#[derive(Clone, Debug, Default)]
pub struct FrgDocument {
    pub names: Vec<String>,
    pub edges: Vec<(Endpoint, Endpoint)>,
}

impl FrgDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = FrgDocument::default();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut pending: Vec<(usize, String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("v") => {
                    let name = parts
                        .next()
                        .ok_or_else(|| Error::input(format!("line {}: vertex name missing", lineno + 1)))?;
                    if parts.next().is_some() {
                        return Err(Error::input(format!("line {}: trailing tokens", lineno + 1)));
                    }
                    if index.insert(name.to_string(), doc.names.len()).is_some() {
                        return Err(GraphError::DuplicateVertex(name.to_string()).into());
                    }
                    doc.names.push(name.to_string());
                }
                Some("e") => {
                    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(Error::input(format!("line {}: expected `e <v>.<s> <v>.<s>`", lineno + 1)));
                    };
                    pending.push((lineno + 1, a.to_string(), b.to_string()));
                }
                Some(other) => {
                    return Err(Error::input(format!("line {}: unknown record {other:?}", lineno + 1)));
                }
                None => unreachable!(),
            }
        }
        let endpoint = |lineno: usize, tok: &str| -> Result<Endpoint> {
            let (name, slot) = tok
                .rsplit_once('.')
                .ok_or_else(|| Error::input(format!("line {lineno}: endpoint {tok:?} lacks '.'")))?;
            let v = *index
                .get(name)
                .ok_or_else(|| Error::from(GraphError::UnknownVertex(name.to_string())))?;
            let s: u8 = slot
                .parse()
                .map_err(|_| Error::input(format!("line {lineno}: bad slot {slot:?}")))?;
            Ok(Endpoint::new(v, s))
        };
        for (lineno, a, b) in pending {
            doc.edges.push((endpoint(lineno, &a)?, endpoint(lineno, &b)?));
        }
        Ok(doc)
    }

    pub fn validate(&self) -> std::result::Result<(), GraphError> {
        validate(&self.names, &self.edges)
    }

    pub fn into_graph(self) -> Result<FourRegularGraph> {
        FourRegularGraph::new(self.names, self.edges)
    }
}

impl FromStr for FourRegularGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FrgDocument::parse(s)?.into_graph()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_loops() -> FourRegularGraph {
        "v v\ne v.0 v.1\ne v.2 v.3\n".parse().unwrap()
    }

    #[test]
    fn two_loop_vertex_is_valid() {
        let g = two_loops();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.component_count(), 1);
        assert_eq!(g.mate(0), 1);
        assert_eq!(g.mate(3), 2);
    }

    #[test]
    fn single_loop_leaves_slots_unused() {
        let doc = FrgDocument::parse("v v\ne v.0 v.1\n").unwrap();
        assert_eq!(
            doc.validate(),
            Err(GraphError::UnusedSlot { vertex: "v".into(), slot: 2 })
        );
    }

    #[test]
    fn self_paired_endpoint_is_rejected() {
        let doc = FrgDocument::parse("v v\ne v.0 v.0\ne v.1 v.2\n").unwrap();
        assert_eq!(
            doc.validate(),
            Err(GraphError::SelfPaired { vertex: "v".into(), slot: 0 })
        );
    }

    #[test]
    fn duplicate_slot_is_rejected() {
        let doc = FrgDocument::parse("v v\ne v.0 v.1\ne v.1 v.2\ne v.2 v.3\n").unwrap();
        assert_eq!(
            doc.validate(),
            Err(GraphError::DuplicateSlot { vertex: "v".into(), slot: 1 })
        );
    }

    #[test]
    fn pairing_partners_and_joining() {
        for p in Pairing::ALL {
            for s in 0..4u8 {
                let t = p.partner(s);
                assert_ne!(s, t);
                assert_eq!(p.partner(t), s);
                assert_eq!(Pairing::joining(s, t), p);
            }
        }
        assert_eq!(Pairing::P0.partner(0), 1);
        assert_eq!(Pairing::P1.partner(0), 2);
        assert_eq!(Pairing::P2.partner(0), 3);
        assert_eq!(Pairing::P2.partner(1), 2);
        assert_eq!(Pairing::third(Pairing::P0, Pairing::P2), Pairing::P1);
    }

    #[test]
    fn transversal_index_round_trip() {
        for i in 0..81 {
            let t = Transversal::from_index(4, i);
            assert_eq!(t.index(), i);
            assert_eq!(t.to_string().parse::<Transversal>().unwrap(), t);
        }
        assert_eq!(Transversal::from_index(2, 5).to_string(), "12");
    }

    #[test]
    fn frg_and_json_round_trip() {
        let g = two_loops();
        let again: FourRegularGraph = g.to_frg().parse().unwrap();
        assert_eq!(g, again);
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back = FourRegularGraph::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn transition_names() {
        let g = two_loops();
        let t = g.parse_transition("v:t2").unwrap();
        assert_eq!(t, Transition::new(0, Pairing::P2));
        assert_eq!(g.transition_name(t), "v:t2");
        assert!(g.parse_transition("w:t0").is_err());
        assert!(g.parse_transition("v:t3").is_err());
    }
}

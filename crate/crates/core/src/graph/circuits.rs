//! Circuit tracing, Euler systems, κ-transforms and interlacement.

use std::fmt;

use super::{half_edge, slot_of, vertex_of, FourRegularGraph, HalfEdge, Pairing, Transition, Transversal};
use crate::error::{Error, Result};
use crate::simple_graph::SimpleGraph;

/// A closed walk stored as `[leave0, arrive0, leave1, arrive1, ...]`.
///
/// Each `(leave_i, arrive_i)` is one edge traversed in order; `arrive_i` and
/// `leave_{i+1}` sit at the same vertex and are paired by the transition
/// the walk uses there. Stored circuits are canonical: the least sequence
/// among all even rotations and the reversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit(Vec<HalfEdge>);

impl Circuit {
    pub(crate) fn canonical(seq: Vec<HalfEdge>) -> Self {
        debug_assert!(seq.len().is_multiple_of(2) && !seq.is_empty());
        let rev: Vec<HalfEdge> = seq.iter().rev().copied().collect();
        let mut best: Option<Vec<HalfEdge>> = None;
        for base in [&seq, &rev] {
            for r in (0..base.len()).step_by(2) {
                let cand: Vec<HalfEdge> = base[r..].iter().chain(&base[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Circuit(best.unwrap())
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.0
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The vertices passed through, in traversal order.
    pub fn vertex_word(&self) -> Vec<usize> {
        self.0.iter().skip(1).step_by(2).map(|&h| vertex_of(h)).collect()
    }

    /// Each pass through a vertex as `(arrive, leave)` half-edges.
    pub fn visits(&self) -> impl Iterator<Item = (HalfEdge, HalfEdge)> + '_ {
        let n = self.0.len();
        (1..n).step_by(2).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }
}

/// The circuits traced by a transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitPartition {
    transversal: Transversal,
    circuits: Vec<Circuit>,
}

impl CircuitPartition {
    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// `|P|`
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Index of the circuit containing each half-edge.
    pub fn circuit_of_half_edges(&self) -> Vec<usize> {
        let total: usize = self.circuits.iter().map(|c| c.0.len()).sum();
        let mut out = vec![usize::MAX; total];
        for (i, c) in self.circuits.iter().enumerate() {
            for &h in &c.0 {
                out[h] = i;
            }
        }
        out
    }
}

/// Traces the circuit partition determined by `t`.
pub fn trace_partition(g: &FourRegularGraph, t: &Transversal) -> CircuitPartition {
    assert_eq!(t.len(), g.vertex_count(), "transversal must cover every vertex");
    let mut seen = vec![false; 4 * g.vertex_count()];
    let mut circuits = Vec::new();
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        let mut seq = Vec::new();
        let mut leave = start;
        loop {
            let arrive = g.mate(leave);
            seen[leave] = true;
            seen[arrive] = true;
            seq.push(leave);
            seq.push(arrive);
            let v = vertex_of(arrive);
            leave = half_edge(v, t.at(v).partner(slot_of(arrive)));
            if leave == start {
                break;
            }
        }
        circuits.push(Circuit::canonical(seq));
    }
    circuits.sort();
    CircuitPartition { transversal: t.clone(), circuits }
}

/// `|P|` without materialising the circuits.
pub fn count_circuits(g: &FourRegularGraph, t: &Transversal) -> usize {
    let mut seen = vec![false; 4 * g.vertex_count()];
    let mut count = 0;
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut leave = start;
        loop {
            let arrive = g.mate(leave);
            seen[leave] = true;
            seen[arrive] = true;
            let v = vertex_of(arrive);
            leave = half_edge(v, t.at(v).partner(slot_of(arrive)));
            if leave == start {
                break;
            }
        }
    }
    count
}

/// A circuit partition with exactly one circuit per connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSystem(CircuitPartition);

impl EulerSystem {
    pub fn from_partition(g: &FourRegularGraph, p: CircuitPartition) -> Result<Self> {
        if p.len() != g.component_count() {
            return Err(Error::input(format!(
                "partition has {} circuits but the graph has {} components",
                p.len(),
                g.component_count()
            )));
        }
        Ok(Self(p))
    }

    pub fn from_transversal(g: &FourRegularGraph, t: &Transversal) -> Result<Self> {
        Self::from_partition(g, trace_partition(g, t))
    }

    pub fn partition(&self) -> &CircuitPartition {
        &self.0
    }

    pub fn transversal(&self) -> &Transversal {
        &self.0.transversal
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.0.circuits
    }

    /// The circuit through vertex `v`.
    pub fn circuit_through(&self, v: usize) -> &Circuit {
        let h = half_edge(v, 0);
        self.0
            .circuits
            .iter()
            .find(|c| c.0.contains(&h))
            .expect("every half-edge lies on a circuit")
    }
}

/// Finds an Euler system by splicing: start from all-`t0` and, while some
/// vertex carries two distinct circuits, switch it to the lowest other
/// pairing (which always merges the two).
pub fn euler_system(g: &FourRegularGraph) -> EulerSystem {
    let target = g.component_count();
    let mut t = Transversal::uniform(g.vertex_count(), Pairing::P0);
    loop {
        let p = trace_partition(g, &t);
        if p.len() == target {
            return EulerSystem(p);
        }
        let owner = p.circuit_of_half_edges();
        let v = (0..g.vertex_count())
            .find(|&v| (1..4).any(|s| owner[half_edge(v, s)] != owner[half_edge(v, 0)]))
            .expect("a vertex joins two circuits while |P| > c(F)");
        let next = t.at(v).others()[0];
        t.set(v, next);
    }
}

/// `C * v`: reverses the walk between the first and second visits to `v`.
pub fn kappa_transform(g: &FourRegularGraph, c: &EulerSystem, v: usize) -> EulerSystem {
    assert!(v < g.vertex_count(), "vertex out of range");
    let circuit = c.circuit_through(v);
    let s = &circuit.0;
    let visits: Vec<usize> = (1..s.len()).step_by(2).filter(|&i| vertex_of(s[i]) == v).collect();
    let (i1, i2) = (visits[0], visits[1]);
    let mut seq = s[..=i1].to_vec();
    seq.extend(s[i1 + 1..=i2].iter().rev());
    seq.extend_from_slice(&s[i2 + 1..]);

    let pairing = Pairing::joining(slot_of(s[i1]), slot_of(s[i2]));
    let transversal = c.transversal().with(v, pairing);
    let replaced = Circuit::canonical(seq);
    let mut circuits: Vec<Circuit> = c
        .circuits()
        .iter()
        .map(|x| if x == circuit { replaced.clone() } else { x.clone() })
        .collect();
    circuits.sort();
    let out = EulerSystem(CircuitPartition { transversal, circuits });
    debug_assert_eq!(out.0, trace_partition(g, out.transversal()));
    out
}

/// φ / χ / ψ relative to an Euler system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    Phi,
    Chi,
    Psi,
}

impl LabelKind {
    pub const ALL: [LabelKind; 3] = [LabelKind::Phi, LabelKind::Chi, LabelKind::Psi];
}

impl fmt::Display for LabelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelKind::Phi => "phi",
            LabelKind::Chi => "chi",
            LabelKind::Psi => "psi",
        })
    }
}

/// Per-vertex pairings carrying each label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionLabels {
    labels: Vec<[Pairing; 3]>,
}

impl TransitionLabels {
    pub fn pairing(&self, v: usize, kind: LabelKind) -> Pairing {
        self.labels[v][kind as usize]
    }

    pub fn transition(&self, v: usize, kind: LabelKind) -> Transition {
        Transition::new(v, self.pairing(v, kind))
    }

    pub fn kind_of(&self, t: Transition) -> LabelKind {
        let i = self.labels[t.vertex].iter().position(|&p| p == t.pairing).unwrap();
        LabelKind::ALL[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// The transversal taking label `pick(v)` at each vertex.
    pub fn transversal(&self, pick: impl Fn(usize) -> LabelKind) -> Transversal {
        Transversal::new((0..self.labels.len()).map(|v| self.pairing(v, pick(v))).collect())
    }
}

/// Labels every transition: φ is the pairing the circuit uses, χ the other
/// pairing matching arrivals with departures, ψ the pairing that joins the
/// two arrivals (and the two departures).
pub fn transition_labels(g: &FourRegularGraph, c: &EulerSystem) -> TransitionLabels {
    let mut visits: Vec<Vec<(HalfEdge, HalfEdge)>> = vec![Vec::new(); g.vertex_count()];
    for circuit in c.circuits() {
        for (a, l) in circuit.visits() {
            visits[vertex_of(a)].push((a, l));
        }
    }
    let labels = visits
        .into_iter()
        .map(|vs| {
            let [(a1, l1), (a2, l2)] = [vs[0], vs[1]];
            [
                Pairing::joining(slot_of(a1), slot_of(l1)),
                Pairing::joining(slot_of(a1), slot_of(l2)),
                Pairing::joining(slot_of(a1), slot_of(a2)),
            ]
        })
        .collect();
    TransitionLabels { labels }
}

/// `I(C)`: vertices adjacent when they alternate `v…w…v…w` on a circuit.
pub fn interlacement(g: &FourRegularGraph, c: &EulerSystem) -> SimpleGraph {
    let mut out = SimpleGraph::edgeless(g.names().to_vec());
    for circuit in c.circuits() {
        let word = circuit.vertex_word();
        add_interlacements(&mut out, &word);
    }
    out
}

/// Adds every alternating pair of a double occurrence word over vertex indices.
pub(crate) fn add_interlacements(h: &mut SimpleGraph, word: &[usize]) {
    let mut first = std::collections::HashMap::new();
    let mut spans = Vec::new();
    for (i, &v) in word.iter().enumerate() {
        if let Some(j) = first.insert(v, i) {
            spans.push((v, j, i));
        }
    }
    for (x, &(v, a, b)) in spans.iter().enumerate() {
        for &(w, c, d) in &spans[x + 1..] {
            let c_in = a < c && c < b;
            let d_in = a < d && d < b;
            if c_in != d_in {
                h.add_edge(v, w);
            }
        }
    }
}

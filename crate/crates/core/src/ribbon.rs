//! Ribbon graphs, their medial 4-regular graphs with the δ and ε
//! partitions, twisted duals, surface data and the Bollobás–Riordan
//! polynomial.
//!
//! Ribbon half-edge `2e + end` is one end of edge `e`. Its medial vertex is
//! `e`, with corner slots `0 = (2e, 0)`, `1 = (2e, 1)`, `2 = (2e+1, 0)`,
//! `3 = (2e+1, 1)`; corner `(h, 1)` is joined to corner `(next(h), 0)` where
//! `next` is the rotation successor. So δ is always `t0`, and ε is `t2` on
//! untwisted edges and `t1` on twisted ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{
    count_circuits, detach_vertices, half_edge, slot_of, trace_partition, vertex_of, FourRegularGraph, HalfEdge,
    Pairing, Transversal,
};
use crate::invariants::Enumeration;
use crate::matroid::{cycle_matroid, BinaryMatroid};
use crate::par;
use crate::poly::SparsePoly;

/// Largest edge count [`bollobas_riordan`] sums over.
pub const BR_MAX_EDGES: usize = 20;

/// A rotation system with edge signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    half_names: Vec<String>,
    rotation: Vec<Vec<usize>>,
    sign: Vec<i8>,
    vertex_of: Vec<usize>,
    position: Vec<usize>,
}

fn edge_letter(i: usize, count: usize) -> String {
    if count <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

impl RibbonGraph {
    pub fn new(
        vertex_names: Vec<String>,
        rotation: Vec<Vec<usize>>,
        edge_names: Vec<String>,
        half_names: Vec<String>,
        sign: Vec<i8>,
    ) -> Result<Self> {
        let m = sign.len();
        if vertex_names.len() != rotation.len() || edge_names.len() != m || half_names.len() != 2 * m {
            return Err(Error::input("inconsistent ribbon graph sizes"));
        }
        if let Some(s) = sign.iter().find(|s| s.abs() != 1) {
            return Err(Error::input(format!("edge sign {s} is not ±1")));
        }
        let mut vertex_of = vec![usize::MAX; 2 * m];
        let mut position = vec![0; 2 * m];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if h >= 2 * m {
                    return Err(Error::input(format!("half-edge {h} out of range")));
                }
                if vertex_of[h] != usize::MAX {
                    return Err(Error::input(format!("half-edge {} appears twice", half_names[h])));
                }
                vertex_of[h] = v;
                position[h] = i;
            }
        }
        if let Some(h) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::input(format!("half-edge {} is in no rotation", half_names[h])));
        }
        Ok(Self { vertex_names, edge_names, half_names, rotation, sign, vertex_of, position })
    }

    /// Default names: vertices `v0, v1, …`, edges `a, b, …`, halves `a.0`, `a.1`.
    pub fn from_rotations(rotation: Vec<Vec<usize>>, sign: Vec<i8>) -> Result<Self> {
        let m = sign.len();
        let edge_names: Vec<String> = (0..m).map(|e| edge_letter(e, m)).collect();
        let half_names = (0..2 * m).map(|h| format!("{}.{}", edge_names[h / 2], h % 2)).collect();
        let vertex_names = (0..rotation.len()).map(|v| format!("v{v}")).collect();
        Self::new(vertex_names, rotation, edge_names, half_names, sign)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sign.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.sign[e]
    }

    /// The vertices at the two ends of `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    /// Rotation successor of ribbon half-edge `h`.
    pub fn next(&self, h: usize) -> usize {
        let rot = &self.rotation[self.vertex_of[h]];
        rot[(self.position[h] + 1) % rot.len()]
    }

    pub fn prev(&self, h: usize) -> usize {
        let rot = &self.rotation[self.vertex_of[h]];
        rot[(self.position[h] + rot.len() - 1) % rot.len()]
    }

    pub fn isolated_vertices(&self) -> usize {
        self.rotation.iter().filter(|r| r.is_empty()).count()
    }

    /// Component index of every vertex of the underlying graph.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in 0..self.edge_count() {
            let (a, b) = self.ends(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut label = HashMap::new();
        (0..n)
            .map(|v| {
                let r = find(&mut parent, v);
                let k = label.len();
                *label.entry(r).or_insert(k)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Cycle matroid of the underlying graph, one element per edge.
    pub fn cycle_matroid(&self) -> BinaryMatroid {
        let ends: Vec<(usize, usize)> = (0..self.edge_count()).map(|e| self.ends(e)).collect();
        cycle_matroid(self.vertex_count(), &ends, self.edge_names.clone()).expect("ends are vertices")
    }

    /// Reverses the rotation at `v` and toggles the signs of its non-loop edges.
    pub fn flip_vertex(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.rotation[v].reverse();
        for e in 0..self.edge_count() {
            let (a, b) = self.ends(e);
            if (a == v) != (b == v) {
                out.sign[e] = -out.sign[e];
            }
        }
        Self::new(out.vertex_names, out.rotation, out.edge_names, out.half_names, out.sign).expect("still valid")
    }

    /// Equivalent up to rotation shifts, vertex flips and vertex renaming, with
    /// edges matched by name.
    pub fn is_equivalent(&self, other: &Self) -> bool {
        if self.isolated_vertices() != other.isolated_vertices() {
            return false;
        }
        let (a, b) = (medial(self), medial(other));
        designated_equivalent(&a, &b)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, rot) in self.rotation.iter().enumerate() {
            write!(f, "v {}:", self.vertex_names[v])?;
            for &h in rot {
                write!(f, " {}", self.half_names[h])?;
            }
            writeln!(f)?;
        }
        for e in 0..self.edge_count() {
            let s = if self.sign[e] > 0 { "+1" } else { "-1" };
            writeln!(f, "e {} {} {} {s}", self.edge_names[e], self.half_names[2 * e], self.half_names[2 * e + 1])?;
        }
        Ok(())
    }
}

impl FromStr for RibbonGraph {
    type Err = Error;

    /// `v <name>: h1 h2 …` rotation lines and `e <name> <h> <h> <±1>` edge lines.
    fn from_str(text: &str) -> Result<Self> {
        let mut vertices: Vec<(String, Vec<String>)> = Vec::new();
        let mut edges: Vec<(String, String, String, i8)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::input(format!("line {}: cannot read {line:?}", n + 1));
            if let Some(rest) = line.strip_prefix("v ") {
                let (name, rot) = rest.split_once(':').ok_or_else(bad)?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(bad());
                }
                vertices.push((name.to_string(), rot.split_whitespace().map(str::to_string).collect()));
            } else if let Some(rest) = line.strip_prefix("e ") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, h1, h2, s] = parts[..] else {
                    return Err(bad());
                };
                let sign = match s {
                    "+1" | "1" | "+" => 1,
                    "-1" | "-" => -1,
                    _ => return Err(bad()),
                };
                edges.push((name.to_string(), h1.to_string(), h2.to_string(), sign));
            } else {
                return Err(bad());
            }
        }
        let mut half_index: HashMap<String, usize> = HashMap::new();
        let mut half_names = Vec::new();
        let mut edge_names = Vec::new();
        let mut sign = Vec::new();
        for (name, h1, h2, s) in edges {
            if edge_names.contains(&name) {
                return Err(Error::input(format!("edge {name} declared twice")));
            }
            for h in [h1, h2] {
                if half_index.insert(h.clone(), half_names.len()).is_some() {
                    return Err(Error::input(format!("half-edge {h} used by two edges")));
                }
                half_names.push(h);
            }
            edge_names.push(name);
            sign.push(s);
        }
        let mut vertex_names = Vec::new();
        let mut rotation = Vec::new();
        for (name, rot) in vertices {
            if vertex_names.contains(&name) {
                return Err(Error::input(format!("vertex {name} declared twice")));
            }
            let r = rot
                .iter()
                .map(|h| half_index.get(h).copied().ok_or_else(|| Error::input(format!("unknown half-edge {h}"))))
                .collect::<Result<Vec<_>>>()?;
            vertex_names.push(name);
            rotation.push(r);
        }
        Self::new(vertex_names, rotation, edge_names, half_names, sign)
    }
}

/// `F(G)` with its δ and ε transversals. Vertices of `G` without half-edges
/// leave no trace in `F(G)` and are counted separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Medial {
    pub graph: FourRegularGraph,
    pub delta: Transversal,
    pub epsilon: Transversal,
    pub isolated: usize,
}

impl Medial {
    /// The pairing that is neither δ nor ε at every vertex.
    pub fn other(&self) -> Transversal {
        Transversal::new(
            (0..self.delta.len()).map(|v| Pairing::third(self.delta.at(v), self.epsilon.at(v))).collect(),
        )
    }
}

fn corner(h: usize, k: u8) -> HalfEdge {
    half_edge(h / 2, 2 * (h % 2) as u8 + k)
}

pub fn medial(g: &RibbonGraph) -> Medial {
    let m = g.edge_count();
    let edges = (0..2 * m).map(|h| [corner(h, 1), corner(g.next(h), 0)]).collect();
    let graph = FourRegularGraph::from_half_edges(g.edge_names.clone(), edges);
    let epsilon = g.sign.iter().map(|&s| if s > 0 { Pairing::P2 } else { Pairing::P1 }).collect();
    Medial {
        graph,
        delta: Transversal::uniform(m, Pairing::P0),
        epsilon: Transversal::new(epsilon),
        isolated: g.isolated_vertices(),
    }
}

/// Rebuilds the ribbon graph whose vertices are the δ-circuits and whose
/// edges are the vertices of `f`. Each δ-circuit visit enters a band end at
/// corner 0 and leaves at corner 1.
pub fn from_partitions(f: &FourRegularGraph, delta: &Transversal, epsilon: &Transversal) -> Result<RibbonGraph> {
    let n = f.vertex_count();
    if delta.len() != n || epsilon.len() != n {
        return Err(Error::input("transversal length differs from the vertex count"));
    }
    if let Some(v) = (0..n).find(|&v| delta.at(v) == epsilon.at(v)) {
        return Err(Error::input(format!("δ and ε coincide at {}", f.name(v))));
    }
    let p = trace_partition(f, delta);
    // visit[2v + end] = (arrive, leave) slots; end 0 is the δ-pair holding slot 0.
    let mut visit = vec![(0u8, 0u8); 2 * n];
    let mut rotation = Vec::with_capacity(p.len());
    for c in p.circuits() {
        let mut rot = Vec::new();
        for (arrive, leave) in c.visits() {
            let v = vertex_of(arrive);
            let (a, l) = (slot_of(arrive), slot_of(leave));
            let end = usize::from(a != 0 && l != 0);
            visit[2 * v + end] = (a, l);
            rot.push(2 * v + end);
        }
        rotation.push(rot);
    }
    let sign = (0..n)
        .map(|v| {
            let (a1, _) = visit[2 * v];
            let (_, l2) = visit[2 * v + 1];
            if epsilon.at(v).partner(a1) == l2 {
                1
            } else {
                -1
            }
        })
        .collect();
    let half_names = (0..2 * n).map(|h| format!("{}.{}", f.name(h / 2), h % 2)).collect();
    let vertex_names = (0..rotation.len()).map(|v| format!("v{v}")).collect();
    RibbonGraph::new(vertex_names, rotation, f.names().to_vec(), half_names, sign)
}

/// Slot maps at one vertex carrying the pairings `(p1, q1)` to `(p2, q2)`.
fn designated_maps(p1: Pairing, q1: Pairing, p2: Pairing, q2: Pairing) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for perm in permutations4() {
        let keeps = |a: Pairing, b: Pairing| (0..4u8).all(|s| perm[a.partner(s) as usize] == b.partner(perm[s as usize]));
        if keeps(p1, p2) && keeps(q1, q2) {
            out.push(perm);
        }
    }
    out
}

fn permutations4() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                let d = 6u8.wrapping_sub(a + b + c);
                if a != b && a != c && b != c && d < 4 && d != a && d != b && d != c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Searches for per-vertex slot maps (vertices matched by name) drawn from
/// `allowed(v)` that carry the edges of `f1` onto those of `f2`.
pub(crate) fn slot_isomorphic(
    f1: &FourRegularGraph,
    f2: &FourRegularGraph,
    allowed: &dyn Fn(usize, usize) -> Vec<[u8; 4]>,
) -> bool {
    let n = f1.vertex_count();
    if f2.vertex_count() != n {
        return false;
    }
    let Some(to2) = (0..n).map(|v| f2.vertex_index(f1.name(v))).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let options: Vec<Vec<[u8; 4]>> = (0..n).map(|v| allowed(v, to2[v])).collect();
    fn go(
        v: usize,
        f1: &FourRegularGraph,
        f2: &FourRegularGraph,
        to2: &[usize],
        options: &[Vec<[u8; 4]>],
        chosen: &mut Vec<[u8; 4]>,
    ) -> bool {
        if v == to2.len() {
            return true;
        }
        'next: for &perm in &options[v] {
            chosen.push(perm);
            for s in 0..4u8 {
                let h = half_edge(v, s);
                let m = f1.mate(h);
                let w = vertex_of(m);
                if w > v {
                    continue;
                }
                let image = half_edge(to2[v], perm[s as usize]);
                let target = half_edge(to2[w], chosen[w][slot_of(m) as usize]);
                if f2.mate(image) != target {
                    chosen.pop();
                    continue 'next;
                }
            }
            if go(v + 1, f1, f2, to2, options, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(0, f1, f2, &to2, &options, &mut Vec::with_capacity(n))
}

/// Same medial data up to slot relabelings preserving δ and ε.
pub fn designated_equivalent(a: &Medial, b: &Medial) -> bool {
    a.isolated == b.isolated
        && slot_isomorphic(&a.graph, &b.graph, &|v, w| {
            designated_maps(a.delta.at(v), a.epsilon.at(v), b.delta.at(w), b.epsilon.at(w))
        })
}

/// Same 4-regular graph up to arbitrary slot relabeling at each vertex.
pub fn same_underlying_graph(f1: &FourRegularGraph, f2: &FourRegularGraph) -> bool {
    slot_isomorphic(f1, f2, &|_, _| permutations4())
}

/// `f(X)`: boundary curves of the sub-ribbon graph `(V, X)`.
pub fn boundary_components(g: &RibbonGraph, x: &[bool]) -> Result<usize> {
    if x.len() != g.edge_count() {
        return Err(Error::input("edge subset has the wrong length"));
    }
    Ok(boundary_of(&medial(g), x))
}

fn boundary_of(m: &Medial, x: &[bool]) -> usize {
    let pairings: Vec<Option<Pairing>> =
        x.iter().enumerate().map(|(e, &keep)| if keep { None } else { Some(m.delta.at(e)) }).collect();
    let (d, free) = detach_vertices(&m.graph, &pairings);
    let eps = Transversal::new((0..x.len()).filter(|&e| x[e]).map(|e| m.epsilon.at(e)).collect());
    count_circuits(&d, &eps) + free + m.isolated
}

/// True when the medial edges can be directed so that every δ and ε
/// transition is consistent with them.
pub fn orientable(g: &RibbonGraph) -> bool {
    let m = medial(g);
    let f = &m.graph;
    let total = 4 * f.vertex_count();
    let mut color = vec![u8::MAX; total];
    for s in 0..total {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(h) = stack.pop() {
            let v = vertex_of(h);
            let k = slot_of(h);
            let nbrs = [f.mate(h), half_edge(v, m.delta.at(v).partner(k)), half_edge(v, m.epsilon.at(v).partner(k))];
            for x in nbrs {
                if color[x] == u8::MAX {
                    color[x] = 1 - color[h];
                    stack.push(x);
                } else if color[x] == color[h] {
                    return false;
                }
            }
        }
    }
    true
}

/// Orientability from circuit counts alone: `|P_A| ≠ |P_{A−a}|` for every
/// `A` and `a ∈ A`, where `P_A` uses δ on `A` and ε elsewhere.
pub fn orientable_by_partitions(g: &RibbonGraph) -> Result<bool> {
    let m = medial(g);
    let n = g.edge_count();
    if n > 20 {
        return Err(Error::budget("more than 2^20 partitions"));
    }
    let sizes: Vec<usize> = (0..1u64 << n)
        .map(|a| {
            let t = (0..n).map(|v| if a >> v & 1 == 1 { m.delta.at(v) } else { m.epsilon.at(v) }).collect();
            count_circuits(&m.graph, &Transversal::new(t))
        })
        .collect();
    Ok((0..1usize << n).all(|a| (0..n).filter(|v| a >> v & 1 == 1).all(|v| sizes[a] != sizes[a & !(1 << v)])))
}

/// Surface data for one component of `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentSurface {
    pub vertices: usize,
    pub edges: usize,
    pub boundaries: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// `2 − χ`: twice the genus if orientable, else the crosscap number.
    pub euler_genus: i64,
}

/// The closed surface obtained by capping every boundary curve with a disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub components: Vec<ComponentSurface>,
}

pub fn euler_genus(g: &RibbonGraph) -> SurfaceData {
    let comp = g.component_labels();
    let k = comp.iter().max().map_or(0, |m| m + 1);
    let m = medial(g);
    let mut vertices = vec![0usize; k];
    let mut edges = vec![0usize; k];
    let mut boundaries = vec![0usize; k];
    for v in 0..g.vertex_count() {
        vertices[comp[v]] += 1;
        if g.rotation[v].is_empty() {
            boundaries[comp[v]] += 1;
        }
    }
    for e in 0..g.edge_count() {
        edges[comp[g.ends(e).0]] += 1;
    }
    for c in trace_partition(&m.graph, &m.epsilon).circuits() {
        let e = vertex_of(c.half_edges()[0]);
        boundaries[comp[g.ends(e).0]] += 1;
    }
    // Orientability is decided per component on the sub-ribbon graphs.
    let orient: Vec<bool> = (0..k).map(|i| orientable(&g.component(&comp, i))).collect();
    let components: Vec<ComponentSurface> = (0..k)
        .map(|i| {
            let chi = vertices[i] as i64 - edges[i] as i64 + boundaries[i] as i64;
            ComponentSurface {
                vertices: vertices[i],
                edges: edges[i],
                boundaries: boundaries[i],
                euler_characteristic: chi,
                orientable: orient[i],
                euler_genus: 2 - chi,
            }
        })
        .collect();
    SurfaceData {
        euler_characteristic: components.iter().map(|c| c.euler_characteristic).sum(),
        orientable: orient.iter().all(|&o| o),
        components,
    }
}

impl RibbonGraph {
    /// The sub-ribbon graph on the vertices with component label `i`.
    fn component(&self, comp: &[usize], i: usize) -> RibbonGraph {
        let verts: Vec<usize> = (0..self.vertex_count()).filter(|&v| comp[v] == i).collect();
        let edges: Vec<usize> = (0..self.edge_count()).filter(|&e| comp[self.ends(e).0] == i).collect();
        let mut new_half = vec![usize::MAX; 2 * self.edge_count()];
        for (k, &e) in edges.iter().enumerate() {
            new_half[2 * e] = 2 * k;
            new_half[2 * e + 1] = 2 * k + 1;
        }
        RibbonGraph::new(
            verts.iter().map(|&v| self.vertex_names[v].clone()).collect(),
            verts.iter().map(|&v| self.rotation[v].iter().map(|&h| new_half[h]).collect()).collect(),
            edges.iter().map(|&e| self.edge_names[e].clone()).collect(),
            edges.iter().flat_map(|&e| [self.half_names[2 * e].clone(), self.half_names[2 * e + 1].clone()]).collect(),
            edges.iter().map(|&e| self.sign[e]).collect(),
        )
        .expect("component of a valid ribbon graph")
    }
}

/// A permutation of the designations `(δ, ε, other)` at one medial vertex:
/// the new `i`-th designation is the old one at position `self.0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Twist(pub [usize; 3]);

impl Twist {
    pub const IDENTITY: Twist = Twist([0, 1, 2]);
    /// δ and ε exchanged: the geometric dual.
    pub const DUAL: Twist = Twist([1, 0, 2]);
    /// ε and other exchanged: a half-twist of the band.
    pub const PETRIAL: Twist = Twist([0, 2, 1]);

    pub fn all() -> [Twist; 6] {
        [
            Twist([0, 1, 2]),
            Twist([0, 2, 1]),
            Twist([1, 0, 2]),
            Twist([1, 2, 0]),
            Twist([2, 0, 1]),
            Twist([2, 1, 0]),
        ]
    }

    fn is_valid(self) -> bool {
        let mut s = self.0;
        s.sort_unstable();
        s == [0, 1, 2]
    }
}

impl FromStr for Twist {
    type Err = Error;

    /// Names such as `identity`, `dual`, `petrial`, or a digit string like `102`.
    fn from_str(s: &str) -> Result<Self> {
        let t = match s {
            "identity" | "id" => Twist::IDENTITY,
            "dual" => Twist::DUAL,
            "petrial" => Twist::PETRIAL,
            _ => {
                let d: Vec<usize> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(|| Error::input(format!("bad twist {s:?}")))?;
                let arr: [usize; 3] = d.try_into().map_err(|_| Error::input(format!("bad twist {s:?}")))?;
                Twist(arr)
            }
        };
        if !t.is_valid() {
            return Err(Error::input(format!("{s:?} is not a permutation of 012")));
        }
        Ok(t)
    }
}

/// Applies a designation permutation at every medial vertex and rebuilds.
pub fn twisted_dual(g: &RibbonGraph, twists: &[Twist]) -> Result<RibbonGraph> {
    if twists.len() != g.edge_count() {
        return Err(Error::input("one twist per edge is required"));
    }
    if let Some(t) = twists.iter().find(|t| !t.is_valid()) {
        return Err(Error::input(format!("{:?} is not a permutation", t.0)));
    }
    let m = medial(g);
    let other = m.other();
    let triple = |v: usize| [m.delta.at(v), m.epsilon.at(v), other.at(v)];
    let delta = Transversal::new((0..g.edge_count()).map(|v| triple(v)[twists[v].0[0]]).collect());
    let epsilon = Transversal::new((0..g.edge_count()).map(|v| triple(v)[twists[v].0[1]]).collect());
    let mut out = from_partitions(&m.graph, &delta, &epsilon)?;
    for _ in 0..m.isolated {
        let name = format!("v{}", out.vertex_count());
        out.vertex_names.push(name);
        out.rotation.push(Vec::new());
    }
    Ok(out)
}

pub fn geometric_dual(g: &RibbonGraph) -> RibbonGraph {
    twisted_dual(g, &vec![Twist::DUAL; g.edge_count()]).expect("valid twists")
}

pub fn partial_dual(g: &RibbonGraph, e: usize) -> Result<RibbonGraph> {
    if e >= g.edge_count() {
        return Err(Error::input(format!("edge {e} out of range")));
    }
    let mut t = vec![Twist::IDENTITY; g.edge_count()];
    t[e] = Twist::DUAL;
    twisted_dual(g, &t)
}

/// `Σ_X (x−1)^{r(E)−r(X)} y^{|X|−r(X)} z^{k(X)−f(X)+|X|−r(X)}`.
pub fn bollobas_riordan(g: &RibbonGraph, opts: Enumeration) -> Result<SparsePoly> {
    bollobas_riordan_weighted(g, &vec![1; g.edge_count()], opts)
}

/// As [`bollobas_riordan`] with each term also multiplied by `Π_{e∈X} w(e)`.
pub fn bollobas_riordan_weighted(g: &RibbonGraph, weights: &[i64], opts: Enumeration) -> Result<SparsePoly> {
    let m = g.edge_count();
    if weights.len() != m {
        return Err(Error::input("one weight per edge is required"));
    }
    if m > BR_MAX_EDGES {
        return Err(Error::budget(format!("{m} edges exceed {BR_MAX_EDGES}")));
    }
    let oracle = g.cycle_matroid().oracle();
    let med = medial(g);
    let n = g.vertex_count() as i64;
    let full = oracle.rank_mask((1u64 << m) - 1) as i32;
    let hist = par::reduce_range(
        1u64 << m,
        opts.workers,
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<i32>, BigInt>, x| {
            let w: i64 = (0..m).filter(|e| x >> e & 1 == 1).map(|e| weights[e]).product();
            if w == 0 {
                return;
            }
            let r = oracle.rank_mask(x) as i32;
            let size = x.count_ones() as i32;
            let keep: Vec<bool> = (0..m).map(|e| x >> e & 1 == 1).collect();
            let f = boundary_of(&med, &keep) as i32;
            let k = (n - r as i64) as i32;
            let key = vec![full - r, size - r, k - f + size - r];
            *acc.entry(key).or_default() += w;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert_with(BigInt::default) += v;
            }
            a
        },
    );
    let vars = ["x", "y", "z"];
    let xm1 = &SparsePoly::var(&vars, 0) - &SparsePoly::one(&vars);
    let mut out = SparsePoly::zero(&vars);
    for (e, c) in hist {
        out += &xm1.pow(e[0] as u32).shift(&[0, e[1], e[2]]).scale(&c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{euler_system, Transition};
    use crate::invariants::{tutte_eval, WeightAssignment};
    use crate::matroid::{check_dual_pair, identity_map, same_rank_function, transition_matroid};

    fn seq() -> Enumeration {
        Enumeration::sequential()
    }

    /// Boundary curves by walking darts `(h, d)` around the ribbon surface.
    fn faces_oracle(g: &RibbonGraph, x: &[bool]) -> usize {
        let sub = {
            let rotation = (0..g.vertex_count())
                .map(|v| g.rotation(v).iter().copied().filter(|&h| x[h / 2]).collect())
                .collect();
            RibbonGraph::from_rotations(rotation, g.sign.clone()).unwrap_or_else(|_| {
                // Dropped halves leave holes in the numbering; keep only X.
                let keep: Vec<usize> = (0..g.edge_count()).filter(|&e| x[e]).collect();
                let mut idx = vec![usize::MAX; 2 * g.edge_count()];
                for (k, &e) in keep.iter().enumerate() {
                    idx[2 * e] = 2 * k;
                    idx[2 * e + 1] = 2 * k + 1;
                }
                let rotation = (0..g.vertex_count())
                    .map(|v| g.rotation(v).iter().filter(|&&h| x[h / 2]).map(|&h| idx[h]).collect())
                    .collect();
                RibbonGraph::from_rotations(rotation, keep.iter().map(|&e| g.sign(e)).collect()).unwrap()
            })
        };
        let m = sub.edge_count();
        let mut seen = vec![[false; 2]; 2 * m];
        let mut orbits = 0;
        for h0 in 0..2 * m {
            for d0 in 0..2 {
                if seen[h0][d0] {
                    continue;
                }
                orbits += 1;
                let (mut h, mut d) = (h0, d0);
                while !seen[h][d] {
                    seen[h][d] = true;
                    let other = h ^ 1;
                    let nd = if sub.sign(h / 2) < 0 { 1 - d } else { d };
                    h = if nd == 0 { sub.next(other) } else { sub.prev(other) };
                    d = nd;
                }
            }
        }
        orbits / 2 + sub.isolated_vertices()
    }

    #[test]
    fn medial_examples() {
        let plus = medial(&corpus::ribbon_loop(1));
        assert_eq!(plus.graph.vertex_count(), 1);
        assert_eq!(plus.graph.edges().len(), 2);
        assert!(plus.graph.edges().iter().all(|&[a, b]| vertex_of(a) == vertex_of(b)));
        assert_eq!(count_circuits(&plus.graph, &plus.delta), 1);
        assert_eq!(count_circuits(&plus.graph, &plus.epsilon), 2);
        let minus = medial(&corpus::ribbon_loop(-1));
        assert_eq!(count_circuits(&minus.graph, &minus.delta), 1);
        assert_eq!(count_circuits(&minus.graph, &minus.epsilon), 1);
        let edge = medial(&corpus::ribbon_edge());
        assert_eq!(count_circuits(&edge.graph, &edge.delta), 2);
        assert_eq!(count_circuits(&edge.graph, &edge.epsilon), 1);
    }

    #[test]
    fn text_round_trip() {
        let g = corpus::ribbon_torus();
        assert_eq!(g.to_string().parse::<RibbonGraph>().unwrap(), g);
        let text = "v p: x y\nv q:\ne t x y -1\n";
        let h: RibbonGraph = text.parse().unwrap();
        assert_eq!(h.to_string(), text);
        assert!("v p: x\ne t x y 1\n".parse::<RibbonGraph>().is_err());
    }

    #[test]
    fn round_trips() {
        let mut graphs = corpus::random_ribbon_graphs(40, 0..=5, 21);
        graphs.extend([corpus::ribbon_loop(1), corpus::ribbon_loop(-1), corpus::ribbon_edge(), corpus::ribbon_torus()]);
        for g in graphs {
            let m = medial(&g);
            let back = from_partitions(&m.graph, &m.delta, &m.epsilon).unwrap();
            let mut back_m = medial(&back);
            back_m.isolated = m.isolated;
            assert!(designated_equivalent(&m, &back_m), "{g}");
            let key = |g: &RibbonGraph| {
                let mut c: Vec<_> = euler_genus(g).components.iter().map(|c| (c.euler_characteristic, c.orientable, c.edges)).collect();
                c.sort_unstable();
                c
            };
            assert_eq!(key(&twisted_dual(&g, &vec![Twist::IDENTITY; g.edge_count()]).unwrap()), key(&g));
        }
    }

    #[test]
    fn partitions_round_trip() {
        for f in corpus::random_graphs(12, 1..=4, 19) {
            let n = f.vertex_count();
            for k in (0..Transversal::count(n).unwrap()).step_by(5) {
                let d = Transversal::from_index(n, k);
                let e = Transversal::new((0..n).map(|v| d.at(v).others()[(k as usize >> v) & 1]).collect());
                let g = from_partitions(&f, &d, &e).unwrap();
                let m = medial(&g);
                let orig = Medial { graph: f.clone(), delta: d, epsilon: e, isolated: 0 };
                assert!(designated_equivalent(&orig, &m));
            }
        }
        let f = corpus::two_loop_vertex();
        assert!(from_partitions(&f, &Transversal::uniform(1, Pairing::P0), &Transversal::uniform(1, Pairing::P0)).is_err());
    }

    #[test]
    fn two_loop_vertex_gives_one_loop() {
        let f = corpus::two_loop_vertex();
        let c = euler_system(&f);
        let d = c.transversal().clone();
        let other = d.at(0).others();
        // Only the non-Euler pairing splits the loops; ε is the other Euler one.
        let e = Transversal::new(vec![other.into_iter().find(|&p| count_circuits(&f, &Transversal::new(vec![p])) == 1).unwrap()]);
        let g = from_partitions(&f, &d, &e).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert_eq!(g.sign(0), -1);
    }

    #[test]
    fn abab_dual_pair_is_plane() {
        let (f, c) = corpus::from_word("a b a b");
        let l = crate::graph::transition_labels(&f, &c);
        use crate::graph::LabelKind::*;
        let d = l.transversal(|v| if v == 0 { Phi } else { Chi });
        let e = l.transversal(|v| if v == 0 { Chi } else { Phi });
        let g = from_partitions(&f, &d, &e).unwrap();
        assert_eq!(g.edge_count(), 2);
        let s = euler_genus(&g);
        assert!(s.components.iter().all(|c| c.euler_characteristic == 2));
    }

    #[test]
    fn boundary_examples_and_oracle() {
        assert_eq!(boundary_components(&corpus::ribbon_loop(1), &[true]).unwrap(), 2);
        assert_eq!(boundary_components(&corpus::ribbon_loop(-1), &[true]).unwrap(), 1);
        for g in corpus::random_ribbon_graphs(60, 0..=6, 3) {
            let m = g.edge_count();
            assert_eq!(boundary_components(&g, &vec![false; m]).unwrap(), g.vertex_count());
            for x in 0..1u32 << m {
                let keep: Vec<bool> = (0..m).map(|e| x >> e & 1 == 1).collect();
                assert_eq!(boundary_components(&g, &keep).unwrap(), faces_oracle(&g, &keep), "{g} {x:b}");
            }
        }
    }

    #[test]
    fn orientability() {
        assert!(orientable(&corpus::ribbon_loop(1)));
        assert!(!orientable(&corpus::ribbon_loop(-1)));
        assert!(orientable(&corpus::ribbon_cycle(3)));
        for g in corpus::random_ribbon_graphs(80, 0..=5, 8) {
            assert_eq!(orientable(&g), orientable_by_partitions(&g).unwrap(), "{g}");
            for v in 0..g.vertex_count() {
                assert_eq!(orientable(&g.flip_vertex(v)), orientable(&g));
                assert!(g.flip_vertex(v).is_equivalent(&g));
            }
        }
    }

    #[test]
    fn surfaces() {
        let s = euler_genus(&corpus::ribbon_loop(1));
        assert_eq!((s.euler_characteristic, s.orientable), (2, true));
        let s = euler_genus(&corpus::ribbon_loop(-1));
        assert_eq!((s.euler_characteristic, s.orientable), (1, false));
        let s = euler_genus(&corpus::ribbon_torus());
        assert_eq!((s.euler_characteristic, s.components[0].euler_genus), (0, 2));
        for g in corpus::random_ribbon_graphs(40, 0..=5, 5) {
            let s = euler_genus(&g);
            assert_eq!(s.components.len(), g.component_count());
            assert!(s.components.iter().all(|c| c.euler_genus >= 0));
            let m = medial(&g);
            assert_eq!(
                s.components.len(),
                m.graph.component_count() + g.isolated_vertices(),
            );
        }
    }

    #[test]
    fn twisted_duals() {
        let g = corpus::ribbon_loop(1);
        let d = geometric_dual(&g);
        let (mg, md) = (medial(&g), medial(&d));
        assert_eq!(count_circuits(&md.graph, &md.delta), count_circuits(&mg.graph, &mg.epsilon));
        assert_eq!(count_circuits(&md.graph, &md.epsilon), count_circuits(&mg.graph, &mg.delta));
        assert!(twisted_dual(&g, &[Twist::IDENTITY]).unwrap().is_equivalent(&g));
        for g in corpus::random_ribbon_graphs(20, 1..=4, 13) {
            for t in Twist::all() {
                let tw = twisted_dual(&g, &vec![t; g.edge_count()]).unwrap();
                assert!(same_underlying_graph(&medial(&g).graph, &medial(&tw).graph));
            }
            assert!(geometric_dual(&geometric_dual(&g)).is_equivalent(&g));
            let p = partial_dual(&g, 0).unwrap();
            assert!(partial_dual(&p, 0).unwrap().is_equivalent(&g));
        }
    }

    #[test]
    fn cycle_matroid_is_dual_of_delta_restriction() {
        for g in corpus::random_ribbon_graphs(30, 1..=5, 17) {
            let m = medial(&g);
            let tm = transition_matroid(&m.graph, &euler_system(&m.graph));
            let r = tm.matroid().restrict(&m.delta.ground_indices()).unwrap().dual();
            let cm = g.cycle_matroid();
            assert!(same_rank_function(&r, &cm, &identity_map(cm.len()), 18).unwrap());
        }
    }

    #[test]
    fn plane_iff_dual_pair() {
        let mut graphs = corpus::random_ribbon_graphs(40, 1..=5, 29);
        graphs.extend([corpus::ribbon_cycle(3), corpus::ribbon_theta(), corpus::ribbon_torus(), corpus::ribbon_figure_eight()]);
        for g in graphs {
            let m = medial(&g);
            let plane = euler_genus(&g).components.iter().all(|c| c.euler_characteristic == 2);
            let r = check_dual_pair(&m.graph, &m.delta, &m.epsilon).unwrap();
            assert_eq!(plane, r.is_dual_pair, "{g}");
        }
    }

    #[test]
    fn br_examples() {
        assert_eq!(bollobas_riordan(&corpus::ribbon_loop(1), seq()).unwrap().to_string(), "y+1");
        assert_eq!(bollobas_riordan(&corpus::ribbon_loop(-1), seq()).unwrap().to_string(), "yz+1");
    }

    #[test]
    fn br_at_z_one_is_shifted_tutte() {
        for g in corpus::random_ribbon_graphs(20, 0..=6, 31) {
            let br = bollobas_riordan(&g, seq()).unwrap();
            let three = ["x", "y", "z"];
            let at1 = br
                .compose(&["x", "y"], &[SparsePoly::var(&["x", "y"], 0), SparsePoly::var(&["x", "y"], 1), SparsePoly::one(&["x", "y"])])
                .unwrap();
            let cm = g.cycle_matroid();
            let t = tutte_eval(&cm, &WeightAssignment::uniform(cm.len(), 1, 1), false, seq()).unwrap();
            let shifted = t
                .compose(&["x", "y"], &[SparsePoly::var(&["x", "y"], 0), &SparsePoly::var(&["x", "y"], 1) + &SparsePoly::one(&["x", "y"])])
                .unwrap();
            assert_eq!(at1, shifted);
            let _ = three;
        }
    }

    #[test]
    fn weighted_br_with_unit_weights() {
        let g = corpus::ribbon_torus();
        assert_eq!(bollobas_riordan_weighted(&g, &[1, 1], seq()).unwrap(), bollobas_riordan(&g, seq()).unwrap());
        let zeroed = bollobas_riordan_weighted(&g, &[0, 0], seq()).unwrap();
        assert_eq!(zeroed.to_string(), "1");
    }

    #[test]
    fn detaching_all_edges_leaves_vertex_disks() {
        let g = corpus::ribbon_theta();
        let m = medial(&g);
        let (_, free) = detach_vertices(&m.graph, &[Some(Pairing::P0); 3]);
        assert_eq!(free, 2);
        let _ = Transition::new(0, Pairing::P0);
    }
}

//! Loop-free simple graphs stored as symmetric GF(2) adjacency matrices.

use std::fmt;

use crate::gf2::BitMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    names: Vec<String>,
    adj: BitMatrix,
}

impl SimpleGraph {
    pub fn edgeless(names: Vec<String>) -> Self {
        let n = names.len();
        Self { names, adj: BitMatrix::zeros(n, n) }
    }

    /// Vertices named `0..n`.
    pub fn edgeless_numbered(n: usize) -> Self {
        Self::edgeless((0..n).map(|i| i.to_string()).collect())
    }

    pub fn from_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::edgeless(names);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless_numbered(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Builds from a symmetric zero-diagonal matrix; `None` otherwise.
    pub fn from_adjacency(names: Vec<String>, adj: BitMatrix) -> Option<Self> {
        let n = names.len();
        if adj.rows() != n || adj.cols() != n || adj != adj.transpose() || (0..n).any(|i| adj.get(i, i)) {
            return None;
        }
        Some(Self { names, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a, b)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "simple graphs have no loops");
        self.adj.set(a, b, true);
        self.adj.set(b, a, true);
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "simple graphs have no loops");
        self.adj.flip(a, b);
        self.adj.flip(b, a);
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&w| self.adj.get(v, w)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adj.get(a, b))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Simple local complementation: toggles every edge inside `N(v)`.
    pub fn local_complement(&self, v: usize) -> Self {
        let nb = self.neighbors(v);
        let mut out = self.clone();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                out.toggle_edge(a, b);
            }
        }
        out
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let mut out = Self::edgeless(names);
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    out.add_edge(i, j);
                }
            }
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for w in self.neighbors(comp[i]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
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

    /// Neighbourhood bitmasks; requires at most 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.vertex_count() <= 64).then(|| {
            (0..self.vertex_count())
                .map(|v| self.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
                .collect()
        })
    }

    /// Isomorphism-invariant key: the least upper-triangle bit string over
    /// all orderings that sort vertices by degree. Only for `n <= 8`.
    pub fn canonical_key(&self) -> Option<u64> {
        let masks = self.masks()?;
        (masks.len() <= 8).then(|| canonical_key_of_masks(&masks))
    }

    /// Isomorphism test through [`Self::canonical_key`]; `None` above 8 vertices.
    pub fn is_isomorphic(&self, other: &Self) -> Option<bool> {
        if self.vertex_count() != other.vertex_count() {
            return Some(false);
        }
        Some(self.canonical_key()? == other.canonical_key()?)
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.vertex_count();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut out = Self::edgeless(names);
        for (a, b) in self.edges() {
            out.add_edge(a, b);
        }
        for (a, b) in other.edges() {
            out.add_edge(a + n, b + n);
        }
        out
    }

    /// Same graph with vertex `v` renamed to `names[v]`.
    pub fn renamed(&self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.vertex_count());
        Self { names, adj: self.adj.clone() }
    }
}

/// Minimum packed upper triangle over degree-respecting vertex orders.
pub(crate) fn canonical_key_of_masks(masks: &[u64]) -> u64 {
    let n = masks.len();
    let deg: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    // Refine by degree, then by the sorted neighbour-degree list.
    let sig: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&w| masks[v] >> w & 1 == 1).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || sig[order[i]] != sig[order[start]] {
            classes.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_classes(&mut order, &classes, 0, masks, &mut best);
    best
}

fn permute_classes(order: &mut Vec<usize>, classes: &[(usize, usize)], ci: usize, masks: &[u64], best: &mut u64) {
    if ci == classes.len() {
        *best = (*best).min(pack(order, masks));
        return;
    }
    let (lo, hi) = classes[ci];
    heap_permute(order, lo, hi - lo, &mut |o| permute_classes(o, classes, ci + 1, masks, best));
}

fn heap_permute(order: &mut Vec<usize>, lo: usize, k: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if k <= 1 {
        f(order);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(order, lo, k - 1, f);
        if k.is_multiple_of(2) {
            order.swap(lo + i, lo + k - 1);
        } else {
            order.swap(lo, lo + k - 1);
        }
    }
    heap_permute(order, lo, k - 1, f);
}

fn pack(order: &[usize], masks: &[u64]) -> u64 {
    let mut key = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            key = key << 1 | (masks[order[i]] >> order[j] & 1);
        }
    }
    key
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph{:?} {:?}", self.names, self.edges())
    }
}

/// Adjacency rows prefixed by vertex names.
impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, name) in self.names.iter().enumerate() {
            writeln!(f, "{name} {}", self.adj.row_string(v))?;
        }
        Ok(())
    }
}

//! Binary matroids, the transition matroid `M_τ(F)`, and the touch-graph
//! duality checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{xor_basis_rank, BitMatrix};
use crate::graph::{
    count_circuits, euler_system, touch_graph, trace_partition, transition_labels, EulerSystem,
    FourRegularGraph, LabelKind, Pairing, Transition, Transversal,
};
use crate::par;

/// Largest ground set [`same_rank_function`] sweeps by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 18;

/// A binary matroid: one labelled column of `rep` per ground element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatroid {
    ground: Vec<String>,
    rep: BitMatrix,
}

impl BinaryMatroid {
    pub fn new(ground: Vec<String>, rep: BitMatrix) -> Result<Self> {
        if ground.len() != rep.cols() {
            return Err(Error::input(format!(
                "{} labels for {} columns",
                ground.len(),
                rep.cols()
            )));
        }
        Ok(Self { ground, rep })
    }

    /// The empty matroid.
    pub fn empty() -> Self {
        Self { ground: Vec::new(), rep: BitMatrix::zeros(0, 0) }
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn rep(&self) -> &BitMatrix {
        &self.rep
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.ground
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| Error::input(format!("unknown ground element {label:?}")))
    }

    pub fn rank(&self, subset: &[usize]) -> Result<usize> {
        self.rep.rank_of_columns(subset)
    }

    pub fn rank_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let idx = labels.iter().map(|l| self.index_of(l.as_ref())).collect::<Result<Vec<_>>>()?;
        self.rank(&idx)
    }

    /// `r(S)`
    pub fn full_rank(&self) -> usize {
        self.rep.rank()
    }

    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        Ok(Self {
            ground: subset.iter().map(|&i| self.ground[i].clone()).collect(),
            rep: self.rep.select_columns(subset)?,
        })
    }

    pub fn delete(&self, removed: &[usize]) -> Result<Self> {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !removed.contains(i)).collect();
        self.restrict(&keep)
    }

    /// `M / e`: pivot on a row meeting column `e`, drop that row and the column.
    pub fn contract(&self, e: usize) -> Result<Self> {
        if e >= self.len() {
            return Err(Error::input(format!("element {e} out of range")));
        }
        let Some(pivot) = (0..self.rep.rows()).find(|&r| self.rep.get(r, e)) else {
            return self.delete(&[e]);
        };
        let mut m = self.rep.clone();
        for r in 0..m.rows() {
            if r != pivot && m.get(r, e) {
                m.add_row(pivot, r);
            }
        }
        let rows: Vec<usize> = (0..m.rows()).filter(|&r| r != pivot).collect();
        let cols: Vec<usize> = (0..m.cols()).filter(|&c| c != e).collect();
        Ok(Self {
            ground: cols.iter().map(|&c| self.ground[c].clone()).collect(),
            rep: m.select_rows(&rows).select_columns(&cols)?,
        })
    }

    /// `M*`: from the reduced form `(I | B)` (up to column order) build `(Bᵀ | I)`.
    pub fn dual(&self) -> Self {
        let (r, pivots) = self.rep.row_reduce();
        let m = self.len();
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let mut d = BitMatrix::zeros(free.len(), m);
        for (k, &j) in free.iter().enumerate() {
            d.set(k, j, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, j) {
                    d.set(k, p, true);
                }
            }
        }
        Self { ground: self.ground.clone(), rep: d }
    }

    /// Rows reduced to a basis of the row space.
    pub fn compact(&self) -> Self {
        let (r, _) = self.rep.row_reduce();
        Self { ground: self.ground.clone(), rep: r.without_zero_rows() }
    }

    pub fn oracle(&self) -> RankOracle {
        RankOracle::new(self)
    }
}

impl fmt::Display for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ground: {}", self.ground.join(" "))?;
        for r in 0..self.rep.rows() {
            writeln!(f, "{}", self.rep.row_string(r))?;
        }
        Ok(())
    }
}

/// Fast rank queries for matroids of rank at most 64.
#[derive(Clone, Debug)]
pub struct RankOracle {
    words: Option<Vec<u64>>,
    matroid: BinaryMatroid,
}

impl RankOracle {
    pub fn new(m: &BinaryMatroid) -> Self {
        let compact = m.compact();
        Self { words: compact.rep.column_words(), matroid: compact }
    }

    pub fn rank(&self, subset: &[usize]) -> usize {
        match &self.words {
            Some(w) => xor_basis_rank(subset.iter().map(|&i| w[i])),
            None => self.matroid.rank(subset).expect("indices checked by caller"),
        }
    }

    /// Rank of the elements whose bits are set; ground sets of at most 64.
    pub fn rank_mask(&self, mut mask: u64) -> usize {
        match &self.words {
            Some(w) => {
                let mut basis = [0u64; 64];
                let mut rank = 0;
                while mask != 0 {
                    let i = mask.trailing_zeros() as usize;
                    mask &= mask - 1;
                    let mut v = w[i];
                    while v != 0 {
                        let top = 63 - v.leading_zeros() as usize;
                        if basis[top] == 0 {
                            basis[top] = v;
                            rank += 1;
                            break;
                        }
                        v ^= basis[top];
                    }
                }
                rank
            }
            None => {
                let idx: Vec<usize> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
                self.rank(&idx)
            }
        }
    }
}

/// Compares rank functions on every subset, with `m1`'s element `i`
/// identified with `m2`'s element `bijection[i]`.
pub fn same_rank_function(m1: &BinaryMatroid, m2: &BinaryMatroid, bijection: &[usize], limit: usize) -> Result<bool> {
    let n = m1.len();
    if m2.len() != n || bijection.len() != n {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for &b in bijection {
        if b >= n || std::mem::replace(&mut seen[b], true) {
            return Err(Error::input("ground map is not a bijection"));
        }
    }
    if n > limit.min(63) {
        return Err(Error::budget(format!("{n} elements exceed the exhaustive limit of {limit}")));
    }
    let o1 = m1.oracle();
    let o2 = m2.oracle();
    let total = 1u64 << n;
    let mismatches = par::reduce_range(
        total,
        par::default_workers(),
        || 0u64,
        |acc, mask| {
            let mut image = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                image |= 1 << bijection[i];
            }
            if o1.rank_mask(mask) != o2.rank_mask(image) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(mismatches == 0)
}

/// Same matroid under `bijection`, decided by comparing row spaces. Binary
/// matroids are uniquely representable over GF(2), so this agrees with
/// [`same_rank_function`] and works for any ground size.
pub fn same_matroid(m1: &BinaryMatroid, m2: &BinaryMatroid, bijection: &[usize]) -> bool {
    if m1.len() != m2.len() || bijection.len() != m1.len() {
        return false;
    }
    let mut inverse = vec![usize::MAX; m1.len()];
    for (i, &b) in bijection.iter().enumerate() {
        inverse[b] = i;
    }
    let Ok(moved) = m2.rep.select_columns(&inverse) else {
        return false;
    };
    m1.rep.row_reduce().0.without_zero_rows() == moved.row_reduce().0.without_zero_rows()
}

pub fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Metadata of one transition-matroid element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGroundLabel {
    pub vertex: usize,
    pub vertex_name: String,
    pub kind: LabelKind,
    pub pairing: Pairing,
}

impl fmt::Display for TransitionGroundLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}/{}", self.vertex_name, self.pairing, self.kind)
    }
}

/// `M_τ(F)` with ground set `T(F)` in `(vertex, pairing)` order, so element
/// `3v + p` is transition `t_p` at `v` whatever Euler system built it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatroid {
    matroid: BinaryMatroid,
    labels: Vec<TransitionGroundLabel>,
}

impl TransitionMatroid {
    pub fn matroid(&self) -> &BinaryMatroid {
        &self.matroid
    }

    pub fn labels(&self) -> &[TransitionGroundLabel] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len() / 3
    }

    pub fn element(&self, t: Transition) -> usize {
        t.ground_index()
    }

    /// `r(τ(P))`
    pub fn rank_of_transversal(&self, t: &Transversal) -> usize {
        self.matroid.rank(&t.ground_indices()).expect("transversal fits the ground set")
    }
}

impl fmt::Display for TransitionMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        writeln!(f, "ground: {}", labels.join(" "))?;
        for r in 0..self.matroid.rep.rows() {
            writeln!(f, "{}", self.matroid.rep.row_string(r))?;
        }
        Ok(())
    }
}

/// `M(C) = (I | A | I + A)` with `A` the adjacency matrix of `I(C)`; the
/// blocks hold the φ, χ and ψ columns in vertex order.
pub fn euler_matrix(g: &FourRegularGraph, c: &EulerSystem) -> BitMatrix {
    let a = crate::graph::interlacement(g, c).adjacency().clone();
    let i = BitMatrix::identity(g.vertex_count());
    i.hstack(&a).hstack(&i.xor(&a))
}

pub fn transition_matroid(g: &FourRegularGraph, c: &EulerSystem) -> TransitionMatroid {
    let n = g.vertex_count();
    let native = euler_matrix(g, c);
    let l = transition_labels(g, c);
    let mut cols = Vec::with_capacity(3 * n);
    let mut labels = Vec::with_capacity(3 * n);
    for v in 0..n {
        for p in Pairing::ALL {
            let kind = l.kind_of(Transition::new(v, p));
            cols.push(kind as usize * n + v);
            labels.push(TransitionGroundLabel { vertex: v, vertex_name: g.name(v).to_string(), kind, pairing: p });
        }
    }
    let rep = native.select_columns(&cols).expect("columns in range");
    let ground = labels.iter().map(|l| format!("{}:{}", l.vertex_name, l.pairing)).collect();
    TransitionMatroid { matroid: BinaryMatroid { ground, rep }, labels }
}

/// The minor for detaching `v` along `kept`: contract `kept`, delete the
/// other two transitions at `v`.
pub fn detach_minor(tm: &TransitionMatroid, v: usize, kept: Pairing) -> Result<BinaryMatroid> {
    if v >= tm.vertex_count() {
        return Err(Error::input(format!("vertex {v} out of range")));
    }
    let contracted = tm.matroid.contract(3 * v + kept.index())?;
    // After contraction the two remaining elements at `v` sit at 3v, 3v+1.
    contracted.delete(&[3 * v, 3 * v + 1])
}

/// Cycle matroid of a multigraph: incidence columns over GF(2), loops zero.
pub fn cycle_matroid(vertex_count: usize, edges: &[(usize, usize)], labels: Vec<String>) -> Result<BinaryMatroid> {
    let mut rep = BitMatrix::zeros(vertex_count, edges.len());
    for (j, &(a, b)) in edges.iter().enumerate() {
        if a >= vertex_count || b >= vertex_count {
            return Err(Error::input(format!("edge {j} leaves the vertex range")));
        }
        if a != b {
            rep.set(a, j, true);
            rep.set(b, j, true);
        }
    }
    BinaryMatroid::new(labels, rep)
}

fn equal_on_vertices(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
    let id = identity_map(a.len());
    if a.len() <= 20 {
        same_rank_function(a, b, &id, 20).unwrap_or(false)
    } else {
        same_matroid(a, b, &id)
    }
}

/// Checks that the cycle matroid of `Tch(P)` is the dual of `M_τ(F)|τ(P)`,
/// both read as matroids on `V(F)`.
pub fn verify_touch_duality(g: &FourRegularGraph, t: &Transversal) -> Result<bool> {
    if t.len() != g.vertex_count() {
        return Err(Error::input("transversal length differs from the vertex count"));
    }
    let tm = transition_matroid(g, &euler_system(g));
    let restricted = tm.matroid.restrict(&t.ground_indices())?;
    let dual = BinaryMatroid { ground: g.names().to_vec(), rep: restricted.dual().rep };
    let p = trace_partition(g, t);
    let tch = touch_graph(g, &p);
    let cycle = cycle_matroid(tch.vertex_count(), tch.edges(), g.names().to_vec())?;
    Ok(equal_on_vertices(&cycle, &dual))
}

/// Ranks of two transversals with no common transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualPairReport {
    pub r1: usize,
    pub r2: usize,
    pub union_rank: usize,
    pub is_dual_pair: bool,
}

/// Reports `r(τ(P1))`, `r(τ(P2))` and whether they sum to `n`. For a dual
/// pair the restrictions are also checked to be dual on `V(F)` and to form a
/// direct sum; a failure there is a [`Error::Consistency`].
pub fn check_dual_pair(g: &FourRegularGraph, t1: &Transversal, t2: &Transversal) -> Result<DualPairReport> {
    let n = g.vertex_count();
    if t1.len() != n || t2.len() != n {
        return Err(Error::input("transversal length differs from the vertex count"));
    }
    if !t1.disjoint_from(t2) {
        return Err(Error::input("the transversals share a transition"));
    }
    let tm = transition_matroid(g, &euler_system(g));
    let (i1, i2) = (t1.ground_indices(), t2.ground_indices());
    let r1 = tm.matroid.rank(&i1)?;
    let r2 = tm.matroid.rank(&i2)?;
    let union: Vec<usize> = i1.iter().chain(&i2).copied().collect();
    let union_rank = tm.matroid.rank(&union)?;
    if union_rank != n {
        return Err(Error::Consistency(format!("r(τ(P1) ∪ τ(P2)) = {union_rank}, expected {n}")));
    }
    let is_dual_pair = r1 + r2 == n;
    if is_dual_pair {
        let m1 = tm.matroid.restrict(&i1)?;
        let m2 = tm.matroid.restrict(&i2)?;
        let d1 = BinaryMatroid { ground: m2.ground.clone(), rep: m1.dual().rep };
        if !equal_on_vertices(&d1, &m2) {
            return Err(Error::Consistency("dual pair restrictions are not dual on V(F)".into()));
        }
        if union_rank != r1 + r2 {
            return Err(Error::Consistency("dual pair restriction is not a direct sum".into()));
        }
    }
    Ok(DualPairReport { r1, r2, union_rank, is_dual_pair })
}

/// Both readings of the Las Vergnas–Martin identity over every `A ⊆ V(F)`.
///
/// `P_A` follows `t1` on `A` and `t2` elsewhere and `r_T` is the cycle-matroid
/// rank of `Tch(P1)`. The stated form is
/// `|P_A| − c(F) = r_T(V) + |A| − 2 r_T(A)`; the complemented form puts
/// `V − A` in place of `A` on the right, which is what the duality
/// `nullity*(X) = corank(V − X)` yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LasVergnasReport {
    pub subsets: u64,
    pub stated_failures: u64,
    pub complemented_failures: u64,
    /// Least `A` (as a vertex bitmask) violating the stated form.
    pub first_stated_failure: Option<u64>,
}

impl LasVergnasReport {
    pub fn stated_holds(&self) -> bool {
        self.stated_failures == 0
    }

    pub fn complemented_holds(&self) -> bool {
        self.complemented_failures == 0
    }
}

/// Evaluates [`LasVergnasReport`]; requires a dual pair.
pub fn las_vergnas_report(g: &FourRegularGraph, t1: &Transversal, t2: &Transversal) -> Result<LasVergnasReport> {
    let report = check_dual_pair(g, t1, t2)?;
    if !report.is_dual_pair {
        return Err(Error::input("the transversals are not a dual pair"));
    }
    let n = g.vertex_count();
    if n > 24 {
        return Err(Error::budget("more than 2^24 subsets"));
    }
    let tch = touch_graph(g, &trace_partition(g, t1));
    let rt = cycle_matroid(tch.vertex_count(), tch.edges(), g.names().to_vec())?.oracle();
    let c = g.component_count() as i64;
    let all = (1u64 << n) - 1;
    let full = rt.rank_mask(all) as i64;
    let side = |a: u64| full + a.count_ones() as i64 - 2 * rt.rank_mask(a) as i64;
    let mut out = LasVergnasReport { subsets: 1 << n, stated_failures: 0, complemented_failures: 0, first_stated_failure: None };
    for a in 0..1u64 << n {
        let t = Transversal::new((0..n).map(|v| if a >> v & 1 == 1 { t1.at(v) } else { t2.at(v) }).collect());
        let lhs = count_circuits(g, &t) as i64 - c;
        if lhs != side(a) {
            out.stated_failures += 1;
            out.first_stated_failure.get_or_insert(a);
        }
        if lhs != side(all & !a) {
            out.complemented_failures += 1;
        }
    }
    Ok(out)
}

/// The stated form of the Las Vergnas–Martin identity, for every `A`.
pub fn las_vergnas_formula_holds(g: &FourRegularGraph, t1: &Transversal, t2: &Transversal) -> Result<bool> {
    Ok(las_vergnas_report(g, t1, t2)?.stated_holds())
}

/// First dual pair of transversals in enumeration order, if any.
pub fn find_dual_pair(g: &FourRegularGraph) -> Option<(Transversal, Transversal)> {
    let n = g.vertex_count();
    let tm = transition_matroid(g, &euler_system(g));
    let oracle = tm.matroid.oracle();
    for t1 in Transversal::all(n) {
        let r1 = oracle.rank(&t1.ground_indices());
        for choice in 0..1u64 << n {
            let t2 = Transversal::new(
                (0..n)
                    .map(|v| t1.at(v).others()[(choice >> v & 1) as usize])
                    .collect(),
            );
            if r1 + oracle.rank(&t2.ground_indices()) == n {
                return Some((t1, t2));
            }
        }
    }
    None
}

//! Planar diagram codes and the Kauffman bracket as a sum over transitions.
//!
//! Crossing `X a b c d` lists its four arc ends counterclockwise from the
//! incoming under-strand; they become slots `0..4` of one graph vertex. The
//! A-smoothing joins `0-1 | 2-3` (pairing `t0`), the B-smoothing `0-3 | 1-2`
//! (`t2`), and `t1` is the crossing itself.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{count_circuits, half_edge, FourRegularGraph, HalfEdge, Pairing, Transversal};
use crate::invariants::Enumeration;
use crate::par;
use crate::poly::SparsePoly;

pub const A_SMOOTHING: Pairing = Pairing::P0;
pub const B_SMOOTHING: Pairing = Pairing::P2;
pub const CROSSING: Pairing = Pairing::P1;

/// A diagram: crossings, optional writhe, and crossing-free closed loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[i64; 4]>,
    writhe: Option<i64>,
    loops: usize,
}

impl PdCode {
    pub fn new(crossings: Vec<[i64; 4]>, loops: usize) -> Result<Self> {
        let mut count: HashMap<i64, usize> = HashMap::new();
        for x in &crossings {
            for &a in x {
                *count.entry(a).or_insert(0) += 1;
            }
        }
        let mut bad: Vec<i64> = count.iter().filter(|(_, &c)| c != 2).map(|(&a, _)| a).collect();
        bad.sort_unstable();
        if let Some(a) = bad.first() {
            return Err(Error::input(format!("arc {a} is used {} times", count[a])));
        }
        Ok(Self { crossings, writhe: None, loops })
    }

    /// The crossing-free unknot.
    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), writhe: Some(0), loops: 1 }
    }

    pub fn with_writhe(mut self, w: i64) -> Self {
        self.writhe = Some(w);
        self
    }

    pub fn crossings(&self) -> &[[i64; 4]] {
        &self.crossings
    }

    pub fn writhe(&self) -> Option<i64> {
        self.writhe
    }

    pub fn free_loops(&self) -> usize {
        self.loops
    }

    fn max_arc(&self) -> i64 {
        self.crossings.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Diagram of both links side by side, arcs of `other` renumbered.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.max_arc() - other.crossings.iter().flatten().copied().min().unwrap_or(1) + 1;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| x.map(|a| a + off)));
        Self {
            crossings,
            writhe: self.writhe.zip(other.writhe).map(|(a, b)| a + b),
            loops: self.loops + other.loops,
        }
    }

    /// Adds a curl on arc `arc`. With `positive` the new crossing is
    /// `[a, a', l, l]`, which multiplies the bracket by `−A^3`; otherwise
    /// `[a, l, l, a']`, multiplying by `−A^{-3}`.
    pub fn add_kink(&self, arc: i64, positive: bool) -> Result<Self> {
        let (a2, l) = (self.max_arc() + 1, self.max_arc() + 2);
        let mut crossings = self.crossings.clone();
        let last = crossings
            .iter_mut()
            .flat_map(|x| x.iter_mut())
            .filter(|a| **a == arc)
            .last()
            .ok_or_else(|| Error::input(format!("no arc {arc}")))?;
        *last = a2;
        crossings.push(if positive { [arc, a2, l, l] } else { [arc, l, l, a2] });
        let w = if positive { 1 } else { -1 };
        Ok(Self { crossings, writhe: self.writhe.map(|x| x + w), loops: self.loops })
    }

    /// Pushes the strand entering crossing `i` at slot 1 under the strand
    /// entering at slot 0, adding two crossings of opposite sign.
    pub fn add_r2(&self, i: usize) -> Result<Self> {
        let [a, b, _, _] = *self.crossings.get(i).ok_or_else(|| Error::input(format!("no crossing {i}")))?;
        if a == b {
            return Err(Error::input("the two arcs must differ"));
        }
        let m = self.max_arc();
        let (a1, a2, a3, b1, b2, b3) = (m + 1, m + 2, m + 3, m + 4, m + 5, m + 6);
        let mut crossings = self.crossings.clone();
        for (j, x) in crossings.iter_mut().enumerate() {
            for (s, arc) in x.iter_mut().enumerate() {
                if j == i && s < 2 {
                    continue;
                }
                if *arc == a {
                    *arc = a1;
                } else if *arc == b {
                    *arc = b1;
                }
            }
        }
        let [_, _, c, d] = crossings[i];
        crossings[i] = [a3, b3, c, d];
        crossings.push([a1, b1, a2, b2]);
        crossings.push([a3, b2, a2, b3]);
        Ok(Self { crossings, writhe: self.writhe, loops: self.loops })
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = self.writhe {
            writeln!(f, "writhe: {w}")?;
        }
        if self.loops > 0 {
            writeln!(f, "loops: {}", self.loops)?;
        }
        for [a, b, c, d] in &self.crossings {
            writeln!(f, "X {a} {b} {c} {d}")?;
        }
        Ok(())
    }
}

impl FromStr for PdCode {
    type Err = Error;

    /// `X a b c d` lines plus optional `writhe: k` and `loops: k` headers. A
    /// file with neither crossings nor a `loops:` header is the unknot.
    fn from_str(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut writhe = None;
        let mut loops = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::input(format!("line {}: cannot read {line:?}", n + 1));
            if let Some(rest) = line.strip_prefix("writhe:") {
                writhe = Some(rest.trim().parse().map_err(|_| bad())?);
            } else if let Some(rest) = line.strip_prefix("loops:") {
                loops = Some(rest.trim().parse().map_err(|_| bad())?);
            } else if let Some(rest) = line.strip_prefix('X') {
                let arcs: Vec<i64> = rest
                    .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?;
                crossings.push(<[i64; 4]>::try_from(arcs).map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        let loops = loops.unwrap_or(if crossings.is_empty() { 1 } else { 0 });
        let mut pd = PdCode::new(crossings, loops)?;
        pd.writhe = writhe;
        Ok(pd)
    }
}

/// The smoothing designations at every crossing vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothings {
    pub a: Transversal,
    pub b: Transversal,
    pub crossing: Transversal,
}

/// One vertex per crossing, slots in code order; also returns the free loops.
pub fn diagram_to_graph(pd: &PdCode) -> (FourRegularGraph, Smoothings, usize) {
    let n = pd.crossings.len();
    let mut first: HashMap<i64, HalfEdge> = HashMap::new();
    let mut edges = Vec::with_capacity(2 * n);
    for (i, x) in pd.crossings.iter().enumerate() {
        for (s, &arc) in x.iter().enumerate() {
            let h = half_edge(i, s as u8);
            match first.remove(&arc) {
                Some(g) => edges.push([g, h]),
                None => {
                    first.insert(arc, h);
                }
            }
        }
    }
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    let g = FourRegularGraph::from_half_edges(names, edges);
    let s = Smoothings {
        a: Transversal::uniform(n, A_SMOOTHING),
        b: Transversal::uniform(n, B_SMOOTHING),
        crossing: Transversal::uniform(n, CROSSING),
    };
    (g, s, pd.loops)
}

fn loop_variable() -> SparsePoly {
    // d = −A² − A⁻²
    let mut d = SparsePoly::zero(&["A"]);
    d.add_term(vec![2], BigInt::from(-1));
    d.add_term(vec![-2], BigInt::from(-1));
    d
}

/// `Σ_S A^{#A − #B} d^{loops(S) − 1}` over all `2^n` states.
pub fn bracket(pd: &PdCode, opts: Enumeration) -> Result<SparsePoly> {
    let (g, s, free) = diagram_to_graph(pd);
    let n = g.vertex_count();
    if n > 40 || 1u64 << n > opts.budget {
        return Err(Error::budget(format!("2^{n} states exceed the budget of {}", opts.budget)));
    }
    if n == 0 && free == 0 {
        return Err(Error::input("the empty diagram has no bracket"));
    }
    let hist = par::reduce_range(
        1u64 << n,
        opts.workers,
        BTreeMap::new,
        |acc: &mut BTreeMap<(i32, i32), u64>, k| {
            let t = Transversal::new((0..n).map(|v| if k >> v & 1 == 0 { s.a.at(v) } else { s.b.at(v) }).collect());
            let loops = (count_circuits(&g, &t) + free) as i32;
            let b = k.count_ones() as i32;
            *acc.entry((n as i32 - 2 * b, loops - 1)).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let d = loop_variable();
    let mut out = SparsePoly::zero(&["A"]);
    for ((e, l), c) in hist {
        out += &d.pow(l as u32).shift(&[e]).scale(&BigInt::from(c));
    }
    Ok(out)
}

/// `(−A^3)^{−w} ⟨K⟩`.
pub fn normalized_bracket(pd: &PdCode, writhe: i64, opts: Enumeration) -> Result<SparsePoly> {
    let b = bracket(pd, opts)?;
    let w = i32::try_from(writhe).map_err(|_| Error::input("writhe out of range"))?;
    Ok(&b * &SparsePoly::monomial(&["A"], vec![3], -1).power(-w)?)
}

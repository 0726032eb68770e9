//! Polynomial invariants: the parametrized Tutte sum, Martin polynomials by
//! tracing and by matroid rank, the directed Martin polynomial, the
//! transition polynomial and the interlace polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2::xor_basis_rank;
use crate::graph::{count_circuits, euler_system, BalancedOrientation, FourRegularGraph, Pairing, Transversal};
use crate::matroid::{transition_matroid, BinaryMatroid};
use crate::par;
use crate::poly::SparsePoly;
use crate::simple_graph::SimpleGraph;

/// Largest number of subsets the unrestricted Tutte sum will visit.
pub const UNRESTRICTED_SUBSET_CAP: u64 = 1 << 20;
/// Default cap on enumerated transversals (`3^14`).
pub const DEFAULT_TRANSVERSAL_BUDGET: u64 = 4_782_969;

/// Worker count and enumeration budget for the exponential sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub workers: usize,
    pub budget: u64,
}

impl Default for Enumeration {
    fn default() -> Self {
        Self { workers: par::default_workers(), budget: DEFAULT_TRANSVERSAL_BUDGET }
    }
}

impl Enumeration {
    pub fn sequential() -> Self {
        Self { workers: 1, ..Self::default() }
    }

    fn transversals(&self, n: usize) -> Result<u64> {
        match Transversal::count(n) {
            Some(k) if k <= self.budget => Ok(k),
            _ => Err(Error::budget(format!("3^{n} transversals exceed the budget of {}", self.budget))),
        }
    }
}

/// Per-element weights `α(s)`, `β(s)`, all over the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    alpha: Vec<SparsePoly>,
    beta: Vec<SparsePoly>,
}

impl WeightAssignment {
    pub fn new(alpha: Vec<SparsePoly>, beta: Vec<SparsePoly>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::input("α and β need one value per element"));
        }
        if let Some(first) = alpha.first() {
            if alpha.iter().chain(&beta).any(|p| p.vars() != first.vars()) {
                return Err(Error::input("weights must share their variables"));
            }
        }
        Ok(Self { alpha, beta })
    }

    /// Integer weights with no variables.
    pub fn constants(alpha: &[i64], beta: &[i64]) -> Result<Self> {
        let c = |v: &[i64]| v.iter().map(|&k| SparsePoly::constant::<&str>(&[], k)).collect();
        Self::new(c(alpha), c(beta))
    }

    pub fn uniform(len: usize, alpha: i64, beta: i64) -> Self {
        Self::constants(&vec![alpha; len], &vec![beta; len]).expect("equal lengths")
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    fn weight_vars(&self) -> Vec<String> {
        self.alpha.first().map(|p| p.vars().to_vec()).unwrap_or_default()
    }

    fn as_constants(&self) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        if !self.weight_vars().is_empty() {
            return None;
        }
        let c = |v: &[SparsePoly]| v.iter().map(|p| p.coefficient(&[])).collect();
        Some((c(&self.alpha), c(&self.beta)))
    }
}

/// Sums weights into buckets keyed by `(r(S) − r(A), |A| − r(A))`, then
/// expands `(x−1)^i (y−1)^j` once per bucket.
fn expand_buckets<W>(buckets: BTreeMap<(u32, u32), W>, weight_vars: &[String], to_poly: impl Fn(W) -> SparsePoly) -> SparsePoly {
    let mut vars = vec!["x".to_string(), "y".to_string()];
    vars.extend(weight_vars.iter().cloned());
    let k = vars.len();
    let lift = |p: &SparsePoly| {
        let mut out = SparsePoly::zero(&vars);
        for (e, c) in p.terms() {
            let mut full = vec![0, 0];
            full.extend_from_slice(e);
            out.add_term(full, c.clone());
        }
        out
    };
    let one = SparsePoly::one(&vars);
    let xm1 = &SparsePoly::var(&vars, 0) - &one;
    let ym1 = &SparsePoly::var(&vars, 1) - &one;
    let mut out = SparsePoly::zero(&vars);
    for ((i, j), w) in buckets {
        let w = lift(&to_poly(w));
        out += &(&(&xm1.pow(i) * &ym1.pow(j)) * &w);
    }
    debug_assert_eq!(out.vars().len(), k);
    out
}

/// `Σ_A Π_{a∈A} α(a) Π_{s∉A} β(s) (x−1)^{r(S)−r(A)} (y−1)^{|A|−r(A)}`.
///
/// With `restrict_to_transversals` the ground set is read as consecutive
/// vertex triples and only subsets with exactly one element per triple are
/// summed. The result is over `x, y` followed by the weight variables.
pub fn tutte_eval(m: &BinaryMatroid, w: &WeightAssignment, restrict_to_transversals: bool, opts: Enumeration) -> Result<SparsePoly> {
    let len = m.len();
    if w.len() != len {
        return Err(Error::input(format!("{} weights for {len} elements", w.len())));
    }
    if len > 64 {
        return Err(Error::budget("more than 64 ground elements"));
    }
    let oracle = m.oracle();
    let full = oracle.rank_mask(if len == 64 { u64::MAX } else { (1u64 << len) - 1 }) as u32;
    let (total, subset_of): (u64, Box<dyn Fn(u64) -> u64 + Sync>) = if restrict_to_transversals {
        if !len.is_multiple_of(3) {
            return Err(Error::input("transversal mode needs vertex triples"));
        }
        let n = len / 3;
        let total = opts.transversals(n)?;
        (
            total,
            Box::new(move |k| {
                let t = Transversal::from_index(n, k);
                (0..n).fold(0u64, |acc, v| acc | 1 << (3 * v + t.at(v).index()))
            }),
        )
    } else {
        if len as u32 > UNRESTRICTED_SUBSET_CAP.trailing_zeros() {
            return Err(Error::budget(format!("2^{len} subsets exceed the cap of 2^20")));
        }
        (1u64 << len, Box::new(|k| k))
    };
    let bucket = |a: u64| {
        let r = oracle.rank_mask(a) as u32;
        (full - r, a.count_ones() - r)
    };
    let merge = |mut a: BTreeMap<(u32, u32), _>, b: BTreeMap<(u32, u32), _>| {
        for (k, v) in b {
            *a.entry(k).or_insert_with(BigInt::zero) += v;
        }
        a
    };
    if let Some((alpha, beta)) = w.as_constants() {
        let buckets = par::reduce_range(
            total,
            opts.workers,
            BTreeMap::new,
            |acc: &mut BTreeMap<(u32, u32), BigInt>, k| {
                let a = subset_of(k);
                let mut prod = BigInt::one();
                for s in 0..len {
                    prod *= if a >> s & 1 == 1 { &alpha[s] } else { &beta[s] };
                    if prod.is_zero() {
                        return;
                    }
                }
                *acc.entry(bucket(a)).or_insert_with(BigInt::zero) += prod;
            },
            merge,
        );
        return Ok(expand_buckets(buckets, &[], |c| SparsePoly::constant::<&str>(&[], c)));
    }
    let wv = w.weight_vars();
    let buckets = par::reduce_range(
        total,
        opts.workers,
        BTreeMap::new,
        |acc: &mut BTreeMap<(u32, u32), SparsePoly>, k| {
            let a = subset_of(k);
            let mut prod = SparsePoly::one(&wv);
            for s in 0..len {
                prod = &prod * if a >> s & 1 == 1 { &w.alpha[s] } else { &w.beta[s] };
                if prod.is_zero() {
                    return;
                }
            }
            let slot = acc.entry(bucket(a)).or_insert_with(|| SparsePoly::zero(&wv));
            *slot += &prod;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert_with(|| SparsePoly::zero(&wv)) += &v;
            }
            a
        },
    );
    Ok(expand_buckets(buckets, &wv, |p| p))
}

fn zeta_series(counts: &BTreeMap<i64, BigInt>, shift: i64) -> Result<SparsePoly> {
    let vars = ["ζ"];
    let zm1 = &SparsePoly::var(&vars, 0) - &SparsePoly::one(&vars);
    let mut out = SparsePoly::zero(&vars);
    for (&k, c) in counts {
        let e = k + shift;
        if e < 0 {
            return Err(Error::input("the Las Vergnas form needs at least one circuit"));
        }
        out += &zm1.pow(e as u32).scale(c);
    }
    Ok(out)
}

/// Histogram of `|P|` over the transversals chosen by `pick(k)`.
fn circuit_histogram(
    g: &FourRegularGraph,
    total: u64,
    opts: Enumeration,
    pick: impl Fn(u64) -> Option<Transversal> + Sync,
) -> BTreeMap<i64, BigInt> {
    let counts = par::reduce_range(
        total,
        opts.workers,
        BTreeMap::new,
        |acc: &mut BTreeMap<i64, u64>, k| {
            if let Some(t) = pick(k) {
                *acc.entry(count_circuits(g, &t) as i64).or_insert(0) += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    counts.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect()
}

/// `Σ_P (ζ−1)^{|P|−1}` by tracing every transversal.
pub fn martin_direct(g: &FourRegularGraph, opts: Enumeration) -> Result<SparsePoly> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("the Las Vergnas form needs at least one circuit"));
    }
    let total = opts.transversals(n)?;
    let h = circuit_histogram(g, total, opts, |k| Some(Transversal::from_index(n, k)));
    zeta_series(&h, -1)
}

/// The restricted Tutte sum of `M_τ(F)` with unit weights at `x = ζ`,
/// `y = 2`, times `(ζ−1)^{c(F)−1}`.
pub fn martin_via_matroid(g: &FourRegularGraph, opts: Enumeration) -> Result<SparsePoly> {
    martin_from_weights(g, |_, _| 1, opts)
}

fn martin_from_weights(g: &FourRegularGraph, alpha: impl Fn(usize, Pairing) -> i64, opts: Enumeration) -> Result<SparsePoly> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("the Las Vergnas form needs at least one circuit"));
    }
    let tm = transition_matroid(g, &euler_system(g));
    let a: Vec<i64> = (0..3 * n).map(|i| alpha(i / 3, Pairing::ALL[i % 3])).collect();
    let w = WeightAssignment::constants(&a, &vec![1; 3 * n])?;
    let f = tutte_eval(tm.matroid(), &w, true, opts)?;
    let vars = ["ζ"];
    let z = f.compose(&vars, &[SparsePoly::var(&vars, 0), SparsePoly::constant(&vars, 2)])?;
    let zm1 = &SparsePoly::var(&vars, 0) - &SparsePoly::one(&vars);
    let c = g.component_count() as i32;
    Ok(&z * &zm1.power(c - 1)?)
}

/// `Σ_P (ζ−1)^{|P|−1}` over the `2^n` partitions whose transitions all
/// respect the orientation.
pub fn directed_martin(g: &FourRegularGraph, o: &BalancedOrientation, opts: Enumeration) -> Result<SparsePoly> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("the Las Vergnas form needs at least one circuit"));
    }
    BalancedOrientation::new(g, o.roles().to_vec())?;
    if n > 40 || 1u64 << n > opts.budget {
        return Err(Error::budget(format!("2^{n} transversals exceed the budget of {}", opts.budget)));
    }
    let choices: Vec<[Pairing; 2]> = (0..n).map(|v| o.respecting_pairings(v)).collect();
    let h = circuit_histogram(g, 1 << n, opts, |k| {
        Some(Transversal::new((0..n).map(|v| choices[v][(k >> v & 1) as usize]).collect()))
    });
    zeta_series(&h, -1)
}

/// Directed Martin polynomial from the matroid, with `α = 0` on every
/// direction-violating transition.
pub fn directed_martin_via_matroid(g: &FourRegularGraph, o: &BalancedOrientation, opts: Enumeration) -> Result<SparsePoly> {
    BalancedOrientation::new(g, o.roles().to_vec())?;
    martin_from_weights(g, |v, p| o.respects(v, p) as i64, opts)
}

/// `Σ_P (Π_{τ∈τ(P)} w(τ)) y^{|P|−c(F)}`; `weights[3v + p]` is the weight of `t_p` at `v`.
pub fn transition_poly(g: &FourRegularGraph, weights: &[i64], opts: Enumeration) -> Result<SparsePoly> {
    let n = g.vertex_count();
    if weights.len() != 3 * n {
        return Err(Error::input(format!("expected {} weights, got {}", 3 * n, weights.len())));
    }
    let total = opts.transversals(n)?;
    let c = g.component_count() as i64;
    let buckets = par::reduce_range(
        total,
        opts.workers,
        BTreeMap::new,
        |acc: &mut BTreeMap<i64, BigInt>, k| {
            let t = Transversal::from_index(n, k);
            let mut w = BigInt::one();
            for v in 0..n {
                w *= weights[3 * v + t.at(v).index()];
                if w.is_zero() {
                    return;
                }
            }
            *acc.entry(count_circuits(g, &t) as i64 - c).or_insert_with(BigInt::zero) += w;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert_with(BigInt::zero) += v;
            }
            a
        },
    );
    let mut out = SparsePoly::zero(&["y"]);
    for (e, w) in buckets {
        out.add_term(vec![e as i32], w);
    }
    Ok(out)
}

/// Largest graph [`interlace_poly`] accepts.
pub const INTERLACE_MAX_VERTICES: usize = 20;

/// `q(H; x) = Σ_{S⊆V} (x−1)^{|S| − rank A[S]}`.
pub fn interlace_poly(h: &SimpleGraph, opts: Enumeration) -> Result<SparsePoly> {
    let n = h.vertex_count();
    if n > INTERLACE_MAX_VERTICES {
        return Err(Error::budget(format!("{n} vertices exceed {INTERLACE_MAX_VERTICES}")));
    }
    let rows = h.masks().expect("at most 20 vertices");
    let hist = par::reduce_range(
        1u64 << n,
        opts.workers,
        || vec![0u64; n + 1],
        |acc, s| {
            let rank = xor_basis_rank((0..n).filter(|v| s >> v & 1 == 1).map(|v| rows[v] & s));
            acc[s.count_ones() as usize - rank] += 1;
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let vars = ["x"];
    let xm1 = &SparsePoly::var(&vars, 0) - &SparsePoly::one(&vars);
    let mut out = SparsePoly::zero(&vars);
    for (k, &c) in hist.iter().enumerate() {
        if c > 0 {
            out += &xm1.pow(k as u32).scale(&BigInt::from(c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::balanced_orientation;

    fn seq() -> Enumeration {
        Enumeration::sequential()
    }

    #[test]
    fn tutte_eval_examples() {
        let (g, c) = corpus::from_word("a b a b");
        let tm = transition_matroid(&g, &c);
        let f = tutte_eval(tm.matroid(), &WeightAssignment::uniform(6, 1, 1), true, seq()).unwrap();
        assert_eq!(f.to_string(), "3xy-3x-3y+9");
        let free = BinaryMatroid::new(vec!["e".into()], crate::gf2::BitMatrix::identity(1)).unwrap();
        assert_eq!(tutte_eval(&free, &WeightAssignment::uniform(1, 1, 1), false, seq()).unwrap().to_string(), "x");
        let empty = BinaryMatroid::empty();
        assert_eq!(tutte_eval(&empty, &WeightAssignment::uniform(0, 1, 1), false, seq()).unwrap().to_string(), "1");
    }

    #[test]
    fn restricted_mode_visits_every_transversal_once() {
        for g in corpus::random_graphs(8, 1..=5, 12) {
            let tm = transition_matroid(&g, &euler_system(&g));
            let n = g.vertex_count() as i64;
            let f = tutte_eval(tm.matroid(), &WeightAssignment::uniform(3 * n as usize, 1, 1), true, seq()).unwrap();
            assert_eq!(f.evaluate(&[2, 2]).unwrap(), BigInt::from(3i64.pow(n as u32)));
        }
    }

    #[test]
    fn symbolic_weights() {
        let wv = ["a", "b"];
        let n = 1;
        let alpha = vec![SparsePoly::var(&wv, 0); 3 * n];
        let beta = vec![SparsePoly::var(&wv, 1); 3 * n];
        let g = corpus::two_loop_vertex();
        let tm = transition_matroid(&g, &euler_system(&g));
        let f = tutte_eval(tm.matroid(), &WeightAssignment::new(alpha, beta).unwrap(), true, seq()).unwrap();
        // Two coloops and one loop.
        assert_eq!(f.to_string(), "xyab^2-xab^2-yab^2+3ab^2");
    }

    #[test]
    fn martin_examples() {
        let (abab, _) = corpus::from_word("a b a b");
        assert_eq!(martin_direct(&abab, seq()).unwrap().to_string(), "3ζ+3");
        assert_eq!(martin_via_matroid(&abab, seq()).unwrap().to_string(), "3ζ+3");
        let v = corpus::two_loop_vertex();
        assert_eq!(martin_direct(&v, seq()).unwrap().to_string(), "ζ+1");
        assert_eq!(martin_via_matroid(&v, seq()).unwrap().to_string(), "ζ+1");
        assert!(martin_direct(&FourRegularGraph::empty(), seq()).is_err());
    }

    #[test]
    fn martin_of_disjoint_union() {
        let graphs = corpus::random_graphs(6, 1..=3, 8);
        for pair in graphs.chunks(2) {
            let u = pair[0].disjoint_union(&corpus::renamed(&pair[1], "q")).unwrap();
            let zm1 = &SparsePoly::var(&["ζ"], 0) - &SparsePoly::one(&["ζ"]);
            let expect = &(&zm1 * &martin_direct(&pair[0], seq()).unwrap()) * &martin_direct(&pair[1], seq()).unwrap();
            assert_eq!(martin_direct(&u, seq()).unwrap(), expect);
            assert_eq!(martin_via_matroid(&u, seq()).unwrap(), expect);
        }
    }

    #[test]
    fn directed_examples() {
        let v = corpus::two_loop_vertex();
        let o = balanced_orientation(&v);
        assert_eq!(directed_martin(&v, &o, seq()).unwrap().to_string(), "ζ");
        assert_eq!(directed_martin(&v, &o.reversed(), seq()).unwrap().to_string(), "ζ");
        for g in corpus::random_graphs(10, 1..=6, 6) {
            let o = balanced_orientation(&g);
            let d = directed_martin(&g, &o, seq()).unwrap();
            assert_eq!(d, directed_martin_via_matroid(&g, &o, seq()).unwrap());
            assert_eq!(d, directed_martin(&g, &o.reversed(), seq()).unwrap());
            assert_eq!(d.evaluate(&[2]).unwrap(), BigInt::from(1u64 << g.vertex_count()));
        }
    }

    #[test]
    fn transition_poly_examples() {
        let (abab, _) = corpus::from_word("a b a b");
        assert_eq!(transition_poly(&abab, &[1; 6], seq()).unwrap().to_string(), "3y+6");
        let mut w = [1; 6];
        w[0] = 0;
        assert_eq!(transition_poly(&abab, &w, seq()).unwrap().evaluate(&[1]).unwrap(), BigInt::from(6));
        for g in corpus::random_graphs(8, 1..=5, 1) {
            let n = g.vertex_count();
            let t = transition_poly(&g, &vec![1; 3 * n], seq()).unwrap();
            assert_eq!(t.evaluate(&[1]).unwrap(), BigInt::from(3u64.pow(n as u32)));
        }
    }

    #[test]
    fn interlace_examples() {
        for n in 0..=6 {
            let q = interlace_poly(&SimpleGraph::edgeless_numbered(n), seq()).unwrap();
            assert_eq!(q, SparsePoly::monomial(&["x"], vec![n as i32], 1));
        }
        assert_eq!(interlace_poly(&SimpleGraph::complete(2), seq()).unwrap().to_string(), "2x");
        assert!(interlace_poly(&SimpleGraph::edgeless_numbered(21), seq()).is_err());
    }

    #[test]
    fn worker_count_is_invisible() {
        let g = &corpus::random_connected_graphs(1, 8..=8, 4)[0];
        let many = Enumeration { workers: 6, ..Enumeration::default() };
        assert_eq!(martin_direct(g, seq()).unwrap(), martin_direct(g, many).unwrap());
        assert_eq!(martin_via_matroid(g, seq()).unwrap(), martin_via_matroid(g, many).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let g = &corpus::random_graphs(1, 6..=6, 2)[0];
        let tight = Enumeration { workers: 1, budget: 10 };
        assert!(matches!(martin_direct(g, tight), Err(Error::Budget(_))));
    }
}

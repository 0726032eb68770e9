//! Small named graphs and seeded random generators used by tests,
//! examples and benchmarks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{CutPair, EulerSystem, FourRegularGraph, HalfEdge};
use crate::ribbon::RibbonGraph;
use crate::words::{graph_from_family, parse_dow};

fn letter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("v{i}")).collect()
    }
}

/// Builds a graph from vertex pairs, filling slots in edge order. A loop
/// takes the next two free slots.
pub fn from_simple_edges(names: Vec<String>, edges: &[(usize, usize)]) -> FourRegularGraph {
    let mut used = vec![0usize; names.len()];
    let mut take = |v: usize| {
        let h = 4 * v + used[v];
        used[v] += 1;
        assert!(used[v] <= 4, "vertex {v} has degree above 4");
        h
    };
    let he: Vec<[HalfEdge; 2]> = edges.iter().map(|&(a, b)| [take(a), take(b)]).collect();
    assert!(used.iter().all(|&u| u == 4), "every vertex needs degree 4");
    FourRegularGraph::from_half_edges(names, he)
}

/// One vertex `v` with loops on slots `0-1` and `2-3`.
pub fn two_loop_vertex() -> FourRegularGraph {
    two_loop_vertex_named("v")
}

pub fn two_loop_vertex_named(name: &str) -> FourRegularGraph {
    FourRegularGraph::from_half_edges(vec![name.to_string()], vec![[0, 1], [2, 3]])
}

/// Graph and Euler system of a double occurrence word such as `"a b a b"`.
pub fn from_word(text: &str) -> (FourRegularGraph, EulerSystem) {
    graph_from_family(&parse_dow(text).expect("fixture word parses"))
}

/// The triangle with every edge doubled, from the word `abcabc`.
pub fn doubled_triangle() -> FourRegularGraph {
    from_word("a b c a b c").0
}

/// The octahedron `K_{2,2,2}`, with opposite pairs `a-b`, `c-d`, `e-f`.
pub fn octahedron() -> FourRegularGraph {
    let mut edges = Vec::new();
    for u in 0..6 {
        for w in u + 1..6 {
            if u / 2 != w / 2 {
                edges.push((u, w));
            }
        }
    }
    from_simple_edges(letter_names(6), &edges)
}

/// The complete graph `K5`.
pub fn k5() -> FourRegularGraph {
    let mut edges = Vec::new();
    for u in 0..5 {
        for w in u + 1..5 {
            edges.push((u, w));
        }
    }
    from_simple_edges(letter_names(5), &edges)
}

/// A connected graph with a 4-edge cut, split into two pairs.
///
/// One side is `K4` on `a b c d`; the other has double edges `e-f`, `g-h`
/// and single edges `e-g`, `f-h`. The cut edges are `a-e`, `b-f`, `c-g`,
/// `d-h`, paired as `(a-e, b-f)` and `(c-g, d-h)`.
pub fn mutation_example() -> (FourRegularGraph, [CutPair; 2]) {
    let (a, b, c, d, e, f, g, h) = (0, 1, 2, 3, 4, 5, 6, 7);
    let edges = [
        (a, b),
        (a, c),
        (a, d),
        (b, c),
        (b, d),
        (c, d),
        (e, f),
        (e, f),
        (g, h),
        (g, h),
        (e, g),
        (f, h),
        (a, e),
        (b, f),
        (c, g),
        (d, h),
    ];
    (from_simple_edges(letter_names(8), &edges), [CutPair(12, 13), CutPair(14, 15)])
}

/// Uniform random pairing of `4n` half-edges; loops and parallel edges allowed.
pub fn random_graph(n: usize, rng: &mut impl Rng) -> FourRegularGraph {
    let mut halves: Vec<HalfEdge> = (0..4 * n).collect();
    halves.shuffle(rng);
    let edges = halves.chunks(2).map(|c| [c[0], c[1]]).collect();
    FourRegularGraph::from_half_edges(letter_names(n), edges)
}

/// `count` seeded random graphs with vertex counts drawn from `sizes`.
pub fn random_graphs(count: usize, sizes: RangeInclusive<usize>, seed: u64) -> Vec<FourRegularGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(sizes.clone());
            random_graph(n, &mut rng)
        })
        .collect()
}

/// Like [`random_graphs`] but rejects disconnected samples.
pub fn random_connected_graphs(count: usize, sizes: RangeInclusive<usize>, seed: u64) -> Vec<FourRegularGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(sizes.clone());
        let g = random_graph(n, &mut rng);
        if g.component_count() == 1 {
            out.push(g);
        }
    }
    out
}

/// Random graph whose first `left` vertices and last `right` vertices are
/// joined by exactly four edges, listed last and paired `(0,1)`, `(2,3)`.
pub fn random_four_cut_graph(left: usize, right: usize, rng: &mut impl Rng) -> (FourRegularGraph, [CutPair; 2]) {
    assert!(left > 0 && right > 0);
    let side = |lo: usize, n: usize, rng: &mut ChaCha8Rng| {
        let mut h: Vec<HalfEdge> = (4 * lo..4 * (lo + n)).collect();
        h.shuffle(rng);
        let free = h.split_off(h.len() - 4);
        (h.chunks(2).map(|c| [c[0], c[1]]).collect::<Vec<_>>(), free)
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let (mut edges, a) = side(0, left, &mut local);
    let (inner, mut b) = side(left, right, &mut local);
    edges.extend(inner);
    b.shuffle(&mut local);
    let m = edges.len();
    edges.extend(a.into_iter().zip(b).map(|(x, y)| [x, y]));
    (
        FourRegularGraph::from_half_edges(letter_names(left + right), edges),
        [CutPair(m, m + 1), CutPair(m + 2, m + 3)],
    )
}

/// Same graph with every vertex name prefixed.
pub fn renamed(g: &FourRegularGraph, prefix: &str) -> FourRegularGraph {
    let names = g.names().iter().map(|n| format!("{prefix}{n}")).collect();
    FourRegularGraph::from_half_edges(names, g.edges().to_vec())
}

/// One vertex with a single loop of the given sign.
pub fn ribbon_loop(sign: i8) -> RibbonGraph {
    RibbonGraph::from_rotations(vec![vec![0, 1]], vec![sign]).expect("fixture")
}

/// Two vertices joined by one untwisted edge.
pub fn ribbon_edge() -> RibbonGraph {
    RibbonGraph::from_rotations(vec![vec![0], vec![1]], vec![1]).expect("fixture")
}

/// One vertex with two interleaved untwisted loops: a punctured torus.
pub fn ribbon_torus() -> RibbonGraph {
    RibbonGraph::from_rotations(vec![vec![0, 2, 1, 3]], vec![1, 1]).expect("fixture")
}

/// One vertex with two nested untwisted loops: a plane figure eight.
pub fn ribbon_figure_eight() -> RibbonGraph {
    RibbonGraph::from_rotations(vec![vec![0, 1, 2, 3]], vec![1, 1]).expect("fixture")
}

/// Plane cycle on `k` vertices.
pub fn ribbon_cycle(k: usize) -> RibbonGraph {
    // Edge i joins vertex i (half 2i) to vertex i+1 (half 2i+1).
    let rotation = (0..k).map(|v| vec![2 * v, 2 * ((v + k - 1) % k) + 1]).collect();
    RibbonGraph::from_rotations(rotation, vec![1; k]).expect("fixture")
}

/// Plane theta graph: two vertices, three parallel edges.
pub fn ribbon_theta() -> RibbonGraph {
    RibbonGraph::from_rotations(vec![vec![0, 2, 4], vec![5, 3, 1]], vec![1, 1, 1]).expect("fixture")
}

/// Random rotation system with `vertices` vertices and `edges` edges, each
/// edge untwisted with probability one half (always, when `orientable`).
pub fn random_ribbon_graph(vertices: usize, edges: usize, orientable: bool, rng: &mut impl Rng) -> RibbonGraph {
    assert!(vertices > 0 || edges == 0);
    let mut rotation = vec![Vec::new(); vertices];
    let mut halves: Vec<usize> = (0..2 * edges).collect();
    halves.shuffle(rng);
    for h in halves {
        rotation[rng.gen_range(0..vertices)].push(h);
    }
    let sign = (0..edges)
        .map(|_| if orientable || rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    RibbonGraph::from_rotations(rotation, sign).expect("random rotation is valid")
}

/// `count` seeded random ribbon graphs with `1..=3` vertices and edge counts from `edges`.
pub fn random_ribbon_graphs(count: usize, edges: RangeInclusive<usize>, seed: u64) -> Vec<RibbonGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(1..=3);
            let e = rng.gen_range(edges.clone());
            random_ribbon_graph(v, e, false, &mut rng)
        })
        .collect()
}

/// Every ribbon graph on `edges` labelled edges without isolated vertices:
/// one per permutation of the `2 * edges` half-edges (its cycles are the
/// rotations) and per sign vector. There are `(2m)! * 2^m` of them.
pub fn all_ribbon_graphs(edges: usize) -> Vec<RibbonGraph> {
    let k = 2 * edges;
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for i in 0..k {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=i).map(move |at| {
                    let mut q = p.clone();
                    q.insert(at, i);
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::with_capacity(perms.len() << edges);
    for p in perms {
        let mut seen = vec![false; k];
        let mut rotation = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = p[h];
            }
            rotation.push(cycle);
        }
        for signs in 0..1u32 << edges {
            let sign = (0..edges).map(|e| if signs >> e & 1 == 1 { -1 } else { 1 }).collect();
            out.push(RibbonGraph::from_rotations(rotation.clone(), sign).expect("cycles cover every half-edge"));
        }
    }
    out
}

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transmat::corpus;
use transmat::graph::{
    balanced_mutation, connected_sum, count_circuits, euler_system, interlacement, is_planar, kappa_transform,
    separation, FourRegularGraph, Pairing, Planarity, Reattachment, SumMatching, Transversal,
};
use transmat::matroid::{check_dual_pair, find_dual_pair};

fn graph(seed: u64, sizes: std::ops::RangeInclusive<usize>) -> FourRegularGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(sizes);
    corpus::random_graph(n, &mut rng)
}

/// `|P_t| − c(F)` for every transversal, in index order.
fn excess(g: &FourRegularGraph) -> Vec<i64> {
    let c = g.component_count() as i64;
    Transversal::all(g.vertex_count()).map(|t| count_circuits(g, &t) as i64 - c).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn one_vertex_changes_give_k_k_k_plus_one(seed in any::<u64>(), pick in any::<u64>()) {
        let g = graph(seed, 1..=7);
        let n = g.vertex_count();
        let t = Transversal::from_index(n, pick % Transversal::count(n).unwrap());
        let v = (pick as usize / 7) % n;
        let mut sizes: Vec<usize> = Pairing::ALL.iter().map(|&p| count_circuits(&g, &t.with(v, p))).collect();
        sizes.sort_unstable();
        prop_assert_eq!(sizes[0], sizes[1]);
        prop_assert_eq!(sizes[2], sizes[0] + 1);
    }

    #[test]
    fn kappa_is_an_involution_and_local_complement(seed in any::<u64>(), pick in any::<usize>()) {
        let g = graph(seed, 1..=8);
        let c = euler_system(&g);
        let v = pick % g.vertex_count();
        let k = kappa_transform(&g, &c, v);
        let back = kappa_transform(&g, &k, v);
        prop_assert_eq!(back.transversal(), c.transversal());
        prop_assert_eq!(interlacement(&g, &k), interlacement(&g, &c).local_complement(v));
    }

    #[test]
    fn sums_and_separations_keep_circuit_excess(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n1 = rng.gen_range(1..=3);
        let n2 = rng.gen_range(1..=6 - n1);
        let g1 = corpus::random_graph(n1, &mut rng);
        let g2 = corpus::renamed(&corpus::random_graph(n2, &mut rng), "z");
        let (e1, e2) = (rng.gen_range(0..g1.edge_count()), rng.gen_range(0..g2.edge_count()));
        let m = if rng.gen_bool(0.5) { SumMatching::Straight } else { SumMatching::Crossed };
        let s = connected_sum(&g1, e1, &g2, e2, m).unwrap();
        let union = g1.disjoint_union(&g2).unwrap();
        prop_assert_eq!(excess(&s), excess(&union));
        let back = separation(&s, e1, g1.edge_count() + e2).unwrap();
        prop_assert_eq!(excess(&back), excess(&s));
    }

    #[test]
    fn mutations_keep_circuit_excess(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = rng.gen_range(1..=5);
        let right = rng.gen_range(1..=6 - left);
        let (g, cut) = corpus::random_four_cut_graph(left, right, &mut rng);
        let h = balanced_mutation(&g, cut, &Reattachment::Swap).unwrap();
        prop_assert_eq!(excess(&g), excess(&h));
    }
}

#[test]
fn planarity_agrees_with_full_dual_pair_scan() {
    let mut graphs = corpus::random_graphs(60, 1..=5, 404);
    graphs.extend([corpus::k5(), corpus::octahedron(), corpus::doubled_triangle()].into_iter().filter(|g| g.vertex_count() <= 5));
    for g in &graphs {
        let n = g.vertex_count();
        // Every ordered pair of disjoint transversals.
        let mut any = false;
        'scan: for t1 in Transversal::all(n) {
            for t2 in Transversal::all(n) {
                if t1.disjoint_from(&t2) && check_dual_pair(g, &t1, &t2).unwrap().is_dual_pair {
                    any = true;
                    break 'scan;
                }
            }
        }
        assert_eq!(find_dual_pair(g).is_some(), any);
        assert_eq!(is_planar(g, 1_000_000) == Planarity::Planar, any, "{}", g.to_frg());
    }
}

#[test]
fn mutation_example_keeps_circuit_excess() {
    let (g, cut) = corpus::mutation_example();
    let h = balanced_mutation(&g, cut, &Reattachment::Swap).unwrap();
    assert!(!h.same_edges(&g));
    let (a, b) = (euler_system(&g), euler_system(&h));
    let tm = |g: &FourRegularGraph, c| transmat::matroid::transition_matroid(g, c);
    let (ma, mb) = (tm(&g, &a), tm(&h, &b));
    // Spot-check a few thousand of the 3^8 transversals.
    for k in (0..Transversal::count(8).unwrap()).step_by(3) {
        let t = Transversal::from_index(8, k);
        assert_eq!(ma.rank_of_transversal(&t), mb.rank_of_transversal(&t));
        assert_eq!(count_circuits(&g, &t), count_circuits(&h, &t));
    }
}

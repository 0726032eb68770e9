use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transmat::corpus;
use transmat::graph::{euler_system, interlacement, kappa_transform, FourRegularGraph};
use transmat::invariants::{
    interlace_poly, martin_direct, martin_via_matroid, transition_poly, tutte_eval, Enumeration, WeightAssignment,
};
use transmat::matroid::transition_matroid;
use transmat::poly::SparsePoly;
use transmat::simple_graph::SimpleGraph;

fn graph(seed: u64, sizes: std::ops::RangeInclusive<usize>) -> FourRegularGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(sizes);
    corpus::random_graph(n, &mut rng)
}

fn seq() -> Enumeration {
    Enumeration::sequential()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn martin_routes_agree(seed in any::<u64>()) {
        let g = graph(seed, 1..=6);
        prop_assert_eq!(martin_direct(&g, seed_opts(seed)).unwrap(), martin_via_matroid(&g, seq()).unwrap());
    }

    #[test]
    fn unit_transition_poly_counts_transversals(seed in any::<u64>()) {
        let g = graph(seed, 1..=6);
        let n = g.vertex_count();
        let p = transition_poly(&g, &vec![1; 3 * n], seq()).unwrap();
        prop_assert_eq!(p.evaluate(&[1]).unwrap(), BigInt::from(3u64.pow(n as u32)));
    }

    #[test]
    fn restricted_tutte_sees_every_transversal(seed in any::<u64>()) {
        let g = graph(seed, 1..=6);
        let n = g.vertex_count();
        let tm = transition_matroid(&g, &euler_system(&g));
        let f = tutte_eval(tm.matroid(), &WeightAssignment::uniform(3 * n, 1, 1), true, seq()).unwrap();
        // At x = y = 2 every transversal contributes exactly 1.
        prop_assert_eq!(f.evaluate(&[2, 2]).unwrap(), BigInt::from(3u64.pow(n as u32)));
    }

    #[test]
    fn interlace_at_two_is_two_to_the_n(seed in any::<u64>(), v in any::<usize>()) {
        let g = graph(seed, 1..=7);
        let n = g.vertex_count();
        let c = euler_system(&g);
        for h in [interlacement(&g, &c), interlacement(&g, &kappa_transform(&g, &c, v % n))] {
            let q = interlace_poly(&h, seq()).unwrap();
            prop_assert_eq!(q.evaluate(&[2]).unwrap(), BigInt::from(1u64 << n));
        }
    }
}

fn seed_opts(seed: u64) -> Enumeration {
    Enumeration { workers: 1 + (seed % 4) as usize, ..Enumeration::default() }
}

#[test]
fn interlace_examples() {
    let q = |h: &SimpleGraph| interlace_poly(h, seq()).unwrap().to_string();
    for n in 2..=6 {
        assert_eq!(q(&SimpleGraph::edgeless_numbered(n)), format!("x^{n}"));
    }
    assert_eq!(q(&SimpleGraph::complete(2)), "2x");
    assert_eq!(q(&SimpleGraph::complete(3)), "4x");
}

/// Local complementation does not preserve the vertex-nullity interlace
/// polynomial: the path `a-b-c` and its local complement at `b`, the
/// triangle, already differ. The sweep below records how often it holds.
#[test]
fn local_complementation_is_not_an_invariance() {
    let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let path = SimpleGraph::from_edges(names, &[(0, 1), (1, 2)]);
    let tri = path.local_complement(1);
    assert_eq!(tri.edge_count(), 3);
    let (qp, qt) = (interlace_poly(&path, seq()).unwrap(), interlace_poly(&tri, seq()).unwrap());
    assert_eq!(qp.to_string(), "x^2+2x");
    assert_eq!(qt.to_string(), "4x");

    let (mut same, mut total) = (0, 0);
    for g in corpus::random_graphs(60, 1..=6, 61) {
        let c = euler_system(&g);
        let base = interlace_poly(&interlacement(&g, &c), seq()).unwrap();
        for v in 0..g.vertex_count() {
            let other = interlace_poly(&interlacement(&g, &kappa_transform(&g, &c, v)), seq()).unwrap();
            same += (other == base) as usize;
            total += 1;
        }
    }
    assert!(same < total, "every sampled local complement kept q");
    assert!(same > 0);
}

#[test]
fn weights_can_be_symbolic() {
    let wv = ["a"];
    let g = corpus::from_word("a b a b").0;
    let tm = transition_matroid(&g, &euler_system(&g));
    let alpha = vec![SparsePoly::var(&wv, 0); 6];
    let beta = vec![SparsePoly::one(&wv); 6];
    let f = tutte_eval(tm.matroid(), &WeightAssignment::new(alpha, beta).unwrap(), true, seq()).unwrap();
    let at_one = f.compose(&["x", "y"], &[SparsePoly::var(&["x", "y"], 0), SparsePoly::var(&["x", "y"], 1), SparsePoly::one(&["x", "y"])]).unwrap();
    let plain = tutte_eval(tm.matroid(), &WeightAssignment::uniform(6, 1, 1), true, seq()).unwrap();
    assert_eq!(at_one, plain);
}

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transmat::graph::{count_circuits, euler_system};
use transmat::invariants::Enumeration;
use transmat::knots::{bracket, diagram_to_graph, normalized_bracket, PdCode};
use transmat::matroid::transition_matroid;
use transmat::poly::SparsePoly;

const SEEDS: [&str; 4] = [
    "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2",
    "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8",
    "X 4 1 3 2\nX 2 3 1 4",
    "X 1 1 2 2",
];

fn seq() -> Enumeration {
    Enumeration::sequential()
}

fn a_pow(e: i32, c: i64) -> SparsePoly {
    SparsePoly::monomial(&["A"], vec![e], c)
}

/// A seed diagram grown by a few random kinks and R2 moves.
fn diagram(seed: u64) -> PdCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = [-3, 0, 2, 1];
    let i = rng.gen_range(0..SEEDS.len());
    let mut pd = SEEDS[i].parse::<PdCode>().unwrap().with_writhe(w[i]);
    for _ in 0..rng.gen_range(0..=2) {
        let arcs: Vec<i64> = pd.crossings().iter().flatten().copied().collect();
        let arc = arcs[rng.gen_range(0..arcs.len())];
        pd = pd.add_kink(arc, rng.gen_bool(0.5)).unwrap();
    }
    let ok: Vec<usize> = (0..pd.crossings().len()).filter(|&j| pd.crossings()[j][0] != pd.crossings()[j][1]).collect();
    if !ok.is_empty() && rng.gen_bool(0.5) {
        pd = pd.add_r2(ok[rng.gen_range(0..ok.len())]).unwrap();
    }
    pd
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kinks_multiply_by_minus_a_cubed(seed in any::<u64>(), pick in any::<usize>(), positive in any::<bool>()) {
        let pd = diagram(seed);
        let arcs: Vec<i64> = pd.crossings().iter().flatten().copied().collect();
        let k = pd.add_kink(arcs[pick % arcs.len()], positive).unwrap();
        let e = if positive { 3 } else { -3 };
        prop_assert_eq!(bracket(&k, seq()).unwrap(), &bracket(&pd, seq()).unwrap() * &a_pow(e, -1));
        let (w, wk) = (pd.writhe().unwrap(), k.writhe().unwrap());
        prop_assert_eq!(normalized_bracket(&k, wk, seq()).unwrap(), normalized_bracket(&pd, w, seq()).unwrap());
    }

    #[test]
    fn r2_moves_keep_the_bracket(seed in any::<u64>(), pick in any::<usize>()) {
        let pd = diagram(seed);
        let ok: Vec<usize> = (0..pd.crossings().len()).filter(|&j| pd.crossings()[j][0] != pd.crossings()[j][1]).collect();
        prop_assume!(!ok.is_empty());
        let r = pd.add_r2(ok[pick % ok.len()]).unwrap();
        prop_assert_eq!(r.crossings().len(), pd.crossings().len() + 2);
        prop_assert_eq!(bracket(&r, seq()).unwrap(), bracket(&pd, seq()).unwrap());
    }

    #[test]
    fn disjoint_union_multiplies_by_the_loop_value(a in any::<u64>(), b in any::<u64>()) {
        let (p, q) = (diagram(a), diagram(b));
        let d = &a_pow(2, -1) + &a_pow(-2, -1);
        let u = p.disjoint_union(&q);
        let lhs = bracket(&u, seq()).unwrap();
        prop_assert_eq!(lhs, &(&bracket(&p, seq()).unwrap() * &bracket(&q, seq()).unwrap()) * &d);
    }

    #[test]
    fn smoothing_loops_follow_from_matroid_rank(seed in any::<u64>()) {
        let pd = diagram(seed);
        let (g, s, free) = diagram_to_graph(&pd);
        let tm = transition_matroid(&g, &euler_system(&g));
        let (n, c) = (g.vertex_count(), g.component_count());
        for t in [&s.a, &s.b] {
            prop_assert_eq!(count_circuits(&g, t), n + c - tm.rank_of_transversal(t));
        }
        prop_assert_eq!(free, 0);
        // The all-A and all-B states bound the span.
        let br = bracket(&pd, seq()).unwrap();
        let (la, lb) = (count_circuits(&g, &s.a) as i32, count_circuits(&g, &s.b) as i32);
        for (e, _) in br.terms() {
            prop_assert!(e[0] <= n as i32 + 2 * (la - 1));
            prop_assert!(e[0] >= -(n as i32) - 2 * (lb - 1));
        }
    }
}

#[test]
fn free_loops_count_as_unknots() {
    let two: PdCode = "loops: 2\n".parse().unwrap();
    assert_eq!(bracket(&two, seq()).unwrap().to_string(), "-A^2-A^-2");
    assert_eq!(bracket(&"".parse::<PdCode>().unwrap(), seq()).unwrap().to_string(), "1");
    assert!(bracket(&PdCode::new(Vec::new(), 0).unwrap(), seq()).is_err());
}

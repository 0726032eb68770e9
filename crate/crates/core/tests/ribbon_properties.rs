use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transmat::corpus;
use transmat::graph::{count_circuits, euler_system, FourRegularGraph, Transversal};
use transmat::invariants::Enumeration;
use transmat::matroid::{check_dual_pair, identity_map, same_rank_function, transition_matroid};
use transmat::ribbon::{
    bollobas_riordan, designated_equivalent, euler_genus, from_partitions, geometric_dual, medial, orientable,
    orientable_by_partitions, twisted_dual, Medial, RibbonGraph, Twist,
};

fn small_ribbon_graphs() -> Vec<RibbonGraph> {
    let mut out: Vec<RibbonGraph> = (0..=3).flat_map(corpus::all_ribbon_graphs).collect();
    out.extend(corpus::random_ribbon_graphs(200, 4..=5, 8080));
    out
}

fn round_trips(g: &RibbonGraph) -> bool {
    let m = medial(g);
    let back = from_partitions(&m.graph, &m.delta, &m.epsilon).unwrap();
    // Isolated vertices leave no trace in the medial graph.
    let mut bm = medial(&back);
    bm.isolated = m.isolated;
    back.vertex_count() + m.isolated == g.vertex_count()
        && designated_equivalent(&bm, &m)
        && (m.isolated > 0 || back.is_equivalent(g))
}

fn plane(g: &RibbonGraph) -> bool {
    euler_genus(g).components.iter().all(|c| c.euler_characteristic == 2)
}

#[test]
fn medial_round_trip_on_small_ribbon_graphs() {
    for g in small_ribbon_graphs() {
        assert!(round_trips(&g), "{g}");
    }
}

#[test]
fn partition_round_trip_for_every_pair_on_small_graphs() {
    let mut graphs: Vec<FourRegularGraph> = corpus::random_graphs(12, 1..=4, 4141);
    graphs.push(corpus::two_loop_vertex());
    graphs.push(corpus::from_word("a b a b").0);
    for f in graphs {
        let n = f.vertex_count();
        for delta in Transversal::all(n) {
            for mask in 0..1u32 << n {
                let eps = Transversal::new((0..n).map(|v| delta.at(v).others()[(mask >> v & 1) as usize]).collect());
                let g = from_partitions(&f, &delta, &eps).unwrap();
                let orig = Medial { graph: f.clone(), delta: delta.clone(), epsilon: eps, isolated: 0 };
                assert!(designated_equivalent(&orig, &medial(&g)), "{}δ={delta}", f.to_frg());
                assert_eq!(g.vertex_count(), count_circuits(&f, &delta));
            }
        }
    }
}

#[test]
fn cycle_matroid_is_dual_to_the_delta_restriction() {
    for g in small_ribbon_graphs().into_iter().step_by(7) {
        let m = medial(&g);
        if m.graph.vertex_count() == 0 {
            continue;
        }
        let tm = transition_matroid(&m.graph, &euler_system(&m.graph));
        let d = tm.matroid().restrict(&m.delta.ground_indices()).unwrap().dual();
        let cm = g.cycle_matroid();
        assert!(same_rank_function(&d, &cm, &identity_map(cm.len()), 18).unwrap(), "{g}");
    }
}

#[test]
fn plane_iff_delta_epsilon_dual_pair() {
    for g in small_ribbon_graphs() {
        let m = medial(&g);
        if m.graph.vertex_count() == 0 {
            continue;
        }
        let r = check_dual_pair(&m.graph, &m.delta, &m.epsilon).unwrap();
        assert_eq!(plane(&g), r.is_dual_pair, "{g}");
    }
}

#[test]
fn orientability_two_ways() {
    for g in small_ribbon_graphs() {
        assert_eq!(orientable(&g), orientable_by_partitions(&g).unwrap(), "{g}");
    }
}

#[test]
fn twisted_duals_share_the_medial_and_dual_is_an_involution() {
    for g in corpus::random_ribbon_graphs(40, 1..=4, 99) {
        let m = medial(&g).graph;
        for t in Twist::all() {
            let tw = twisted_dual(&g, &vec![t; g.edge_count()]).unwrap();
            assert!(transmat::ribbon::same_underlying_graph(&m, &medial(&tw).graph));
        }
        assert!(geometric_dual(&geometric_dual(&g)).is_equivalent(&g));
    }
}

#[test]
fn plane_duals_swap_tutte_variables() {
    let opts = Enumeration::sequential();
    let xyz = ["x", "y", "z"];
    let v = |i| transmat::poly::SparsePoly::var(&xyz, i);
    for g in corpus::random_ribbon_graphs(60, 1..=5, 3131).into_iter().filter(plane) {
        let r = bollobas_riordan(&g, opts).unwrap();
        let rd = bollobas_riordan(&geometric_dual(&g), opts).unwrap();
        // For plane graphs R(x, y, z) = T(x, y + 1), so the dual swaps x and y + 1.
        let one = transmat::poly::SparsePoly::one(&xyz);
        let swapped = r.compose(&xyz, &[&v(1) + &one, &v(0) - &one, v(2)]).unwrap();
        assert_eq!(rd, swapped, "{g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_bookkeeping(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = rng.gen_range(1..=4);
        let e = rng.gen_range(0..=7);
        let g = corpus::random_ribbon_graph(v, e, rng.gen_bool(0.3), &mut rng);
        let m = medial(&g);
        let s = euler_genus(&g);
        // χ = |δ| − |V(F)| + |ε| once isolated disks are counted.
        let faces = count_circuits(&m.graph, &m.epsilon) + m.isolated;
        let delta = count_circuits(&m.graph, &m.delta) + m.isolated;
        prop_assert_eq!(s.euler_characteristic, delta as i64 - e as i64 + faces as i64);
        prop_assert_eq!(delta, g.vertex_count());
        for c in &s.components {
            prop_assert!(c.euler_genus >= 0);
            if c.orientable {
                prop_assert_eq!(c.euler_genus % 2, 0);
            }
        }
        prop_assert_eq!(s.orientable, orientable(&g));
    }

    #[test]
    fn vertex_flips_are_equivalences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = corpus::random_ribbon_graph(rng.gen_range(1..=3), rng.gen_range(0..=5), false, &mut rng);
        let v = rng.gen_range(0..g.vertex_count());
        let f = g.flip_vertex(v);
        prop_assert!(f.is_equivalent(&g));
        prop_assert_eq!(bollobas_riordan(&f, Enumeration::sequential()).unwrap(), bollobas_riordan(&g, Enumeration::sequential()).unwrap());
    }
}

//! Weighted transition polynomials and the restricted Tutte evaluation.

use transmat::corpus;
use transmat::graph::euler_system;
use transmat::invariants::{transition_poly, tutte_eval, Enumeration, WeightAssignment};
use transmat::matroid::transition_matroid;

fn main() {
    let opts = Enumeration::default();
    let g = corpus::doubled_triangle();
    let n = g.vertex_count();
    // Weight 1 on P0, 2 on P1, 0 on P2 at every vertex.
    let w: Vec<i64> = (0..n).flat_map(|_| [1, 2, 0]).collect();
    println!("q(F; w) = {}", transition_poly(&g, &w, opts).unwrap());
    println!("q(F; 1) = {}", transition_poly(&g, &vec![1; 3 * n], opts).unwrap());
    let tm = transition_matroid(&g, &euler_system(&g));
    let t = tutte_eval(tm.matroid(), &WeightAssignment::uniform(3 * n, 1, 1), true, opts).unwrap();
    println!("restricted Tutte = {t}");
}

//! The transition matroid of a small 4-regular graph, printed as `(I | A | I+A)`.

use transmat::corpus;
use transmat::graph::{euler_system, Pairing, Transversal};
use transmat::matroid::transition_matroid;

fn main() {
    let g = corpus::doubled_triangle();
    let c = euler_system(&g);
    let tm = transition_matroid(&g, &c);
    println!("{}", g.to_frg());
    println!("{tm}");
    println!("rank {}", tm.matroid().full_rank());

    let phi = Transversal::uniform(g.vertex_count(), Pairing::P0);
    println!("r(P0 everywhere) = {}", tm.rank_of_transversal(&phi));
    let m = tm.matroid().restrict(&phi.ground_indices()).unwrap();
    println!("restriction:\n{}", m.rep());
    println!("dual:\n{}", m.dual().rep());
}

//! Touch graphs of circuit partitions and their cycle matroids.

use transmat::corpus;
use transmat::graph::{touch_graph, trace_partition, Transversal};
use transmat::matroid::verify_touch_duality;

fn main() {
    let g = corpus::octahedron();
    let n = g.vertex_count();
    for k in [0, 7, 100, 364] {
        let t = Transversal::from_index(n, k);
        let tg = touch_graph(&g, &trace_partition(&g, &t));
        let loops = (0..tg.edge_count()).filter(|&e| tg.is_loop(e)).count();
        println!(
            "{t}: {} circuits, {} edges, {loops} loops, duality {}",
            tg.vertex_count(),
            tg.edge_count(),
            verify_touch_duality(&g, &t).unwrap()
        );
    }
}

//! Ribbon graphs, their medial graphs and the surfaces they live on.

use transmat::corpus;
use transmat::invariants::Enumeration;
use transmat::ribbon::{bollobas_riordan, euler_genus, from_partitions, medial};

fn main() {
    for (name, g) in [
        ("+1 loop", corpus::ribbon_loop(1)),
        ("-1 loop", corpus::ribbon_loop(-1)),
        ("torus", corpus::ribbon_torus()),
        ("theta", corpus::ribbon_theta()),
        ("figure eight", corpus::ribbon_figure_eight()),
    ] {
        let s = euler_genus(&g);
        let br = bollobas_riordan(&g, Enumeration::default()).unwrap();
        println!("{name}: χ = {}, orientable {}, R = {br}", s.euler_characteristic, s.orientable);
        let m = medial(&g);
        println!("  medial δ = {}, ε = {}", m.delta, m.epsilon);
        assert!(from_partitions(&m.graph, &m.delta, &m.epsilon).unwrap().is_equivalent(&g));
    }
    println!("{}", corpus::ribbon_torus());
}

//! Interlace polynomials of circle graphs under local complementation.

use transmat::corpus;
use transmat::graph::{euler_system, interlacement, kappa_transform};
use transmat::invariants::{interlace_poly, Enumeration};

fn main() {
    let opts = Enumeration::default();
    let g = corpus::octahedron();
    let c = euler_system(&g);
    let h = interlacement(&g, &c);
    println!("H = {h}");
    println!("q(H) = {}", interlace_poly(&h, opts).unwrap());
    for v in 0..g.vertex_count() {
        let k = interlacement(&g, &kappa_transform(&g, &c, v));
        assert_eq!(k, h.local_complement(v));
        println!("q(H*{}) = {}", g.name(v), interlace_poly(&k, opts).unwrap());
    }
}

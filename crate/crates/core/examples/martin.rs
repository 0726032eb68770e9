//! Martin polynomials, by tracing circuits and through the matroid.

use transmat::corpus;
use transmat::graph::balanced_orientation;
use transmat::invariants::{directed_martin, martin_direct, martin_via_matroid, Enumeration};

fn main() {
    let opts = Enumeration::default();
    for (name, g) in [
        ("two loops", corpus::two_loop_vertex()),
        ("abab", corpus::from_word("a b a b").0),
        ("doubled triangle", corpus::doubled_triangle()),
        ("octahedron", corpus::octahedron()),
    ] {
        let m = martin_direct(&g, opts).unwrap();
        assert_eq!(m, martin_via_matroid(&g, opts).unwrap());
        let d = directed_martin(&g, &balanced_orientation(&g), opts).unwrap();
        println!("{name:18} m = {m}   directed = {d}");
    }
}

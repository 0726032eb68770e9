//! Twisted duals of a ribbon graph: one surface per twist.

use transmat::corpus;
use transmat::ribbon::{euler_genus, twisted_dual, Twist};

fn name(t: Twist) -> String {
    match t {
        Twist::IDENTITY => "identity".into(),
        Twist::DUAL => "dual".into(),
        Twist::PETRIAL => "petrial".into(),
        Twist(p) => format!("{}{}{}", p[0], p[1], p[2]),
    }
}

fn main() {
    let g = corpus::ribbon_theta();
    for t in Twist::all() {
        let d = twisted_dual(&g, &vec![t; g.edge_count()]).unwrap();
        let s = euler_genus(&d);
        println!(
            "{:8} {} vertices, χ = {}, orientable {}",
            name(t),
            d.vertex_count(),
            s.euler_characteristic,
            s.orientable
        );
    }
}

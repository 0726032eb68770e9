//! Kauffman brackets from planar diagram codes.

use transmat::invariants::Enumeration;
use transmat::knots::{bracket, normalized_bracket, PdCode};

fn main() {
    let opts = Enumeration::default();
    let trefoil: PdCode = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2".parse().unwrap();
    let figure_eight: PdCode = "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8".parse().unwrap();
    println!("<trefoil> = {}", bracket(&trefoil, opts).unwrap());
    println!("normalized, w = -3: {}", normalized_bracket(&trefoil, -3, opts).unwrap());
    println!("<figure eight> = {}", bracket(&figure_eight, opts).unwrap());
    let kinked = trefoil.add_kink(2, true).unwrap().add_r2(0).unwrap();
    println!("{} crossings after a kink and an R2 move: {}", kinked.crossings().len(), bracket(&kinked, opts).unwrap());
    println!("<trefoil ⊔ unknot> = {}", bracket(&trefoil.disjoint_union(&PdCode::unknot()), opts).unwrap());
}

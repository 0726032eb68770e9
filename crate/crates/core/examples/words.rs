//! Double occurrence words, their moves and interlacement graphs.

use transmat::words::{apply_equivalence, graph_from_family, interlacement_of, parse_dow, Equivalence};

fn main() {
    let f = parse_dow("a b c a c b ; d d").unwrap();
    println!("family: {f}");
    println!("normal form: {}", f.normal_form());
    println!("interlacement:\n{}", interlacement_of(&f));
    let g = apply_equivalence(&f, &Equivalence::Concatenate { first: 0, second: 1 }).unwrap();
    let g = apply_equivalence(&g, &Equivalence::Reverse { word: 0 }).unwrap();
    println!("after concatenating and reversing: {g}  equivalent: {}", g.is_equivalent(&f));
    let (graph, _) = graph_from_family(&f);
    println!("{}", graph.to_frg());
}

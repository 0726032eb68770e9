//! Connected sums, separations and balanced mutations.

use transmat::corpus;
use transmat::graph::{balanced_mutation, connected_sum, separation, Reattachment, SumMatching};
use transmat::invariants::{martin_direct, Enumeration};

fn main() {
    let opts = Enumeration::default();
    let g1 = corpus::from_word("a b a b").0;
    let g2 = corpus::renamed(&corpus::doubled_triangle(), "z");
    let s = connected_sum(&g1, 0, &g2, 1, SumMatching::Straight).unwrap();
    println!("sum:\n{}", s.to_frg());
    println!("m(sum) = {}", martin_direct(&s, opts).unwrap());
    let back = separation(&s, 0, g1.edge_count() + 1).unwrap();
    println!("separated into {} components", back.component_count());

    let (g, cut) = corpus::mutation_example();
    let h = balanced_mutation(&g, cut, &Reattachment::Swap).unwrap();
    println!("m(before) = {}", martin_direct(&g, opts).unwrap());
    println!("m(after)  = {}", martin_direct(&h, opts).unwrap());
}

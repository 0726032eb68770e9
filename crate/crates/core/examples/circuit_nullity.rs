//! Every transversal's circuit count against the matroid rank.

use transmat::corpus;
use transmat::graph::{count_circuits, euler_system, trace_partition, Transversal};
use transmat::matroid::transition_matroid;

fn main() {
    let g = corpus::from_word("a b c a b c").0;
    let tm = transition_matroid(&g, &euler_system(&g));
    let (n, c) = (g.vertex_count(), g.component_count());
    for t in Transversal::all(n) {
        let r = tm.rank_of_transversal(&t);
        let p = trace_partition(&g, &t);
        assert_eq!(r + count_circuits(&g, &t), n + c);
        let words: Vec<String> = p
            .circuits()
            .iter()
            .map(|ci| ci.vertex_word().iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(""))
            .collect();
        println!("{t}  rank {r}  circuits {}  {}", p.len(), words.join(" | "));
    }
}

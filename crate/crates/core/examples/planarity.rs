//! Planarity of 4-regular graphs via dual pairs of transversals.

use transmat::corpus;
use transmat::graph::is_planar;
use transmat::matroid::{check_dual_pair, find_dual_pair, las_vergnas_report};

fn main() {
    for (name, g) in [("octahedron", corpus::octahedron()), ("K5", corpus::k5()), ("abab", corpus::from_word("a b a b").0)] {
        print!("{name}: {}", is_planar(&g, 1_000_000));
        if let Some((t1, t2)) = find_dual_pair(&g) {
            let r = check_dual_pair(&g, &t1, &t2).unwrap();
            let lv = las_vergnas_report(&g, &t1, &t2).unwrap();
            print!(
                "  P1 = {t1}, P2 = {t2}, ranks {} + {}; nullity formula over A: stated {}/{}, complemented {}/{}",
                r.r1,
                r.r2,
                lv.subsets - lv.stated_failures,
                lv.subsets,
                lv.subsets - lv.complemented_failures,
                lv.subsets
            );
        }
        println!();
    }
}

//! Row reduction and ranks over GF(2).

use transmat::gf2::BitMatrix;

fn main() {
    let m = BitMatrix::from_strings(&["1011000", "0101100", "0010110", "0001011"]).unwrap();
    let (r, pivots) = m.row_reduce();
    println!("{m}\nreduced:\n{r}\npivots {pivots:?}, rank {}", m.rank());
    println!("rank of columns 0, 1, 3: {}", m.rank_of_columns(&[0, 1, 3]).unwrap());
    println!("contains 1110100: {}", m.row_space_contains(&[true, true, true, false, true, false, false]));
}

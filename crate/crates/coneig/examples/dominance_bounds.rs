//! Contraction and expansion bounds of block operators, and the dominance
//! check they support.
//!
//! ```bash
//! cargo run --example dominance_bounds
//! ```

use coneig::{co_bound, ex_bound, is_dominating, rnorm, BlockSplit, IMatrix};

fn main() {
    // A 2x2 with a (1,1) split: contraction <= 3.5 < 4 <= expansion.
    let a = IMatrix::from_real_rows(&[vec![2.0, 1.5], vec![1.0, 5.0]]);
    let split = BlockSplit::new(1, 1);
    let co = co_bound(&a, &split, 1.0);
    let ex = ex_bound(&a, &split, 1.0).unwrap();
    let rep = is_dominating(&a, &split, 1.0);
    println!("2x2: co <= {co}, ex >= {ex}, dominating = {}", rep.satisfied);
    println!("2x2: block 1-norm = {}", rnorm(&a, &split, 1.0));

    // A symmetric 3x3 with exact decimal entries, split (1,2), r = 1.1.
    let b = IMatrix::from_decimal_rows(&[
        vec!["1", "0.4", "0.5"],
        vec!["0.4", "4", "0.4"],
        vec!["0.5", "0.4", "8"],
    ])
    .unwrap();
    let split = BlockSplit::new(1, 2);
    let r = 1.1;
    let co = co_bound(&b, &split, r);
    let ex = ex_bound(&b, &split, r).unwrap();
    let rep = is_dominating(&b, &split, r);
    println!("3x3 at r = {r}: co <= {co:.6}, ex >= {ex:.6}, dominating = {}", rep.satisfied);
    println!(
        "   every eigenvalue modulus is <= {co:.5} or >= {ex:.5} once dominance holds"
    );
}

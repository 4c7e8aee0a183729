//! The full enclosure pipeline on a small symmetric matrix: approximate,
//! transform, search for the smallest passing epsilon, and report boxes.
//!
//! ```bash
//! cargo run --example verify_eigenpairs
//! ```

use coneig::certificate::pretty_cinterval;
use coneig::{residual_contains_zero, verify_all, IMatrix, VerifyConfig};

fn main() {
    let a = IMatrix::from_decimal_rows(&[
        vec!["1", "0.4", "0.5"],
        vec!["0.4", "4", "0.4"],
        vec!["0.5", "0.4", "8"],
    ])
    .unwrap();

    let cfg = VerifyConfig::default();
    for result in verify_all(&a, &cfg) {
        match result {
            Ok(enc) => {
                println!(
                    "k = {}  eps = {:.3e}  lambda in {}",
                    enc.k,
                    enc.epsilon,
                    pretty_cinterval(&enc.value)
                );
                for (i, comp) in enc.vector.entries().iter().enumerate() {
                    println!("    x[{i}] in {}", pretty_cinterval(comp));
                }
                println!(
                    "    dominance: lhs {:.3e} < {:.3e}; residual check {}",
                    enc.report.lhs,
                    enc.report.inv_norm_recip - enc.report.cross,
                    if residual_contains_zero(&a, &enc) {
                        "contains zero"
                    } else {
                        "FAILED"
                    }
                );
            }
            Err(failure) => println!("k = {}  failed: {}", failure.k, failure.reason),
        }
    }
}

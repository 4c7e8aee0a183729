//! Certified roots of a complex quintic through its companion matrix.
//!
//! ```bash
//! cargo run --example polynomial_roots
//! ```

use num_complex::Complex64;

use coneig::certificate::pretty_cinterval;
use coneig::{enclose_roots, Polynomial, VerifyConfig};

fn main() {
    // x^5 + (5-i)x^4 - 7i x^2 + (2+4i)x - 8, coefficients constant first
    let p = Polynomial::monic(vec![
        Complex64::new(-8.0, 0.0),
        Complex64::new(2.0, 4.0),
        Complex64::new(0.0, -7.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(5.0, -1.0),
    ]);

    for result in enclose_roots(&p, &VerifyConfig::default()) {
        match result {
            Ok(root) => {
                println!(
                    "root {}  eps = {:.3e}  z in {}",
                    root.k,
                    root.epsilon,
                    pretty_cinterval(&root.root)
                );
                println!(
                    "    interval Horner evaluation contains zero: {}",
                    p.eval_interval(&root.root).contains_zero()
                );
            }
            Err(failure) => println!("root {}  failed: {}", failure.k, failure.reason),
        }
    }

    // A double root is refused, never falsely certified.
    let double = Polynomial::monic(vec![Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0)]);
    let outcomes = enclose_roots(&double, &VerifyConfig::default());
    println!(
        "(x-1)^2: {} of {} roots certified (expected 0)",
        outcomes.iter().filter(|r| r.is_ok()).count(),
        outcomes.len()
    );
}

//! Outward-rounded real and complex interval arithmetic.
//!
//! ```bash
//! cargo run --example interval_basics
//! ```

use coneig::{CInterval, Interval};

fn main() {
    // Dyadic arithmetic stays exact.
    let a = Interval::new(1.0, 2.0);
    let b = Interval::new(3.0, 4.0);
    println!("{a} + {b} = {}", a + b);
    println!("{a} * {b} = {}", a * b);

    // Non-dyadic results widen by at most one ulp per endpoint.
    let third = Interval::point(1.0).div(Interval::point(3.0)).unwrap();
    println!("1/3 in {third}  (width {:.3e})", third.width());

    // Decimal strings are hulled exactly; 0.4 is not a binary number.
    let two_fifths = Interval::from_decimal_str("0.4").unwrap();
    println!("hull(\"0.4\") = {two_fifths}  (width {:.3e})", two_fifths.width());

    // Division by an interval containing zero is refused, not guessed.
    let denom = Interval::new(-1.0, 1.0);
    println!("1 / {denom} -> {:?}", Interval::ONE.div(denom));

    // Complex rectangles: |3+4i| = 5, bounded rigorously from above.
    let z = CInterval::from_f64(3.0, 4.0);
    println!("|3+4i| <= {}", z.mag());

    let w = CInterval::from_f64(1.0, 1.0);
    println!("(1+i)^2 in {}", w * w);
    println!("(1+i)/(i) in {}", w.div(CInterval::from_f64(0.0, 1.0)).unwrap());
}

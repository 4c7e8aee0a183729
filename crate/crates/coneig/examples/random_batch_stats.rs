//! Seeded batch statistics of the achieved epsilon over random matrices,
//! the library-level equivalent of `coneig bench`.
//!
//! ```bash
//! cargo run --example random_batch_stats
//! ```

use coneig::{run_bench, BenchConfig};

fn main() {
    let cfg = BenchConfig {
        count: 100,
        size: 5,
        range: 1.0,
        seed: 1,
        ..BenchConfig::default()
    };
    let report = run_bench(&cfg);
    println!(
        "{} matrices of size {}x{}, entries in [-{}, {}], seed {}",
        report.count, report.size, report.size, report.range, report.range, report.seed
    );
    println!(
        "verified matrices: {}/{}   pairs: {} verified, {} failed",
        report.verified_matrices, report.count, report.verified_pairs, report.failed_pairs
    );
    match report.epsilon {
        Some(e) => println!(
            "epsilon quartiles: min {:.3e} | q1 {:.3e} | median {:.3e} | q3 {:.3e} | max {:.3e}",
            e.min, e.q1, e.median, e.q3, e.max
        ),
        None => println!("no verified pairs"),
    }
}

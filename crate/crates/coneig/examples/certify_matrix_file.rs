//! JSON matrix in, JSON certificate out: the same path the `coneig eig`
//! subcommand takes.
//!
//! ```bash
//! cargo run --example certify_matrix_file
//! ```

use coneig::certificate::{cmd_eig, EigOptions, OutputFormat};
use coneig::VerifyConfig;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/dense10.json");
    let input = std::fs::read_to_string(path).expect("example data ships with the crate");
    let opts = EigOptions {
        k: None,
        format: OutputFormat::Json,
        verify: VerifyConfig::default(),
    };
    let out = cmd_eig(&input, &opts).expect("the bundled matrix parses");
    println!("{}", out.rendered);
    eprintln!(
        "all verified: {} (exit code {} from the CLI)",
        out.all_verified,
        if out.all_verified { 0 } else { 1 }
    );
}

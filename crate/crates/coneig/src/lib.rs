//! Rigorous interval enclosures of matrix eigenpairs and polynomial roots.
//!
//! Everything rests on outward-rounded interval arithmetic: a floating-point
//! eigensolver proposes approximate pairs, an interval similarity transform
//! nearly diagonalizes the input, and a diagonally scaled dominance check
//! proves that each exact eigenvector lives in an explicit box around its
//! approximation. Complex polynomial roots ride the same pipeline through
//! companion matrices. A reported enclosure is a theorem about the input
//! matrix; when nothing can be proven the result is an honest failure.
//!
//! The `examples/` directory exercises one capability per file:
//!
//! - `interval_basics`: outward-rounded real and complex rectangle arithmetic
//! - `dominance_bounds`: contraction/expansion bounds of block operators
//! - `verify_eigenpairs`: the full enclosure pipeline on a small matrix
//! - `certify_matrix_file`: JSON matrix in, JSON certificate out
//! - `polynomial_roots`: certified roots of a complex quintic
//! - `random_batch_stats`: seeded batch statistics of achieved epsilon
//!
//! ```bash
//! cargo run --example verify_eigenpairs
//! cargo run --example polynomial_roots
//! ```
//!
//! The `coneig` binary exposes the same functionality as `eig`, `roots`, and
//! `bench` subcommands over JSON files.

pub mod approx;
pub mod bench;
pub mod certificate;
pub mod complex;
pub mod cone;
pub mod interval;
pub mod linalg;
pub mod polyroot;
pub mod rng;

mod par;
mod round;

pub use approx::{approx_eigendecompose, pair_order, ApproxEigenSet, NoConvergence, SolverConfig};
pub use bench::{run_bench, BenchConfig, BenchReport, EpsilonSummary};
pub use complex::CInterval;
pub use cone::{
    b_epsilon, check_condition, co_bound, enclose_eigenvector, epsilon_search, ex_bound,
    is_dominating, rayleigh_enclosure, residual_contains_zero, rnorm, similarity, verify_all,
    verify_one, BlockSplit, DominanceReport, EigenEnclosure, ExBoundUnavailable, FailureReason,
    SearchConfig, VerificationFailure, VerifyConfig, VerifyResult, ZeroDenominator,
};
pub use interval::{Interval, IntervalError};
pub use linalg::{indices_excluding, CMatrix, IMatrix, IVector, LinalgError};
pub use polyroot::{companion, enclose_roots, normalize, PolyError, Polynomial, RootEnclosure};

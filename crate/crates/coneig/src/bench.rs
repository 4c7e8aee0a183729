//! Seeded batch statistics: random dense matrices, full verification, and
//! quantiles of the achieved epsilon. Deterministic for a fixed seed.

use serde::Serialize;

use crate::cone::{verify_all, VerifyConfig};
use crate::linalg::IMatrix;
use crate::par::par_map_indexed;
use crate::rng::SplitMix64;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub count: usize,
    pub size: usize,
    /// Entries drawn uniformly from `[-range, range]`.
    pub range: f64,
    pub seed: u64,
    pub verify: VerifyConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            count: 100,
            size: 5,
            range: 1.0,
            seed: 1,
            verify: VerifyConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub count: usize,
    pub size: usize,
    pub range: f64,
    pub seed: u64,
    pub verified_matrices: usize,
    pub failed_matrices: usize,
    pub verified_pairs: usize,
    pub failed_pairs: usize,
    /// Quantiles of achieved epsilon over all verified pairs (type-7 linear
    /// interpolation); absent when nothing verified.
    pub epsilon: Option<EpsilonSummary>,
}

/// Type-7 quantile (linear interpolation) of a sorted sample.
fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    // Generation is one sequential stream; verification may fan out.
    let mut rng = SplitMix64::new(cfg.seed);
    let matrices: Vec<IMatrix> = (0..cfg.count)
        .map(|_| {
            let rows: Vec<Vec<f64>> = (0..cfg.size)
                .map(|_| {
                    (0..cfg.size)
                        .map(|_| rng.uniform(-cfg.range, cfg.range))
                        .collect()
                })
                .collect();
            IMatrix::from_real_rows(&rows)
        })
        .collect();

    let per_matrix_cfg = VerifyConfig {
        threads: 1,
        ..cfg.verify.clone()
    };
    let outcomes = par_map_indexed(matrices.len(), cfg.verify.threads, |i| {
        verify_all(&matrices[i], &per_matrix_cfg)
    });

    let mut eps = Vec::new();
    let mut verified_matrices = 0usize;
    let mut verified_pairs = 0usize;
    let mut failed_pairs = 0usize;
    for results in &outcomes {
        let mut whole = true;
        for res in results {
            match res {
                Ok(enc) => {
                    verified_pairs += 1;
                    eps.push(enc.epsilon);
                }
                Err(_) => {
                    failed_pairs += 1;
                    whole = false;
                }
            }
        }
        if whole {
            verified_matrices += 1;
        }
    }
    eps.sort_by(f64::total_cmp);
    let epsilon = if eps.is_empty() {
        None
    } else {
        Some(EpsilonSummary {
            min: eps[0],
            q1: quantile_type7(&eps, 0.25),
            median: quantile_type7(&eps, 0.5),
            q3: quantile_type7(&eps, 0.75),
            max: *eps.last().unwrap(),
        })
    };
    BenchReport {
        count: cfg.count,
        size: cfg.size,
        range: cfg.range,
        seed: cfg.seed,
        verified_matrices,
        failed_matrices: cfg.count - verified_matrices,
        verified_pairs,
        failed_pairs,
        epsilon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_one_by_one_matrix_hits_the_search_floor() {
        let cfg = BenchConfig {
            count: 1,
            size: 1,
            ..BenchConfig::default()
        };
        let report = run_bench(&cfg);
        assert_eq!(report.verified_matrices, 1);
        let eps = report.epsilon.unwrap();
        assert_eq!(eps.min, cfg.verify.search.eps_min);
        assert_eq!(eps.max, cfg.verify.search.eps_min);
    }

    #[test]
    fn same_seed_gives_identical_reports() {
        let cfg = BenchConfig {
            count: 4,
            size: 3,
            seed: 9,
            ..BenchConfig::default()
        };
        let a = run_bench(&cfg);
        let b = run_bench(&cfg);
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn quantiles_interpolate_linearly() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_type7(&xs, 0.0), 1.0);
        assert_eq!(quantile_type7(&xs, 1.0), 4.0);
        assert_eq!(quantile_type7(&xs, 0.5), 2.5);
        assert_eq!(quantile_type7(&xs, 0.25), 1.75);
    }
}

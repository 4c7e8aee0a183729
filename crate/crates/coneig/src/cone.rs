//! Cone-condition verification: block operator bounds, the diagonally
//! eps-scaled shifted similarity matrix, the dominance inequality, the
//! epsilon search, and the resulting rigorous eigenpair enclosures.
//!
//! The master soundness invariant: whenever [`check_condition`] reports
//! `satisfied = true` for the scaled matrix built from `(J, k, lambda_tilde)`,
//! the true eigenpair lies in the boxes returned by [`enclose_eigenvector`]
//! and [`rayleigh_enclosure`]. Every comparison feeding `satisfied` is made
//! on outward-rounded bounds, so `true` is a proof and `false` is merely
//! "nothing was proven".

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::approx::{approx_eigendecompose, pair_order, ApproxEigenSet, SolverConfig};
use crate::complex::CInterval;
use crate::interval::Interval;
use crate::linalg::{indices_excluding, CMatrix, IMatrix, IVector, LinalgError};
use crate::par::par_map_indexed;
use crate::round;

/// Dimensions of a contiguous two-block split `E = E1 x E2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSplit {
    n1: usize,
    n2: usize,
}

impl BlockSplit {
    pub fn new(n1: usize, n2: usize) -> Self {
        assert!(n1 >= 1 && n2 >= 1, "both blocks need at least one dimension");
        BlockSplit { n1, n2 }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2
    }

    fn head(&self) -> Vec<usize> {
        (0..self.n1).collect()
    }

    fn tail(&self) -> Vec<usize> {
        (self.n1..self.n1 + self.n2).collect()
    }
}

/// The tail block could not be inverted, so no expansion bound exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("expansion bound unavailable: tail block has no verified inverse")]
pub struct ExBoundUnavailable;

/// The denominator enclosure of the Rayleigh quotient contains zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Rayleigh quotient denominator contains zero")]
pub struct ZeroDenominator;

/// Both sides of the dominance inequality plus the derived block bounds.
///
/// `satisfied` is equivalent to `lhs < inv_norm_recip - cross` evaluated on
/// rigorously rounded quantities. `co_bound` / `ex_bound` are the contraction
/// and expansion bounds of the same matrix and split (`ex_bound` clamped at
/// zero when vacuous; `tail_invertible = false` marks an unavailable bound).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceReport {
    pub r: f64,
    pub co_bound: f64,
    pub ex_bound: f64,
    pub lhs: f64,
    pub inv_norm_recip: f64,
    pub cross: f64,
    pub satisfied: bool,
    pub tail_invertible: bool,
}

/// Per-index verification failure; the sound "nothing proven" outcome.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("verification failed for index {k}: {reason}")]
pub struct VerificationFailure {
    pub k: usize,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FailureReason {
    #[error("approximate eigenbasis is numerically singular")]
    SingularBasis,
    #[error("approximation produced non-finite values")]
    NonFiniteApproximation,
    #[error("no epsilon in [{eps_min:e}, {eps_max:e}] satisfies the dominance condition")]
    NoEpsilonFound { eps_min: f64, eps_max: f64 },
    #[error("Rayleigh quotient denominator contains zero")]
    ZeroDenominator,
    #[error("root box failed the independent polynomial evaluation check")]
    HornerCheckFailed,
}

/// Geometry of the epsilon search grid plus enclosure options.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// First grid point tried.
    pub eps_start: f64,
    /// Descent floor.
    pub eps_min: f64,
    /// Ascent ceiling, tried as a final clamped candidate.
    pub eps_max: f64,
    /// Grid ratio per descent step; powers of two keep the scaling exact.
    pub factor: f64,
    /// Bisect between the last pass and first fail (off: grid point wins).
    pub refine: bool,
    /// Intersect the Rayleigh box with the shifted-diagonal box.
    pub tighten_value: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            eps_start: 2f64.powi(-4),
            eps_min: 2f64.powi(-60),
            eps_max: 2f64.powi(-1),
            factor: 2f64.powi(-2),
            refine: false,
            tighten_value: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    pub solver: SolverConfig,
    pub search: SearchConfig,
    /// Worker threads for independent indices; 0 or 1 means sequential.
    /// Results are identical to sequential execution either way.
    pub threads: usize,
}

/// Record of the approximate pair that seeded a verified enclosure.
#[derive(Debug, Clone, Copy)]
pub struct BasisNote {
    pub lambda_tilde: Complex64,
    pub residual: f64,
    pub seed: u64,
}

/// A certified eigenpair: boxes proven to contain the exact eigenvector
/// (normalized like its approximation) and eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenEnclosure {
    pub k: usize,
    pub epsilon: f64,
    pub vector: IVector,
    pub value: CInterval,
    pub report: DominanceReport,
    pub basis: BasisNote,
}

pub type VerifyResult = Result<EigenEnclosure, VerificationFailure>;

fn split_norms(a: &IMatrix, split: &BlockSplit) -> (f64, f64, f64, f64) {
    assert!(a.is_square() && a.rows() == split.total(), "split mismatch");
    let head = split.head();
    let tail = split.tail();
    let n11 = a.submatrix(&head, &head).unwrap().sup_norm();
    let n12 = a.submatrix(&head, &tail).unwrap().sup_norm();
    let n21 = a.submatrix(&tail, &head).unwrap().sup_norm();
    let n22 = a.submatrix(&tail, &tail).unwrap().sup_norm();
    (n11, n12, n21, n22)
}

/// Rigorous upper bound on the contraction rate: `||A11|| + (1/r)||A12||`.
pub fn co_bound(a: &IMatrix, split: &BlockSplit, r: f64) -> f64 {
    assert!(r > 0.0);
    let (n11, n12, _, _) = split_norms(a, split);
    round::add_up(n11, round::mul_up(round::div_up(1.0, r), n12))
}

/// Rigorous lower bound on the expansion rate: `||A22^-1||^-1 - r||A21||`,
/// clamped at zero when negative (a vacuous but valid bound).
pub fn ex_bound(a: &IMatrix, split: &BlockSplit, r: f64) -> Result<f64, ExBoundUnavailable> {
    let (_, recip, cross_scaled) = ex_parts(a, split, r)?;
    Ok(round::sub_down(recip, cross_scaled).max(0.0))
}

fn ex_parts(
    a: &IMatrix,
    split: &BlockSplit,
    r: f64,
) -> Result<(f64, f64, f64), ExBoundUnavailable> {
    assert!(r > 0.0);
    let tail = split.tail();
    let head = split.head();
    let a22 = a.submatrix(&tail, &tail).unwrap();
    let inv = a22.gj_inverse().map_err(|_| ExBoundUnavailable)?;
    let inv_norm = inv.sup_norm();
    if inv_norm <= 0.0 || !inv_norm.is_finite() {
        return Err(ExBoundUnavailable);
    }
    let recip = round::div_down(1.0, inv_norm);
    let n21 = a.submatrix(&tail, &head).unwrap().sup_norm();
    Ok((n21, recip, round::mul_up(r, n21)))
}

/// Checks `co_bound < ex_bound` on rigorously rounded values, so a positive
/// verdict proves the operator r-dominating for the given split.
pub fn is_dominating(a: &IMatrix, split: &BlockSplit, r: f64) -> DominanceReport {
    let co = co_bound(a, split, r);
    match ex_parts(a, split, r) {
        Err(ExBoundUnavailable) => DominanceReport {
            r,
            co_bound: co,
            ex_bound: 0.0,
            lhs: co,
            inv_norm_recip: 0.0,
            cross: 0.0,
            satisfied: false,
            tail_invertible: false,
        },
        Ok((_, recip, cross_scaled)) => {
            let rhs = round::sub_down(recip, cross_scaled);
            DominanceReport {
                r,
                co_bound: co,
                ex_bound: rhs.max(0.0),
                lhs: co,
                inv_norm_recip: recip,
                cross: cross_scaled,
                satisfied: co < rhs,
                tail_invertible: true,
            }
        }
    }
}

/// The block r-norm `max(||A11|| + (1/r)||A12||, r||A21|| + ||A22||)` as a
/// rigorous upper bound.
pub fn rnorm(a: &IMatrix, split: &BlockSplit, r: f64) -> f64 {
    assert!(r > 0.0);
    let (n11, n12, n21, n22) = split_norms(a, split);
    let first = round::add_up(n11, round::mul_up(round::div_up(1.0, r), n12));
    let second = round::add_up(round::mul_up(r, n21), n22);
    first.max(second)
}

/// Interval similarity transform: hulls of the basis and its verified
/// inverse, and `J = [P^-1] [A] [P]` (products evaluated left to right).
/// Entrywise, `J` encloses `Q^-1 A Q` for the true `A` and every `Q` in `[P]`.
pub fn similarity(a: &IMatrix, p: &CMatrix) -> Result<(IMatrix, IMatrix), LinalgError> {
    if !a.is_square() || a.rows() != p.rows() || !p.is_square() {
        return Err(LinalgError::DimensionMismatch(format!(
            "similarity of {}x{} with basis {}x{}",
            a.rows(),
            a.cols(),
            p.rows(),
            p.cols()
        )));
    }
    let p_hull = IMatrix::hull_of(p);
    let p_inv = p_hull.gj_inverse()?;
    let j = p_inv.mul(a)?.mul(&p_hull)?;
    Ok((j, p_inv))
}

/// `D^-1 (J - lambda_tilde I) D` with `D = diag(eps, .., eps, 1, eps, ..)`,
/// the 1 in slot `k`, realized by entrywise scaling: entry `(i, l)` picks up
/// `d_l / d_i`. Exact when eps is a power of two; an enclosure otherwise.
///
/// The shift is the hulled point approximation; subtracting the interval
/// `J[k, k]` instead is a sound alternative that zeroes the k-th diagonal
/// entry exactly.
pub fn b_epsilon(j: &IMatrix, k: usize, lambda_tilde: Complex64, eps: f64) -> IMatrix {
    assert!(j.is_square());
    let n = j.rows();
    assert!(k < n);
    assert!(eps > 0.0 && eps.is_finite());
    let shift = CInterval::point(lambda_tilde);
    let eps_iv = Interval::point(eps);
    IMatrix::from_fn(n, n, |i, l| {
        let m = if i == l { j[(i, l)] - shift } else { j[(i, l)] };
        if i == k && l != k {
            CInterval::new(m.re * eps_iv, m.im * eps_iv)
        } else if i != k && l == k {
            CInterval::new(m.re.div(eps_iv).unwrap(), m.im.div(eps_iv).unwrap())
        } else {
            m
        }
    })
}

/// The step-4 inequality for the `({k}, !=k)` split:
/// full k-th row sup norm < (tail inverse sup norm)^-1 - column-k sup norm.
/// All quantities outward rounded; `satisfied = true` is rigorous.
pub fn check_condition(b: &IMatrix, k: usize) -> DominanceReport {
    assert!(b.is_square());
    let n = b.rows();
    assert!(k < n);
    if n == 1 {
        // Empty tail: the single coordinate is the eigendirection and the
        // expansion side is vacuously infinite.
        let lhs = b[(0, 0)].mag();
        return DominanceReport {
            r: 1.0,
            co_bound: lhs,
            ex_bound: f64::INFINITY,
            lhs,
            inv_norm_recip: f64::INFINITY,
            cross: 0.0,
            satisfied: true,
            tail_invertible: true,
        };
    }
    let all: Vec<usize> = (0..n).collect();
    let rest = indices_excluding(n, k);
    let lhs = b.submatrix(&[k], &all).unwrap().sup_norm();
    let cross = b.submatrix(&rest, &[k]).unwrap().sup_norm();
    let row_rest = b.submatrix(&[k], &rest).unwrap().sup_norm();
    let co = round::add_up(b[(k, k)].mag(), row_rest);

    let tail = b.submatrix(&rest, &rest).unwrap();
    match tail.gj_inverse() {
        Err(_) => DominanceReport {
            r: 1.0,
            co_bound: co,
            ex_bound: 0.0,
            lhs,
            inv_norm_recip: 0.0,
            cross,
            satisfied: false,
            tail_invertible: false,
        },
        Ok(inv) => {
            let inv_norm = inv.sup_norm();
            if inv_norm <= 0.0 || !inv_norm.is_finite() {
                return DominanceReport {
                    r: 1.0,
                    co_bound: co,
                    ex_bound: 0.0,
                    lhs,
                    inv_norm_recip: 0.0,
                    cross,
                    satisfied: false,
                    tail_invertible: false,
                };
            }
            let recip = round::div_down(1.0, inv_norm);
            let rhs = round::sub_down(recip, cross);
            DominanceReport {
                r: 1.0,
                co_bound: co,
                ex_bound: rhs.max(0.0),
                lhs,
                inv_norm_recip: recip,
                cross,
                satisfied: lhs < rhs,
                tail_invertible: true,
            }
        }
    }
}

/// Seeks the smallest grid epsilon whose scaled matrix passes
/// [`check_condition`]: geometric descent from `eps_start` by `factor` while
/// passing, then an optional bisection refinement; if even `eps_start` fails,
/// geometric ascent up to `eps_max` (tried once, clamped) before giving up.
pub fn epsilon_search(
    j: &IMatrix,
    k: usize,
    lambda_tilde: Complex64,
    cfg: &SearchConfig,
) -> Result<(f64, DominanceReport), VerificationFailure> {
    assert!(cfg.eps_min > 0.0 && cfg.eps_min <= cfg.eps_start && cfg.eps_start <= cfg.eps_max);
    assert!(cfg.factor > 0.0 && cfg.factor < 1.0);
    let check = |eps: f64| check_condition(&b_epsilon(j, k, lambda_tilde, eps), k);
    let fail = || VerificationFailure {
        k,
        reason: FailureReason::NoEpsilonFound {
            eps_min: cfg.eps_min,
            eps_max: cfg.eps_max,
        },
    };

    let start = check(cfg.eps_start);
    if start.satisfied {
        let mut eps = cfg.eps_start;
        let mut report = start;
        loop {
            let next = eps * cfg.factor;
            if next < cfg.eps_min {
                break;
            }
            let cand = check(next);
            if cand.satisfied {
                eps = next;
                report = cand;
            } else {
                if cfg.refine {
                    let (e, r) = refine_between(&check, next, eps, report);
                    eps = e;
                    report = r;
                }
                break;
            }
        }
        return Ok((eps, report));
    }

    // Ascent: the start failed; larger epsilon relaxes the condition.
    let mut prev_fail = cfg.eps_start;
    loop {
        let next = (prev_fail / cfg.factor).min(cfg.eps_max);
        if next <= prev_fail {
            return Err(fail());
        }
        let cand = check(next);
        if cand.satisfied {
            if cfg.refine {
                let (e, r) = refine_between(&check, prev_fail, next, cand);
                return Ok((e, r));
            }
            return Ok((next, cand));
        }
        prev_fail = next;
        if next >= cfg.eps_max {
            return Err(fail());
        }
    }
}

fn refine_between(
    check: &dyn Fn(f64) -> DominanceReport,
    mut fail: f64,
    mut pass: f64,
    mut report: DominanceReport,
) -> (f64, DominanceReport) {
    for _ in 0..8 {
        let mid = (fail * pass).sqrt();
        if !(fail < mid && mid < pass) {
            break;
        }
        let cand = check(mid);
        if cand.satisfied {
            pass = mid;
            report = cand;
        } else {
            fail = mid;
        }
    }
    (pass, report)
}

/// `[P] * v` where `v` has a one in slot `k` and `[-eps, eps] + [-eps, eps]i`
/// elsewhere (the rectangle enclosure of the complex eps-ball); by
/// distributivity this equals the approximate eigenvector plus eps-scaled
/// sums of the other columns' real and imaginary parts.
pub fn enclose_eigenvector(p: &CMatrix, k: usize, eps: f64) -> IVector {
    assert!(p.is_square());
    let n = p.rows();
    assert!(k < n);
    assert!(eps > 0.0);
    let cell = Interval::new(-eps, eps);
    let v = IVector::from_fn(n, |i| {
        if i == k {
            CInterval::ONE
        } else {
            CInterval::new(cell, cell)
        }
    });
    IMatrix::hull_of(p).mat_vec(&v).unwrap()
}

/// Interval Rayleigh quotient `<A x, x> / <x, x>` with conjugation in the
/// second slot. The denominator is assembled from correlated tight squares
/// `|x_i|^2`, which is pointwise real: its imaginary part is exactly zero.
pub fn rayleigh_enclosure(a: &IMatrix, x: &IVector) -> Result<CInterval, ZeroDenominator> {
    let ax = a.mat_vec(x).expect("dimension mismatch in rayleigh_enclosure");
    let num = ax.dot_conj(x).unwrap();
    let mut den = Interval::ZERO;
    for i in 0..x.dim() {
        den = den + (x[i].re.sqr() + x[i].im.sqr());
    }
    if den.contains(0.0) {
        return Err(ZeroDenominator);
    }
    Ok(CInterval::new(
        num.re.div(den).unwrap(),
        num.im.div(den).unwrap(),
    ))
}

/// Interval evaluation of `[A] x - lambda x` over an enclosure; a sound
/// self-check, since the exact eigenpair makes the residual exactly zero.
pub fn residual_contains_zero(a: &IMatrix, enc: &EigenEnclosure) -> bool {
    let ax = match a.mat_vec(&enc.vector) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let lx = enc.vector.scalar_mul(enc.value);
    match ax.sub(&lx) {
        Ok(r) => r.contains_zero(),
        Err(_) => false,
    }
}

fn basis_is_finite(set: &ApproxEigenSet) -> bool {
    let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
    set.values.iter().all(finite)
        && (0..set.vectors.rows())
            .all(|i| (0..set.vectors.cols()).all(|j| finite(&set.vectors[(i, j)])))
}

fn all_failed(n: usize, reason: FailureReason) -> Vec<VerifyResult> {
    (0..n)
        .map(|k| {
            Err(VerificationFailure {
                k,
                reason: reason.clone(),
            })
        })
        .collect()
}

/// Runs the full pipeline for every index: one approximation, one basis and
/// similarity transform, then an epsilon search and enclosures per index.
/// Failures are per index and never abort the batch.
pub fn verify_all(a: &IMatrix, cfg: &VerifyConfig) -> Vec<VerifyResult> {
    assert!(a.is_square(), "verify_all needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return Vec::new();
    }
    let set = match approx_eigendecompose(&a.midpoint(), &cfg.solver) {
        Ok(s) => s,
        // Non-converged approximations still seed the attempt; bad pairs
        // simply fail their searches.
        Err(nc) => nc.partial,
    };
    if !basis_is_finite(&set) {
        return all_failed(n, FailureReason::NonFiniteApproximation);
    }
    let set = pair_order(set);
    let p = set.vectors.clone();
    let (j, _p_inv) = match similarity(a, &p) {
        Ok(v) => v,
        Err(_) => return all_failed(n, FailureReason::SingularBasis),
    };
    par_map_indexed(n, cfg.threads, |k| verify_index(a, &j, &p, &set, k, cfg))
}

/// Verifies a single index with the shared pipeline.
pub fn verify_one(a: &IMatrix, k: usize, cfg: &VerifyConfig) -> VerifyResult {
    assert!(a.is_square());
    let n = a.rows();
    assert!(k < n);
    let set = match approx_eigendecompose(&a.midpoint(), &cfg.solver) {
        Ok(s) => s,
        Err(nc) => nc.partial,
    };
    if !basis_is_finite(&set) {
        return Err(VerificationFailure {
            k,
            reason: FailureReason::NonFiniteApproximation,
        });
    }
    let set = pair_order(set);
    let p = set.vectors.clone();
    let (j, _p_inv) = similarity(a, &p).map_err(|_| VerificationFailure {
        k,
        reason: FailureReason::SingularBasis,
    })?;
    verify_index(a, &j, &p, &set, k, cfg)
}

fn verify_index(
    a: &IMatrix,
    j: &IMatrix,
    p: &CMatrix,
    set: &ApproxEigenSet,
    k: usize,
    cfg: &VerifyConfig,
) -> VerifyResult {
    let n = a.rows();
    let lambda_tilde = set.values[k];
    let (epsilon, report) = epsilon_search(j, k, lambda_tilde, &cfg.search)?;
    let vector = enclose_eigenvector(p, k, epsilon);
    let rayleigh = rayleigh_enclosure(a, &vector).map_err(|_| VerificationFailure {
        k,
        reason: FailureReason::ZeroDenominator,
    })?;
    let value = if cfg.search.tighten_value {
        // Row k of the eigen equation in scaled coordinates bounds the
        // eigenvalue by [J]_kk plus the off-diagonal row sum of B^eps
        // (tail components have modulus at most one there). Both boxes are
        // rigorous, so intersecting is sound.
        let b = b_epsilon(j, k, lambda_tilde, epsilon);
        let rest = indices_excluding(n, k);
        let s = if rest.is_empty() {
            0.0
        } else {
            b.submatrix(&[k], &rest).unwrap().sup_norm()
        };
        let half = Interval::new(-s, s);
        let jkk = j[(k, k)];
        let dominance_box = CInterval::new(jkk.re + half, jkk.im + half);
        rayleigh.intersect(&dominance_box).unwrap_or(rayleigh)
    } else {
        rayleigh
    };
    Ok(EigenEnclosure {
        k,
        epsilon,
        vector,
        value,
        report,
        basis: BasisNote {
            lambda_tilde,
            residual: set.residuals[k],
            seed: cfg.solver.seed,
        },
    })
}

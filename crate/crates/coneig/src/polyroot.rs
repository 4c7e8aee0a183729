//! Certified complex polynomial roots: reduce to the companion matrix, run
//! the eigenpair pipeline, and double-check every claimed root box by
//! interval Horner evaluation.

use num_complex::Complex64;
use thiserror::Error;

use crate::complex::CInterval;
use crate::cone::{verify_all, DominanceReport, FailureReason, VerificationFailure, VerifyConfig};
use crate::linalg::{CMatrix, IMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("leading coefficient is zero (degree must be declared by a nonzero leading term)")]
    ZeroLeadingCoefficient,
    #[error("a degree-zero polynomial has no roots")]
    DegreeZero,
    #[error("normalization by the leading coefficient is not exact in floating point")]
    NonExactNormalization,
}

/// Monic polynomial `x^n + a_{n-1} x^{n-1} + .. + a_1 x + a_0`; `coeffs`
/// holds `a_0 .. a_{n-1}` with the leading one implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Wraps already-monic coefficients `a_0 .. a_{n-1}`.
    pub fn monic(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "degree must be at least one");
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Interval Horner evaluation over a rectangle.
    pub fn eval_interval(&self, z: &CInterval) -> CInterval {
        let mut acc = CInterval::ONE;
        for c in self.coeffs.iter().rev() {
            acc = acc * *z + CInterval::point(*c);
        }
        acc
    }
}

/// Scales raw coefficients `c_0 .. c_n` (constant first) to monic form.
///
/// Division happens in floating point: the enclosures downstream then certify
/// roots of the floating-normalized polynomial. With `exact_monic` the call
/// refuses any normalization that fails a bitwise round-trip, for callers
/// needing rigor relative to the original coefficients.
pub fn normalize(raw: &[Complex64], exact_monic: bool) -> Result<Polynomial, PolyError> {
    if raw.len() < 2 {
        return Err(PolyError::DegreeZero);
    }
    let lead = *raw.last().unwrap();
    if lead == Complex64::new(0.0, 0.0) {
        return Err(PolyError::ZeroLeadingCoefficient);
    }
    let body = &raw[..raw.len() - 1];
    if lead == Complex64::new(1.0, 0.0) {
        return Ok(Polynomial::monic(body.to_vec()));
    }
    // Componentwise division for real leads (the common case) keeps the
    // quotient exact whenever the mathematical quotient is representable.
    let coeffs: Vec<Complex64> = body
        .iter()
        .map(|c| {
            if lead.im == 0.0 {
                Complex64::new(c.re / lead.re, c.im / lead.re)
            } else {
                c / lead
            }
        })
        .collect();
    if exact_monic {
        // The FMA residual q*lead - c is exact, so a zero residual proves the
        // division introduced no rounding. Complex leads are never accepted.
        let exact = lead.im == 0.0
            && coeffs.iter().zip(body).all(|(q, c)| {
                f64::mul_add(q.re, lead.re, -c.re) == 0.0
                    && f64::mul_add(q.im, lead.re, -c.im) == 0.0
            });
        if !exact {
            return Err(PolyError::NonExactNormalization);
        }
    }
    Ok(Polynomial::monic(coeffs))
}

/// Companion matrix: ones on the superdiagonal, `(-a_0, .., -a_{n-1})` in the
/// last row; its characteristic polynomial is the monic input (up to sign).
pub fn companion(p: &Polynomial) -> CMatrix {
    let n = p.degree();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        m[(i, i + 1)] = Complex64::new(1.0, 0.0);
    }
    for (j, a) in p.coeffs().iter().enumerate() {
        m[(n - 1, j)] = -a;
    }
    m
}

/// A certified root box, cross-checked by interval Horner evaluation.
#[derive(Debug, Clone)]
pub struct RootEnclosure {
    pub k: usize,
    pub root: CInterval,
    pub epsilon: f64,
    pub report: DominanceReport,
}

pub type RootResult = Result<RootEnclosure, VerificationFailure>;

/// Runs the eigenpair pipeline on the companion matrix and returns the value
/// boxes as root enclosures. A box that fails the independent Horner check
/// (which would indicate a pipeline defect) is demoted to a failure.
pub fn enclose_roots(p: &Polynomial, cfg: &VerifyConfig) -> Vec<RootResult> {
    let a = IMatrix::hull_of(&companion(p));
    verify_all(&a, cfg)
        .into_iter()
        .map(|res| {
            res.and_then(|enc| {
                if p.eval_interval(&enc.value).contains_zero() {
                    Ok(RootEnclosure {
                        k: enc.k,
                        root: enc.value,
                        epsilon: enc.epsilon,
                        report: enc.report,
                    })
                } else {
                    Err(VerificationFailure {
                        k: enc.k,
                        reason: FailureReason::HornerCheckFailed,
                    })
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalize_divides_by_the_leading_coefficient() {
        // 2x^2 - 2  ->  x^2 - 1
        let p = normalize(&[c(-2.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], false).unwrap();
        assert_eq!(p.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn normalize_of_monic_is_identity() {
        let raw = [c(3.0, -1.0), c(0.5, 0.0), c(1.0, 0.0)];
        let p = normalize(&raw, true).unwrap();
        assert_eq!(p.coeffs(), &raw[..2]);
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        let e = normalize(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], false);
        assert_eq!(e, Err(PolyError::ZeroLeadingCoefficient));
        assert_eq!(normalize(&[c(1.0, 0.0)], false), Err(PolyError::DegreeZero));
    }

    #[test]
    fn exact_monic_accepts_powers_of_two_and_rejects_thirds() {
        let ok = normalize(&[c(1.0, 0.0), c(-3.0, 0.0), c(2.0, 0.0)], true);
        assert!(ok.is_ok(), "division by two is exact");
        let bad = normalize(&[c(1.0, 0.0), c(-3.0, 0.0), c(3.0, 0.0)], true);
        assert_eq!(bad, Err(PolyError::NonExactNormalization));
        let complex_lead = normalize(&[c(1.0, 0.0), c(-3.0, 0.0), c(0.0, 2.0)], true);
        assert_eq!(complex_lead, Err(PolyError::NonExactNormalization));
        // Without the flag the same inputs normalize in floating point.
        assert!(normalize(&[c(1.0, 0.0), c(-3.0, 0.0), c(3.0, 0.0)], false).is_ok());
        assert!(normalize(&[c(1.0, 0.0), c(-3.0, 0.0), c(0.0, 2.0)], false).is_ok());
    }

    #[test]
    fn companion_of_x_squared_minus_one() {
        let p = Polynomial::monic(vec![c(-1.0, 0.0), c(0.0, 0.0)]);
        let m = companion(&p);
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn companion_of_the_quintic_last_row() {
        // x^5 + (5-i)x^4 - 7i x^2 + (2+4i)x - 8
        let p = Polynomial::monic(vec![
            c(-8.0, 0.0),
            c(2.0, 4.0),
            c(0.0, -7.0),
            c(0.0, 0.0),
            c(5.0, -1.0),
        ]);
        let m = companion(&p);
        let want = [c(8.0, 0.0), c(-2.0, -4.0), c(0.0, 7.0), c(0.0, 0.0), c(-5.0, 1.0)];
        for (j, w) in want.iter().enumerate() {
            assert_eq!(m[(4, j)], *w);
        }
        for i in 0..4 {
            assert_eq!(m[(i, i + 1)], c(1.0, 0.0));
        }
    }

    #[test]
    fn degree_one_companion_is_the_root_itself() {
        // x - 4.5: a0 = -4.5, companion = [4.5]
        let p = Polynomial::monic(vec![c(-4.5, 0.0)]);
        let m = companion(&p);
        assert_eq!(m[(0, 0)], c(4.5, 0.0));
    }

    #[test]
    fn roots_of_x_squared_minus_one() {
        let p = Polynomial::monic(vec![c(-1.0, 0.0), c(0.0, 0.0)]);
        let roots = enclose_roots(&p, &VerifyConfig::default());
        assert_eq!(roots.len(), 2);
        let mut found = [false, false];
        for r in &roots {
            let enc = r.as_ref().expect("simple roots must verify");
            assert!(enc.root.width() <= 1e-10);
            if enc.root.contains(c(1.0, 0.0)) {
                found[0] = true;
            }
            if enc.root.contains(c(-1.0, 0.0)) {
                found[1] = true;
            }
        }
        assert!(found[0] && found[1]);
    }

    #[test]
    fn double_root_is_refused() {
        // (x-1)^2 = x^2 - 2x + 1
        let p = normalize(&[c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)], false).unwrap();
        let roots = enclose_roots(&p, &VerifyConfig::default());
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(Result::is_err));
    }

    #[test]
    fn real_coefficient_roots_come_in_conjugate_pairs() {
        // (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
        let p = Polynomial::monic(vec![c(-2.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]);
        let roots: Vec<_> = enclose_roots(&p, &VerifyConfig::default())
            .into_iter()
            .map(|r| r.expect("simple roots verify"))
            .collect();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            let conj_mid = r.root.midpoint().conj();
            let partner = roots
                .iter()
                .map(|s| (s.root.midpoint() - conj_mid).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(partner <= 1e-10, "conjugate of root {} missing", r.k);
        }
    }

    #[test]
    fn horner_evaluation_contains_zero_on_a_true_root() {
        let p = Polynomial::monic(vec![c(-1.0, 0.0), c(0.0, 0.0)]);
        let z = CInterval::point(c(1.0, 0.0));
        assert!(p.eval_interval(&z).contains_zero());
        let off = CInterval::point(c(1.0001, 0.0));
        assert!(!p.eval_interval(&off).contains_zero());
    }
}

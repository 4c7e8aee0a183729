//! Non-verified floating-point eigensolver seeding the verification stage.
//!
//! Hessenberg reduction followed by shifted complex QR for the values, then
//! inverse iteration for the vectors. Everything runs in complex arithmetic
//! even for real input so the verification stage sees one uniform code path.
//! No rigor is claimed here; the only contract is small residuals, and the
//! correctness of verified results never depends on this module (a bad seed
//! merely makes verification fail).

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::CMatrix;
use crate::rng::SplitMix64;

/// Relative subdiagonal deflation threshold for the QR iteration.
const DEFLATION_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Largest acceptable `max_i |(A x - lambda x)_i|` per returned pair.
    pub residual_target: f64,
    /// QR sweep cap; `None` means `30 * n`.
    pub max_sweeps: Option<usize>,
    /// Seed for the inverse-iteration starting vectors.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_target: 1e-10,
            max_sweeps: None,
            seed: 0,
        }
    }
}

/// Approximate eigenpairs: `values[i]` with eigenvector `vectors` column `i`.
/// Columns have unit sup norm with their largest component exactly `1 + 0i`.
#[derive(Debug, Clone)]
pub struct ApproxEigenSet {
    pub values: Vec<Complex64>,
    pub vectors: CMatrix,
    pub residuals: Vec<f64>,
}

/// The iteration cap was exceeded or a residual missed the target. Partial
/// results are carried so callers may still attempt verification per pair.
#[derive(Debug, Clone, Error)]
#[error("eigensolver did not reach the residual target (worst residual {worst:.3e})")]
pub struct NoConvergence {
    pub partial: ApproxEigenSet,
    pub worst: f64,
}

pub fn approx_eigendecompose(
    a: &CMatrix,
    cfg: &SolverConfig,
) -> Result<ApproxEigenSet, NoConvergence> {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows();
    assert!(n >= 1);
    for i in 0..n {
        for j in 0..n {
            assert!(a[(i, j)].re.is_finite() && a[(i, j)].im.is_finite());
        }
    }

    if n == 1 {
        return Ok(ApproxEigenSet {
            values: vec![a[(0, 0)]],
            vectors: CMatrix::identity(1),
            residuals: vec![0.0],
        });
    }

    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    let cap = cfg.max_sweeps.unwrap_or(30 * n);
    let (values, converged) = qr_values(&mut h, cap);

    let mut rng = SplitMix64::new(cfg.seed);
    let mut vectors = CMatrix::zeros(n, n);
    let mut residuals = Vec::with_capacity(n);
    for (k, &lambda) in values.iter().enumerate() {
        let (v, res) = inverse_iteration(a, lambda, &mut rng);
        for i in 0..n {
            vectors[(i, k)] = v[i];
        }
        residuals.push(res);
    }

    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    let set = ApproxEigenSet {
        values,
        vectors,
        residuals,
    };
    if !converged || worst > cfg.residual_target || !worst.is_finite() {
        return Err(NoConvergence {
            worst: if converged { worst } else { f64::INFINITY },
            partial: set,
        });
    }
    Ok(set)
}

/// Sorts pairs by (|lambda| descending, arg lambda ascending in `[0, 2pi)`),
/// ties broken by original index.
pub fn pair_order(set: ApproxEigenSet) -> ApproxEigenSet {
    let n = set.values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let key = |i: usize| {
        let z = set.values[i];
        let modulus = z.norm();
        let mut arg = z.im.atan2(z.re);
        if arg < 0.0 {
            arg += 2.0 * std::f64::consts::PI;
        }
        (modulus, arg)
    };
    idx.sort_by(|&i, &j| {
        let (mi, ai) = key(i);
        let (mj, aj) = key(j);
        mj.total_cmp(&mi)
            .then(ai.total_cmp(&aj))
            .then(i.cmp(&j))
    });
    let dim = set.vectors.rows();
    let mut vectors = CMatrix::zeros(dim, n);
    for (new_col, &old_col) in idx.iter().enumerate() {
        for i in 0..dim {
            vectors[(i, new_col)] = set.vectors[(i, old_col)];
        }
    }
    ApproxEigenSet {
        values: idx.iter().map(|&i| set.values[i]).collect(),
        vectors,
        residuals: idx.iter().map(|&i| set.residuals[i]).collect(),
    }
}

fn hessenberg_in_place(h: &mut CMatrix) {
    let n = h.rows();
    for c in 0..n.saturating_sub(2) {
        let mut norm_sq = 0.0;
        for i in (c + 1)..n {
            norm_sq += h[(i, c)].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(c + 1, c)];
        let phase = if x0 == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let m = n - c - 1;
        let mut v = vec![Complex64::new(0.0, 0.0); m];
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = h[(c + 1 + i, c)];
        }
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;

        // Left: rows c+1.. get (I - beta v v^H) applied.
        for j in c..n {
            let mut t = Complex64::new(0.0, 0.0);
            for i in 0..m {
                t += v[i].conj() * h[(c + 1 + i, j)];
            }
            t *= beta;
            for i in 0..m {
                let upd = t * v[i];
                h[(c + 1 + i, j)] -= upd;
            }
        }
        // Right: columns c+1.. get the same reflector applied.
        for i in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for j in 0..m {
                t += h[(i, c + 1 + j)] * v[j];
            }
            t *= beta;
            for j in 0..m {
                let upd = t * v[j].conj();
                h[(i, c + 1 + j)] -= upd;
            }
        }
        // Clean out what the reflector annihilated.
        h[(c + 1, c)] = alpha;
        for i in (c + 2)..n {
            h[(i, c)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Explicit single-shift (Wilkinson) QR on a Hessenberg matrix. Returns the
/// diagonal and whether every subdiagonal deflated within the sweep cap.
fn qr_values(h: &mut CMatrix, cap: usize) -> (Vec<Complex64>, bool) {
    let n = h.rows();
    let mut m = n - 1;
    let mut sweeps = 0usize;
    let mut converged = true;

    while m > 0 {
        // Find the start of the trailing unreduced block.
        let mut l = m;
        while l > 0 {
            let scale = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let negligible = if scale == 0.0 {
                h[(l, l - 1)].norm() == 0.0
            } else {
                h[(l, l - 1)].norm() <= DEFLATION_TOL * scale
            };
            if negligible {
                break;
            }
            l -= 1;
        }
        if l == m {
            h[(m, m - 1)] = Complex64::new(0.0, 0.0);
            m -= 1;
            continue;
        }
        sweeps += 1;
        if sweeps > cap {
            converged = false;
            break;
        }

        let mu = wilkinson_shift(
            h[(m - 1, m - 1)],
            h[(m - 1, m)],
            h[(m, m - 1)],
            h[(m, m)],
        );
        for i in l..=m {
            h[(i, i)] -= mu;
        }
        // QR factor via Givens rotations zeroing the window subdiagonals.
        let mut rotations = Vec::with_capacity(m - l);
        for i in l..m {
            let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
            for j in i..n {
                let a = h[(i, j)];
                let b = h[(i + 1, j)];
                h[(i, j)] = c * a + s * b;
                h[(i + 1, j)] = -s.conj() * a + c * b;
            }
            h[(i + 1, i)] = Complex64::new(0.0, 0.0);
            rotations.push((i, c, s));
        }
        // Form R Q by applying the adjoint rotations from the right.
        for &(i, c, s) in &rotations {
            for r in 0..=(i + 1).min(m) {
                let a = h[(r, i)];
                let b = h[(r, i + 1)];
                h[(r, i)] = c * a + s.conj() * b;
                h[(r, i + 1)] = -s * a + c * b;
            }
        }
        for i in l..=m {
            h[(i, i)] += mu;
        }
    }

    ((0..n).map(|i| h[(i, i)]).collect(), converged)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let delta = (a - d) * 0.5;
    let bc = b * c;
    let sq = (delta * delta + bc).sqrt();
    let den_plus = delta + sq;
    let den_minus = delta - sq;
    let den = if den_plus.norm() >= den_minus.norm() {
        den_plus
    } else {
        den_minus
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Complex Givens rotation with real cosine: G [f; g] = [r; 0].
fn givens(f: Complex64, g: Complex64) -> (Complex64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let fn_ = f.norm();
    if fn_ == 0.0 {
        return (Complex64::new(0.0, 0.0), g.conj() / gn);
    }
    let d = (fn_ * fn_ + gn * gn).sqrt();
    let c = Complex64::new(fn_ / d, 0.0);
    let s = (f / fn_) * g.conj() / d;
    (c, s)
}

struct Lu {
    n: usize,
    a: CMatrix,
    piv: Vec<usize>,
}

/// LU with partial pivoting; exactly-zero (or denormal-tiny) pivots are
/// perturbed, the standard inverse-iteration device for shifts that land on
/// an eigenvalue.
fn lu_decompose(m: &CMatrix) -> Lu {
    let n = m.rows();
    let mut a = m.clone();
    let mut piv = Vec::with_capacity(n);
    let tiny = (f64::EPSILON * m.inf_norm()).max(1e-300);
    for c in 0..n {
        let mut best = c;
        let mut best_mag = a[(c, c)].norm();
        for r in (c + 1)..n {
            let mag = a[(r, c)].norm();
            if mag > best_mag {
                best = r;
                best_mag = mag;
            }
        }
        if best != c {
            for j in 0..n {
                let t = a[(c, j)];
                a[(c, j)] = a[(best, j)];
                a[(best, j)] = t;
            }
        }
        piv.push(best);
        if a[(c, c)].norm() < tiny {
            a[(c, c)] = Complex64::new(tiny, 0.0);
        }
        let pivot = a[(c, c)];
        for r in (c + 1)..n {
            let factor = a[(r, c)] / pivot;
            a[(r, c)] = factor;
            for j in (c + 1)..n {
                let upd = factor * a[(c, j)];
                a[(r, j)] -= upd;
            }
        }
    }
    Lu { n, a, piv }
}

impl Lu {
    fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        for c in 0..n {
            b.swap(c, self.piv[c]);
            for r in (c + 1)..n {
                let upd = self.a[(r, c)] * b[c];
                b[r] -= upd;
            }
        }
        for c in (0..n).rev() {
            b[c] /= self.a[(c, c)];
            for r in 0..c {
                let upd = self.a[(r, c)] * b[c];
                b[r] -= upd;
            }
        }
    }
}

fn inverse_iteration(
    a: &CMatrix,
    lambda: Complex64,
    rng: &mut SplitMix64,
) -> (Vec<Complex64>, f64) {
    let n = a.rows();
    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let lu = lu_decompose(&shifted);

    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)))
        .collect();
    scale_to_unit_sup(&mut v);
    // One solve plus two refinement passes.
    for _ in 0..3 {
        lu.solve_in_place(&mut v);
        scale_to_unit_sup(&mut v);
    }
    fix_phase(&mut v);

    let av = a.mat_vec(&v);
    let residual = av
        .iter()
        .zip(&v)
        .map(|(aw, w)| (aw - lambda * w).norm())
        .fold(0.0, f64::max);
    (v, residual)
}

fn scale_to_unit_sup(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if norm > 0.0 && norm.is_finite() {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

/// Divides by the largest-magnitude component (lowest index on ties), which
/// then becomes exactly `1 + 0i`.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag == 0.0 {
        return;
    }
    let c = v[best];
    for z in v.iter_mut() {
        *z /= c;
    }
    v[best] = Complex64::new(1.0, 0.0);
}

//! Shared test oracles, kept independent of the interval implementation:
//! exact rational arithmetic (num-rational/num-bigint) for containment and
//! inversion checks, and double-double (~106-bit) arithmetic with Newton
//! polishing for closed-form eigenpair references.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use coneig::{CInterval, Interval};

// ---------------------------------------------------------------------------
// Exact rationals

/// Exact rational value of a finite f64.
pub fn rat(x: f64) -> BigRational {
    assert!(x.is_finite());
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (mant, exp) = if exp_bits == 0 {
        (sign * frac, -1074i64)
    } else {
        (sign * (frac | (1i64 << 52)), exp_bits - 1075)
    };
    let mut r = BigRational::from_integer(BigInt::from(mant));
    let two = BigRational::from_integer(BigInt::from(2));
    if exp >= 0 {
        for _ in 0..exp {
            r *= two.clone();
        }
    } else {
        for _ in 0..(-exp) {
            r /= two.clone();
        }
    }
    r
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `[lo, hi]` contains the rational (infinite endpoints always cover).
pub fn interval_contains_rat(iv: &Interval, v: &BigRational) -> bool {
    let lo_ok = iv.lo() == f64::NEG_INFINITY || rat(iv.lo()) <= *v;
    let hi_ok = iv.hi() == f64::INFINITY || *v <= rat(iv.hi());
    lo_ok && hi_ok
}

/// Exact complex rational.
#[derive(Debug, Clone, PartialEq)]
pub struct RatC {
    pub re: BigRational,
    pub im: BigRational,
}

impl RatC {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RatC { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        RatC::new(rat(z.re), rat(z.im))
    }

    pub fn zero() -> Self {
        RatC::new(rat_int(0), rat_int(0))
    }

    pub fn one() -> Self {
        RatC::new(rat_int(1), rat_int(0))
    }

    pub fn add(&self, o: &RatC) -> RatC {
        RatC::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &RatC) -> RatC {
        RatC::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &RatC) -> RatC {
        RatC::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn div(&self, o: &RatC) -> RatC {
        let d = &o.re * &o.re + &o.im * &o.im;
        assert!(d != rat_int(0), "exact division by zero");
        let num = self.mul(&RatC::new(o.re.clone(), -o.im.clone()));
        RatC::new(num.re / d.clone(), num.im / d)
    }

    pub fn is_zero(&self) -> bool {
        self.re == rat_int(0) && self.im == rat_int(0)
    }
}

pub fn cinterval_contains_rat(z: &CInterval, v: &RatC) -> bool {
    interval_contains_rat(&z.re, &v.re) && interval_contains_rat(&z.im, &v.im)
}

/// Exact Gauss–Jordan inverse of a complex rational matrix; `None` when the
/// matrix is singular.
pub fn rat_inverse(m: &[Vec<RatC>]) -> Option<Vec<Vec<RatC>>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    let mut a: Vec<Vec<RatC>> = m.to_vec();
    let mut inv: Vec<Vec<RatC>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RatC::one() } else { RatC::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let pivot_row = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, pivot_row);
        inv.swap(c, pivot_row);
        let pivot = a[c][c].clone();
        for j in 0..n {
            a[c][j] = a[c][j].div(&pivot);
            inv[c][j] = inv[c][j].div(&pivot);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].clone();
            for j in 0..n {
                let t = a[c][j].mul(&factor);
                a[r][j] = a[r][j].sub(&t);
                let t = inv[c][j].mul(&factor);
                inv[r][j] = inv[r][j].sub(&t);
            }
        }
    }
    Some(inv)
}

/// Closed real interval with exact rational endpoints; every operation is
/// exact, so containment conclusions carry no rounding caveats.
#[derive(Debug, Clone, PartialEq)]
pub struct RatIv {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatIv {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi);
        RatIv { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatIv {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn add(&self, o: &RatIv) -> RatIv {
        RatIv::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatIv) -> RatIv {
        RatIv::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> RatIv {
        RatIv::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &RatIv) -> RatIv {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatIv::new(lo, hi)
    }

    pub fn div(&self, o: &RatIv) -> RatIv {
        let zero = rat_int(0);
        assert!(o.lo > zero || o.hi < zero, "rational interval division by zero");
        let cands = [
            &self.lo / &o.lo,
            &self.lo / &o.hi,
            &self.hi / &o.lo,
            &self.hi / &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatIv::new(lo, hi)
    }

    pub fn abs_upper(&self) -> BigRational {
        let a = if self.lo < rat_int(0) {
            -self.lo.clone()
        } else {
            self.lo.clone()
        };
        let b = if self.hi < rat_int(0) {
            -self.hi.clone()
        } else {
            self.hi.clone()
        };
        a.max(b)
    }

    /// This exact interval lies inside the floating-point interval.
    pub fn inside(&self, iv: &Interval) -> bool {
        let lo_ok = iv.lo() == f64::NEG_INFINITY || rat(iv.lo()) <= self.lo;
        let hi_ok = iv.hi() == f64::INFINITY || self.hi <= rat(iv.hi());
        lo_ok && hi_ok
    }
}

/// Complex rational interval (rectangle with exact rational endpoints).
#[derive(Debug, Clone, PartialEq)]
pub struct RatCIv {
    pub re: RatIv,
    pub im: RatIv,
}

impl RatCIv {
    pub fn real(re: RatIv) -> Self {
        RatCIv {
            re,
            im: RatIv::point(rat_int(0)),
        }
    }

    pub fn from_ratc(z: &RatC) -> Self {
        RatCIv {
            re: RatIv::point(z.re.clone()),
            im: RatIv::point(z.im.clone()),
        }
    }

    pub fn add(&self, o: &RatCIv) -> RatCIv {
        RatCIv {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn mul(&self, o: &RatCIv) -> RatCIv {
        RatCIv {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &RatCIv) -> RatCIv {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let conj = RatCIv {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        let num = self.mul(&conj);
        RatCIv {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }

    pub fn inside(&self, z: &CInterval) -> bool {
        self.re.inside(&z.re) && self.im.inside(&z.im)
    }
}

/// Double-double approximation of an exact rational (error ~1e-32 relative).
pub fn rat_to_dd(r: &BigRational) -> Dd {
    use num_traits::ToPrimitive;
    let hi = r.to_f64().expect("rational in f64 range");
    let rest = r - rat(hi);
    let lo = rest.to_f64().unwrap_or(0.0);
    Dd { hi, lo }
}

/// Rational sqrt bounds: `lo <= sqrt(x) <= hi` with `hi - lo = 2^-bits`.
pub fn sqrt_bounds(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(*x >= rat_int(0));
    let scale = BigInt::from(2).pow(bits);
    let scaled = x * BigRational::from_integer(&scale * &scale);
    let floor = scaled.to_integer(); // x >= 0, truncation == floor
    let s = floor.sqrt();
    let lo = BigRational::new(s.clone(), scale.clone());
    let hi = BigRational::new(s + BigInt::from(1), scale);
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Double-double arithmetic (~106-bit significand)

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = f64::mul_add(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let s2 = s2 + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(Dd {
            hi: -o.hi,
            lo: -o.lo,
        })
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from_f64(q2)));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        let (hi, lo2) = quick_two_sum(hi, lo + q3);
        Dd { hi, lo: lo2 }
    }

    pub fn scale(self, s: f64) -> Dd {
        self.mul(Dd::from_f64(s))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "dd sqrt of negative");
        let s0 = Dd::from_f64(self.hi.sqrt());
        // One Newton step doubles the accuracy of the f64 seed.
        let r = self.sub(s0.mul(s0));
        s0.add(r.div(s0.scale(2.0)))
    }

    /// Exact square of a single f64.
    pub fn sqr_of(x: f64) -> Dd {
        let v = Dd::from_f64(x);
        v.mul(v)
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            Dd {
                hi: -self.hi,
                lo: -self.lo,
            }
        } else {
            self
        }
    }

    pub fn lt(self, o: Dd) -> bool {
        self.hi < o.hi || (self.hi == o.hi && self.lo < o.lo)
    }

    pub fn le(self, o: Dd) -> bool {
        self.hi < o.hi || (self.hi == o.hi && self.lo <= o.lo)
    }
}

/// `[lo, hi]` contains the double-double value.
pub fn interval_contains_dd(iv: &Interval, v: Dd) -> bool {
    Dd::from_f64(iv.lo()).le(v) && v.le(Dd::from_f64(iv.hi()))
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cd {
    pub re: Dd,
    pub im: Dd,
}

impl Cd {
    pub const ZERO: Cd = Cd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn from_c64(z: Complex64) -> Cd {
        Cd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, o: Cd) -> Cd {
        Cd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn sub(self, o: Cd) -> Cd {
        Cd {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub fn mul(self, o: Cd) -> Cd {
        Cd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn div(self, o: Cd) -> Cd {
        let d = o.re.mul(o.re).add(o.im.mul(o.im));
        let num = self.mul(Cd {
            re: o.re,
            im: Dd {
                hi: -o.im.hi,
                lo: -o.im.lo,
            },
        });
        Cd {
            re: num.re.div(d),
            im: num.im.div(d),
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    pub fn scale(self, s: f64) -> Cd {
        Cd {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    pub fn sqrt(self) -> Cd {
        let zero = Dd::ZERO;
        if self.im.hi == 0.0 && self.im.lo == 0.0 {
            return if zero.le(self.re) {
                Cd {
                    re: self.re.sqrt(),
                    im: Dd::ZERO,
                }
            } else {
                Cd {
                    re: Dd::ZERO,
                    im: self.re.abs().sqrt(),
                }
            };
        }
        let m = self.norm_sqr().sqrt();
        if zero.le(self.re) {
            let u = m.add(self.re).scale(0.5).sqrt();
            Cd {
                re: u,
                im: self.im.div(u.scale(2.0)),
            }
        } else {
            let t = m.sub(self.re).scale(0.5).sqrt();
            let re = self.im.abs().div(t.scale(2.0));
            let im = if self.im.hi < 0.0 {
                Dd {
                    hi: -t.hi,
                    lo: -t.lo,
                }
            } else {
                t
            };
            Cd { re, im }
        }
    }
}

pub fn cinterval_contains_cd(z: &CInterval, v: Cd) -> bool {
    interval_contains_dd(&z.re, v.re) && interval_contains_dd(&z.im, v.im)
}

// ---------------------------------------------------------------------------
// Closed-form eigenpair oracles (2x2 and 3x3)

/// Monic polynomial evaluation and derivative in complex double-double;
/// `coeffs` are `c_0 .. c_{n-1}` with leading one implicit.
fn poly_and_derivative(coeffs: &[Cd], z: Cd) -> (Cd, Cd) {
    let mut p = Cd {
        re: Dd::from_f64(1.0),
        im: Dd::ZERO,
    };
    let mut dp = Cd::ZERO;
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(*c);
    }
    (p, dp)
}

fn newton_polish(coeffs: &[Cd], seed: Complex64, iters: usize) -> Cd {
    let mut z = Cd::from_c64(seed);
    for _ in 0..iters {
        let (p, dp) = poly_and_derivative(coeffs, z);
        if dp.norm_sqr().hi == 0.0 {
            break;
        }
        z = z.sub(p.div(dp));
    }
    z
}

/// Eigenvalues of `[[a, b], [c, d]]` by the quadratic formula in
/// double-double precision.
pub fn eig2_values(m: &[[Complex64; 2]; 2]) -> [Cd; 2] {
    let a = Cd::from_c64(m[0][0]);
    let b = Cd::from_c64(m[0][1]);
    let c = Cd::from_c64(m[1][0]);
    let d = Cd::from_c64(m[1][1]);
    let half_tr = a.add(d).scale(0.5);
    let det = a.mul(d).sub(b.mul(c));
    let disc = half_tr.mul(half_tr).sub(det).sqrt();
    [half_tr.add(disc), half_tr.sub(disc)]
}

/// Null vector of `M - lambda I` for a 2x2, from the explicit row formulas.
pub fn eig2_vector(m: &[[Complex64; 2]; 2], lambda: Cd) -> [Cd; 2] {
    let a = Cd::from_c64(m[0][0]);
    let b = Cd::from_c64(m[0][1]);
    let c = Cd::from_c64(m[1][0]);
    let d = Cd::from_c64(m[1][1]);
    // candidates (b, lambda - a) and (lambda - d, c)
    let v1 = [b, lambda.sub(a)];
    let v2 = [lambda.sub(d), c];
    let n1 = v1[0].norm_sqr().add(v1[1].norm_sqr());
    let n2 = v2[0].norm_sqr().add(v2[1].norm_sqr());
    if n2.lt(n1) {
        v1
    } else {
        v2
    }
}

/// Eigenvalues of a 3x3 via the exact characteristic polynomial, f64 Cardano
/// seeds, and double-double Newton polishing. Accurate to ~1e-28 for
/// well-separated spectra.
pub fn eig3_values(m: &[[Complex64; 3]; 3]) -> [Cd; 3] {
    let e = |i: usize, j: usize| Cd::from_c64(m[i][j]);
    let tr = e(0, 0).add(e(1, 1)).add(e(2, 2));
    let minor = |i: usize, j: usize| e(i, i).mul(e(j, j)).sub(e(i, j).mul(e(j, i)));
    let sum_minors = minor(0, 1).add(minor(0, 2)).add(minor(1, 2));
    let det = e(0, 0)
        .mul(e(1, 1).mul(e(2, 2)).sub(e(1, 2).mul(e(2, 1))))
        .sub(e(0, 1).mul(e(1, 0).mul(e(2, 2)).sub(e(1, 2).mul(e(2, 0)))))
        .add(e(0, 2).mul(e(1, 0).mul(e(2, 1)).sub(e(1, 1).mul(e(2, 0)))));
    // p(x) = x^3 - tr x^2 + sum_minors x - det
    let neg = |z: Cd| Cd::ZERO.sub(z);
    let coeffs = [neg(det), sum_minors, neg(tr)];

    // f64 seeds via Cardano on the depressed cubic
    let a2 = neg(tr).to_c64();
    let a1 = sum_minors.to_c64();
    let a0 = neg(det).to_c64();
    let shift = -a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = a0 + Complex64::new(2.0, 0.0) * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u = (-q / 2.0 + disc).cbrt();
    if u.norm() < 1e-12 {
        u = (-q / 2.0 - disc).cbrt();
    }
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut out = [Cd::ZERO; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let w = u * omega.powu(i as u32);
        let seed = if w.norm() < 1e-30 {
            shift
        } else {
            w - p / (3.0 * w) + shift
        };
        *slot = newton_polish(&coeffs, seed, 8);
    }
    out
}

/// Null vector of `M - lambda I` for a 3x3 via the complex cross product of
/// the two most independent rows.
pub fn eig3_vector(m: &[[Complex64; 3]; 3], lambda: Cd) -> [Cd; 3] {
    let row = |i: usize| {
        [
            if i == 0 {
                Cd::from_c64(m[0][0]).sub(lambda)
            } else {
                Cd::from_c64(m[i][0])
            },
            if i == 1 {
                Cd::from_c64(m[1][1]).sub(lambda)
            } else {
                Cd::from_c64(m[i][1])
            },
            if i == 2 {
                Cd::from_c64(m[2][2]).sub(lambda)
            } else {
                Cd::from_c64(m[i][2])
            },
        ]
    };
    let rows = [row(0), row(1), row(2)];
    let cross = |a: &[Cd; 3], b: &[Cd; 3]| {
        [
            a[1].mul(b[2]).sub(a[2].mul(b[1])),
            a[2].mul(b[0]).sub(a[0].mul(b[2])),
            a[0].mul(b[1]).sub(a[1].mul(b[0])),
        ]
    };
    let candidates = [
        cross(&rows[0], &rows[1]),
        cross(&rows[0], &rows[2]),
        cross(&rows[1], &rows[2]),
    ];
    let norm = |v: &[Cd; 3]| v[0].norm_sqr().add(v[1].norm_sqr()).add(v[2].norm_sqr());
    let mut best = 0;
    for i in 1..3 {
        if norm(&candidates[best]).lt(norm(&candidates[i])) {
            best = i;
        }
    }
    candidates[best]
}

//! Rectangular complex intervals: `[z] = [Re z] + [Im z]·i`.
//!
//! A rectangle contains a complex number iff its real and imaginary parts are
//! contained componentwise. All operations enclose the exact complex result
//! set (possibly with rectangle slack, never the other way).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::interval::{Interval, IntervalError};
use crate::round;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub const ZERO: CInterval = CInterval {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: CInterval = CInterval {
        re: Interval::ONE,
        im: Interval::ZERO,
    };

    pub fn new(re: Interval, im: Interval) -> Self {
        CInterval { re, im }
    }

    /// Point rectangle around one complex number.
    pub fn point(z: Complex64) -> Self {
        CInterval {
            re: Interval::point(z.re),
            im: Interval::point(z.im),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self::point(Complex64::new(re, im))
    }

    pub fn conj(&self) -> CInterval {
        CInterval {
            re: self.re,
            im: -self.im,
        }
    }

    /// Rigorous upper bound on `sup{|z| : z in self}`.
    pub fn mag(&self) -> f64 {
        let mr = self.re.mag();
        let mi = self.im.mag();
        if mi == 0.0 {
            return mr;
        }
        if mr == 0.0 {
            return mi;
        }
        round::sqrt_up(round::add_up(
            round::mul_up(mr, mr),
            round::mul_up(mi, mi),
        ))
    }

    /// Rigorous lower bound on `inf{|z|^2 : z in self}`; 0 iff the rectangle
    /// may contain the origin. Used for pivot quality and division guards.
    pub(crate) fn mig_sq(&self) -> f64 {
        let mr = self.re.mig();
        let mi = self.im.mig();
        round::add_down(round::mul_down(mr, mr), round::mul_down(mi, mi))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains(0.0) && self.im.contains(0.0)
    }

    pub fn contains_rect(&self, other: &CInterval) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn intersect(&self, other: &CInterval) -> Option<CInterval> {
        Some(CInterval {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn midpoint(&self) -> Complex64 {
        Complex64::new(self.re.midpoint(), self.im.midpoint())
    }

    /// Width of the wider of the two component intervals.
    pub fn width(&self) -> f64 {
        self.re.width().max(self.im.width())
    }

    #[allow(clippy::should_implement_trait)] // fallible, unlike ops::Div
    pub fn div(self, rhs: CInterval) -> Result<CInterval, IntervalError> {
        // |rhs|^2 as a real interval with tight squares; the same denominator
        // point serves both components, so correlated squaring is sound.
        let denom = rhs.re.sqr() + rhs.im.sqr();
        if denom.contains(0.0) {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let num = self * rhs.conj();
        Ok(CInterval {
            re: num.re.div(denom)?,
            im: num.im.div(denom)?,
        })
    }
}

impl Add for CInterval {
    type Output = CInterval;
    fn add(self, rhs: CInterval) -> CInterval {
        CInterval {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for CInterval {
    type Output = CInterval;
    fn sub(self, rhs: CInterval) -> CInterval {
        CInterval {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for CInterval {
    type Output = CInterval;
    fn neg(self) -> CInterval {
        CInterval {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for CInterval {
    type Output = CInterval;
    fn mul(self, rhs: CInterval) -> CInterval {
        CInterval {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl fmt::Display for CInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

//! Directed floating-point rounding built from error-free transformations.
//!
//! Each function returns a correctly rounded-down or rounded-up value of the
//! exact real result without touching the hardware rounding mode: the
//! round-to-nearest result is nudged one ulp outward unless the exact residual
//! (recovered by TwoSum or an FMA) proves the nearest result is already on the
//! safe side. Near the subnormal range the residual recovery theorems stop
//! holding, so results there are nudged unconditionally.

/// Knuth TwoSum: `x + y == s + e` exactly, for any finite inputs.
#[inline]
fn two_sum(x: f64, y: f64) -> (f64, f64) {
    let s = x + y;
    let t = s - x;
    let e = (x - (s - t)) + (y - t);
    (s, e)
}

#[inline]
fn down_overflow(v: f64) -> f64 {
    if v == f64::INFINITY {
        f64::MAX
    } else {
        f64::NEG_INFINITY
    }
}

#[inline]
fn up_overflow(v: f64) -> f64 {
    if v == f64::NEG_INFINITY {
        f64::MIN
    } else {
        f64::INFINITY
    }
}

pub(crate) fn add_down(x: f64, y: f64) -> f64 {
    let (s, e) = two_sum(x, y);
    if s.is_infinite() {
        return down_overflow(s);
    }
    debug_assert!(!s.is_nan(), "add_down({x}, {y}) produced NaN");
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn add_up(x: f64, y: f64) -> f64 {
    let (s, e) = two_sum(x, y);
    if s.is_infinite() {
        return up_overflow(s);
    }
    debug_assert!(!s.is_nan(), "add_up({x}, {y}) produced NaN");
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub(crate) fn sub_down(x: f64, y: f64) -> f64 {
    add_down(x, -y)
}

pub(crate) fn sub_up(x: f64, y: f64) -> f64 {
    add_up(x, -y)
}

pub(crate) fn mul_down(x: f64, y: f64) -> f64 {
    // Endpoint convention: 0 times anything (including an infinite overflow
    // endpoint) contributes exactly 0 to the product set.
    if x == 0.0 || y == 0.0 {
        return 0.0;
    }
    let p = x * y;
    if p.is_infinite() {
        return down_overflow(p);
    }
    if p.abs() < f64::MIN_POSITIVE {
        return p.next_down();
    }
    let e = f64::mul_add(x, y, -p);
    if e < 0.0 {
        p.next_down()
    } else {
        p
    }
}

pub(crate) fn mul_up(x: f64, y: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        return 0.0;
    }
    let p = x * y;
    if p.is_infinite() {
        return up_overflow(p);
    }
    if p.abs() < f64::MIN_POSITIVE {
        return p.next_up();
    }
    let e = f64::mul_add(x, y, -p);
    if e > 0.0 {
        p.next_up()
    } else {
        p
    }
}

pub(crate) fn div_down(x: f64, y: f64) -> f64 {
    debug_assert!(y != 0.0, "div_down by zero");
    if x == 0.0 {
        return 0.0;
    }
    if y.is_infinite() {
        // Finite over infinite endpoint: the corner limit is an exact signed
        // zero, safe on both sides inside a corner min/max.
        return x / y;
    }
    let q = x / y;
    if q.is_infinite() {
        return down_overflow(q);
    }
    if q.abs() < f64::MIN_POSITIVE {
        return q.next_down();
    }
    // q*y - x is exactly representable when q = RN(x/y) stays normal.
    let r = f64::mul_add(q, y, -x);
    if r != 0.0 && (r > 0.0) == (y > 0.0) {
        q.next_down()
    } else {
        q
    }
}

pub(crate) fn div_up(x: f64, y: f64) -> f64 {
    debug_assert!(y != 0.0, "div_up by zero");
    if x == 0.0 {
        return 0.0;
    }
    if y.is_infinite() {
        return x / y;
    }
    let q = x / y;
    if q.is_infinite() {
        return up_overflow(q);
    }
    if q.abs() < f64::MIN_POSITIVE {
        return q.next_up();
    }
    let r = f64::mul_add(q, y, -x);
    if r != 0.0 && (r > 0.0) != (y > 0.0) {
        q.next_up()
    } else {
        q
    }
}

pub(crate) fn sqrt_down(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "sqrt_down of negative {x}");
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return f64::MAX;
    }
    let s = x.sqrt();
    if x < f64::MIN_POSITIVE {
        return s.next_down().max(0.0);
    }
    let r = f64::mul_add(s, s, -x);
    if r > 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn sqrt_up(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "sqrt_up of negative {x}");
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    let s = x.sqrt();
    if x < f64::MIN_POSITIVE {
        return s.next_up();
    }
    let r = f64::mul_add(s, s, -x);
    if r < 0.0 {
        s.next_up()
    } else {
        s
    }
}

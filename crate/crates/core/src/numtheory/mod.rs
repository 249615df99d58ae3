//! Integer helpers, exact rationals and continued fractions.

mod contfrac;
mod rational;

pub use contfrac::{
    cf_convergents, cf_minus_eval, cf_minus_expand, cf_plus_eval, cf_plus_expand,
    cf_reverse_dual, CfMinus, CfPlus, Parity,
};
pub use rational::Rational;

use crate::error::{domain, Result};

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) > 0` and `a*x + b*y = g`.
pub fn ext_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return domain("ext_gcd(0, 0) is undefined");
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    Ok((old_r as i64, old_s as i64, old_t as i64))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `m`, as a residue in `[1, m-1]` (or 0 when `m == 1`).
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 1 {
        return domain(format!("modulus {m} must be positive"));
    }
    if m == 1 {
        return Ok(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m)?;
    if g != 1 {
        return domain(format!("{a} is not invertible modulo {m}"));
    }
    Ok(x.rem_euclid(m))
}

/// Floor division for signed integers.
pub fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) - if b < 0 && a.rem_euclid(b) != 0 { 1 } else { 0 }
}

/// Ceiling division for signed integers.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

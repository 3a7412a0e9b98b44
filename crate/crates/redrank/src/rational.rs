//! Exact rational helpers: parsing, formatting, and float conversion.
//!
//! Feasibility answers depend on boundary cases (tight inequalities), so
//! everything downstream of eigenvalue extraction runs on `BigRational`.
//! Floats enter only through measured matrices and are converted once,
//! via continued-fraction rounding with a capped denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Best rational approximation of `x` with denominator at most `max_den`.
///
/// Walks the continued-fraction convergents of `x` and stops before the
/// denominator cap is violated; a final semiconvergent step recovers exact
/// small fractions such as 1/3 from their closest doubles.
pub fn rationalize(x: f64, max_den: u64) -> BigRational {
    assert!(x.is_finite(), "cannot rationalize a non-finite value");
    assert!(max_den >= 1);
    let negative = x < 0.0;
    let x = x.abs();

    // Convergent recurrence p_k = a_k p_{k-1} + p_{k-2}, same for q.
    let (mut p0, mut q0) = (1i128, 0i128);
    let (mut p1, mut q1) = (x.floor() as i128, 1i128);
    let mut frac = x - x.floor();

    for _ in 0..64 {
        if frac.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i128;
        frac = inv - inv.floor();
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as i128 {
            // Largest semiconvergent still under the cap.
            let t = (max_den as i128 - q0) / q1;
            let (ps, qs) = (t * p1 + p0, t * q1 + q0);
            let cand = |p: i128, q: i128| (x - p as f64 / q as f64).abs();
            if qs > 0 && cand(ps, qs) < cand(p1, q1) {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if frac == 0.0 {
            break;
        }
    }

    let mut r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        r = -r;
    }
    r
}

/// Exact value of a rational as `f64` (rounded to nearest).
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse `"p/q"`, an integer literal, or a plain decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::ParseRational(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| err())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let f: BigInt = frac.parse().map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let abs = BigRational::from(i.abs()) + BigRational::new(f, scale);
        return Ok(if sign < 0 { -abs } else { abs });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from(n))
}

/// Canonical `"p/q"` form (or `"p"` when the denominator is 1).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational built from an integer pair; convenience for tests and builders.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_zero() -> BigRational {
    BigRational::zero()
}

pub fn rat_one() -> BigRational {
    BigRational::one()
}

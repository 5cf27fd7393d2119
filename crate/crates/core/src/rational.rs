//! Exact rational scalars.
//!
//! Every coordinate and area in the geometry engine is a `Rational`
//! (arbitrary-precision, always in lowest terms with positive denominator,
//! courtesy of `num-rational`). Floats exist only at the optimizer boundary;
//! they enter the engine through [`snap_f64`] or [`from_f64_exact`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float (dyadic rational).
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Formats as `"p/q"` (or `"p"` when integral).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The simplest rational (smallest denominator, then smallest numerator) in
/// the closed interval `[lo, hi]`. Stern-Brocot / continued-fraction walk.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo <= hi
    if lo.is_zero() {
        return Rational::zero();
    }
    simplest_positive(lo.clone(), hi.clone())
}

fn simplest_positive(lo: Rational, hi: Rational) -> Rational {
    // Invariant: 0 < lo <= hi.
    let fl = lo.floor();
    if lo.is_integer() {
        return lo;
    }
    if &fl + Rational::one() <= hi {
        return fl + Rational::one();
    }
    // Both endpoints in (fl, fl+1): recurse on the reciprocal tail.
    let tail = simplest_positive(
        (hi - fl.clone()).recip(),
        (lo - fl.clone()).recip(),
    );
    fl + tail.recip()
}

/// Snaps a float to the simplest rational within `tol` of it.
///
/// Near-rational floats (`0.3333333333333333`) collapse to small fractions;
/// surd-valued floats stay manageable (denominator on the order of
/// `1/sqrt(tol)`), which keeps downstream exact arithmetic cheap.
pub fn snap_f64(x: f64, tol: f64) -> Rational {
    assert!(x.is_finite(), "cannot snap a non-finite float");
    let exact = from_f64_exact(x).expect("finite float");
    let tol = from_f64_exact(tol.abs()).expect("finite tolerance");
    simplest_in_interval(&(&exact - &tol), &(&exact + &tol))
}

/// Parses `"p/q"`, an integer, or a decimal (snapped at 1e-12).
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
        let denom: BigInt = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
        if denom.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Ok(int) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(int));
    }
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !x.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(snap_f64(x, 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_finds_small_denominators() {
        assert_eq!(snap_f64(1.0 / 3.0, 1e-12), rat(1, 3));
        assert_eq!(snap_f64(0.25, 1e-12), rat(1, 4));
        assert_eq!(snap_f64(-2.0 / 7.0, 1e-12), rat(-2, 7));
        assert_eq!(snap_f64(0.0, 1e-12), rat(0, 1));
    }

    #[test]
    fn simplest_in_interval_basics() {
        assert_eq!(simplest_in_interval(&rat(3, 10), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_in_interval(&rat(-1, 2), &rat(1, 3)), rat(0, 1));
        assert_eq!(simplest_in_interval(&rat(7, 2), &rat(9, 2)), rat(4, 1));
        assert_eq!(simplest_in_interval(&rat(2, 3), &rat(2, 3)), rat(2, 3));
    }

    #[test]
    fn snap_of_surd_stays_close() {
        let x = 2.0f64.sqrt() / 2.0;
        let snapped = snap_f64(x, 1e-12);
        assert!((to_f64(&snapped) - x).abs() <= 1e-12);
    }

    #[test]
    fn parses_rational_first_then_decimal() {
        assert_eq!(parse_rational("19/81").unwrap(), rat(19, 81));
        assert_eq!(parse_rational(" -3 ").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}

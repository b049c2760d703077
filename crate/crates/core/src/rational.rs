//! Exact rationals and their textual form (`"p/q"`, `"p"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"` (optional sign, no whitespace inside).
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Rational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders in lowest terms as `"p/q"`, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The rational exactly equal to a finite `f64`.
pub fn from_f64(v: f64) -> Option<Rational> {
    <Rational as num_traits::FromPrimitive>::from_f64(v)
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root of a non-negative rational, when it exists.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Rational approximation of `sqrt(r)` with absolute error below `10^-digits`.
pub fn sqrt_approx(r: &Rational, digits: u32) -> Rational {
    if let Some(s) = sqrt_exact(r) {
        return s;
    }
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * Rational::from_integer(&scale * &scale)).floor().to_integer();
    Rational::new(scaled.sqrt(), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/5").unwrap(), ratio(3, 5));
        assert_eq!(parse("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(format(&ratio(-3, 2)), "-3/2");
        assert_eq!(format(&int(4)), "4");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_exact(&ratio(16, 25)), Some(ratio(4, 5)));
        assert_eq!(sqrt_exact(&ratio(1, 2)), None);
        let s = sqrt_approx(&int(2), 30);
        let err = to_f64(&(&s * &s - int(2))).abs();
        assert!(err < 1e-29);
    }
}

//! Exact rational arithmetic for thresholds and cost fractions.
//!
//! Values are `num_rational::Ratio<i128>`, always kept in lowest terms.
//! They render as `"p/q"` (even for integers) so reports have one shape.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(value: usize) -> Rational {
    Rational::from_integer(value as i128)
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::invalid(format!("expected a fraction p/q, got {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i128 = p.parse().map_err(|_| bad())?;
    let q: i128 = q.parse().map_err(|_| bad())?;
    if q <= 0 {
        return Err(Error::invalid(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `count <= fraction * len`, exactly.
pub fn within(count: usize, fraction: Rational, len: usize) -> bool {
    int(count) <= fraction * int(len)
}

/// `ceil(fraction * len)` as a count; negative values clamp to zero.
pub fn ceil_count(fraction: Rational, len: usize) -> usize {
    let v = (fraction * int(len)).ceil();
    if v.is_negative() || v.is_zero() {
        0
    } else {
        v.to_integer().to_usize().expect("count fits in usize")
    }
}

/// `1/2 + eps`.
pub fn half_plus(eps: Rational) -> Rational {
    ratio(1, 2) + eps
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/8").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("2/16").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(1)), "1/1");
        assert_eq!(format_rational(&ratio(26, 94)), "13/47");
    }

    #[test]
    fn thresholds() {
        // (1/2 + 1/4) * 2 = 1.5
        assert!(within(1, half_plus(ratio(1, 4)), 2));
        assert!(!within(2, half_plus(ratio(1, 4)), 2));
        assert!(within(3, half_plus(ratio(1, 2)), 3));
        assert_eq!(ceil_count(ratio(1, 4), 8), 2);
        assert_eq!(ceil_count(ratio(1, 3), 10), 4);
        assert_eq!(ceil_count(ratio(1, 3), 0), 0);
    }
}

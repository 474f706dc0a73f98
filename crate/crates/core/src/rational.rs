//! Exact rational helpers shared by the interval and ℚᵏ representations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Renders as `"p/q"`, or `"p"` for integers.
pub fn render(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Always `"p/q"`, as the JSON schema requires.
pub fn render_fraction(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn in_unit_interval(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}

/// Smallest `n ≥ 0` with `|x| ≤ n·unit`, for `unit > 0`.
pub fn ceil_ratio(x: &Q, unit: &Q) -> u64 {
    let r = (x.abs() / unit).ceil();
    r.to_integer().try_into().unwrap_or(u64::MAX)
}

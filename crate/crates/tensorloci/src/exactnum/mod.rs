//! Exact scalars: rationals, univariate polynomials, simple algebraic
//! extensions and the rational function field in one variable.

mod algext;
mod factor;
mod poly;
mod ratfunc;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use algext::{algext_inverse, AlgebraicElement, Modulus};
pub use factor::{rational_roots, squarefree_decomposition, upoly_factor_small};
pub use poly::{upoly_gcd, Poly};
pub use ratfunc::{RatFunc, Recorder};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Univariate polynomial over the rationals, lowest degree first.
pub type UniPoly = Poly<Q>;

/// An exact field. `is_zero` is the only branching primitive the generic
/// algorithms use, which is what lets [`RatFunc`] record every decision.
pub trait Field:
    Clone
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Embeds a rational constant.
    fn from_rational(q: &Q) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    /// Zero test used only to skip work. It must not influence results, so
    /// recording fields may answer it without noting anything.
    fn is_zero_unrecorded(&self) -> bool {
        self.is_zero()
    }

    /// `self / other`, `None` when `other` is zero.
    fn try_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.clone() * &inv)
    }
}

impl Field for Q {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`. Decimals and floats are rejected.
pub fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    let s = s.trim();
    let parse_int = |t: &str| -> std::result::Result<BigInt, String> {
        let t = t.trim();
        let body = t.strip_prefix(['+', '-']).unwrap_or(t);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("not an integer: {t:?}"));
        }
        t.parse::<BigInt>().map_err(|e| e.to_string())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1e3").is_err());
        assert_eq!(format_rational(&qf(-4, 6)), "-2/3");
        assert_eq!(format_rational(&q(5)), "5");
    }
}

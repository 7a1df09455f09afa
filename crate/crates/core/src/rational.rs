//! Exact signed rational numbers, the substrate of all instance data.
//!
//! `Rational` wraps an arbitrary-precision `Ratio<BigInt>` kept in canonical
//! form (positive denominator, reduced). The external text form is `"p/q"` or
//! `"p"` and round-trips bit-exactly; it is the form used in instance files
//! and CLI output.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<BigInt>);

impl Rational {
    /// Builds `numer/denom`, canonicalizing sign and gcd.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(Ratio::from_integer(n.into()))
    }

    /// `p/q` from machine integers; panics only on q = 0, so callers pass
    /// literal nonzero denominators.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator literal");
        Rational(Ratio::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value when the denominator is 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// Integer value as an `i64`, when it fits.
    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer power. `0^0 = 1` by the crate-wide convention;
    /// `0^negative` is an error.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if self.is_zero() {
            return match e.cmp(&0) {
                Ordering::Less => Err(Error::ZeroToNegativePower),
                Ordering::Equal => Ok(Rational::one()),
                Ordering::Greater => Ok(Rational::zero()),
            };
        }
        let e32 = i32::try_from(e).map_err(|_| Error::NonIntegerExponent)?;
        Ok(Rational(num_traits::Pow::pow(&self.0, e32)))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Floor of log2(|self|): the unique `k` with `2^k <= |self| < 2^(k+1)`.
    /// `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let n = self.0.numer().abs();
        let d = self.0.denom().clone();
        let mut k = n.bits() as i64 - d.bits() as i64;
        // bits() bounds the ratio within a factor of two either side; fix up.
        let two = BigInt::from(2);
        let pow_shift = |k: i64| -> (BigInt, BigInt) {
            // representative of 2^k as a fraction
            if k >= 0 {
                (two.pow(k as u32), BigInt::one())
            } else {
                (BigInt::one(), two.pow((-k) as u32))
            }
        };
        loop {
            let (pn, pd) = pow_shift(k);
            // 2^k <= n/d  <=>  pn * d <= n * pd
            if &pn * &d <= &n * &pd {
                let (qn, qd) = pow_shift(k + 1);
                if &qn * &d > &n * &qd {
                    return Some(k);
                }
                k += 1;
            } else {
                k -= 1;
            }
        }
    }

    /// Largest integer not above the value.
    pub fn floor_big(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer not below the value.
    pub fn ceil_big(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Approximate value for display only; never used in certified decisions.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with decimal integers and optional leading
    /// minus. `q` must be positive: `"1/0"` and `"1/-2"` are rejected so the
    /// canonical text form stays unique.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            if t.is_empty() {
                return Err(Error::parse("empty integer in rational"));
            }
            let body = t.strip_prefix('-').unwrap_or(t);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(format!("malformed integer {t:?}")));
            }
            t.parse::<BigInt>()
                .map_err(|e| Error::parse(format!("malformed integer {t:?}: {e}")))
        };
        match s.split_once('/') {
            None => Ok(Rational(Ratio::from_integer(parse_int(s)?))),
            Some((p, q)) => {
                let numer = parse_int(p)?;
                let denom = parse_int(q)?;
                if denom.is_zero() {
                    return Err(Error::parse(format!("zero denominator in {s:?}")));
                }
                if denom.is_negative() {
                    return Err(Error::parse(format!(
                        "denominator must be positive in {s:?}"
                    )));
                }
                Ok(Rational(Ratio::new(numer, denom)))
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

/// Division panics on a zero divisor; use `checked_div` where the divisor is
/// data-dependent.
impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

/// Sums of references, used all over the checkers.
impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(r("2/4").to_string(), "1/2");
        assert_eq!(r("-6/4").to_string(), "-3/2");
        assert_eq!(r("0/7").to_string(), "0");
        assert_eq!(r("8/2").to_string(), "4");
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-1", "1/2", "-3/7", "123456789123456789/2"] {
            assert_eq!(r(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("--2".parse::<Rational>().is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(r("2/3").pow_int(2).unwrap(), r("4/9"));
        assert_eq!(r("2/3").pow_int(-2).unwrap(), r("9/4"));
        assert_eq!(r("-2").pow_int(3).unwrap(), r("-8"));
        assert_eq!(r("0").pow_int(0).unwrap(), r("1"));
        assert_eq!(r("7/5").pow_int(0).unwrap(), r("1"));
        assert!(r("0").pow_int(-1).is_err());
    }

    #[test]
    fn floor_log2_brackets() {
        for s in [
            "1",
            "2",
            "3",
            "1/2",
            "5/3",
            "1/1000",
            "999",
            "1024",
            "1023/1024",
        ] {
            let x = r(s);
            let k = x.floor_log2().unwrap();
            let lo = Rational::from_int(2).pow_int(k).unwrap();
            let hi = Rational::from_int(2).pow_int(k + 1).unwrap();
            assert!(lo <= x && x < hi, "{s}: 2^{k} <= {x} < 2^{}", k + 1);
        }
        assert_eq!(r("0").floor_log2(), None);
    }
}

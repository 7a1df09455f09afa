//! Dyadic rationals (integer mantissa times a power of two) and certified
//! intervals with dyadic endpoints.
//!
//! Dyadics are closed under addition, subtraction and multiplication, so
//! those interval operations are exact; only division and conversions from
//! general rationals round, and they always round outward. Endpoints are
//! trimmed to the working precision after each operation, which keeps
//! refinement cost linear in precision instead of letting chained powers blow
//! up rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `mantissa * 2^exponent`, normalized so the mantissa is odd (or zero with
/// exponent zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

/// Floor division by 2^k. BigInt's shift operators are not relied on for
/// negative values; `div_floor` pins the rounding direction.
fn shr_floor(m: &BigInt, k: u64) -> BigInt {
    m.div_floor(&(BigInt::one() << k))
}

fn shr_ceil(m: &BigInt, k: u64) -> BigInt {
    m.div_ceil(&(BigInt::one() << k))
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Dyadic {
                mantissa,
                exponent: 0,
            };
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Dyadic {
            mantissa: &mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// 2^k
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn to_rational(&self) -> Rational {
        let two = Rational::from_int(2);
        let base = Rational::from_int(self.mantissa.clone());
        // exponent magnitudes stay small; pow_int cannot fail on nonzero base
        base * &two.pow_int(self.exponent).expect("2^k is always defined")
    }

    /// Exact conversion when the rational is dyadic (denominator a power of
    /// two).
    pub fn from_rational_exact(r: &Rational) -> Option<Dyadic> {
        let d = r.denom();
        if d.is_one() {
            return Some(Dyadic::new(r.numer().clone(), 0));
        }
        // canonical form has d > 0; power of two iff one bit set
        let bits = d.bits();
        if d == &(BigInt::one() << (bits - 1)) {
            Some(Dyadic::new(r.numer().clone(), -((bits - 1) as i64)))
        } else {
            None
        }
    }

    /// Largest dyadic `<= r` with roughly `prec` significant bits.
    pub fn from_rational_floor(r: &Rational, prec: u32) -> Dyadic {
        Self::from_rational_dir(r, prec, false)
    }

    /// Smallest dyadic `>= r` with roughly `prec` significant bits.
    pub fn from_rational_ceil(r: &Rational, prec: u32) -> Dyadic {
        Self::from_rational_dir(r, prec, true)
    }

    fn from_rational_dir(r: &Rational, prec: u32, ceil: bool) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        if let Some(d) = Dyadic::from_rational_exact(r) {
            return d;
        }
        let n = r.numer();
        let d = r.denom();
        let k = n.bits() as i64 - d.bits() as i64;
        let shift = prec as i64 + 2 - k;
        let (nn, dd) = if shift >= 0 {
            (n << shift as u64, d.clone())
        } else {
            (n.clone(), d << (-shift) as u64)
        };
        let q = if ceil {
            nn.div_ceil(&dd)
        } else {
            nn.div_floor(&dd)
        };
        Dyadic::new(q, -shift)
    }

    /// Directed trim to at most `prec` mantissa bits.
    pub fn round_down(&self, prec: u32) -> Dyadic {
        self.round_dir(prec, false)
    }

    pub fn round_up(&self, prec: u32) -> Dyadic {
        self.round_dir(prec, true)
    }

    fn round_dir(&self, prec: u32, ceil: bool) -> Dyadic {
        let bits = self.mantissa.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let m = if ceil {
            shr_ceil(&self.mantissa, k)
        } else {
            shr_floor(&self.mantissa, k)
        };
        Dyadic::new(m, self.exponent + k as i64)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: if self.mantissa.is_zero() {
                0
            } else {
                self.exponent
            },
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as u64;
        let mb = &other.mantissa << (other.exponent - e) as u64;
        Dyadic::new(ma + mb, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exponent: self.exponent + other.exponent,
        }
    }

    /// Exact nonnegative integer power.
    pub fn pow_uint(&self, e: u32) -> Dyadic {
        if e == 0 {
            return Dyadic::one();
        }
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.pow(e),
            exponent: self.exponent * e as i64,
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Dyadic) -> Ordering {
        match (self.mantissa.sign(), other.mantissa.sign()) {
            (num_bigint::Sign::Minus, num_bigint::Sign::NoSign | num_bigint::Sign::Plus) => {
                return Ordering::Less
            }
            (num_bigint::Sign::NoSign | num_bigint::Sign::Plus, num_bigint::Sign::Minus) => {
                return Ordering::Greater
            }
            (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa << (self.exponent - e) as u64;
        let mb = &other.mantissa << (other.exponent - e) as u64;
        ma.cmp(&mb)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

/// Canonical text form `mantissa*2^exponent` with odd (or zero) mantissa.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Largest exponent raised exactly on interval endpoints. Exact powering
/// multiplies the mantissa size by the exponent, so beyond this the rounded
/// repeated-squaring path takes over and mantissas stay at the working
/// precision no matter how large the exponent is.
const EXACT_POW_MAX: u32 = 64;

/// Certified enclosure of a real value; `lo <= hi` always, and every
/// operation returns an interval containing the true result of the operation
/// on any members of the operand intervals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        DyadicInterval { lo, hi, precision }
    }

    /// Degenerate interval around an exactly-representable value.
    pub fn exact(d: Dyadic, precision: u32) -> Self {
        DyadicInterval {
            lo: d.clone(),
            hi: d,
            precision,
        }
    }

    pub fn zero(precision: u32) -> Self {
        Self::exact(Dyadic::zero(), precision)
    }

    pub fn one(precision: u32) -> Self {
        Self::exact(Dyadic::one(), precision)
    }

    /// Tight outward enclosure of a rational; degenerate exactly when the
    /// rational is dyadic.
    pub fn from_rational(r: &Rational, precision: u32) -> Self {
        if let Some(d) = Dyadic::from_rational_exact(r) {
            return Self::exact(d, precision);
        }
        DyadicInterval {
            lo: Dyadic::from_rational_floor(r, precision),
            hi: Dyadic::from_rational_ceil(r, precision),
            precision,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        self.hi.to_rational() - &self.lo.to_rational()
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lo.to_rational() <= *r && *r <= self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `self` entirely below `other` with no shared point.
    pub fn disjoint_below(&self, other: &DyadicInterval) -> bool {
        self.hi < other.lo
    }

    /// Outward trim of both endpoints to the working precision.
    fn trimmed(self) -> Self {
        let p = self.precision;
        DyadicInterval {
            lo: self.lo.round_down(p),
            hi: self.hi.round_up(p),
            precision: p,
        }
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        DyadicInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            precision,
        }
        .trimmed()
    }

    pub fn neg(&self) -> Self {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            precision: self.precision,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        DyadicInterval {
            lo: self.lo.add(&other.lo),
            hi: self.hi.add(&other.hi),
            precision: p,
        }
        .trimmed()
    }

    /// Exact sum with no precision trim; dyadic addition is exact, so this
    /// merge is associative and order-independent. Parallel reductions rely
    /// on that.
    pub fn add_exact(&self, other: &Self) -> Self {
        DyadicInterval {
            lo: self.lo.add(&other.lo),
            hi: self.hi.add(&other.hi),
            precision: self.precision.min(other.precision),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.precision.min(other.precision);
        let candidates = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        DyadicInterval {
            lo,
            hi,
            precision: p,
        }
        .trimmed()
    }

    /// Interval division. Fails softly when the divisor encloses zero: a
    /// tighter divisor enclosure may still exclude it, so callers refine.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.precision.min(other.precision);
        let quotients = |num: &Dyadic| -> (Rational, Rational) {
            let n = num.to_rational();
            let a = n.checked_div(&other.lo.to_rational()).expect("nonzero");
            let b = n.checked_div(&other.hi.to_rational()).expect("nonzero");
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let (l1, h1) = quotients(&self.lo);
        let (l2, h2) = quotients(&self.hi);
        let lo = l1.min(l2);
        let hi = h1.max(h2);
        Ok(DyadicInterval {
            lo: Dyadic::from_rational_floor(&lo, p),
            hi: Dyadic::from_rational_ceil(&hi, p),
            precision: p,
        })
    }

    /// Nonnegative integer power by binary exponentiation, trimming after
    /// every multiplication. Sound for any sign, wider than the exact
    /// endpoint power, and its cost depends on the precision and `log k`
    /// rather than on `k`.
    pub fn pow_uint_rounded(&self, k: u32) -> Self {
        let mut acc = Self::one(self.precision);
        for bit in (0..(32 - k.leading_zeros())).rev() {
            acc = acc.mul(&acc);
            if (k >> bit) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Integer power with sign handling; exact on the endpoints for small
    /// exponents, rounded per step beyond `EXACT_POW_MAX`.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.precision));
        }
        let p = self.precision;
        if e > 0 {
            let k = u32::try_from(e).map_err(|_| Error::NonIntegerExponent)?;
            if k > EXACT_POW_MAX {
                return Ok(self.pow_uint_rounded(k));
            }
            let (lo, hi) = if k % 2 == 1 {
                (self.lo.pow_uint(k), self.hi.pow_uint(k))
            } else if !self.lo.is_negative() {
                (self.lo.pow_uint(k), self.hi.pow_uint(k))
            } else if !self.hi.is_positive() {
                (self.hi.pow_uint(k), self.lo.pow_uint(k))
            } else {
                // straddles zero: range is [0, max(|lo|,|hi|)^k]
                let m = self.lo.neg().max(self.hi.clone());
                (Dyadic::zero(), m.pow_uint(k))
            };
            Ok(DyadicInterval {
                lo,
                hi,
                precision: p,
            }
            .trimmed())
        } else {
            let pos = self.pow_int(-e)?;
            Self::one(p).div(&pos)
        }
    }

    /// Convex hull, used only for reporting.
    pub fn hull(&self, other: &Self) -> Self {
        DyadicInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.precision.min(other.precision),
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_strips_twos() {
        let d = Dyadic::new(BigInt::from(12), 1);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), 3);
        assert_eq!(d.to_string(), "3*2^3");
        assert_eq!(Dyadic::zero().to_string(), "0*2^0");
    }

    #[test]
    fn exact_round_trip_through_rational() {
        for (m, e) in [(5i64, -3i64), (-7, 2), (1, 0), (9, -20)] {
            let d = Dyadic::new(BigInt::from(m), e);
            let r = d.to_rational();
            assert_eq!(Dyadic::from_rational_exact(&r).unwrap(), d);
        }
        assert!(Dyadic::from_rational_exact(&rat("1/3")).is_none());
    }

    #[test]
    fn directed_rational_conversion_brackets() {
        for s in ["1/3", "-1/3", "22/7", "-355/113", "1/1000000"] {
            let r = rat(s);
            for prec in [8u32, 64, 128] {
                let lo = Dyadic::from_rational_floor(&r, prec);
                let hi = Dyadic::from_rational_ceil(&r, prec);
                assert!(lo.to_rational() <= r, "{s} floor");
                assert!(hi.to_rational() >= r, "{s} ceil");
                let width = hi.to_rational() - &lo.to_rational();
                let bound =
                    rat("1").max(r.abs()) * &Rational::ratio(1, 2).pow_int(prec as i64).unwrap();
                assert!(width <= bound, "{s} at {prec}: width {width}");
            }
        }
    }

    #[test]
    fn interval_arithmetic_contains_exact() {
        let a = DyadicInterval::from_rational(&rat("1/3"), 64);
        let b = DyadicInterval::from_rational(&rat("-7/5"), 64);
        let sum = a.add(&b);
        assert!(sum.contains_rational(&(rat("1/3") + &rat("-7/5"))));
        let prod = a.mul(&b);
        assert!(prod.contains_rational(&(rat("1/3") * &rat("-7/5"))));
        let quot = a.div(&b).unwrap();
        assert!(quot.contains_rational(&rat("1/3").checked_div(&rat("-7/5")).unwrap()));
    }

    #[test]
    fn division_by_zero_straddling_interval_is_soft() {
        let a = DyadicInterval::one(64);
        let z = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1), 64);
        assert_eq!(a.div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn int_power_straddling_zero() {
        let iv = DyadicInterval::new(Dyadic::from_int(-2), Dyadic::from_int(3), 64);
        let sq = iv.pow_int(2).unwrap();
        assert!(sq.contains_rational(&rat("0")));
        assert!(sq.contains_rational(&rat("9")));
        assert!(!sq.contains_rational(&rat("-1")));
        let cube = iv.pow_int(3).unwrap();
        assert!(cube.contains_rational(&rat("-8")));
        assert!(cube.contains_rational(&rat("27")));
    }

    #[test]
    fn rounded_power_contains_endpoint_powers() {
        for (s, k) in [("7/5", 200u32), ("1/3", 151), ("-4/7", 96)] {
            let r = rat(s);
            let iv = DyadicInterval::from_rational(&r, 96);
            let powed = iv.pow_uint_rounded(k);
            assert!(
                powed.contains_rational(&r.pow_int(k as i64).unwrap()),
                "{s}^{k} escaped its enclosure"
            );
            // trimming happens every step, so endpoints never outgrow the
            // working precision
            assert!(powed.lo().mantissa().bits() <= 96 + 2);
            assert!(powed.hi().mantissa().bits() <= 96 + 2);
        }
    }

    #[test]
    fn large_int_power_cost_tracks_precision() {
        let iv = DyadicInterval::from_rational(&rat("7/5"), 128);
        let powed = iv.pow_int(100_000).unwrap();
        assert!(powed.contains_rational(&rat("7/5").pow_int(100_000).unwrap()));
        assert!(powed.strictly_positive());
        assert!(powed.lo().mantissa().bits() <= 130);

        let inv = iv.pow_int(-100_000).unwrap();
        assert!(inv.contains_rational(
            &Rational::one()
                .checked_div(&rat("7/5").pow_int(100_000).unwrap())
                .unwrap()
        ));
        assert!(inv.strictly_positive());
    }
}

//! Certified rational powers `x^(p/q)`.
//!
//! Integer exponents are evaluated exactly. Fractional exponents first try an
//! exact q-th root of numerator and denominator; otherwise the root is
//! enclosed by dyadic bisection. The bisection compares `mid^q` against the
//! radicand through directed dyadic bounds carried at the working precision
//! plus a guard margin, and the radicand itself is an enclosure of `base^p`
//! rather than an exact rational, so the cost of a power is governed by the
//! requested precision and the bit length of the exponent, never by the
//! exponent's magnitude. No floating point enters the certified path. The
//! convention `0^0 = 1` is used throughout the crate.

use num_integer::Integer;

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exact value of `base^e` when it is rational, `None` when the power is
/// irrational or undefined.
pub fn rat_pow_exact(base: &Rational, e: &Rational) -> Option<Rational> {
    if let Some(k) = e.as_i64() {
        return base.pow_int(k).ok();
    }
    if base.is_zero() {
        // fractional exponent: positive gives 0, negative is undefined
        return if e.is_positive() {
            Some(Rational::zero())
        } else {
            None
        };
    }
    if base.is_negative() {
        return None;
    }
    let q = u32::try_from(e.denom().clone()).ok()?;
    let p = i64::try_from(e.numer().clone()).ok()?;
    let rn = base.numer().nth_root(q);
    let rd = base.denom().nth_root(q);
    if &rn.pow(q) != base.numer() || &rd.pow(q) != base.denom() {
        return None;
    }
    let root = Rational::new(rn, rd).expect("denominator root of positive is nonzero");
    root.pow_int(p).ok()
}

/// Certified enclosure of `base^e` at the requested precision.
///
/// Hard domain errors (zero to a negative power, negative base with a
/// fractional exponent) are reported as such; they cannot be fixed by
/// refining precision.
pub fn rat_pow(base: &Rational, e: &Rational, prec: u32) -> Result<DyadicInterval> {
    if let Some(k) = e.as_i64() {
        let exact = base.pow_int(k)?;
        return Ok(DyadicInterval::from_rational(&exact, prec));
    }
    if base.is_zero() {
        return if e.is_positive() {
            Ok(DyadicInterval::zero(prec))
        } else {
            Err(Error::ZeroToNegativePower)
        };
    }
    if base.is_negative() {
        return Err(Error::NegativeBaseFractionalExponent);
    }
    if let Some(exact) = rat_pow_exact(base, e) {
        return Ok(DyadicInterval::from_rational(&exact, prec));
    }
    let q = u32::try_from(e.denom().clone())
        .map_err(|_| Error::NotCertified(format!("root index {} exceeds u32", e.denom())))?;
    let p = i64::try_from(e.numer().clone()).map_err(|_| {
        Error::NotCertified(format!("exponent numerator {} exceeds i64", e.numer()))
    })?;
    // base > 0 and p != 0 here, so base^p is well defined and positive. The
    // radicand is enclosed instead of computed exactly: an exact base^p has a
    // mantissa p times the input's, which would tie the cost to the size of
    // the exponent instead of the precision.
    let work = prec.saturating_add(GUARD_BITS);
    let radicand = DyadicInterval::from_rational(base, work)
        .pow_int(p)
        .map_err(|_| {
            Error::NotCertified(format!("exponent numerator {} exceeds u32", e.numer()))
        })?;
    debug_assert!(radicand.strictly_positive());
    let lo_root = root_bisect(&radicand.lo().to_rational(), q, prec);
    if radicand.is_degenerate() {
        return Ok(lo_root);
    }
    let hi_root = root_bisect(&radicand.hi().to_rational(), q, prec);
    Ok(DyadicInterval::new(
        lo_root.lo().clone(),
        hi_root.hi().clone(),
        prec,
    ))
}

/// Extra bits carried by the bisection's internal power comparisons. The
/// rounding error they admit stays a factor 2^-GUARD_BITS or so below the
/// final interval width, so directed bounds decide every step that exact
/// comparison would, except within a sliver of the root itself.
const GUARD_BITS: u32 = 64;

/// Directed bound on `d^q` for `d >= 0`: every intermediate product is
/// rounded the requested way at `prec` bits. Monotonicity of multiplication
/// on nonnegatives makes the running bound stay on its side.
fn pow_uint_directed(d: &Dyadic, q: u32, prec: u32, up: bool) -> Dyadic {
    debug_assert!(!d.is_negative());
    let round = |x: Dyadic| {
        if up {
            x.round_up(prec)
        } else {
            x.round_down(prec)
        }
    };
    let mut acc = Dyadic::one();
    for bit in (0..(32 - q.leading_zeros())).rev() {
        acc = round(acc.mul(&acc));
        if (q >> bit) & 1 == 1 {
            acc = round(acc.mul(d));
        }
    }
    acc
}

/// Dyadic bisection enclosure of `y^(1/q)` for `y > 0`, `q >= 2`, with
/// relative width at most `2^-prec`. Each step compares `mid^q` with `y`
/// through directed bounds at GUARD_BITS extra precision; when even those
/// cannot separate them, `mid` is already within a relative
/// `2^-(prec+GUARD_BITS-16)` of the root and a padded point interval is
/// returned directly.
fn root_bisect(y: &Rational, q: u32, prec: u32) -> DyadicInterval {
    debug_assert!(y.is_positive() && q >= 2);
    let work = prec.saturating_add(GUARD_BITS);
    let k = y.floor_log2().expect("positive radicand");
    // 2^k <= y < 2^(k+1) pins the root between 2^floor(k/q) and 2^ceil((k+1)/q)
    let mut lo = Dyadic::pow2(Integer::div_floor(&k, &(q as i64)));
    let mut hi = Dyadic::pow2(Integer::div_ceil(&(k + 1), &(q as i64)));
    debug_assert!(lo.to_rational().pow_int(q as i64).unwrap() <= *y);
    debug_assert!(hi.to_rational().pow_int(q as i64).unwrap() >= *y);
    let half = Dyadic::pow2(-1);
    // stop once (hi - lo) <= lo * 2^-(prec+1); lo > 0 throughout
    let stop_shift = prec as i64 + 1;
    loop {
        let gap = hi.sub(&lo);
        if gap.mul(&Dyadic::pow2(stop_shift)).cmp_exact(&lo) != std::cmp::Ordering::Greater {
            return DyadicInterval::new(lo, hi, prec);
        }
        let mid = lo.add(&hi).mul(&half);
        if pow_uint_directed(&mid, q, work, true).to_rational() < *y {
            lo = mid;
        } else if pow_uint_directed(&mid, q, work, false).to_rational() > *y {
            hi = mid;
        } else {
            // y lies between the two bounds on mid^q, which pins mid to the
            // root within the comparison error; pad by a safe multiple of it
            // and intersect with the bracket, which still contains the root
            let pad = mid.mul(&Dyadic::pow2(16 - work as i64));
            let lo_near = mid.sub(&pad).max(lo);
            let hi_near = mid.add(&pad).min(hi);
            return DyadicInterval::new(lo_near, hi_near, prec);
        }
    }
}

/// Certified enclosure of `iv^e` for an argument already enclosed in an
/// interval.
///
/// With a fractional exponent the argument must be nonnegative; an enclosure
/// whose lower endpoint dips below zero from earlier outward rounding is
/// clipped to zero when its upper endpoint is nonnegative, and rejected as a
/// hard error when the whole interval is negative. A clipped-to-zero lower
/// endpoint with a negative exponent is a soft division error: refinement may
/// pull the enclosure away from zero.
pub fn pow_interval(iv: &DyadicInterval, e: &Rational, prec: u32) -> Result<DyadicInterval> {
    if let Some(k) = e.as_i64() {
        if k < 0 && iv.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        return iv.pow_int(k);
    }
    if iv.hi().is_negative() {
        return Err(Error::NegativeBaseFractionalExponent);
    }
    let lo = if iv.lo().is_negative() {
        Dyadic::zero()
    } else {
        iv.lo().clone()
    };
    if e.is_negative() && lo.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let lo_pow = rat_pow(&lo.to_rational(), e, prec)?;
    let hi_pow = rat_pow(&iv.hi().to_rational(), e, prec)?;
    // x^e is monotone on x > 0: increasing for e > 0, decreasing for e < 0
    let (a, b) = if e.is_positive() {
        (lo_pow.lo().clone(), hi_pow.hi().clone())
    } else {
        (hi_pow.lo().clone(), lo_pow.hi().clone())
    };
    Ok(DyadicInterval::new(a, b, prec))
}

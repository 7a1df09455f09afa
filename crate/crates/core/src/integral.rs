//! Certified Riemann enclosures for integrands of the form `f^alpha /
//! g^beta` over piecewise polynomials, and the integral forms of the Radon
//! bounds built on them.
//!
//! Subinterval contributions are exact rationals (dyadic rounding happens
//! once, at the very end), so the parallel and sequential reductions produce
//! bit-identical enclosures, and halving the mesh can only tighten them.

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};
use crate::poly::{range_piece, rdiv, rpow_int, PiecewisePoly, RangeBound};
use crate::power::{pow_interval, rat_pow};
use crate::rational::Rational;
use crate::verdict::{Outcome, Verdict};
use crate::START_PRECISION_BITS;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First partition count tried by the integral checks.
pub const DEFAULT_PARTITIONS: u32 = 16;
/// Partition count at which refinement gives up and reports Indeterminate.
pub const MAX_PARTITIONS: u32 = 4096;

/// Working precision for the dyadic steps (fractional powers, final
/// rounding). Discretization error dominates long before this does.
const WORK_PREC: u32 = 128;
/// Subdivision depth for per-subinterval polynomial range bounds.
const RANGE_DEPTH: u32 = 8;
/// Bisection budget for positivity certification.
const POSITIVITY_DEPTH: u32 = 24;

/// Two dyadic rationals bracketing an integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannEnclosure {
    pub partition_count: u64,
    pub lower: Dyadic,
    pub upper: Dyadic,
}

impl RiemannEnclosure {
    pub fn width(&self) -> Rational {
        self.upper.to_rational() - &self.lower.to_rational()
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.lower.to_rational() <= *value && *value <= self.upper.to_rational()
    }

    pub fn to_interval(&self) -> DyadicInterval {
        DyadicInterval::new(self.lower.clone(), self.upper.clone(), WORK_PREC)
    }
}

/// Proves `f > 0` on `[lo, hi]` by range bounds with bisection, or reports
/// the deepest subinterval where positivity could not be established. A
/// function whose exact minimum is 0 or below is rejected immediately.
pub fn certify_positive(f: &PiecewisePoly, lo: &Rational, hi: &Rational) -> Result<()> {
    if lo >= hi {
        return Err(Error::domain("a < b"));
    }
    if !f.covers(lo, hi) {
        return Err(Error::domain("interval within the segment cover"));
    }
    let mut cuts = vec![lo.clone()];
    cuts.extend(f.breakpoints_within(lo, hi));
    cuts.push(hi.clone());
    for pair in cuts.windows(2) {
        let coeffs = f
            .coeffs_on(&pair[0], &pair[1])
            .expect("cut points align with segments");
        positivity_rec(coeffs, &pair[0], &pair[1], POSITIVITY_DEPTH)?;
    }
    Ok(())
}

fn positivity_rec(coeffs: &[Rational], lo: &Rational, hi: &Rational, depth: u32) -> Result<()> {
    let offending = || Error::NotCertified(format!("positivity on [{lo}, {hi}]"));
    let rng = range_piece(coeffs, lo, hi, RANGE_DEPTH);
    if rng.lo.is_positive() {
        return Ok(());
    }
    if rng.attained || depth == 0 {
        return Err(offending());
    }
    let mid = &(lo + hi) * &Rational::ratio(1, 2);
    positivity_rec(coeffs, lo, &mid, depth - 1)?;
    positivity_rec(coeffs, &mid, hi, depth - 1)
}

/// One merged polynomial piece: both functions are single polynomials here.
struct Piece<'a> {
    lo: Rational,
    step: Rational,
    f_coeffs: &'a [Rational],
    g_coeffs: &'a [Rational],
}

fn merged_pieces<'a>(
    f: &'a PiecewisePoly,
    g: &'a PiecewisePoly,
    lo: &Rational,
    hi: &Rational,
    per_piece: u32,
) -> Result<Vec<Piece<'a>>> {
    if lo >= hi {
        return Err(Error::domain("a < b"));
    }
    if !f.covers(lo, hi) || !g.covers(lo, hi) {
        return Err(Error::domain("interval within the segment cover"));
    }
    let mut cuts = vec![lo.clone()];
    cuts.extend(f.breakpoints_within(lo, hi));
    cuts.extend(g.breakpoints_within(lo, hi));
    cuts.push(hi.clone());
    cuts.sort();
    cuts.dedup();
    let n = Rational::from_int(per_piece as i64);
    cuts.windows(2)
        .map(|pair| {
            let f_coeffs = f
                .coeffs_on(&pair[0], &pair[1])
                .expect("cut points align with segments");
            let g_coeffs = g
                .coeffs_on(&pair[0], &pair[1])
                .expect("cut points align with segments");
            Ok(Piece {
                lo: pair[0].clone(),
                step: &(&pair[1] - &pair[0]) / &n,
                f_coeffs,
                g_coeffs,
            })
        })
        .collect()
}

fn interval_from_range(r: &RangeBound) -> DyadicInterval {
    DyadicInterval::new(
        Dyadic::from_rational_floor(&r.lo, WORK_PREC),
        Dyadic::from_rational_ceil(&r.hi, WORK_PREC),
        WORK_PREC,
    )
}

/// Sound rational bounds for `f^alpha / g^beta` on one subinterval. Integer
/// exponents stay entirely in exact arithmetic; fractional ones go through
/// the certified dyadic power.
fn integrand_range(
    piece: &Piece<'_>,
    lo: &Rational,
    hi: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<(Rational, Rational)> {
    let rf = range_piece(piece.f_coeffs, lo, hi, RANGE_DEPTH);
    let rg = range_piece(piece.g_coeffs, lo, hi, RANGE_DEPTH);
    match (alpha.as_i64(), beta.as_i64()) {
        (Some(ak), Some(bk)) => {
            let num = rpow_int(&rf.lo, &rf.hi, ak)?;
            let den = rpow_int(&rg.lo, &rg.hi, bk)?;
            rdiv((&num.0, &num.1), (&den.0, &den.1))
        }
        _ => {
            let num = pow_interval(&interval_from_range(&rf), alpha, WORK_PREC)?;
            let den = pow_interval(&interval_from_range(&rg), beta, WORK_PREC)?;
            let q = num.div(&den)?;
            Ok((q.lo().to_rational(), q.hi().to_rational()))
        }
    }
}

fn subinterval_contribution(
    piece: &Piece<'_>,
    j: u32,
    alpha: &Rational,
    beta: &Rational,
) -> Result<(Rational, Rational)> {
    let a = &piece.lo + &(&piece.step * &Rational::from_int(j as i64));
    let b = &a + &piece.step;
    let (hlo, hhi) = integrand_range(piece, &a, &b, alpha, beta)?;
    Ok((&hlo * &piece.step, &hhi * &piece.step))
}

fn finish(
    sums: (Rational, Rational),
    pieces: usize,
    per_piece: u32,
    prec: u32,
) -> RiemannEnclosure {
    RiemannEnclosure {
        partition_count: pieces as u64 * per_piece as u64,
        lower: Dyadic::from_rational_floor(&sums.0, prec),
        upper: Dyadic::from_rational_ceil(&sums.1, prec),
    }
}

/// Sequential Riemann enclosure of `integral of f^alpha / g^beta` over
/// `[lo, hi]`; `partitions` subintervals per merged polynomial piece, so
/// doubling it halves every subinterval in place.
pub fn enclose_integral_seq(
    f: &PiecewisePoly,
    alpha: &Rational,
    g: &PiecewisePoly,
    beta: &Rational,
    lo: &Rational,
    hi: &Rational,
    partitions: u32,
    prec: u32,
) -> Result<RiemannEnclosure> {
    let per_piece = partitions.max(1);
    let pieces = merged_pieces(f, g, lo, hi, per_piece)?;
    let mut sums = (Rational::zero(), Rational::zero());
    for piece in &pieces {
        for j in 0..per_piece {
            let (clo, chi) = subinterval_contribution(piece, j, alpha, beta)?;
            sums.0 = sums.0 + &clo;
            sums.1 = sums.1 + &chi;
        }
    }
    Ok(finish(sums, pieces.len(), per_piece, prec))
}

/// Riemann enclosure computed across parallel workers; bit-identical to the
/// sequential result because the per-subinterval terms are exact rationals
/// and their sum is order-independent.
#[cfg(feature = "parallel")]
pub fn enclose_integral(
    f: &PiecewisePoly,
    alpha: &Rational,
    g: &PiecewisePoly,
    beta: &Rational,
    lo: &Rational,
    hi: &Rational,
    partitions: u32,
    prec: u32,
) -> Result<RiemannEnclosure> {
    let per_piece = partitions.max(1);
    let pieces = merged_pieces(f, g, lo, hi, per_piece)?;
    let total = pieces.len() as u64 * per_piece as u64;
    let sums = (0..total)
        .into_par_iter()
        .map(|t| {
            let piece = &pieces[(t / per_piece as u64) as usize];
            let j = (t % per_piece as u64) as u32;
            subinterval_contribution(piece, j, alpha, beta)
        })
        .try_reduce(
            || (Rational::zero(), Rational::zero()),
            |a, b| Ok((a.0 + &b.0, a.1 + &b.1)),
        )?;
    Ok(finish(sums, pieces.len(), per_piece, prec))
}

#[cfg(not(feature = "parallel"))]
pub fn enclose_integral(
    f: &PiecewisePoly,
    alpha: &Rational,
    g: &PiecewisePoly,
    beta: &Rational,
    lo: &Rational,
    hi: &Rational,
    partitions: u32,
    prec: u32,
) -> Result<RiemannEnclosure> {
    enclose_integral_seq(f, alpha, g, beta, lo, hi, partitions, prec)
}

/// Enclosure of a plain polynomial integral.
pub fn enclose_poly_integral(
    f: &PiecewisePoly,
    lo: &Rational,
    hi: &Rational,
    partitions: u32,
    prec: u32,
) -> Result<RiemannEnclosure> {
    enclose_integral(
        f,
        &Rational::one(),
        f,
        &Rational::zero(),
        lo,
        hi,
        partitions,
        prec,
    )
}

fn equality_verdict(both: DyadicInterval) -> Verdict {
    Verdict {
        outcome: Outcome::EqualityCertified,
        lhs: both.clone(),
        rhs: both,
        margin: DyadicInterval::zero(START_PRECISION_BITS),
        precision_used: 0,
    }
}

/// Doubles the partition count until the two side enclosures separate.
/// Division hiccups from still-loose enclosures are retried at the next
/// refinement; only an error on every level propagates.
fn refine_to_verdict(
    max_partitions: u32,
    mut sides: impl FnMut(u32) -> Result<(DyadicInterval, DyadicInterval)>,
) -> Result<Verdict> {
    let max_partitions = max_partitions.max(DEFAULT_PARTITIONS);
    let mut partitions = DEFAULT_PARTITIONS;
    let mut last: Option<(DyadicInterval, DyadicInterval)> = None;
    let mut last_soft = None;
    loop {
        match sides(partitions) {
            Ok(pair) => {
                let margin = pair.0.add_exact(&pair.1.neg());
                let outcome = if margin.strictly_positive() {
                    Some(Outcome::Holds)
                } else if margin.strictly_negative() {
                    Some(Outcome::Violated)
                } else {
                    None
                };
                if let Some(outcome) = outcome {
                    return Ok(Verdict {
                        outcome,
                        lhs: pair.0,
                        rhs: pair.1,
                        margin,
                        precision_used: WORK_PREC,
                    });
                }
                last = Some(pair);
            }
            Err(Error::DivisionByZero) => last_soft = Some(Error::DivisionByZero),
            Err(other) => return Err(other),
        }
        if partitions >= max_partitions {
            break;
        }
        partitions = (partitions * 2).min(max_partitions);
    }
    match last {
        Some((lhs, rhs)) => {
            let margin = lhs.add_exact(&rhs.neg());
            Ok(Verdict {
                outcome: Outcome::Indeterminate,
                lhs,
                rhs,
                margin,
                precision_used: WORK_PREC,
            })
        }
        None => Err(last_soft.unwrap_or(Error::DivisionByZero)),
    }
}

/// Certified check of `integral of f^(m+1)/g^m >= (integral of f)^(m+1) /
/// (integral of g)^m` for positive piecewise polynomials.
pub fn check_integral_radon(
    f: &PiecewisePoly,
    g: &PiecewisePoly,
    lo: &Rational,
    hi: &Rational,
    m: &Rational,
    max_partitions: u32,
) -> Result<Verdict> {
    if lo >= hi {
        return Err(Error::domain("a < b"));
    }
    if m.is_negative() && m > &Rational::from_int(-1) {
        return Err(Error::domain("m >= 0 or m <= -1 (got -1 < m < 0)"));
    }
    certify_positive(f, lo, hi)?;
    certify_positive(g, lo, hi)?;

    let m1 = m + &Rational::one();
    let rhs_of = |p: u32| -> Result<DyadicInterval> {
        let intf = enclose_poly_integral(f, lo, hi, p, WORK_PREC)?;
        let intg = enclose_poly_integral(g, lo, hi, p, WORK_PREC)?;
        let num = pow_interval(&intf.to_interval(), &m1, WORK_PREC)?;
        let den = pow_interval(&intg.to_interval(), m, WORK_PREC)?;
        num.div(&den)
    };

    // equality is certified structurally: m = 0 and m = -1 collapse both
    // sides to one integral, and f proportional to g scales out exactly
    let structural_equal =
        m.is_zero() || *m == Rational::from_int(-1) || f.proportional_to(g).is_some();
    if structural_equal {
        let mut p = DEFAULT_PARTITIONS;
        loop {
            match rhs_of(p) {
                Ok(iv) => return Ok(equality_verdict(iv)),
                Err(Error::DivisionByZero) if p < max_partitions.max(DEFAULT_PARTITIONS) => {
                    p *= 2;
                }
                Err(e) => return Err(e),
            }
        }
    }

    refine_to_verdict(max_partitions, |p| {
        let lhs = enclose_integral(f, &m1, g, m, lo, hi, p, WORK_PREC)?;
        Ok((lhs.to_interval(), rhs_of(p)?))
    })
}

/// Certified check of `integral of f^r/g^s >= (integral of f)^r /
/// ((b-a)^(r-s-1) (integral of g)^s)`.
pub fn check_integral_radon_general(
    f: &PiecewisePoly,
    g: &PiecewisePoly,
    lo: &Rational,
    hi: &Rational,
    r: &Rational,
    s: &Rational,
    max_partitions: u32,
) -> Result<Verdict> {
    if lo >= hi {
        return Err(Error::domain("a < b"));
    }
    if (r * s).is_negative() {
        return Err(Error::domain("r*s >= 0"));
    }
    if &(r - s) < &Rational::one() {
        return Err(Error::domain("r >= s + 1"));
    }
    certify_positive(f, lo, hi)?;
    certify_positive(g, lo, hi)?;

    let gap = &(r - s) - &Rational::one();
    let span = hi - lo;
    let rhs_of = |p: u32| -> Result<DyadicInterval> {
        let intf = enclose_poly_integral(f, lo, hi, p, WORK_PREC)?;
        let intg = enclose_poly_integral(g, lo, hi, p, WORK_PREC)?;
        let num = pow_interval(&intf.to_interval(), r, WORK_PREC)?;
        let den =
            rat_pow(&span, &gap, WORK_PREC)?.mul(&pow_interval(&intg.to_interval(), s, WORK_PREC)?);
        num.div(&den)
    };

    // constants of any value satisfy the bound with equality, as does a
    // proportional pair when the exponent gap is exactly one (and r = s + 1
    // with either exponent zero collapses both sides to one integral)
    let structural_equal = (f.constant_value().is_some() && g.constant_value().is_some())
        || (gap.is_zero() && (r.is_zero() || s.is_zero() || f.proportional_to(g).is_some()));
    if structural_equal {
        let mut p = DEFAULT_PARTITIONS;
        loop {
            match rhs_of(p) {
                Ok(iv) => return Ok(equality_verdict(iv)),
                Err(Error::DivisionByZero) if p < max_partitions.max(DEFAULT_PARTITIONS) => {
                    p *= 2;
                }
                Err(e) => return Err(e),
            }
        }
    }

    refine_to_verdict(max_partitions, |p| {
        let lhs = enclose_integral(f, r, g, s, lo, hi, p, WORK_PREC)?;
        Ok((lhs.to_interval(), rhs_of(p)?))
    })
}

//! Piecewise polynomials with rational coefficients, the function class the
//! integral bounds are verified over. Provides exact evaluation, certified
//! range bounds by derivative-sign subdivision, and the exact antiderivative
//! used as a reference in tests.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One polynomial piece on `[lo, hi]`, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: Rational,
    pub hi: Rational,
    pub coeffs: Vec<Rational>,
}

impl Segment {
    pub fn new(lo: Rational, hi: Rational, coeffs: Vec<Rational>) -> Segment {
        Segment { lo, hi, coeffs }
    }
}

/// A function given by polynomial pieces on contiguous closed intervals.
/// Pieces need not agree at shared endpoints, so jumps are representable;
/// integration and range bounds never depend on the value at a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    segments: Vec<Segment>,
}

/// Sound bounds for a function's values on an interval. When `attained` is
/// true both endpoints are values the function takes there, so the bound is
/// the exact range; otherwise it is an enclosure from interval arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeBound {
    pub lo: Rational,
    pub hi: Rational,
    pub attained: bool,
}

fn trim_zeros(coeffs: &[Rational]) -> &[Rational] {
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].is_zero() {
        end -= 1;
    }
    &coeffs[..end]
}

/// Exact Horner evaluation.
pub(crate) fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn derivative(coeffs: &[Rational]) -> Vec<Rational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &Rational::from_int(i as i64))
        .collect()
}

fn imul(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> (Rational, Rational) {
    let p = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let mut lo = p[0].clone();
    let mut hi = p[0].clone();
    for v in &p[1..] {
        if v < &lo {
            lo = v.clone();
        }
        if v > &hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

/// Interval Horner: a sound (generally loose) range enclosure. Inclusion
/// monotone, which the nested-refinement argument for integral enclosures
/// leans on.
fn ihorner(coeffs: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in coeffs.iter().rev() {
        let prod = imul((&acc.0, &acc.1), (lo, hi));
        acc = (&prod.0 + c, &prod.1 + c);
    }
    acc
}

/// Integer interval power on rational endpoints; `Err(DivisionByZero)` when
/// a negative power meets an interval containing zero.
pub(crate) fn rpow_int(lo: &Rational, hi: &Rational, k: i64) -> Result<(Rational, Rational)> {
    if k < 0 {
        if !lo.is_positive() && !hi.is_negative() {
            return Err(Error::DivisionByZero);
        }
        let (plo, phi) = rpow_int(lo, hi, -k)?;
        return Ok((phi.recip()?, plo.recip()?));
    }
    if k == 0 {
        return Ok((Rational::one(), Rational::one()));
    }
    let plo = lo.pow_int(k)?;
    let phi = hi.pow_int(k)?;
    if k % 2 == 1 {
        return Ok((plo, phi));
    }
    // even power folds the interval at zero
    if !lo.is_negative() {
        Ok((plo, phi))
    } else if !hi.is_positive() {
        Ok((phi, plo))
    } else {
        Ok((Rational::zero(), plo.max(phi)))
    }
}

pub(crate) fn rdiv(
    num: (&Rational, &Rational),
    den: (&Rational, &Rational),
) -> Result<(Rational, Rational)> {
    if !den.0.is_positive() && !den.1.is_negative() {
        return Err(Error::DivisionByZero);
    }
    let inv = (den.1.recip()?, den.0.recip()?);
    Ok(imul(num, (&inv.0, &inv.1)))
}

/// Range bound on one polynomial piece by derivative-sign subdivision: if
/// interval Horner pins the derivative's sign the piece is monotone and the
/// endpoints are the exact range; otherwise bisect at the midpoint until the
/// depth budget falls back to interval Horner on the piece itself.
pub(crate) fn range_piece(
    coeffs: &[Rational],
    lo: &Rational,
    hi: &Rational,
    depth: u32,
) -> RangeBound {
    let coeffs = trim_zeros(coeffs);
    if coeffs.len() <= 1 {
        let v = coeffs.first().cloned().unwrap_or_else(Rational::zero);
        return RangeBound {
            lo: v.clone(),
            hi: v,
            attained: true,
        };
    }
    let endpoints = |l: &Rational, h: &Rational| {
        let a = eval_poly(coeffs, l);
        let b = eval_poly(coeffs, h);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        RangeBound {
            lo,
            hi,
            attained: true,
        }
    };
    if coeffs.len() == 2 {
        return endpoints(lo, hi);
    }
    let deriv = derivative(coeffs);
    range_rec(coeffs, &deriv, lo, hi, depth, &endpoints)
}

fn range_rec(
    coeffs: &[Rational],
    deriv: &[Rational],
    lo: &Rational,
    hi: &Rational,
    depth: u32,
    endpoints: &impl Fn(&Rational, &Rational) -> RangeBound,
) -> RangeBound {
    let (dlo, dhi) = ihorner(deriv, lo, hi);
    if !dlo.is_negative() || !dhi.is_positive() {
        return endpoints(lo, hi);
    }
    if depth == 0 {
        let (blo, bhi) = ihorner(coeffs, lo, hi);
        return RangeBound {
            lo: blo,
            hi: bhi,
            attained: false,
        };
    }
    let mid = &(lo + hi) * &Rational::ratio(1, 2);
    let left = range_rec(coeffs, deriv, lo, &mid, depth - 1, endpoints);
    let right = range_rec(coeffs, deriv, &mid, hi, depth - 1, endpoints);
    RangeBound {
        lo: left.lo.min(right.lo),
        hi: left.hi.max(right.hi),
        attained: left.attained && right.attained,
    }
}

impl PiecewisePoly {
    /// Validates ordering, positive widths, and contiguity of the pieces.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::domain("at least one segment"));
        }
        for seg in &segments {
            if seg.lo >= seg.hi {
                return Err(Error::domain("segment lo < hi"));
            }
        }
        for pair in segments.windows(2) {
            if pair[0].hi != pair[1].lo {
                return Err(Error::domain("contiguous segments"));
            }
        }
        Ok(PiecewisePoly { segments })
    }

    pub fn from_coeffs(coeffs: Vec<Rational>, lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(vec![Segment::new(lo, hi, coeffs)])
    }

    pub fn constant(value: Rational, lo: Rational, hi: Rational) -> Result<Self> {
        Self::from_coeffs(vec![value], lo, hi)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (
            &self.segments[0].lo,
            &self.segments[self.segments.len() - 1].hi,
        )
    }

    pub fn covers(&self, lo: &Rational, hi: &Rational) -> bool {
        let (a, b) = self.domain();
        a <= lo && hi <= b
    }

    /// Value at `x`; at an interior breakpoint the earlier piece wins.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.segments
            .iter()
            .find(|s| &s.lo <= x && x <= &s.hi)
            .map(|s| eval_poly(&s.coeffs, x))
            .ok_or_else(|| Error::domain("x within the segment cover"))
    }

    /// Coefficients of the single piece containing `[lo, hi]`, if no
    /// breakpoint lies strictly inside.
    pub fn coeffs_on(&self, lo: &Rational, hi: &Rational) -> Option<&[Rational]> {
        self.segments
            .iter()
            .find(|s| &s.lo <= lo && hi <= &s.hi)
            .map(|s| s.coeffs.as_slice())
    }

    /// Interior breakpoints strictly inside `(lo, hi)`.
    pub fn breakpoints_within(&self, lo: &Rational, hi: &Rational) -> Vec<Rational> {
        self.segments
            .iter()
            .skip(1)
            .map(|s| s.lo.clone())
            .filter(|t| lo < t && t < hi)
            .collect()
    }

    /// The single constant value when every piece is that same constant.
    pub fn constant_value(&self) -> Option<Rational> {
        let first = trim_zeros(&self.segments[0].coeffs);
        if first.len() > 1 {
            return None;
        }
        let v = first.first().cloned().unwrap_or_else(Rational::zero);
        for seg in &self.segments[1..] {
            let c = trim_zeros(&seg.coeffs);
            if c.len() > 1 || c.first().cloned().unwrap_or_else(Rational::zero) != v {
                return None;
            }
        }
        Some(v)
    }

    /// The exact factor with `self = factor * other` on the shared domain,
    /// compared piece by piece on the merged breakpoints; None when domains
    /// differ or no single factor works.
    pub fn proportional_to(&self, other: &PiecewisePoly) -> Option<Rational> {
        if self.domain() != other.domain() {
            return None;
        }
        let (lo, hi) = self.domain();
        let mut cuts = vec![lo.clone()];
        cuts.extend(self.breakpoints_within(lo, hi));
        cuts.extend(other.breakpoints_within(lo, hi));
        cuts.push(hi.clone());
        cuts.sort();
        cuts.dedup();

        let mut factor: Option<Rational> = None;
        for pair in cuts.windows(2) {
            let mine = trim_zeros(self.coeffs_on(&pair[0], &pair[1])?);
            let theirs = trim_zeros(other.coeffs_on(&pair[0], &pair[1])?);
            match (mine.is_empty(), theirs.is_empty()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                _ => {}
            }
            if mine.len() != theirs.len() {
                return None;
            }
            let lambda = mine[0].checked_div(&theirs[0]).ok()?;
            for (m, t) in mine.iter().zip(theirs) {
                if *m != &lambda * t {
                    return None;
                }
            }
            match &factor {
                Some(f) if *f != lambda => return None,
                Some(_) => {}
                None => factor = Some(lambda),
            }
        }
        factor.or_else(|| Some(Rational::one()))
    }

    /// Sound range bound on `[lo, hi]`, the hull of per-piece bounds.
    pub fn range_on(&self, lo: &Rational, hi: &Rational, depth: u32) -> Result<RangeBound> {
        if lo >= hi {
            return Err(Error::domain("lo < hi"));
        }
        if !self.covers(lo, hi) {
            return Err(Error::domain("interval within the segment cover"));
        }
        let mut cuts = vec![lo.clone()];
        cuts.extend(self.breakpoints_within(lo, hi));
        cuts.push(hi.clone());
        let mut total: Option<RangeBound> = None;
        for pair in cuts.windows(2) {
            let coeffs = self
                .coeffs_on(&pair[0], &pair[1])
                .expect("cut points align with segments");
            let piece = range_piece(coeffs, &pair[0], &pair[1], depth);
            total = Some(match total {
                None => piece,
                Some(t) => RangeBound {
                    lo: t.lo.min(piece.lo),
                    hi: t.hi.max(piece.hi),
                    attained: t.attained && piece.attained,
                },
            });
        }
        Ok(total.expect("nonempty interval"))
    }

    /// Exact integral over `[lo, hi]` via the antiderivative of each piece.
    /// Reference path for tests; the enclosure pipeline never consults it.
    pub fn exact_integral(&self, lo: &Rational, hi: &Rational) -> Result<Rational> {
        if lo > hi {
            return Err(Error::domain("lo <= hi"));
        }
        if !self.covers(lo, hi) {
            return Err(Error::domain("interval within the segment cover"));
        }
        let mut total = Rational::zero();
        for seg in &self.segments {
            let l = seg.lo.clone().max(lo.clone());
            let r = seg.hi.clone().min(hi.clone());
            if l >= r {
                continue;
            }
            for (i, c) in seg.coeffs.iter().enumerate() {
                let e = (i + 1) as i64;
                let span = r.pow_int(e)? - &l.pow_int(e)?;
                total = total + &(&(c * &span) / &Rational::from_int(e));
            }
        }
        Ok(total)
    }
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let coeffs: Vec<String> = seg.coeffs.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}, {}]: ({})", seg.lo, seg.hi, coeffs.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rats(csv: &str) -> Vec<Rational> {
        csv.split(',').map(|s| s.trim().parse().unwrap()).collect()
    }

    fn poly(coeffs: &str, lo: &str, hi: &str) -> PiecewisePoly {
        PiecewisePoly::from_coeffs(rats(coeffs), rat(lo), rat(hi)).unwrap()
    }

    #[test]
    fn horner_evaluation() {
        // x^2 - x + 1
        let p = poly("1,-1,1", "0", "1");
        assert_eq!(p.eval(&rat("1/2")).unwrap(), rat("3/4"));
        assert_eq!(p.eval(&rat("0")).unwrap(), rat("1"));
        assert!(p.eval(&rat("2")).is_err());
    }

    #[test]
    fn quadratic_range_matches_vertex() {
        let coeffs = rats("1,-1,1");
        let p = poly("1,-1,1", "0", "1");
        let r = p.range_on(&rat("0"), &rat("1"), 8).unwrap();
        // vertex of c0 + c1 x + c2 x^2 at -c1/(2 c2)
        let vertex = &(-&coeffs[1]) / &(&coeffs[2] * &Rational::from_int(2));
        let expected = eval_poly(&coeffs, &vertex);
        assert!(r.attained);
        assert_eq!(r.lo, expected);
        assert_eq!(r.lo, rat("3/4"));
        assert_eq!(r.hi, rat("1"));
    }

    #[test]
    fn linear_range_is_exact() {
        let p = poly("0,1", "0", "1");
        let r = p.range_on(&rat("0"), &rat("1"), 4).unwrap();
        assert!(r.attained);
        assert_eq!((r.lo, r.hi), (rat("0"), rat("1")));
    }

    #[test]
    fn depth_zero_fallback_is_sound() {
        // x^3 - x on [-2, 2]: true range [-6, 6]
        let p = poly("0,-1,0,1", "-2", "2");
        let r = p.range_on(&rat("-2"), &rat("2"), 0).unwrap();
        assert!(!r.attained);
        assert!(r.lo <= rat("-6") && rat("6") <= r.hi);
        // with depth the bound tightens to the exact range
        let tight = p.range_on(&rat("-2"), &rat("2"), 30).unwrap();
        assert!(tight.lo <= rat("-6") && tight.lo >= rat("-13/2"));
        assert!(tight.hi >= rat("6") && tight.hi <= rat("13/2"));
    }

    #[test]
    fn piecewise_pieces() {
        let p = PiecewisePoly::new(vec![
            Segment::new(rat("0"), rat("1/2"), rats("1")),
            Segment::new(rat("1/2"), rat("1"), rats("2")),
        ])
        .unwrap();
        assert_eq!(p.eval(&rat("1/4")).unwrap(), rat("1"));
        let r = p.range_on(&rat("0"), &rat("1"), 4).unwrap();
        assert_eq!((r.lo, r.hi), (rat("1"), rat("2")));
        assert_eq!(p.breakpoints_within(&rat("0"), &rat("1")), vec![rat("1/2")]);
        assert!(p.coeffs_on(&rat("1/4"), &rat("3/4")).is_none());
        assert_eq!(p.constant_value(), None);
    }

    #[test]
    fn validation_rejects_gaps_and_empty() {
        assert!(PiecewisePoly::new(vec![]).is_err());
        assert!(PiecewisePoly::new(vec![
            Segment::new(rat("0"), rat("1"), rats("1")),
            Segment::new(rat("2"), rat("3"), rats("1")),
        ])
        .is_err());
        assert!(PiecewisePoly::from_coeffs(rats("1"), rat("1"), rat("1")).is_err());
    }

    #[test]
    fn antiderivative_reference() {
        assert_eq!(
            poly("0,1", "0", "1")
                .exact_integral(&rat("0"), &rat("1"))
                .unwrap(),
            rat("1/2")
        );
        assert_eq!(
            poly("0,0,1", "0", "1")
                .exact_integral(&rat("0"), &rat("1"))
                .unwrap(),
            rat("1/3")
        );
        assert_eq!(
            poly("1,1", "0", "1")
                .exact_integral(&rat("0"), &rat("1"))
                .unwrap(),
            rat("3/2")
        );
        let steps = PiecewisePoly::new(vec![
            Segment::new(rat("0"), rat("1/2"), rats("1")),
            Segment::new(rat("1/2"), rat("1"), rats("2")),
        ])
        .unwrap();
        assert_eq!(
            steps.exact_integral(&rat("0"), &rat("1")).unwrap(),
            rat("3/2")
        );
        assert_eq!(
            steps.exact_integral(&rat("1/4"), &rat("3/4")).unwrap(),
            rat("3/4")
        );
    }

    #[test]
    fn proportionality_across_segmentations() {
        let f = poly("1", "0", "1");
        let g = PiecewisePoly::new(vec![
            Segment::new(rat("0"), rat("1/2"), rats("2")),
            Segment::new(rat("1/2"), rat("1"), rats("2")),
        ])
        .unwrap();
        assert_eq!(f.proportional_to(&g), Some(rat("1/2")));
        assert_eq!(g.proportional_to(&f), Some(rat("2")));
        assert_eq!(f.proportional_to(&f), Some(rat("1")));
        let h = poly("0,1", "0", "1");
        assert_eq!(f.proportional_to(&h), None);
    }

    #[test]
    fn rational_interval_power() {
        let (lo, hi) = rpow_int(&rat("-2"), &rat("3"), 2).unwrap();
        assert_eq!((lo, hi), (rat("0"), rat("9")));
        let (lo, hi) = rpow_int(&rat("-2"), &rat("3"), 3).unwrap();
        assert_eq!((lo, hi), (rat("-8"), rat("27")));
        let (lo, hi) = rpow_int(&rat("2"), &rat("4"), -1).unwrap();
        assert_eq!((lo, hi), (rat("1/4"), rat("1/2")));
        assert_eq!(
            rpow_int(&rat("-1"), &rat("1"), -1),
            Err(Error::DivisionByZero)
        );
        let (lo, hi) = rpow_int(&rat("2"), &rat("3"), 0).unwrap();
        assert_eq!((lo, hi), (rat("1"), rat("1")));
    }
}

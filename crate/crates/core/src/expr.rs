//! Evaluation trees over rationals with `+`, `-`, `*`, `/` and rational
//! powers, plus the three evaluators the rest of the crate is built on:
//!
//! * [`eval_exact`]: exact rational value, defined when every exponent is an
//!   integer; the brute-force oracle.
//! * symbolic evaluation to a single radical `± r^(1/k)`, which decides
//!   orderings like `sqrt(2) < 3/2` by exact cross-powering and certifies
//!   equalities like `sqrt(5)*sqrt(5) = 5` that intervals never could.
//! * [`eval_interval`]: certified dyadic enclosure at a working precision.
//!
//! [`compare_certified`] chains the three: Equal can arise only from the
//! exact or symbolic route; Less/Greater from any route, since disjoint
//! enclosures are proof; interval refinement doubles precision from 64 bits
//! up to the budget and reports Indeterminate when the budget runs out.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::power::{pow_interval, rat_pow_exact};
use crate::rational::Rational;
use crate::{DEFAULT_BUDGET_BITS, START_PRECISION_BITS};

/// Three-valued certified comparison outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering3 {
    Less,
    Equal,
    Greater,
    /// Enclosures still overlapped when the precision budget was exhausted;
    /// carries the last precision tried.
    Indeterminate {
        precision_exhausted: u32,
    },
}

impl Ordering3 {
    pub fn reverse(self) -> Self {
        match self {
            Ordering3::Less => Ordering3::Greater,
            Ordering3::Greater => Ordering3::Less,
            other => other,
        }
    }

    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Ordering3::Less,
            Ordering::Equal => Ordering3::Equal,
            Ordering::Greater => Ordering3::Greater,
        }
    }
}

impl fmt::Display for Ordering3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordering3::Less => write!(f, "less"),
            Ordering3::Equal => write!(f, "equal"),
            Ordering3::Greater => write!(f, "greater"),
            Ordering3::Indeterminate { .. } => write!(f, "indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Base raised to a fixed rational exponent.
    Pow(Box<Expr>, Rational),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
}

impl Expr {
    pub fn cons(r: impl Into<Rational>) -> Expr {
        Expr::Const(r.into())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Rational::from_int(n))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(base: Expr, e: impl Into<Rational>) -> Expr {
        Expr::Pow(Box::new(base), e.into())
    }

    /// True when every exponent in the tree is an integer, which is exactly
    /// the domain of [`eval_exact`].
    pub fn integer_exponents_only(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.integer_exponents_only() && b.integer_exponents_only()
            }
            Expr::Pow(base, e) => e.is_integer() && base.integer_exponents_only(),
            Expr::Sum(terms) | Expr::Prod(terms) => terms.iter().all(Expr::integer_exponents_only),
        }
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Expr {
        Expr::Const(r)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

/// Exact evaluation; requires integer exponents throughout. The empty sum is
/// 0 and the empty product is 1.
pub fn eval_exact(expr: &Expr) -> Result<Rational> {
    match expr {
        Expr::Const(r) => Ok(r.clone()),
        Expr::Add(a, b) => Ok(eval_exact(a)? + &eval_exact(b)?),
        Expr::Sub(a, b) => Ok(eval_exact(a)? - &eval_exact(b)?),
        Expr::Mul(a, b) => Ok(eval_exact(a)? * &eval_exact(b)?),
        Expr::Div(a, b) => eval_exact(a)?.checked_div(&eval_exact(b)?),
        Expr::Pow(base, e) => {
            let k = e.as_i64().ok_or(Error::NonIntegerExponent)?;
            eval_exact(base)?.pow_int(k)
        }
        Expr::Sum(terms) => {
            let mut acc = Rational::zero();
            for t in terms {
                acc = acc + &eval_exact(t)?;
            }
            Ok(acc)
        }
        Expr::Prod(terms) => {
            let mut acc = Rational::one();
            for t in terms {
                acc = acc * &eval_exact(t)?;
            }
            Ok(acc)
        }
    }
}

/// Certified enclosure of the tree's value at the given working precision.
pub fn eval_interval(expr: &Expr, prec: u32) -> Result<DyadicInterval> {
    match expr {
        Expr::Const(r) => Ok(DyadicInterval::from_rational(r, prec)),
        Expr::Add(a, b) => Ok(eval_interval(a, prec)?.add(&eval_interval(b, prec)?)),
        Expr::Sub(a, b) => Ok(eval_interval(a, prec)?.sub(&eval_interval(b, prec)?)),
        Expr::Mul(a, b) => Ok(eval_interval(a, prec)?.mul(&eval_interval(b, prec)?)),
        Expr::Div(a, b) => eval_interval(a, prec)?.div(&eval_interval(b, prec)?),
        Expr::Pow(base, e) => pow_interval(&eval_interval(base, prec)?, e, prec),
        Expr::Sum(terms) => {
            let mut acc = DyadicInterval::zero(prec);
            for t in terms {
                acc = acc.add(&eval_interval(t, prec)?);
            }
            Ok(acc)
        }
        Expr::Prod(terms) => {
            let mut acc = DyadicInterval::one(prec);
            for t in terms {
                acc = acc.mul(&eval_interval(t, prec)?);
            }
            Ok(acc)
        }
    }
}

/// A value of the form `(-1)^negative * radicand^(1/index)` with
/// `radicand >= 0`. Closed under products, quotients and rational powers,
/// which covers every geometric-mean and root expression in the crate; sums
/// stay symbolic only when both operands are plain rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymValue {
    negative: bool,
    radicand: Rational,
    index: u64,
}

/// Indices beyond this give up on the symbolic route rather than raise huge
/// cross powers.
const MAX_SYM_INDEX: u64 = 64;
const MAX_SYM_POWER: i64 = 512;

impl SymValue {
    fn rational(r: Rational) -> SymValue {
        SymValue {
            negative: r.is_negative(),
            radicand: r.abs(),
            index: 1,
        }
        .normalized()
    }

    fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    /// Plain rational value when the index is 1.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.index == 1 {
            let mag = self.radicand.clone();
            Some(if self.negative { -mag } else { mag })
        } else {
            None
        }
    }

    fn normalized(mut self) -> SymValue {
        if self.is_zero() {
            return SymValue {
                negative: false,
                radicand: Rational::zero(),
                index: 1,
            };
        }
        if self.index > 1 {
            // peel exact p-th roots off the index, smallest prime first
            let mut p = 2u64;
            while p <= self.index {
                if self.index % p == 0 {
                    let e = Rational::new(1.into(), (p as i64).into()).unwrap();
                    if let Some(root) = rat_pow_exact(&self.radicand, &e) {
                        self.radicand = root;
                        self.index /= p;
                        continue;
                    }
                }
                p += 1;
            }
        }
        if self.radicand.is_one() {
            self.index = 1;
        }
        self
    }

    fn neg(&self) -> SymValue {
        if self.is_zero() {
            self.clone()
        } else {
            SymValue {
                negative: !self.negative,
                radicand: self.radicand.clone(),
                index: self.index,
            }
        }
    }

    fn mul(&self, other: &SymValue) -> Option<SymValue> {
        if self.is_zero() || other.is_zero() {
            return Some(SymValue::rational(Rational::zero()));
        }
        let l = self.index.lcm(&other.index);
        if l > MAX_SYM_INDEX {
            return None;
        }
        let ra = self.radicand.pow_int((l / self.index) as i64).ok()?;
        let rb = other.radicand.pow_int((l / other.index) as i64).ok()?;
        Some(
            SymValue {
                negative: self.negative != other.negative,
                radicand: ra * &rb,
                index: l,
            }
            .normalized(),
        )
    }

    fn recip(&self) -> Option<SymValue> {
        if self.is_zero() {
            return None;
        }
        Some(SymValue {
            negative: self.negative,
            radicand: self.radicand.recip().ok()?,
            index: self.index,
        })
    }

    fn pow(&self, e: &Rational) -> Option<SymValue> {
        if e.is_zero() {
            return Some(SymValue::rational(Rational::one()));
        }
        if self.is_zero() {
            return if e.is_positive() {
                Some(SymValue::rational(Rational::zero()))
            } else {
                None
            };
        }
        let p = i64::try_from(e.numer().clone()).ok()?;
        let q = u64::try_from(e.denom().clone()).ok()?;
        if p.abs() > MAX_SYM_POWER {
            return None;
        }
        if self.negative && q != 1 {
            return None;
        }
        let index = self.index.checked_mul(q)?;
        if index > MAX_SYM_INDEX {
            return None;
        }
        let radicand = self.radicand.pow_int(p).ok()?;
        Some(
            SymValue {
                negative: self.negative && p % 2 != 0,
                radicand,
                index,
            }
            .normalized(),
        )
    }

    /// Sums stay exact when both operands are rational or when the operands
    /// are like radicals: `v2 = t * v1` for a rational `t`, detected by an
    /// exact root of the radicand ratio (so `sqrt(2) + sqrt(2) = sqrt(8)` and
    /// `sqrt(8) - sqrt(2) = sqrt(2)`). Unlike radicals return `None`.
    fn add(&self, other: &SymValue) -> Option<SymValue> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Some(SymValue::rational(a + &b));
        }
        let l = self.index.lcm(&other.index);
        if l > MAX_SYM_INDEX {
            return None;
        }
        let r1 = self.radicand.pow_int((l / self.index) as i64).ok()?;
        let r2 = other.radicand.pow_int((l / other.index) as i64).ok()?;
        let ratio = r2.checked_div(&r1).ok()?;
        let root_e = Rational::new(1.into(), (l as i64).into()).unwrap();
        let t = rat_pow_exact(&ratio, &root_e)?;
        let rel = if self.negative != other.negative {
            -t
        } else {
            t
        };
        let coeff = Rational::one() + &rel;
        let signed = if self.negative { -coeff } else { coeff };
        SymValue::rational(signed).mul(&SymValue {
            negative: false,
            radicand: r1,
            index: l,
        })
    }

    /// Exact ordering by cross-powering both magnitudes to the lcm index.
    pub fn cmp_exact(&self, other: &SymValue) -> Option<Ordering> {
        match (self.negative, other.negative) {
            (true, false) => return Some(Ordering::Less),
            (false, true) => return Some(Ordering::Greater),
            _ => {}
        }
        let l = self.index.lcm(&other.index);
        if l > MAX_SYM_INDEX * MAX_SYM_INDEX {
            return None;
        }
        let ma = self.radicand.pow_int((l / self.index) as i64).ok()?;
        let mb = other.radicand.pow_int((l / other.index) as i64).ok()?;
        let mag = ma.cmp(&mb);
        Some(if self.negative { mag.reverse() } else { mag })
    }
}

/// Best-effort symbolic evaluation to a single radical. `None` means the
/// tree left the closed fragment (for instance a sum of unlike radicals),
/// not an error.
pub fn eval_symbolic(expr: &Expr) -> Option<SymValue> {
    match expr {
        Expr::Const(r) => Some(SymValue::rational(r.clone())),
        Expr::Add(a, b) => eval_symbolic(a)?.add(&eval_symbolic(b)?),
        Expr::Sub(a, b) => eval_symbolic(a)?.add(&eval_symbolic(b)?.neg()),
        Expr::Mul(a, b) => eval_symbolic(a)?.mul(&eval_symbolic(b)?),
        Expr::Div(a, b) => eval_symbolic(a)?.mul(&eval_symbolic(b)?.recip()?),
        Expr::Pow(base, e) => eval_symbolic(base)?.pow(e),
        Expr::Sum(terms) => {
            let mut acc = SymValue::rational(Rational::zero());
            for t in terms {
                acc = acc.add(&eval_symbolic(t)?)?;
            }
            Some(acc)
        }
        Expr::Prod(terms) => {
            let mut acc = SymValue::rational(Rational::one());
            for t in terms {
                acc = acc.mul(&eval_symbolic(t)?)?;
            }
            Some(acc)
        }
    }
}

/// Certified three-way comparison of two trees. See the module doc for the
/// route order; the returned precision is the one at which the decision
/// fired (0 for purely exact or symbolic decisions).
pub fn compare_certified_detail(lhs: &Expr, rhs: &Expr, budget: u32) -> Result<(Ordering3, u32)> {
    if let (Some(a), Some(b)) = (eval_symbolic(lhs), eval_symbolic(rhs)) {
        if let Some(ord) = a.cmp_exact(&b) {
            return Ok((Ordering3::from_ordering(ord), 0));
        }
    }
    if lhs.integer_exponents_only() && rhs.integer_exponents_only() {
        let a = eval_exact(lhs)?;
        let b = eval_exact(rhs)?;
        return Ok((Ordering3::from_ordering(a.cmp(&b)), 0));
    }
    let mut prec = START_PRECISION_BITS.min(budget.max(1));
    loop {
        let soft = match (eval_interval(lhs, prec), eval_interval(rhs, prec)) {
            (Ok(a), Ok(b)) => {
                if a.disjoint_below(&b) {
                    return Ok((Ordering3::Less, prec));
                }
                if b.disjoint_below(&a) {
                    return Ok((Ordering3::Greater, prec));
                }
                // two degenerate enclosures are exact values; overlap of
                // anything wider never certifies equality
                if a.is_degenerate() && b.is_degenerate() && a == b {
                    return Ok((Ordering3::Equal, prec));
                }
                None
            }
            (r1, r2) => {
                let e = r1.err().or(r2.err()).unwrap();
                if e == Error::DivisionByZero {
                    // divisor enclosure straddled zero; refinement may fix it
                    Some(e)
                } else {
                    return Err(e);
                }
            }
        };
        if prec >= budget {
            if let Some(e) = soft {
                return Err(e);
            }
            return Ok((
                Ordering3::Indeterminate {
                    precision_exhausted: prec,
                },
                prec,
            ));
        }
        prec = (prec * 2).min(budget);
    }
}

pub fn compare_certified(lhs: &Expr, rhs: &Expr, budget: u32) -> Result<Ordering3> {
    compare_certified_detail(lhs, rhs, budget).map(|(o, _)| o)
}

pub fn compare_default(lhs: &Expr, rhs: &Expr) -> Result<Ordering3> {
    compare_certified(lhs, rhs, DEFAULT_BUDGET_BITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn c(s: &str) -> Expr {
        Expr::cons(rat(s))
    }

    #[test]
    fn exact_eval_matches_hand_arithmetic() {
        // 1^3/1^2 + 2^3/3^2 = 1 + 8/9 = 17/9
        let tree = Expr::Sum(vec![
            Expr::div(Expr::pow(c("1"), rat("3")), Expr::pow(c("1"), rat("2"))),
            Expr::div(Expr::pow(c("2"), rat("3")), Expr::pow(c("3"), rat("2"))),
        ]);
        assert_eq!(eval_exact(&tree).unwrap(), rat("17/9"));

        // (1+2)^3 / (1+3)^2 = 27/16
        let tree = Expr::div(
            Expr::pow(Expr::add(c("1"), c("2")), rat("3")),
            Expr::pow(Expr::add(c("1"), c("3")), rat("2")),
        );
        assert_eq!(eval_exact(&tree).unwrap(), rat("27/16"));

        assert_eq!(eval_exact(&Expr::Sum(vec![])).unwrap(), rat("0"));
        assert_eq!(eval_exact(&Expr::Prod(vec![])).unwrap(), rat("1"));
    }

    #[test]
    fn exact_eval_rejects_fractional_exponents() {
        let tree = Expr::pow(c("2"), rat("1/2"));
        assert_eq!(eval_exact(&tree), Err(Error::NonIntegerExponent));
    }

    #[test]
    fn interval_eval_contains_exact_value() {
        let tree = Expr::div(
            Expr::sub(Expr::mul(c("7/3"), c("-2/5")), c("1/7")),
            Expr::add(c("2"), c("3/11")),
        );
        let exact = eval_exact(&tree).unwrap();
        for prec in [64u32, 128, 256] {
            let iv = eval_interval(&tree, prec).unwrap();
            assert!(iv.contains_rational(&exact), "precision {prec}");
        }
    }

    #[test]
    fn sqrt_comparisons() {
        // sqrt(2) vs 3/2 decided exactly: 2 < 9/4
        let (ord, prec) =
            compare_certified_detail(&Expr::pow(c("2"), rat("1/2")), &c("3/2"), 256).unwrap();
        assert_eq!(ord, Ordering3::Less);
        assert_eq!(prec, 0);

        // sqrt(4) = 2 exactly
        let ord = compare_certified(&Expr::pow(c("4"), rat("1/2")), &c("2"), 256).unwrap();
        assert_eq!(ord, Ordering3::Equal);

        let ord = compare_certified(&c("1"), &c("1"), 64).unwrap();
        assert_eq!(ord, Ordering3::Equal);
    }

    #[test]
    fn radical_product_certifies_equality() {
        // sqrt(5)*sqrt(5) = 5, invisible to intervals
        let lhs = Expr::mul(Expr::pow(c("5"), rat("1/2")), Expr::pow(c("5"), rat("1/2")));
        assert_eq!(
            compare_certified(&lhs, &c("5"), 256).unwrap(),
            Ordering3::Equal
        );

        // 8^(2/3) = 4 via the exact-root path
        let lhs = Expr::pow(c("8"), rat("2/3"));
        assert_eq!(
            compare_certified(&lhs, &c("4"), 256).unwrap(),
            Ordering3::Equal
        );

        // mixed indices: 2^(1/2) * 2^(1/3) = 2^(5/6)
        let lhs = Expr::mul(Expr::pow(c("2"), rat("1/2")), Expr::pow(c("2"), rat("1/3")));
        let rhs = Expr::pow(c("2"), rat("5/6"));
        assert_eq!(
            compare_certified(&lhs, &rhs, 256).unwrap(),
            Ordering3::Equal
        );
    }

    #[test]
    fn like_radicals_combine_in_sums() {
        let sqrt2 = || Expr::pow(c("2"), rat("1/2"));
        let sum = Expr::add(sqrt2(), sqrt2());
        let squared = Expr::pow(sum.clone(), rat("2"));
        assert_eq!(
            compare_certified(&squared, &c("8"), 256).unwrap(),
            Ordering3::Equal
        );
        assert_eq!(
            compare_certified(&sum, &Expr::pow(c("8"), rat("1/2")), 256).unwrap(),
            Ordering3::Equal
        );
        let diff = Expr::sub(Expr::pow(c("8"), rat("1/2")), sqrt2());
        assert_eq!(
            compare_certified(&diff, &sqrt2(), 256).unwrap(),
            Ordering3::Equal
        );
    }

    #[test]
    fn sum_of_radicals_falls_back_to_intervals() {
        // sqrt(2) + sqrt(3) vs 22/7: not symbolically closed, intervals decide
        let lhs = Expr::add(Expr::pow(c("2"), rat("1/2")), Expr::pow(c("3"), rat("1/2")));
        let (ord, prec) = compare_certified_detail(&lhs, &c("22/7"), 1024).unwrap();
        assert_eq!(ord, Ordering3::Greater);
        assert!(prec >= START_PRECISION_BITS);
    }

    #[test]
    fn antisymmetry_spot_checks() {
        let pairs = [
            (Expr::pow(c("2"), rat("1/2")), c("3/2")),
            (c("17/9"), c("27/16")),
            (Expr::pow(c("4"), rat("1/2")), c("2")),
        ];
        for (a, b) in pairs {
            let fwd = compare_certified(&a, &b, 512).unwrap();
            let bwd = compare_certified(&b, &a, 512).unwrap();
            assert_eq!(fwd.reverse(), bwd);
        }
    }

    #[test]
    fn indeterminate_on_tiny_budget_for_equal_radicals() {
        // two different trees for the same irrational, with the symbolic
        // route disabled by a sum: enclosures always overlap, budget runs out
        let lhs = Expr::add(Expr::pow(c("2"), rat("1/2")), Expr::pow(c("3"), rat("1/2")));
        let rhs = Expr::add(Expr::pow(c("3"), rat("1/2")), Expr::pow(c("2"), rat("1/2")));
        match compare_certified(&lhs, &rhs, 128).unwrap() {
            Ordering3::Indeterminate {
                precision_exhausted,
            } => assert_eq!(precision_exhausted, 128),
            other => panic!("expected indeterminate, got {other:?}"),
        }
    }
}

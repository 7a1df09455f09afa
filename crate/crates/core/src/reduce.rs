//! Constructive equivalences between the Radon and power-mean formulations,
//! the substitution that produces the ratio-sum bound, and the three
//! application bounds (triangle powers, constrained sums, unit products) as
//! certified calculators.

use crate::check::{check_instance, check_radon, decide, Direction, Formulation};
use crate::error::{Error, Result};
use crate::expr::{eval_symbolic, Expr};
use crate::instance::{constant, Family, InequalityInstance};
use crate::power::rat_pow_exact;
use crate::rational::Rational;
use crate::verdict::Verdict;

/// A source instance, the equivalent instance it maps to, and whether the
/// term-by-term algebraic identity between the two sides was verified
/// exactly. Verification runs through the exact symbolic evaluator, so it
/// succeeds whenever every exponent involved is an integer and more broadly
/// whenever both sides reduce to representable radicals.
#[derive(Clone, Debug)]
pub struct ReductionRecord {
    pub source: InequalityInstance,
    pub target: InequalityInstance,
    pub identity_checked: bool,
}

/// Exact equality of paired terms through the symbolic evaluator.
fn terms_identical(pairs: &[(Expr, Expr)]) -> bool {
    pairs
        .iter()
        .all(|(l, r)| match (eval_symbolic(l), eval_symbolic(r)) {
            (Some(a), Some(b)) => a.cmp_exact(&b) == Some(std::cmp::Ordering::Equal),
            _ => false,
        })
}

/// Maps weighted power-sum data to the Radon instance with the same lhs:
/// `a'_k = p_k y_k`, `b'_k = p_k`, `m = r/s - 1`, so that
/// `p_k y_k^(r/s) = a'_k^(m+1) / b'_k^m` term by term.
pub fn radon_to_powermean(
    p: &[Rational],
    y: &[Rational],
    r: &Rational,
    s: &Rational,
) -> Result<ReductionRecord> {
    if !s.is_positive() {
        return Err(Error::domain("s > 0"));
    }
    if r < s {
        return Err(Error::domain("r >= s"));
    }
    if p.len() != y.len() || p.is_empty() {
        return Err(Error::domain("len(p) = len(y) >= 1"));
    }
    if !p.iter().all(Rational::is_positive) {
        return Err(Error::domain("p_k > 0"));
    }
    if y.iter().any(Rational::is_negative) {
        return Err(Error::domain("y_k >= 0"));
    }
    let source = InequalityInstance::new(
        Family::PowerMean,
        y.to_vec(),
        p.to_vec(),
        [("r", r.clone()), ("s", s.clone())],
    );
    let exponent = r.checked_div(s)?;
    let m = &exponent - &Rational::one();
    let a: Vec<Rational> = p.iter().zip(y).map(|(pk, yk)| pk * yk).collect();
    let target = InequalityInstance::new(Family::Radon, a.clone(), p.to_vec(), [("m", m.clone())]);
    let pairs: Vec<(Expr, Expr)> = p
        .iter()
        .zip(y)
        .zip(&a)
        .map(|((pk, yk), ak)| {
            let lhs = Expr::mul(
                Expr::cons(pk.clone()),
                Expr::pow(Expr::cons(yk.clone()), exponent.clone()),
            );
            let rhs = Expr::div(
                Expr::pow(Expr::cons(ak.clone()), &m + &Rational::one()),
                Expr::pow(Expr::cons(pk.clone()), m.clone()),
            );
            (lhs, rhs)
        })
        .collect();
    Ok(ReductionRecord {
        source,
        target,
        identity_checked: terms_identical(&pairs),
    })
}

/// Maps a Radon instance to the power-mean instance with the same weighted
/// power sum: `p_k = b_k`, `x_k = a_k/b_k`, `r = m+1`, `s = 1`, so that
/// `p_k x_k^(m+1) = a_k^(m+1) / b_k^m` term by term.
pub fn powermean_to_radon(a: &[Rational], b: &[Rational], m: &Rational) -> Result<ReductionRecord> {
    if m.is_negative() {
        return Err(Error::domain("m >= 0"));
    }
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::domain("len(a) = len(b) >= 1"));
    }
    if !b.iter().all(Rational::is_positive) {
        return Err(Error::domain("b_k > 0"));
    }
    if a.iter().any(Rational::is_negative) {
        return Err(Error::domain("a_k >= 0"));
    }
    let source = InequalityInstance::new(Family::Radon, a.to_vec(), b.to_vec(), [("m", m.clone())]);
    let x: Vec<Rational> = a.iter().zip(b).map(|(ak, bk)| ak / bk).collect();
    let r = m + &Rational::one();
    let target = InequalityInstance::new(
        Family::PowerMean,
        x.clone(),
        b.to_vec(),
        [("r", r.clone()), ("s", Rational::one())],
    );
    let pairs: Vec<(Expr, Expr)> = a
        .iter()
        .zip(b)
        .zip(&x)
        .map(|((ak, bk), xk)| {
            let lhs = Expr::mul(
                Expr::cons(bk.clone()),
                Expr::pow(Expr::cons(xk.clone()), r.clone()),
            );
            let rhs = Expr::div(
                Expr::pow(Expr::cons(ak.clone()), r.clone()),
                Expr::pow(Expr::cons(bk.clone()), m.clone()),
            );
            (lhs, rhs)
        })
        .collect();
    Ok(ReductionRecord {
        source,
        target,
        identity_checked: terms_identical(&pairs),
    })
}

/// Substitutes `b_k = a_k c_k^(1/m)` into the Radon bound, yielding the
/// ratio-sum inequality `sum a_k/c_k >= (sum a_k)^(m+1) / (sum a_k
/// c_k^(1/m))^m`, and certifies it.
///
/// The reduction record is present only when every `c_k^(1/m)` is exactly
/// rational (instances carry rational vectors); the verdict is computed
/// either way, directly on the substituted expressions.
pub fn substitute_corollary23(
    a: &[Rational],
    c: &[Rational],
    m: &Rational,
    budget: u32,
) -> Result<(Option<ReductionRecord>, Verdict)> {
    if !(m.is_positive() || m <= &Rational::from_int(-1)) {
        return Err(Error::domain("m > 0 or m <= -1"));
    }
    if a.len() != c.len() || a.is_empty() {
        return Err(Error::domain("len(a) = len(c) >= 1"));
    }
    if !a.iter().all(Rational::is_positive) || !c.iter().all(Rational::is_positive) {
        return Err(Error::domain("a_k > 0 and c_k > 0"));
    }
    let inv_m = m.recip()?;
    let b_exact: Option<Vec<Rational>> = a
        .iter()
        .zip(c)
        .map(|(ak, ck)| rat_pow_exact(ck, &inv_m).map(|root| ak * &root))
        .collect();

    let m1 = m + &Rational::one();
    let record = match &b_exact {
        Some(b) => {
            let source =
                InequalityInstance::new(Family::Radon, a.to_vec(), b.clone(), [("m", m.clone())]);
            // substituted sides collapse to a_k/c_k per term
            let pairs: Vec<(Expr, Expr)> = a
                .iter()
                .zip(b)
                .zip(c)
                .map(|((ak, bk), ck)| {
                    let lhs = Expr::div(
                        Expr::pow(Expr::cons(ak.clone()), m1.clone()),
                        Expr::pow(Expr::cons(bk.clone()), m.clone()),
                    );
                    (lhs, Expr::cons(ak / ck))
                })
                .collect();
            let target =
                InequalityInstance::new(Family::Radon, a.to_vec(), b.clone(), [("m", m.clone())]);
            Some(ReductionRecord {
                source,
                target,
                identity_checked: terms_identical(&pairs),
            })
        }
        None => None,
    };

    let verdict = match &b_exact {
        // rational substitution: full Radon pipeline with its equality rules
        Some(b) => check_radon(a, b, m, budget)?,
        None => {
            let lhs = Expr::cons(a.iter().zip(c).map(|(ak, ck)| ak / ck).sum::<Rational>());
            let denom_base = Expr::Sum(
                a.iter()
                    .zip(c)
                    .map(|(ak, ck)| {
                        Expr::mul(
                            Expr::cons(ak.clone()),
                            Expr::pow(Expr::cons(ck.clone()), inv_m.clone()),
                        )
                    })
                    .collect(),
            );
            let rhs = Expr::div(
                Expr::pow(Expr::cons(a.iter().sum::<Rational>()), m1),
                Expr::pow(denom_base, m.clone()),
            );
            let formulation = Formulation {
                lhs,
                rhs,
                direction: Direction::Ge,
            };
            let equal = constant(a) && constant(c);
            decide(&formulation, equal, budget)?
        }
    };
    Ok((record, verdict))
}

/// Power sum over opposite-side sums for a triangle, against the
/// `(2/3)^(n-2) S^(n-1)` bound with `2S = a+b+c`.
pub fn triangle_bound(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    n: &Rational,
    budget: u32,
) -> Result<Verdict> {
    if !a.is_positive() || !b.is_positive() || !c.is_positive() {
        return Err(Error::NotATriangle);
    }
    let strictly_shorter = |x: &Rational, y: &Rational, z: &Rational| x < &(y + z);
    if !strictly_shorter(a, b, c) || !strictly_shorter(b, c, a) || !strictly_shorter(c, a, b) {
        return Err(Error::NotATriangle);
    }
    if n < &Rational::one() {
        return Err(Error::domain("n >= 1"));
    }
    let term = |num: &Rational, d1: &Rational, d2: &Rational| {
        Expr::div(
            Expr::pow(Expr::cons(num.clone()), n.clone()),
            Expr::cons(d1 + d2),
        )
    };
    let lhs = Expr::Sum(vec![term(a, b, c), term(b, c, a), term(c, a, b)]);
    let s = &(&(a + b) + c) * &Rational::ratio(1, 2);
    let rhs = Expr::mul(
        Expr::pow(
            Expr::cons(Rational::ratio(2, 3)),
            n - &Rational::from_int(2),
        ),
        Expr::pow(Expr::cons(s), n - &Rational::one()),
    );
    let formulation = Formulation {
        lhs,
        rhs,
        direction: Direction::Ge,
    };
    decide(&formulation, a == b && b == c, budget)
}

/// Sum of `a_k^p / (s - a_k)^q` with `s` the total of the vector, against
/// `s^(p-q) / ((n-1)^q n^(p-q-1))`.
pub fn constrained_sum_bound(
    a: &[Rational],
    p: &Rational,
    q: &Rational,
    budget: u32,
) -> Result<Verdict> {
    if a.is_empty() || !a.iter().all(Rational::is_positive) {
        return Err(Error::domain("a_k > 0"));
    }
    if q.is_negative() {
        return Err(Error::domain("q >= 0"));
    }
    if &(p - q) < &Rational::one() {
        return Err(Error::domain("p >= q + 1"));
    }
    let s: Rational = a.iter().sum();
    if a.iter().any(|ak| ak >= &s) {
        return Err(Error::domain("s - a_k > 0"));
    }
    let n = a.len() as i64;
    let lhs = Expr::Sum(
        a.iter()
            .map(|ak| {
                Expr::div(
                    Expr::pow(Expr::cons(ak.clone()), p.clone()),
                    Expr::pow(Expr::cons(&s - ak), q.clone()),
                )
            })
            .collect(),
    );
    let gap = &(p - q) - &Rational::one();
    let rhs = Expr::div(
        Expr::pow(Expr::cons(s), p - q),
        Expr::mul(
            Expr::pow(Expr::int(n - 1), q.clone()),
            Expr::pow(Expr::int(n), gap),
        ),
    );
    let formulation = Formulation {
        lhs,
        rhs,
        direction: Direction::Ge,
    };
    decide(&formulation, constant(a), budget)
}

/// Cubic ratio sum for positive rationals with product exactly 1, against
/// the constant 3/4.
pub fn unit_product_bound(
    x: &Rational,
    y: &Rational,
    z: &Rational,
    budget: u32,
) -> Result<Verdict> {
    if !x.is_positive() || !y.is_positive() || !z.is_positive() {
        return Err(Error::domain("x, y, z > 0"));
    }
    if !(&(x * y) * z).is_one() {
        return Err(Error::ProductNotOne);
    }
    let one = Rational::one;
    let term = |num: &Rational, d1: &Rational, d2: &Rational| {
        Expr::div(
            Expr::pow(Expr::cons(num.clone()), Rational::from_int(3)),
            Expr::cons(&(one() + d1) * &(one() + d2)),
        )
    };
    let lhs = Expr::Sum(vec![term(x, y, z), term(y, z, x), term(z, x, y)]);
    let formulation = Formulation {
        lhs,
        rhs: Expr::cons(Rational::ratio(3, 4)),
        direction: Direction::Ge,
    };
    decide(&formulation, x == y && y == z, budget)
}

/// Applies the checker matching a reduction's target family; convenience for
/// verifying that source and target verdicts agree.
pub fn check_record_target(record: &ReductionRecord, budget: u32) -> Result<Verdict> {
    check_instance(&record.target, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_exact;
    use crate::verdict::Outcome;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rats(csv: &str) -> Vec<Rational> {
        csv.split(',').map(|s| s.trim().parse().unwrap()).collect()
    }

    const B: u32 = 4096;

    fn radon_lhs(inst: &InequalityInstance) -> Rational {
        let f = crate::check::build_sides(inst).unwrap();
        eval_exact(&f.lhs).unwrap()
    }

    #[test]
    fn radon_to_powermean_example() {
        let rec = radon_to_powermean(&rats("1,2"), &rats("3,4"), &rat("2"), &rat("1")).unwrap();
        assert_eq!(rec.target.family, Family::Radon);
        assert_eq!(rec.target.a, rats("3,8"));
        assert_eq!(rec.target.b, rats("1,2"));
        assert_eq!(rec.target.param("m").unwrap(), &rat("1"));
        assert!(rec.identity_checked);
        // both lhs forms equal 41
        assert_eq!(radon_lhs(&rec.target), rat("41"));
    }

    #[test]
    fn powermean_to_radon_example() {
        let rec = powermean_to_radon(&rats("1,2"), &rats("1,3"), &rat("2")).unwrap();
        assert_eq!(rec.target.family, Family::PowerMean);
        assert_eq!(rec.target.a, rats("1,2/3"));
        assert_eq!(rec.target.b, rats("1,3"));
        assert_eq!(rec.target.param("r").unwrap(), &rat("3"));
        assert!(rec.identity_checked);
        // weighted power sum: 1 + 3*(8/27) = 17/9, the Radon lhs
        let total: Rational = rec
            .target
            .a
            .iter()
            .zip(&rec.target.b)
            .map(|(x, p)| p * &x.pow_int(3).unwrap())
            .sum();
        assert_eq!(total, rat("17/9"));
    }

    #[test]
    fn reduction_round_trip() {
        let first = powermean_to_radon(&rats("1,2"), &rats("1,3"), &rat("2")).unwrap();
        let p = first.target.b.clone();
        let y = first.target.a.clone();
        let back = radon_to_powermean(
            &p,
            &y,
            first.target.param("r").unwrap(),
            first.target.param("s").unwrap(),
        )
        .unwrap();
        assert_eq!(back.target.a, rats("1,2"));
        assert_eq!(back.target.b, rats("1,3"));
        assert_eq!(back.target.param("m").unwrap(), &rat("2"));
    }

    #[test]
    fn radical_identities_still_verify() {
        // r/s = 3/2 and y = (2): both sides are the exact radical 8^(1/2)
        let rec = radon_to_powermean(&rats("1"), &rats("2"), &rat("3"), &rat("2")).unwrap();
        assert!(rec.identity_checked);
        let rec = radon_to_powermean(&rats("1"), &rats("4"), &rat("3"), &rat("2")).unwrap();
        assert!(rec.identity_checked);
        // root index past the symbolic evaluator's cap: verification declined
        let rec = radon_to_powermean(&rats("1"), &rats("2"), &rat("101"), &rat("100")).unwrap();
        assert!(!rec.identity_checked);
    }

    #[test]
    fn corollary23_examples() {
        let (rec, v) = substitute_corollary23(&rats("1,1"), &rats("1,1"), &rat("1"), B).unwrap();
        assert!(rec.is_some());
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("2")));

        let (rec, v) = substitute_corollary23(&rats("1,2"), &rats("4,1"), &rat("1"), B).unwrap();
        let rec = rec.unwrap();
        assert!(rec.identity_checked);
        assert_eq!(rec.target.b, rats("4,2"));
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("9/4")));
        assert!(v.rhs.contains_rational(&rat("3/2")));

        let (rec, v) = substitute_corollary23(&rats("1,1"), &rats("1,4"), &rat("2"), B).unwrap();
        let rec = rec.unwrap();
        assert_eq!(rec.target.b, rats("1,2"));
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("5/4")));
        assert!(v.rhs.contains_rational(&rat("8/9")));

        // irrational substitution: no record, verdict still certified
        let (rec, v) = substitute_corollary23(&rats("1,1"), &rats("2,3"), &rat("2"), B).unwrap();
        assert!(rec.is_none());
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.margin_consistent());
    }

    #[test]
    fn triangle_examples() {
        let one = rat("1");
        let v = triangle_bound(&one, &one, &one, &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("3/2")));
        assert!(v.rhs.contains_rational(&rat("3/2")));

        let v = triangle_bound(&one, &one, &one, &rat("3"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("3/2")));

        assert_eq!(
            triangle_bound(&one, &one, &rat("5"), &rat("2"), B),
            Err(Error::NotATriangle)
        );
        assert_eq!(
            triangle_bound(&one, &one, &rat("2"), &rat("1"), B),
            Err(Error::NotATriangle)
        );

        // n = 2: the bound is exactly S
        let v = triangle_bound(&one, &rat("2"), &rat("2"), &rat("2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("35/12")));
        assert!(v.rhs.contains_rational(&rat("5/2")));
        assert!(v.margin.contains_rational(&rat("5/12")));

        // fractional n routes through interval certification
        let v = triangle_bound(&rat("2"), &rat("3"), &rat("4"), &rat("3/2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.margin_consistent());
    }

    #[test]
    fn constrained_sum_examples() {
        let v = constrained_sum_bound(&rats("1,1,1"), &rat("2"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("3/2")));

        let v = constrained_sum_bound(&rats("1,2"), &rat("2"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("9/2")));
        assert!(v.rhs.contains_rational(&rat("3")));

        let err = constrained_sum_bound(&rats("1"), &rat("2"), &rat("1"), B).unwrap_err();
        assert!(err.to_string().contains("s - a_k > 0"));
    }

    #[test]
    fn unit_product_examples() {
        let one = rat("1");
        let v = unit_product_bound(&one, &one, &one, B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("3/4")));

        let v = unit_product_bound(&rat("2"), &rat("1/2"), &one, B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("419/144")));

        assert_eq!(
            unit_product_bound(&rat("2"), &rat("2"), &one, B),
            Err(Error::ProductNotOne)
        );
    }

    #[test]
    fn unit_product_permutation_symmetric() {
        let (x, y, z) = (rat("2"), rat("1/2"), rat("1"));
        let base = unit_product_bound(&x, &y, &z, B).unwrap();
        for (p, q, r) in [
            (&y, &z, &x),
            (&z, &x, &y),
            (&y, &x, &z),
            (&x, &z, &y),
            (&z, &y, &x),
        ] {
            let v = unit_product_bound(p, q, r, B).unwrap();
            assert_eq!(v.lhs, base.lhs);
            assert_eq!(v.outcome, base.outcome);
        }
    }

    #[test]
    fn source_and_target_verdicts_agree() {
        let cases = [
            ("1,2", "1,3", "2"),
            ("2,5,1", "1,1,2", "3"),
            ("1,2", "1,3", "0"),
        ];
        for (a, b, m) in cases {
            let rec = powermean_to_radon(&rats(a), &rats(b), &rat(m)).unwrap();
            let src = check_instance(&rec.source, B).unwrap();
            let tgt = check_instance(&rec.target, B).unwrap();
            assert_eq!(src.outcome, tgt.outcome, "case ({a}; {b}; {m})");
        }
    }
}

//! Certified checkers for every inequality family: formulate both sides as
//! evaluation trees, fire the family's exact algebraic equality condition
//! when it applies, and otherwise decide through the exact, symbolic, and
//! interval routes in that order.
//!
//! The margin in every verdict is the oriented slack (positive exactly when
//! the instance satisfies its inequality strictly), and its enclosure is
//! built from the same endpoint arithmetic that decided the outcome, so the
//! sign contract on [`Verdict`] holds by construction.

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::expr::{eval_exact, eval_interval, eval_symbolic, Expr};
use crate::instance::{
    constant, constant_on_support, equality_witness, proportional, proportional_on_support, Family,
    InequalityInstance,
};
use crate::rational::Rational;
use crate::verdict::{Outcome, Verdict};
use crate::{DEFAULT_BUDGET_BITS, START_PRECISION_BITS};

/// Which way the family's inequality points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// lhs >= rhs (every family except geometric-mean superadditivity)
    Ge,
    /// lhs <= rhs
    Le,
}

/// Both sides of an instance as evaluation trees, plus the direction.
pub struct Formulation {
    pub lhs: Expr,
    pub rhs: Expr,
    pub direction: Direction,
}

fn sum(v: &[Rational]) -> Rational {
    v.iter().sum()
}

fn product(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::one(), |acc, x| acc * x)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds the two side expressions for an instance. No domain checks happen
/// here; the search module deliberately formulates out-of-domain instances.
pub fn build_sides(inst: &InequalityInstance) -> Result<Formulation> {
    let a = &inst.a;
    let b = &inst.b;
    let n = inst.n();
    let ge = |lhs, rhs| {
        Ok(Formulation {
            lhs,
            rhs,
            direction: Direction::Ge,
        })
    };
    match inst.family {
        Family::Bergstrom => {
            let lhs = Expr::Sum(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| {
                        Expr::div(
                            Expr::pow(Expr::cons(x.clone()), Rational::from_int(2)),
                            Expr::cons(y.clone()),
                        )
                    })
                    .collect(),
            );
            let rhs = Expr::div(
                Expr::pow(Expr::cons(sum(a)), Rational::from_int(2)),
                Expr::cons(sum(b)),
            );
            ge(lhs, rhs)
        }
        Family::Radon => {
            let m = inst.param("m")?.clone();
            let m1 = &m + &Rational::one();
            let lhs = Expr::Sum(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| {
                        Expr::div(
                            Expr::pow(Expr::cons(x.clone()), m1.clone()),
                            Expr::pow(Expr::cons(y.clone()), m.clone()),
                        )
                    })
                    .collect(),
            );
            let rhs = Expr::div(
                Expr::pow(Expr::cons(sum(a)), m1),
                Expr::pow(Expr::cons(sum(b)), m),
            );
            ge(lhs, rhs)
        }
        Family::RadonGeneral => {
            let r = inst.param("r")?.clone();
            let s = inst.param("s")?.clone();
            let lhs = Expr::Sum(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| {
                        Expr::div(
                            Expr::pow(Expr::cons(x.clone()), r.clone()),
                            Expr::pow(Expr::cons(y.clone()), s.clone()),
                        )
                    })
                    .collect(),
            );
            let gap = &(&r - &s) - &Rational::one();
            let rhs = Expr::div(
                Expr::pow(Expr::cons(sum(a)), r),
                Expr::mul(
                    Expr::pow(Expr::int(n as i64), gap),
                    Expr::pow(Expr::cons(sum(b)), s),
                ),
            );
            ge(lhs, rhs)
        }
        Family::PowerMean => {
            // a holds the values x, b the weights p
            let r = inst.param("r")?.clone();
            let s = inst.param("s")?.clone();
            let total = sum(b);
            let mean = |e: &Rational| -> Result<Expr> {
                let weighted = Expr::Sum(
                    a.iter()
                        .zip(b)
                        .map(|(x, p)| {
                            Expr::mul(
                                Expr::cons(p.clone()),
                                Expr::pow(Expr::cons(x.clone()), e.clone()),
                            )
                        })
                        .collect(),
                );
                Ok(Expr::pow(
                    Expr::div(weighted, Expr::cons(total.clone())),
                    e.recip()?,
                ))
            };
            ge(mean(&r)?, mean(&s)?)
        }
        Family::GeoSuperadd => {
            let lambda = inst
                .lambda
                .as_ref()
                .ok_or_else(|| Error::domain("lambda present"))?;
            let weighted_prod = |v: &[Rational]| {
                Expr::Prod(
                    v.iter()
                        .zip(lambda)
                        .map(|(x, l)| Expr::pow(Expr::cons(x.clone()), l.clone()))
                        .collect(),
                )
            };
            let sums: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            Ok(Formulation {
                lhs: Expr::add(weighted_prod(a), weighted_prod(b)),
                rhs: weighted_prod(&sums),
                direction: Direction::Le,
            })
        }
        Family::Chrystal => {
            let shifted = product(&a.iter().map(|x| Rational::one() + x).collect::<Vec<_>>());
            let inv_n = Rational::ratio(1, n as i64);
            let rhs = Expr::pow(
                Expr::add(Expr::int(1), Expr::pow(Expr::cons(product(a)), inv_n)),
                Rational::from_int(n as i64),
            );
            ge(Expr::cons(shifted), rhs)
        }
        Family::CauchySchwarz => {
            let lhs = Expr::cons(sum(a) * &sum(b));
            let rhs = Expr::pow(
                Expr::Sum(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| Expr::pow(Expr::cons(x * y), Rational::ratio(1, 2)))
                        .collect(),
                ),
                Rational::from_int(2),
            );
            ge(lhs, rhs)
        }
        Family::Bernoulli => {
            let x = a[0].clone();
            let r = inst.param("r")?.clone();
            let lhs = Expr::pow(Expr::cons(Rational::one() + &x), r.clone());
            let rhs = Expr::cons(Rational::one() + &(&r * &x));
            ge(lhs, rhs)
        }
        Family::WeightedAmgm => {
            // a holds the values x, b the convex weights
            let lhs = Expr::cons(dot(a, b));
            let rhs = Expr::Prod(
                a.iter()
                    .zip(b)
                    .map(|(x, l)| Expr::pow(Expr::cons(x.clone()), l.clone()))
                    .collect(),
            );
            ge(lhs, rhs)
        }
        Family::Holder => {
            let p = inst.param("p")?.clone();
            let q = inst.param("q")?.clone();
            let norm = |v: &[Rational], e: &Rational| -> Result<Expr> {
                let powered = Expr::Sum(
                    v.iter()
                        .map(|x| Expr::pow(Expr::cons(x.clone()), e.clone()))
                        .collect(),
                );
                Ok(Expr::pow(powered, e.recip()?))
            };
            let lhs = Expr::mul(norm(a, &p)?, norm(b, &q)?);
            ge(lhs, Expr::cons(dot(a, b)))
        }
        Family::Minkowski => {
            let p = inst.param("p")?.clone();
            let norm = |v: &[Rational]| -> Result<Expr> {
                let powered = Expr::Sum(
                    v.iter()
                        .map(|x| Expr::pow(Expr::cons(x.clone()), p.clone()))
                        .collect(),
                );
                Ok(Expr::pow(powered, p.recip()?))
            };
            let sums: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let lhs = Expr::add(norm(a)?, norm(b)?);
            ge(lhs, norm(&sums)?)
        }
    }
}

/// The family's exact algebraic equality condition. Sound only on instances
/// that passed domain validation; callers handling deliberately-invalid
/// instances must skip it.
pub fn equality_condition(inst: &InequalityInstance) -> Result<bool> {
    let w = equality_witness(inst);
    Ok(match inst.family {
        Family::Bergstrom | Family::CauchySchwarz => w.proportional,
        Family::Radon => {
            let m = inst.param("m")?;
            m.is_zero() || *m == Rational::from_int(-1) || w.proportional
        }
        Family::RadonGeneral => w.all_equal,
        Family::PowerMean => inst.param("r")? == inst.param("s")? || constant(&inst.a),
        Family::GeoSuperadd => {
            let lambda = inst
                .lambda
                .as_ref()
                .ok_or_else(|| Error::domain("lambda present"))?;
            proportional_on_support(&inst.a, &inst.b, lambda)
        }
        Family::Chrystal => constant(&inst.a),
        Family::Bernoulli => inst.a[0].is_zero() || inst.param("r")?.is_one(),
        Family::WeightedAmgm => constant_on_support(&inst.a, &inst.b),
        Family::Holder => {
            let p = inst.param("p")?;
            let q = inst.param("q")?;
            let zero_side = |v: &[Rational]| v.iter().all(Rational::is_zero);
            if inst.n() == 1 || zero_side(&inst.a) || zero_side(&inst.b) || w.all_equal {
                true
            } else if let (Some(pi), Some(qi)) = (p.as_i64(), q.as_i64()) {
                // general condition: a^p proportional to b^q
                let ap: Vec<Rational> = inst.a.iter().map(|x| x.pow_int(pi).unwrap()).collect();
                let bq: Vec<Rational> = inst.b.iter().map(|x| x.pow_int(qi).unwrap()).collect();
                proportional(&ap, &bq)
            } else {
                false
            }
        }
        Family::Minkowski => inst.param("p")?.is_one() || w.proportional,
    })
}

fn oriented_margin(
    lhs: &DyadicInterval,
    rhs: &DyadicInterval,
    direction: Direction,
) -> DyadicInterval {
    // exact endpoint subtraction: disjoint side enclosures yield a margin
    // with a certified sign, no rounding in between
    match direction {
        Direction::Ge => lhs.add_exact(&rhs.neg()),
        Direction::Le => rhs.add_exact(&lhs.neg()),
    }
}

fn oriented_slack(lhs: &Rational, rhs: &Rational, direction: Direction) -> Rational {
    match direction {
        Direction::Ge => lhs - rhs,
        Direction::Le => rhs - lhs,
    }
}

/// Encloses both sides at the given precision, doubling past soft division
/// errors (a divisor enclosure straddling zero) up to the budget.
fn enclose_sides(
    lhs: &Expr,
    rhs: &Expr,
    start: u32,
    budget: u32,
) -> Result<(DyadicInterval, DyadicInterval, u32)> {
    let mut prec = start.min(budget);
    loop {
        match (eval_interval(lhs, prec), eval_interval(rhs, prec)) {
            (Ok(a), Ok(b)) => return Ok((a, b, prec)),
            (ra, rb) => {
                let e = ra.err().or_else(|| rb.err()).unwrap();
                if e != Error::DivisionByZero || prec >= budget {
                    return Err(e);
                }
            }
        }
        prec = prec.saturating_mul(2).min(budget);
    }
}

fn equality_verdict(lhs: &Expr, rhs: &Expr, budget: u32) -> Result<Verdict> {
    let (lv, rv, _) = enclose_sides(lhs, rhs, START_PRECISION_BITS, budget)?;
    Ok(Verdict {
        outcome: Outcome::EqualityCertified,
        lhs: lv,
        rhs: rv,
        margin: DyadicInterval::zero(START_PRECISION_BITS),
        precision_used: 0,
    })
}

fn exact_verdict(
    la: &Rational,
    rb: &Rational,
    formulation: &Formulation,
    budget: u32,
) -> Result<Verdict> {
    let slack = oriented_slack(la, rb, formulation.direction);
    if slack.is_zero() {
        return equality_verdict(&formulation.lhs, &formulation.rhs, budget);
    }
    let outcome = if slack.is_positive() {
        Outcome::Holds
    } else {
        Outcome::Violated
    };
    // tight conversion of a nonzero rational keeps its sign
    let margin = DyadicInterval::from_rational(&slack, START_PRECISION_BITS);
    Ok(Verdict {
        outcome,
        lhs: DyadicInterval::from_rational(la, START_PRECISION_BITS),
        rhs: DyadicInterval::from_rational(rb, START_PRECISION_BITS),
        margin,
        precision_used: 0,
    })
}

/// Decision engine shared by all checkers: exact route when every exponent
/// is an integer, then the symbolic radical route, then interval refinement
/// doubling from 64 bits to the budget.
pub fn decide(formulation: &Formulation, equality_rule: bool, budget: u32) -> Result<Verdict> {
    let budget = budget.max(START_PRECISION_BITS);
    let Formulation {
        lhs,
        rhs,
        direction,
    } = formulation;

    if equality_rule {
        return equality_verdict(lhs, rhs, budget);
    }

    if lhs.integer_exponents_only() && rhs.integer_exponents_only() {
        let la = eval_exact(lhs)?;
        let rb = eval_exact(rhs)?;
        return exact_verdict(&la, &rb, formulation, budget);
    }

    if let (Some(sa), Some(sb)) = (eval_symbolic(lhs), eval_symbolic(rhs)) {
        match sa.cmp_exact(&sb) {
            Some(std::cmp::Ordering::Equal) => {
                return equality_verdict(lhs, rhs, budget);
            }
            Some(_) => {
                // both sides may still be exact rationals (all roots extracted)
                if let (Some(la), Some(rb)) = (sa.as_rational(), sb.as_rational()) {
                    return exact_verdict(&la, &rb, formulation, budget);
                }
                // ordering is known; fall through so the margin enclosure
                // certifies it at some precision
            }
            None => {}
        }
    }

    let mut prec = START_PRECISION_BITS.min(budget);
    let mut last = None;
    loop {
        match (eval_interval(lhs, prec), eval_interval(rhs, prec)) {
            (Ok(lv), Ok(rv)) => {
                let margin = oriented_margin(&lv, &rv, *direction);
                if margin.strictly_positive() {
                    return Ok(Verdict {
                        outcome: Outcome::Holds,
                        lhs: lv,
                        rhs: rv,
                        margin,
                        precision_used: prec,
                    });
                }
                if margin.strictly_negative() {
                    return Ok(Verdict {
                        outcome: Outcome::Violated,
                        lhs: lv,
                        rhs: rv,
                        margin,
                        precision_used: prec,
                    });
                }
                if lv.is_degenerate() && rv.is_degenerate() && lv == rv {
                    // both sides landed on the same exact dyadic value
                    return Ok(Verdict {
                        outcome: Outcome::EqualityCertified,
                        lhs: lv,
                        rhs: rv,
                        margin: DyadicInterval::zero(prec),
                        precision_used: prec,
                    });
                }
                last = Some((lv, rv, margin));
            }
            (ra, rb) => {
                let e = ra.err().or_else(|| rb.err()).unwrap();
                if e != Error::DivisionByZero {
                    return Err(e);
                }
            }
        }
        if prec >= budget {
            return match last {
                Some((lv, rv, margin)) => Ok(Verdict {
                    outcome: Outcome::Indeterminate,
                    lhs: lv,
                    rhs: rv,
                    margin,
                    precision_used: prec,
                }),
                None => Err(Error::DivisionByZero),
            };
        }
        prec = prec.saturating_mul(2).min(budget);
    }
}

/// Full pipeline for a validated instance: domain check, equality condition,
/// then the decision engine.
pub fn check_instance(inst: &InequalityInstance, budget: u32) -> Result<Verdict> {
    inst.validate_domain()?;
    let formulation = build_sides(inst)?;
    let equal = equality_condition(inst)?;
    decide(&formulation, equal, budget)
}

/// Checks a deliberately out-of-domain instance: no validation and no
/// algebraic equality shortcuts (they are only sound inside the stated
/// domain), just the raw certified comparison.
pub fn check_unvalidated(inst: &InequalityInstance, budget: u32) -> Result<Verdict> {
    let formulation = build_sides(inst)?;
    decide(&formulation, false, budget)
}

pub fn check_bergstrom(x: &[Rational], y: &[Rational], budget: u32) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(Family::Bergstrom, x.to_vec(), y.to_vec(), []),
        budget,
    )
}

pub fn check_radon(a: &[Rational], b: &[Rational], m: &Rational, budget: u32) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(Family::Radon, a.to_vec(), b.to_vec(), [("m", m.clone())]),
        budget,
    )
}

pub fn check_radon_general(
    a: &[Rational],
    b: &[Rational],
    r: &Rational,
    s: &Rational,
    budget: u32,
) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(
            Family::RadonGeneral,
            a.to_vec(),
            b.to_vec(),
            [("r", r.clone()), ("s", s.clone())],
        ),
        budget,
    )
}

/// Weighted power mean comparison; `p` are the weights and `x` the values.
pub fn check_power_mean(
    p: &[Rational],
    x: &[Rational],
    r: &Rational,
    s: &Rational,
    budget: u32,
) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(
            Family::PowerMean,
            x.to_vec(),
            p.to_vec(),
            [("r", r.clone()), ("s", s.clone())],
        ),
        budget,
    )
}

pub fn check_geo_superadd(
    a: &[Rational],
    b: &[Rational],
    lambda: &[Rational],
    budget: u32,
) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(Family::GeoSuperadd, a.to_vec(), b.to_vec(), [])
            .with_lambda(lambda.to_vec()),
        budget,
    )
}

pub fn check_chrystal(a: &[Rational], budget: u32) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(Family::Chrystal, a.to_vec(), Vec::new(), []),
        budget,
    )
}

pub fn check_cauchy_schwarz(a: &[Rational], b: &[Rational], budget: u32) -> Result<Verdict> {
    check_instance(
        &InequalityInstance::new(Family::CauchySchwarz, a.to_vec(), b.to_vec(), []),
        budget,
    )
}

/// Checks one of the four companion families carried by an instance.
pub fn check_companion(inst: &InequalityInstance, budget: u32) -> Result<Verdict> {
    match inst.family {
        Family::Bernoulli | Family::WeightedAmgm | Family::Holder | Family::Minkowski => {
            check_instance(inst, budget)
        }
        other => Err(Error::domain(format!(
            "companion family (bernoulli, weighted_amgm, holder, minkowski), got {other}"
        ))),
    }
}

pub fn default_budget() -> u32 {
    DEFAULT_BUDGET_BITS
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

    const B: u32 = 4096;

    #[test]
    fn bergstrom_examples() {
        let v = check_bergstrom(&rats("1,2"), &rats("1,1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("5")));
        assert!(v.rhs.contains_rational(&rat("9/2")));
        assert!(v.margin.contains_rational(&rat("1/2")));
        assert_eq!(v.precision_used, 0);
        assert!(v.margin_consistent());

        let v = check_bergstrom(&rats("1,1"), &rats("1,1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("2")));

        let v = check_bergstrom(&rats("3,6"), &rats("1,2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("27")));
        assert!(v.rhs.contains_rational(&rat("27")));
    }

    #[test]
    fn radon_examples() {
        let v = check_radon(&rats("1,2"), &rats("1,3"), &rat("2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("17/9")));
        assert!(v.rhs.contains_rational(&rat("27/16")));
        assert!(v.margin.contains_rational(&(rat("17/9") - &rat("27/16"))));

        let v = check_radon(&rats("2,5"), &rats("7,3"), &rat("0"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("7")));

        let v = check_radon(&rats("1,2"), &rats("1,3"), &rat("-2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("11/2")));
        assert!(v.rhs.contains_rational(&rat("16/3")));
    }

    #[test]
    fn radon_general_examples() {
        let v = check_radon_general(&rats("1,2"), &rats("1,1"), &rat("3"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("9")));
        assert!(v.rhs.contains_rational(&rat("27/4")));

        let v = check_radon_general(&rats("1,1"), &rats("1,1"), &rat("3"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("2")));

        // fractional exponent decided rigorously
        let v = check_radon_general(&rats("1,2"), &rats("1,3"), &rat("5/2"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.margin_consistent());
        assert!(v.precision_used >= START_PRECISION_BITS);
    }

    #[test]
    fn power_mean_examples() {
        let v = check_power_mean(&rats("1,1"), &rats("1,2"), &rat("2"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        // (5/2)^(1/2) vs 3/2
        assert!(v.rhs.contains_rational(&rat("3/2")));
        assert!(v.margin_consistent());

        let v = check_power_mean(&rats("1,3"), &rats("1,2"), &rat("2"), &rat("2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);

        let v = check_power_mean(&rats("1,2"), &rats("2,2"), &rat("3"), &rat("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("2")));
    }

    #[test]
    fn geo_superadd_examples() {
        let v = check_geo_superadd(&rats("1,4"), &rats("4,1"), &rats("1/2,1/2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("4")));
        assert!(v.rhs.contains_rational(&rat("5")));
        // oriented slack: rhs - lhs = 1 for the <= family
        assert!(v.margin.contains_rational(&rat("1")));
        assert!(v.margin_consistent());

        let v = check_geo_superadd(&rats("2,9"), &rats("3,5"), &rats("1,0"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("5")));

        let v = check_geo_superadd(&rats("2,3"), &rats("2,3"), &rats("1/2,1/2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
    }

    #[test]
    fn chrystal_examples() {
        let v = check_chrystal(&rats("1,4"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("10")));
        assert!(v.rhs.contains_rational(&rat("9")));
        assert_eq!(v.precision_used, 0);

        let v = check_chrystal(&rats("7/3,7/3,7/3"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);

        let v = check_chrystal(&rats("8,1,1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("36")));
        assert!(v.rhs.contains_rational(&rat("27")));
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let v = check_cauchy_schwarz(&rats("1,2"), &rats("2,1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("9")));
        assert!(v.rhs.contains_rational(&rat("8")));
        assert_eq!(v.precision_used, 0);

        let v = check_cauchy_schwarz(&rats("2,3"), &rats("2,3"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);

        let v = check_cauchy_schwarz(&rats("1"), &rats("1"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);
        assert!(v.lhs.contains_rational(&rat("1")));
    }

    #[test]
    fn companion_examples() {
        let bern = |x: &str, r: &str| {
            InequalityInstance::new(Family::Bernoulli, rats(x), Vec::new(), [("r", rat(r))])
        };
        let v = check_companion(&bern("1", "2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("4")));
        assert!(v.rhs.contains_rational(&rat("3")));

        let v = check_companion(&bern("0", "7/2"), B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);

        let amgm = InequalityInstance::new(Family::WeightedAmgm, rats("1,4"), rats("1/2,1/2"), []);
        let v = check_companion(&amgm, B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.lhs.contains_rational(&rat("5/2")));
        assert!(v.rhs.contains_rational(&rat("2")));

        let holder = InequalityInstance::new(
            Family::Holder,
            rats("1,2"),
            rats("2,1"),
            [("p", rat("2")), ("q", rat("2"))],
        );
        let v = check_companion(&holder, B).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.margin_consistent());

        let mink = InequalityInstance::new(
            Family::Minkowski,
            rats("1,2"),
            rats("2,4"),
            [("p", rat("2"))],
        );
        let v = check_companion(&mink, B).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCertified);

        let not_companion =
            InequalityInstance::new(Family::Radon, rats("1"), rats("1"), [("m", rat("1"))]);
        assert!(check_companion(&not_companion, B).is_err());
    }

    #[test]
    fn out_of_domain_rejections() {
        assert!(matches!(
            check_radon(&rats("1,2"), &rats("1,3"), &rat("-1/2"), B),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            check_radon_general(&rats("1,2"), &rats("1,1"), &rat("1"), &rat("1"), B),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            check_bergstrom(&rats("1,2"), &rats("1,0"), B),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn unvalidated_check_finds_violations() {
        // r = s = 1 breaks the r >= s+1 requirement; the corner instance
        // violates the bound: lhs 1 < rhs 2000/1001
        let inst = InequalityInstance::new(
            Family::RadonGeneral,
            rats("1,0"),
            rats("1,1/1000"),
            [("r", rat("1")), ("s", rat("1"))],
        );
        let v = check_unvalidated(&inst, B).unwrap();
        assert_eq!(v.outcome, Outcome::Violated);
        assert!(v.lhs.contains_rational(&rat("1")));
        assert!(v.rhs.contains_rational(&rat("2000/1001")));
        assert!(v.margin_consistent());
    }

    #[test]
    fn specialization_radon_m1_is_bergstrom() {
        let cases = [("1,2", "1,1"), ("3,5", "2,7"), ("1,2,3", "4,5,6")];
        for (x, y) in cases {
            let r = check_radon(&rats(x), &rats(y), &rat("1"), B).unwrap();
            let b = check_bergstrom(&rats(x), &rats(y), B).unwrap();
            assert_eq!(r.outcome, b.outcome);
            assert_eq!(r.margin, b.margin);
            assert_eq!(r.lhs, b.lhs);
            assert_eq!(r.rhs, b.rhs);
        }
    }
}

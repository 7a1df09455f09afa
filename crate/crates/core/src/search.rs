//! Deterministic randomized search for counterexamples, used to probe the
//! sharpness of each family's validity domain. Every trial is a pure
//! function of (seed, trial index), so searches are reproducible and can be
//! distributed; the reported witness is always the one with the minimal
//! trial index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use log::debug;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::check::{check_instance, check_unvalidated};
use crate::error::{Error, Result};
use crate::instance::{Family, InequalityInstance};
use crate::rational::Rational;
use crate::verdict::{Outcome, Verdict};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u64 = 1000;

/// A named precondition to violate during generation; everything else about
/// the instance stays inside the family's domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainOverride {
    /// Radon exponent in the excluded gap: -1 < m < 0.
    ExponentGap,
    /// Power gap dropped: r < s + 1 while keeping r, s >= 0.
    PowerGap,
    /// Mixed exponent signs: r*s < 0.
    SignMix,
    /// Power mean order reversed: r < s.
    MeanOrder,
    /// Bernoulli exponent below one: r < 1.
    SubunitExponent,
    /// Weight vector scaled off the simplex: sum != 1.
    WeightSum,
    /// Conjugacy broken: 1/p + 1/q != 1.
    Conjugate,
    /// Minkowski exponent below one: p < 1.
    SubadditiveExponent,
    /// One or more entries of the positive vector made nonpositive.
    NonpositiveEntry,
}

impl DomainOverride {
    pub fn applies_to(self, family: Family) -> bool {
        use DomainOverride::*;
        match self {
            ExponentGap => family == Family::Radon,
            PowerGap | SignMix => family == Family::RadonGeneral,
            MeanOrder => family == Family::PowerMean,
            SubunitExponent => family == Family::Bernoulli,
            WeightSum => matches!(family, Family::GeoSuperadd | Family::WeightedAmgm),
            Conjugate => family == Family::Holder,
            SubadditiveExponent => family == Family::Minkowski,
            NonpositiveEntry => {
                matches!(family, Family::Bergstrom | Family::Radon | Family::Chrystal)
            }
        }
    }
}

impl fmt::Display for DomainOverride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            DomainOverride::ExponentGap => "-1 < m < 0",
            DomainOverride::PowerGap => "r < s+1",
            DomainOverride::SignMix => "r*s < 0",
            DomainOverride::MeanOrder => "r < s",
            DomainOverride::SubunitExponent => "r < 1",
            DomainOverride::WeightSum => "sum(lambda) != 1",
            DomainOverride::Conjugate => "1/p + 1/q != 1",
            DomainOverride::SubadditiveExponent => "p < 1",
            DomainOverride::NonpositiveEntry => "nonpositive entries",
        };
        f.write_str(text)
    }
}

impl FromStr for DomainOverride {
    type Err = Error;

    fn from_str(s: &str) -> Result<DomainOverride> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match key.to_ascii_lowercase().as_str() {
            "-1<m<0" | "0>m>-1" | "m-gap" => Ok(DomainOverride::ExponentGap),
            "r<s+1" | "power-gap" => Ok(DomainOverride::PowerGap),
            "r*s<0" | "rs<0" | "sign-mix" => Ok(DomainOverride::SignMix),
            "r<s" | "mean-order" => Ok(DomainOverride::MeanOrder),
            "r<1" | "subunit-exponent" => Ok(DomainOverride::SubunitExponent),
            "sum(lambda)!=1" | "sum!=1" | "weight-sum" => Ok(DomainOverride::WeightSum),
            "1/p+1/q!=1" | "conjugate" => Ok(DomainOverride::Conjugate),
            "p<1" | "subadditive-exponent" => Ok(DomainOverride::SubadditiveExponent),
            "nonpositive" | "nonpositive-entries" => Ok(DomainOverride::NonpositiveEntry),
            _ => Err(Error::parse(format!("unknown domain override: {s}"))),
        }
    }
}

/// What to sample and how much of it.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub family: Family,
    pub domain_override: Option<DomainOverride>,
    pub n_range: (usize, usize),
    pub value_range: (Rational, Rational),
    pub trials: u64,
    pub seed: u64,
    /// Parameters pinned instead of sampled, keyed by their family names.
    pub fixed_params: BTreeMap<String, Rational>,
}

impl SearchSpec {
    pub fn new(family: Family) -> SearchSpec {
        SearchSpec {
            family,
            domain_override: None,
            n_range: (2, 4),
            value_range: (Rational::from_int(-10), Rational::from_int(10)),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            fixed_params: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, o: DomainOverride) -> SearchSpec {
        self.domain_override = Some(o);
        self
    }

    pub fn with_trials(mut self, trials: u64) -> SearchSpec {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> SearchSpec {
        self.seed = seed;
        self
    }

    pub fn with_n_range(mut self, min: usize, max: usize) -> SearchSpec {
        self.n_range = (min, max);
        self
    }

    pub fn with_value_range(mut self, lo: Rational, hi: Rational) -> SearchSpec {
        self.value_range = (lo, hi);
        self
    }

    pub fn with_param(mut self, name: &str, value: Rational) -> SearchSpec {
        self.fixed_params.insert(name.to_string(), value);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_range.0 < 1 || self.n_range.0 > self.n_range.1 {
            return Err(Error::InfeasibleSpec(
                "n_range must satisfy 1 <= min <= max".into(),
            ));
        }
        if self.value_range.0 > self.value_range.1 {
            return Err(Error::InfeasibleSpec("value_range must be ordered".into()));
        }
        if self.value_range.1 < Rational::one() {
            return Err(Error::InfeasibleSpec(
                "value_range must reach at least 1 for positive entries".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::InfeasibleSpec("trials must be at least 1".into()));
        }
        if let Some(o) = self.domain_override {
            if !o.applies_to(self.family) {
                return Err(Error::InfeasibleSpec(format!(
                    "override \"{o}\" does not apply to {}",
                    self.family
                )));
            }
        }
        Ok(())
    }
}

fn clamp_i64(v: &Rational, floor: bool) -> i64 {
    let big = if floor { v.floor_big() } else { v.ceil_big() };
    big.to_i64()
        .unwrap_or(if big.sign() == num_bigint::Sign::Minus {
            i64::MIN
        } else {
            i64::MAX
        })
        .clamp(-1_000_000, 1_000_000)
}

/// Uniform-ish rational in `[lo, hi]` with denominator at most 12.
fn sample_in(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let d = rng.gen_range(1i64..=12);
    let big_d = Rational::from_int(d);
    let lo_i = clamp_i64(&(lo * &big_d), false);
    let hi_i = clamp_i64(&(hi * &big_d), true);
    if lo_i > hi_i {
        return lo.clone();
    }
    Rational::ratio(rng.gen_range(lo_i..=hi_i), d)
}

/// Strictly positive draw, corner-biased toward the near-zero value 1/1000.
fn positive_value(rng: &mut ChaCha8Rng, hi: &Rational) -> Rational {
    if rng.gen_ratio(1, 4) {
        return Rational::ratio(1, 1000);
    }
    let d = rng.gen_range(1i64..=12);
    let hi_i = clamp_i64(&(hi * &Rational::from_int(d)), true).max(1);
    Rational::ratio(rng.gen_range(1..=hi_i), d)
}

/// Nonnegative draw, corner-biased toward exactly 0.
fn nonneg_value(rng: &mut ChaCha8Rng, hi: &Rational) -> Rational {
    if rng.gen_ratio(1, 4) {
        return Rational::zero();
    }
    positive_value(rng, hi)
}

/// Signed draw over the whole value range, corner-biased toward 0.
fn signed_value(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    if rng.gen_ratio(1, 4) {
        return Rational::zero();
    }
    sample_in(rng, lo, hi)
}

/// Rational exponent in `[lo, hi]` with small denominator, biased toward
/// integers so most instances take the exact evaluation routes.
fn exponent(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let d = [1, 1, 2, 3, 4][rng.gen_range(0..5usize)];
    Rational::ratio(rng.gen_range(lo * d..=hi * d), d)
}

/// Rational strictly inside (0, 1).
fn open_unit(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(2i64..=8);
    Rational::ratio(rng.gen_range(1..d), d)
}

struct Sampler<'a> {
    spec: &'a SearchSpec,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    fn param(
        &mut self,
        name: &str,
        fallback: impl FnOnce(&mut ChaCha8Rng) -> Rational,
    ) -> Rational {
        match self.spec.fixed_params.get(name) {
            Some(v) => v.clone(),
            None => fallback(&mut self.rng),
        }
    }

    fn vec_of(
        &mut self,
        n: usize,
        draw: impl Fn(&mut ChaCha8Rng, &SearchSpec) -> Rational,
    ) -> Vec<Rational> {
        (0..n).map(|_| draw(&mut self.rng, self.spec)).collect()
    }

    fn positive_vec(&mut self, n: usize) -> Vec<Rational> {
        self.vec_of(n, |rng, spec| positive_value(rng, &spec.value_range.1))
    }

    fn nonneg_vec(&mut self, n: usize) -> Vec<Rational> {
        self.vec_of(n, |rng, spec| nonneg_value(rng, &spec.value_range.1))
    }

    fn signed_vec(&mut self, n: usize) -> Vec<Rational> {
        self.vec_of(n, |rng, spec| {
            signed_value(rng, &spec.value_range.0, &spec.value_range.1)
        })
    }

    /// Convex weights: positive draws normalized by their exact sum.
    fn convex_weights(&mut self, n: usize) -> Vec<Rational> {
        let raw = self.positive_vec(n);
        let total: Rational = raw.iter().sum();
        raw.iter().map(|w| w / &total).collect()
    }

    /// Flips entry 0 (and others by coin) into (-1, 0).
    fn force_nonpositive(&mut self, v: &mut [Rational]) {
        for (i, entry) in v.iter_mut().enumerate() {
            if i == 0 || self.rng.gen_ratio(1, 2) {
                let d = self.rng.gen_range(2i64..=6);
                *entry = -Rational::ratio(1, d);
            }
        }
    }
}

/// Builds the deterministic instance for one trial. With an override the
/// result violates that precondition (and only that one); without one it is
/// valid by construction. Contradictory fixed parameters surface as
/// `InfeasibleSpec`.
pub fn gen_instance(spec: &SearchSpec, trial_index: u64) -> Result<InequalityInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(trial_index);
    let inst = build_instance(spec, rng)?;
    match (spec.domain_override, inst.validate_domain()) {
        (Some(o), Ok(())) => Err(Error::InfeasibleSpec(format!(
            "override \"{o}\" left the instance inside the domain"
        ))),
        (None, Err(e)) => Err(Error::InfeasibleSpec(format!(
            "fixed parameters land outside the domain: {e}"
        ))),
        _ => Ok(inst),
    }
}

fn build_instance(spec: &SearchSpec, rng: ChaCha8Rng) -> Result<InequalityInstance> {
    let mut s = Sampler { spec, rng };
    let n = if spec.family == Family::Bernoulli {
        1
    } else {
        s.rng.gen_range(spec.n_range.0..=spec.n_range.1)
    };
    let hi = spec.value_range.1.clone();
    let over = spec.domain_override;

    let inst = match spec.family {
        Family::Bergstrom => {
            let a = s.signed_vec(n);
            let mut b = s.positive_vec(n);
            if over == Some(DomainOverride::NonpositiveEntry) {
                s.force_nonpositive(&mut b);
            }
            InequalityInstance::new(Family::Bergstrom, a, b, [])
        }
        Family::Radon => {
            let m = s.param("m", |rng| match over {
                Some(DomainOverride::ExponentGap) => -open_unit(rng),
                _ => {
                    if rng.gen_ratio(1, 2) {
                        exponent(rng, 0, 4)
                    } else {
                        -Rational::one() - &exponent(rng, 0, 3)
                    }
                }
            });
            let a = if m >= Rational::zero() {
                s.nonneg_vec(n)
            } else {
                s.positive_vec(n)
            };
            let mut b = s.positive_vec(n);
            if over == Some(DomainOverride::NonpositiveEntry) {
                s.force_nonpositive(&mut b);
            }
            InequalityInstance::new(Family::Radon, a, b, [("m", m)])
        }
        Family::RadonGeneral => {
            let (r, s_param) = match over {
                Some(DomainOverride::PowerGap) => {
                    let sv = s.param("s", |rng| exponent(rng, 0, 3));
                    let rv = s.param("r", {
                        let sv = sv.clone();
                        move |rng| &sv + &(open_unit(rng) - &Rational::one())
                    });
                    (rv, sv)
                }
                Some(DomainOverride::SignMix) => {
                    let sv = s.param("s", |rng| -Rational::one() - &exponent(rng, 0, 2));
                    let rv = s.param("r", |rng| Rational::one() + &exponent(rng, 0, 2));
                    (rv, sv)
                }
                _ => {
                    let sv = s.param("s", |rng| exponent(rng, 0, 3));
                    let rv = s.param("r", {
                        let sv = sv.clone();
                        move |rng| &(&sv + &Rational::one()) + &exponent(rng, 0, 2)
                    });
                    (rv, sv)
                }
            };
            let a = if s_param.is_negative() || r.is_negative() {
                s.positive_vec(n)
            } else {
                s.nonneg_vec(n)
            };
            let b = s.positive_vec(n);
            InequalityInstance::new(Family::RadonGeneral, a, b, [("r", r), ("s", s_param)])
        }
        Family::PowerMean => {
            let s_param = s.param("s", |rng| {
                let d = [1, 1, 2, 3, 4][rng.gen_range(0..5usize)];
                Rational::ratio(rng.gen_range(1..=3 * d), d)
            });
            let r = s.param("r", {
                let sv = s_param.clone();
                move |rng| match over {
                    Some(DomainOverride::MeanOrder) => {
                        let candidate = &sv - &(open_unit(rng) + &exponent(rng, 0, 2));
                        if candidate.is_zero() {
                            -Rational::ratio(1, 2)
                        } else {
                            candidate
                        }
                    }
                    _ => &sv + &exponent(rng, 0, 2),
                }
            });
            let x = if r.is_positive() && s_param.is_positive() {
                s.nonneg_vec(n)
            } else {
                s.positive_vec(n)
            };
            let p = s.positive_vec(n);
            InequalityInstance::new(Family::PowerMean, x, p, [("r", r), ("s", s_param)])
        }
        Family::GeoSuperadd => {
            let a = s.nonneg_vec(n);
            let b = s.nonneg_vec(n);
            let mut lambda = s.convex_weights(n);
            if over == Some(DomainOverride::WeightSum) {
                let scale = Rational::ratio(3, 2);
                lambda = lambda.iter().map(|w| w * &scale).collect();
            }
            InequalityInstance::new(Family::GeoSuperadd, a, b, []).with_lambda(lambda)
        }
        Family::Chrystal => {
            let mut a = s.positive_vec(n);
            if over == Some(DomainOverride::NonpositiveEntry) {
                s.force_nonpositive(&mut a);
            }
            InequalityInstance::new(Family::Chrystal, a, vec![], [])
        }
        Family::CauchySchwarz => {
            let a = s.nonneg_vec(n);
            let b = s.nonneg_vec(n);
            InequalityInstance::new(Family::CauchySchwarz, a, b, [])
        }
        Family::Bernoulli => {
            let r = s.param("r", |rng| match over {
                Some(DomainOverride::SubunitExponent) => open_unit(rng),
                _ => Rational::one() + &exponent(rng, 0, 2),
            });
            let lo = spec.value_range.0.clone().max(Rational::from_int(-1));
            let x = if s.rng.gen_ratio(1, 4) {
                Rational::zero()
            } else {
                sample_in(&mut s.rng, &lo, &hi)
            };
            InequalityInstance::new(Family::Bernoulli, vec![x], vec![], [("r", r)])
        }
        Family::WeightedAmgm => {
            let x = s.positive_vec(n);
            let mut w = s.convex_weights(n);
            if over == Some(DomainOverride::WeightSum) {
                let scale = Rational::ratio(3, 2);
                w = w.iter().map(|v| v * &scale).collect();
            }
            InequalityInstance::new(Family::WeightedAmgm, x, w, [])
        }
        Family::Holder => {
            let p = s.param("p", |rng| Rational::one() + &open_unit(rng));
            let q = s.param("q", {
                let p = p.clone();
                move |rng| {
                    let conjugate = &p / &(&p - &Rational::one());
                    match over {
                        Some(DomainOverride::Conjugate) => conjugate + &open_unit(rng),
                        _ => conjugate,
                    }
                }
            });
            let a = s.nonneg_vec(n);
            let b = s.nonneg_vec(n);
            InequalityInstance::new(Family::Holder, a, b, [("p", p), ("q", q)])
        }
        Family::Minkowski => {
            let p = s.param("p", |rng| match over {
                Some(DomainOverride::SubadditiveExponent) => open_unit(rng),
                _ => Rational::one() + &exponent(rng, 0, 2),
            });
            let a = s.nonneg_vec(n);
            let b = s.nonneg_vec(n);
            InequalityInstance::new(Family::Minkowski, a, b, [("p", p)])
        }
    };
    Ok(inst)
}

/// Result of a search: the minimal-index witness, or exhaustion. NoneFound
/// is a report, not a proof.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Witness {
        trial: u64,
        instance: InequalityInstance,
        verdict: Verdict,
    },
    NoneFound {
        trials: u64,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<(&InequalityInstance, &Verdict)> {
        match self {
            SearchOutcome::Witness {
                instance, verdict, ..
            } => Some((instance, verdict)),
            SearchOutcome::NoneFound { .. } => None,
        }
    }
}

fn evaluate_trial(
    spec: &SearchSpec,
    budget: u32,
    trial: u64,
) -> Option<(InequalityInstance, Verdict)> {
    let inst = match gen_instance(spec, trial) {
        Ok(inst) => inst,
        Err(e) => {
            debug!("trial {trial}: generation failed: {e}");
            return None;
        }
    };
    // overridden instances sit outside the domain, so the checker that
    // assumes validity (and its equality shortcuts) must not run
    let checked = if spec.domain_override.is_some() {
        check_unvalidated(&inst, budget)
    } else {
        check_instance(&inst, budget)
    };
    match checked {
        Ok(v) if v.outcome == Outcome::Violated => Some((inst, v)),
        Ok(_) => None,
        Err(e) => {
            debug!("trial {trial}: evaluation error, not a witness: {e}");
            None
        }
    }
}

/// Scans trials in order on the current thread.
pub fn find_counterexample_seq(spec: &SearchSpec, budget: u32) -> Result<SearchOutcome> {
    spec.validate()?;
    gen_instance(spec, 0)?;
    for trial in 0..spec.trials {
        if let Some((instance, verdict)) = evaluate_trial(spec, budget, trial) {
            return Ok(SearchOutcome::Witness {
                trial,
                instance,
                verdict,
            });
        }
    }
    Ok(SearchOutcome::NoneFound {
        trials: spec.trials,
    })
}

/// Scans trials across parallel workers; returns the same witness as the
/// sequential scan because trials are independent and the merge keeps the
/// minimal index.
#[cfg(feature = "parallel")]
pub fn find_counterexample(spec: &SearchSpec, budget: u32) -> Result<SearchOutcome> {
    spec.validate()?;
    gen_instance(spec, 0)?;
    let hit = (0..spec.trials).into_par_iter().find_map_first(|trial| {
        evaluate_trial(spec, budget, trial).map(|(instance, verdict)| (trial, instance, verdict))
    });
    Ok(match hit {
        Some((trial, instance, verdict)) => SearchOutcome::Witness {
            trial,
            instance,
            verdict,
        },
        None => SearchOutcome::NoneFound {
            trials: spec.trials,
        },
    })
}

#[cfg(not(feature = "parallel"))]
pub fn find_counterexample(spec: &SearchSpec, budget: u32) -> Result<SearchOutcome> {
    find_counterexample_seq(spec, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::build_sides;
    use crate::expr::eval_exact;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    const B: u32 = 256;

    #[test]
    fn generation_is_deterministic() {
        let spec = SearchSpec::new(Family::Radon);
        let a = gen_instance(&spec, 17).unwrap();
        let b = gen_instance(&spec, 17).unwrap();
        assert_eq!(a, b);
        let c = gen_instance(&spec, 18).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn n_range_is_respected() {
        let spec = SearchSpec::new(Family::CauchySchwarz).with_n_range(2, 2);
        for t in 0..20 {
            assert_eq!(gen_instance(&spec, t).unwrap().n(), 2);
        }
    }

    #[test]
    fn override_produces_out_of_domain_instances() {
        let spec = SearchSpec::new(Family::RadonGeneral)
            .with_override(DomainOverride::PowerGap)
            .with_param("r", rat("1"))
            .with_param("s", rat("1"));
        for t in 0..10 {
            let inst = gen_instance(&spec, t).unwrap();
            assert_eq!(inst.param("r").unwrap(), &rat("1"));
            assert_eq!(inst.param("s").unwrap(), &rat("1"));
            assert!(inst.validate_domain().is_err());
        }
    }

    #[test]
    fn infeasible_specs_are_rejected() {
        let err = SearchSpec::new(Family::Bergstrom)
            .with_override(DomainOverride::Conjugate)
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::InfeasibleSpec(_)));

        // valid-domain sampling with a fixed out-of-domain parameter
        let spec = SearchSpec::new(Family::Radon).with_param("m", rat("-1/2"));
        assert!(matches!(
            gen_instance(&spec, 0),
            Err(Error::InfeasibleSpec(_))
        ));

        // override that the fixed parameters fail to realize
        let spec = SearchSpec::new(Family::RadonGeneral)
            .with_override(DomainOverride::PowerGap)
            .with_param("r", rat("3"))
            .with_param("s", rat("1"));
        assert!(matches!(
            gen_instance(&spec, 0),
            Err(Error::InfeasibleSpec(_))
        ));
    }

    #[test]
    fn power_gap_search_finds_witness() {
        let spec = SearchSpec::new(Family::RadonGeneral)
            .with_override(DomainOverride::PowerGap)
            .with_param("r", rat("1"))
            .with_param("s", rat("1"))
            .with_trials(2000);
        let outcome = find_counterexample_seq(&spec, B).unwrap();
        let (instance, verdict) = outcome.witness().expect("sharpness witness");
        assert_eq!(verdict.outcome, Outcome::Violated);
        assert!(verdict.margin_consistent());
        // exact oracle confirms the violation
        let f = build_sides(instance).unwrap();
        let lhs = eval_exact(&f.lhs).unwrap();
        let rhs = eval_exact(&f.rhs).unwrap();
        assert!(lhs < rhs);
    }

    #[test]
    fn bernoulli_subunit_exponent_is_sharp() {
        let spec = SearchSpec::new(Family::Bernoulli)
            .with_override(DomainOverride::SubunitExponent)
            .with_param("r", rat("1/2"))
            .with_value_range(rat("1"), rat("1"))
            .with_trials(50);
        let outcome = find_counterexample_seq(&spec, B).unwrap();
        let (instance, verdict) = outcome.witness().expect("sharpness witness");
        assert_eq!(verdict.outcome, Outcome::Violated);
        assert_eq!(instance.a[0], rat("1"));
    }

    #[test]
    fn valid_domain_finds_nothing() {
        let spec = SearchSpec::new(Family::RadonGeneral)
            .with_param("r", rat("3"))
            .with_param("s", rat("1"))
            .with_trials(200);
        match find_counterexample_seq(&spec, B).unwrap() {
            SearchOutcome::NoneFound { trials } => assert_eq!(trials, 200),
            SearchOutcome::Witness { trial, .. } => panic!("false witness at trial {trial}"),
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let spec = SearchSpec::new(Family::RadonGeneral)
            .with_override(DomainOverride::PowerGap)
            .with_param("r", rat("1"))
            .with_param("s", rat("1"))
            .with_trials(2000);
        let par = find_counterexample(&spec, B).unwrap();
        let seq = find_counterexample_seq(&spec, B).unwrap();
        match (par, seq) {
            (
                SearchOutcome::Witness {
                    trial: tp,
                    instance: ip,
                    ..
                },
                SearchOutcome::Witness {
                    trial: ts,
                    instance: is_,
                    ..
                },
            ) => {
                assert_eq!(tp, ts);
                assert_eq!(ip, is_);
            }
            other => panic!("expected witnesses from both scans, got {other:?}"),
        }
    }
}

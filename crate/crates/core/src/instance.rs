//! Inequality instances: a family tag, one or two data vectors, optional
//! convex weights, and named rational parameters, together with the
//! family-specific domain validation and the exact algebraic equality
//! witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Bergstrom,
    Radon,
    RadonGeneral,
    PowerMean,
    GeoSuperadd,
    Chrystal,
    CauchySchwarz,
    Bernoulli,
    WeightedAmgm,
    Holder,
    Minkowski,
}

pub const ALL_FAMILIES: [Family; 11] = [
    Family::Bergstrom,
    Family::Radon,
    Family::RadonGeneral,
    Family::PowerMean,
    Family::GeoSuperadd,
    Family::Chrystal,
    Family::CauchySchwarz,
    Family::Bernoulli,
    Family::WeightedAmgm,
    Family::Holder,
    Family::Minkowski,
];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Bergstrom => "bergstrom",
            Family::Radon => "radon",
            Family::RadonGeneral => "radon_general",
            Family::PowerMean => "power_mean",
            Family::GeoSuperadd => "geo_superadd",
            Family::Chrystal => "chrystal",
            Family::CauchySchwarz => "cauchy_schwarz",
            Family::Bernoulli => "bernoulli",
            Family::WeightedAmgm => "weighted_amgm",
            Family::Holder => "holder",
            Family::Minkowski => "minkowski",
        }
    }

    /// Parameter names that must be present for the family.
    pub fn required_params(self) -> &'static [&'static str] {
        match self {
            Family::Radon => &["m"],
            Family::RadonGeneral | Family::PowerMean => &["r", "s"],
            Family::Bernoulli => &["r"],
            Family::Holder => &["p", "q"],
            Family::Minkowski => &["p"],
            _ => &[],
        }
    }

    /// Whether instances carry a second vector `b`.
    pub fn uses_b(self) -> bool {
        !matches!(self, Family::Chrystal | Family::Bernoulli)
    }

    /// Whether instances carry the convex-weight vector.
    pub fn uses_lambda(self) -> bool {
        matches!(self, Family::GeoSuperadd)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown family \"{s}\"")))
    }
}

/// One checkable inequality instance.
///
/// Vector roles by family: `a` holds the numerator data (the x or a vector),
/// `b` the second vector (denominators, weights, or the y vector), and
/// `lambda` the convex weights where a family needs a third vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityInstance {
    pub family: Family,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub lambda: Option<Vec<Rational>>,
    pub params: BTreeMap<String, Rational>,
}

impl InequalityInstance {
    pub fn new(
        family: Family,
        a: Vec<Rational>,
        b: Vec<Rational>,
        params: impl IntoIterator<Item = (&'static str, Rational)>,
    ) -> Self {
        InequalityInstance {
            family,
            a,
            b,
            lambda: None,
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    pub fn with_lambda(mut self, lambda: Vec<Rational>) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn param(&self, name: &str) -> Result<&Rational> {
        self.params
            .get(name)
            .ok_or_else(|| Error::domain(format!("parameter {name} present")))
    }

    /// Checks the family-specific validity domain, naming the violated
    /// predicate on failure.
    pub fn validate_domain(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::domain("n >= 1"));
        }
        let n = self.n();
        if self.family.uses_b() && self.b.len() != n {
            return Err(Error::domain("len(a) = len(b)"));
        }
        for p in self.family.required_params() {
            self.param(p)?;
        }
        match self.family {
            Family::Bergstrom => require_positive(&self.b, "y_k > 0"),
            Family::Radon => {
                let m = self.param("m")?;
                if m >= &Rational::zero() {
                    require_nonnegative(&self.a, "a_k >= 0")?;
                    require_positive(&self.b, "b_k > 0")
                } else if m <= &Rational::from_int(-1) {
                    require_positive(&self.a, "a_k > 0")?;
                    require_positive(&self.b, "b_k > 0")
                } else {
                    Err(Error::domain("m >= 0 or m <= -1 (got -1 < m < 0)"))
                }
            }
            Family::RadonGeneral => {
                let r = self.param("r")?.clone();
                let s = self.param("s")?.clone();
                if &r - &s < Rational::one() {
                    return Err(Error::domain("r >= s + 1"));
                }
                if !r.is_negative() && !s.is_negative() {
                    require_nonnegative(&self.a, "a_k >= 0")?;
                    require_positive(&self.b, "b_k > 0")
                } else if !r.is_positive() && !s.is_positive() {
                    require_positive(&self.a, "a_k > 0")?;
                    require_positive(&self.b, "b_k > 0")
                } else {
                    Err(Error::domain("r, s >= 0 or r, s <= 0"))
                }
            }
            Family::PowerMean => {
                let r = self.param("r")?;
                let s = self.param("s")?;
                if !s.is_positive() {
                    return Err(Error::domain("s > 0"));
                }
                if r < s {
                    return Err(Error::domain("r >= s"));
                }
                require_nonnegative(&self.a, "x_k >= 0")?;
                require_positive(&self.b, "p_k > 0")
            }
            Family::GeoSuperadd => {
                require_nonnegative(&self.a, "a_k >= 0")?;
                require_nonnegative(&self.b, "b_k >= 0")?;
                let lambda = self
                    .lambda
                    .as_ref()
                    .ok_or_else(|| Error::domain("lambda present"))?;
                if lambda.len() != n {
                    return Err(Error::domain("len(lambda) = len(a)"));
                }
                require_nonnegative(lambda, "lambda_k >= 0")?;
                let total: Rational = lambda.iter().cloned().sum();
                if !total.is_one() {
                    return Err(Error::domain("sum(lambda) = 1"));
                }
                Ok(())
            }
            Family::Chrystal => require_positive(&self.a, "a_k > 0"),
            Family::CauchySchwarz => {
                require_nonnegative(&self.a, "a_k >= 0")?;
                require_nonnegative(&self.b, "b_k >= 0")
            }
            Family::Bernoulli => {
                if n != 1 {
                    return Err(Error::domain("single value x"));
                }
                if self.a[0] < Rational::from_int(-1) {
                    return Err(Error::domain("x >= -1"));
                }
                if self.param("r")? < &Rational::one() {
                    return Err(Error::domain("r >= 1"));
                }
                Ok(())
            }
            Family::WeightedAmgm => {
                require_positive(&self.a, "x_k > 0")?;
                require_nonnegative(&self.b, "lambda_k >= 0")?;
                let total: Rational = self.b.iter().cloned().sum();
                if !total.is_one() {
                    return Err(Error::domain("sum(lambda) = 1"));
                }
                Ok(())
            }
            Family::Holder => {
                require_nonnegative(&self.a, "a_k >= 0")?;
                require_nonnegative(&self.b, "b_k >= 0")?;
                let p = self.param("p")?;
                let q = self.param("q")?;
                if p <= &Rational::one() || q <= &Rational::one() {
                    return Err(Error::domain("p > 1 and q > 1"));
                }
                let sum = p.recip()? + &q.recip()?;
                if !sum.is_one() {
                    return Err(Error::domain("1/p + 1/q = 1"));
                }
                Ok(())
            }
            Family::Minkowski => {
                require_nonnegative(&self.a, "a_k >= 0")?;
                require_nonnegative(&self.b, "b_k >= 0")?;
                if self.param("p")? < &Rational::one() {
                    return Err(Error::domain("p >= 1"));
                }
                Ok(())
            }
        }
    }
}

fn require_positive(v: &[Rational], predicate: &str) -> Result<()> {
    if v.iter().all(Rational::is_positive) {
        Ok(())
    } else {
        Err(Error::domain(predicate))
    }
}

fn require_nonnegative(v: &[Rational], predicate: &str) -> Result<()> {
    if v.iter().any(Rational::is_negative) {
        Err(Error::domain(predicate))
    } else {
        Ok(())
    }
}

/// Exact algebraic equality witnesses on an instance's vector pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualityWitness {
    pub proportional: bool,
    pub all_equal: bool,
}

pub fn equality_witness(inst: &InequalityInstance) -> EqualityWitness {
    EqualityWitness {
        proportional: proportional(&inst.a, &inst.b),
        all_equal: constant(&inst.a) && (inst.b.is_empty() || constant(&inst.b)),
    }
}

/// Rank-one test via all 2x2 minors: `a_i b_j = a_j b_i` for every pair.
/// Equivalent to the ratio test when the vectors are positive, and still
/// correct when entries are zero.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

pub fn constant(v: &[Rational]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Proportionality restricted to the coordinates with positive weight;
/// weight-zero coordinates cannot affect a weighted product.
pub fn proportional_on_support(a: &[Rational], b: &[Rational], weights: &[Rational]) -> bool {
    let idx: Vec<usize> = (0..weights.len())
        .filter(|&k| weights[k].is_positive())
        .collect();
    let sa: Vec<Rational> = idx.iter().map(|&k| a[k].clone()).collect();
    let sb: Vec<Rational> = idx.iter().map(|&k| b[k].clone()).collect();
    proportional(&sa, &sb)
}

pub fn constant_on_support(v: &[Rational], weights: &[Rational]) -> bool {
    let support: Vec<Rational> = (0..weights.len())
        .filter(|&k| weights[k].is_positive())
        .map(|k| v[k].clone())
        .collect();
    constant(&support)
}

//! Certified verdicts: the outcome of checking one inequality instance,
//! together with enclosures of both sides and of the margin.

use std::fmt;

use crate::dyadic::DyadicInterval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Holds,
    EqualityCertified,
    Violated,
    Indeterminate,
}

impl Outcome {
    /// Stable token used in machine output.
    pub fn token(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::EqualityCertified => "equality_certified",
            Outcome::Violated => "violated",
            Outcome::Indeterminate => "indeterminate",
        }
    }

    pub fn from_token(s: &str) -> Option<Outcome> {
        match s {
            "holds" => Some(Outcome::Holds),
            "equality_certified" => Some(Outcome::EqualityCertified),
            "violated" => Some(Outcome::Violated),
            "indeterminate" => Some(Outcome::Indeterminate),
            _ => None,
        }
    }

    /// True for the outcomes that confirm the inequality.
    pub fn satisfied(self) -> bool {
        matches!(self, Outcome::Holds | Outcome::EqualityCertified)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Result of one certified check.
///
/// `lhs` and `rhs` enclose the two side values. `margin` encloses the
/// oriented slack: the amount by which the instance satisfies its
/// inequality, positive when it holds strictly. For the one family stated in
/// the "less or equal" direction the slack is rhs minus lhs; everywhere else
/// it is lhs minus rhs.
///
/// Invariants: Holds implies `margin.lo > 0`; Violated implies
/// `margin.hi < 0`; EqualityCertified implies an exact algebraic path proved
/// the sides equal and `margin` is exactly `[0, 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub lhs: DyadicInterval,
    pub rhs: DyadicInterval,
    pub margin: DyadicInterval,
    /// Working precision (bits) at which the decision fired; 0 means a
    /// purely exact or symbolic decision with no interval refinement.
    pub precision_used: u32,
}

impl Verdict {
    /// Checks the outcome/margin sign contract; used by tests and debug
    /// assertions.
    pub fn margin_consistent(&self) -> bool {
        match self.outcome {
            Outcome::Holds => self.margin.strictly_positive(),
            Outcome::Violated => self.margin.strictly_negative(),
            Outcome::EqualityCertified => self.margin.is_degenerate() && self.margin.lo().is_zero(),
            Outcome::Indeterminate => true,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} lhs={} rhs={} margin={} precision={}",
            self.outcome, self.lhs, self.rhs, self.margin, self.precision_used
        )
    }
}

//! Certified verification engine for the Radon / Bergström / power-mean
//! family of inequalities.
//!
//! Every verdict produced by this crate is backed either by exact rational
//! arithmetic or by dyadic interval enclosures with outward rounding; no
//! floating point participates in any certified decision. The crate provides:
//!
//! - exact rationals and adaptive-precision dyadic intervals ([`rational`],
//!   [`dyadic`], [`power`], [`expr`]),
//! - checkers for the inequality families ([`check`]),
//! - constructive reductions between the Radon and power-mean forms plus
//!   derived bound calculators ([`reduce`]),
//! - rigorous Riemann enclosures for the integral forms ([`integral`]),
//! - deterministic counterexample search outside validity domains ([`search`]),
//! - the text formats used by the CLI ([`format`]).

pub mod check;
pub mod dyadic;
pub mod error;
pub mod expr;
pub mod format;
pub mod instance;
pub mod integral;
pub mod poly;
pub mod power;
pub mod rational;
pub mod reduce;
pub mod search;
pub mod verdict;

pub use dyadic::{Dyadic, DyadicInterval};
pub use error::{Error, Result};
pub use expr::{Expr, Ordering3};
pub use instance::{Family, InequalityInstance};
pub use rational::Rational;
pub use verdict::{Outcome, Verdict};

/// Default precision-refinement budget, in bits.
pub const DEFAULT_BUDGET_BITS: u32 = 8192;

/// Precision at which every certified comparison starts.
pub const START_PRECISION_BITS: u32 = 64;

//! Valued fields of Puiseux series: valuation tags, dominance relations,
//! coarsening along the t-adic part of a composite valuation, and
//! evaluation of formal series at infinitesimal points.

mod dominance;
mod eval;
mod puiseux;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use dominance::{coarsen_specialize, dominance_compare, value, Coarsening, DominanceVerdict, GroupValue};
pub use eval::eval_infinitesimal;
pub use puiseux::{PuiseuxSeries, DEFAULT_WINDOW};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuedError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cancellation emptied the reliable t-window")]
    WindowUnderflow,
    #[error("a ~ b is undefined for a = 0")]
    ZeroOperandAmbiguity,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("coordinate {index} is not infinitesimal (valuation <= 0)")]
    NotInfinitesimal { index: usize },
    #[error("expected {expected} coordinates, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("unknown valuation tag `{0}` (expected trivial, tadic or composite:p)")]
    BadTag(String),
}

/// Which valuation a Puiseux field carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValuationTag {
    Trivial,
    /// `v(f) = min supp f`, value group `Q`.
    TAdic,
    /// `v_p(f) = (δ, v_p(f_δ))` in `Q ×_lex Z`, where `δ` is the t-order.
    CompositeP(u64),
}

impl FromStr for ValuationTag {
    type Err = ValuedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "trivial" => Ok(ValuationTag::Trivial),
            "tadic" => Ok(ValuationTag::TAdic),
            other => other
                .strip_prefix("composite:")
                .and_then(|p| p.parse::<u64>().ok())
                .filter(|p| crate::coefficients::is_prime(*p))
                .map(ValuationTag::CompositeP)
                .ok_or_else(|| ValuedError::BadTag(s.to_string())),
        }
    }
}

impl fmt::Display for ValuationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationTag::Trivial => write!(f, "trivial"),
            ValuationTag::TAdic => write!(f, "tadic"),
            ValuationTag::CompositeP(p) => write!(f, "composite:{p}"),
        }
    }
}

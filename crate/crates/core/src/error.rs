//! The crate-wide error type and its stable codes.

use thiserror::Error;

use crate::cli::ParseError;
use crate::coefficients::PAdicError;
use crate::kochen::KochenError;
use crate::powerseries::SeriesError;
use crate::tate::TateError;
use crate::valued::ValuedError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    PAdic(#[from] PAdicError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Valued(#[from] ValuedError),
    #[error(transparent)]
    Kochen(#[from] KochenError),
}

impl Error {
    /// A short identifier that stays fixed across releases, e.g.
    /// `series.not_regular`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Parse(e) => match e {
                ParseError::Syntax { .. } => "parse.syntax",
                ParseError::Arity { .. } => "parse.arity",
                ParseError::ZeroDivisor { .. } => "parse.zero_divisor",
            },
            Error::PAdic(e) => match e {
                PAdicError::DivisionByZero => "padic.division_by_zero",
                PAdicError::PrecisionExhausted => "padic.precision_exhausted",
                PAdicError::NoRoot { .. } => "padic.no_root",
                PAdicError::BadBranch { .. } => "padic.bad_branch",
                PAdicError::PrimeMismatch(..) => "padic.prime_mismatch",
            },
            Error::Series(e) => match e {
                SeriesError::VariableCountMismatch { .. } => "series.variable_count_mismatch",
                SeriesError::NotAUnit => "series.not_a_unit",
                SeriesError::NotRegular { .. } => "series.not_regular",
                SeriesError::RegularizationFailed { .. } => "series.regularization_failed",
                SeriesError::ZeroSeries => "series.zero",
                SeriesError::NonInfinitesimalArgument { .. } => "series.non_infinitesimal_argument",
                SeriesError::NoConstantRoot { .. } => "series.no_constant_root",
                SeriesError::WrongArity { .. } => "series.wrong_arity",
                SeriesError::NotZeroAtOrigin { .. } => "series.not_zero_at_origin",
                SeriesError::SingularJacobian => "series.singular_jacobian",
                SeriesError::VariableOutOfRange { .. } => "series.variable_out_of_range",
                SeriesError::Malformed(_) => "series.malformed",
            },
            Error::Tate(e) => match e {
                TateError::Mismatch { .. } => "tate.mismatch",
                TateError::ZeroInput => "tate.zero_input",
                TateError::NotRegular { .. } => "tate.not_regular",
                TateError::DegreeTooHigh { .. } => "tate.degree_too_high",
                TateError::OutOfDomain { .. } => "tate.out_of_domain",
                TateError::PrecisionExhausted => "tate.precision_exhausted",
                TateError::RamifiedIndex { .. } => "tate.ramified_index",
                TateError::NotAOneUnitTimesPower => "tate.not_a_one_unit_times_power",
                TateError::BudgetExhausted { .. } => "tate.budget_exhausted",
            },
            Error::Valued(e) => match e {
                ValuedError::DivisionByZero => "valued.division_by_zero",
                ValuedError::WindowUnderflow => "valued.window_underflow",
                ValuedError::ZeroOperandAmbiguity => "valued.zero_operand_ambiguity",
                ValuedError::ZeroInput => "valued.zero_input",
                ValuedError::NotInfinitesimal { .. } => "valued.not_infinitesimal",
                ValuedError::WrongArity { .. } => "valued.wrong_arity",
                ValuedError::BadTag(_) => "valued.bad_tag",
            },
            Error::Kochen(e) => match e {
                KochenError::GammaPole => "kochen.gamma_pole",
                KochenError::ZeroDenominator => "kochen.zero_denominator",
                KochenError::MissingPrime => "kochen.missing_prime",
                KochenError::VariableOutOfRange { .. } => "kochen.variable_out_of_range",
                KochenError::Arity { .. } => "kochen.arity",
                KochenError::NormViolation { .. } => "kochen.norm_violation",
                KochenError::NotASeriesIdentity => "kochen.not_a_series_identity",
                KochenError::Format(_) => "kochen.format",
                KochenError::Series(inner) => Error::Series(inner.clone()).code(),
                KochenError::Tate(inner) => Error::Tate(inner.clone()).code(),
            },
        }
    }
}

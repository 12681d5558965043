//! Kochen-ring and holomorphy-ring expressions, verification of
//! Nullstellensatz and Hilbert-17 certificate identities, and a sampling
//! falsifier for p-adic definiteness.

mod cert;
mod expr;
mod format;
mod sampler;

use thiserror::Error;

pub use cert::{residual_at, verify_integral_valued, CertKind, Certificate, Verdict};
pub use expr::{CertExpr, Fraction, SeriesRing};
pub use format::{parse_certificate, parse_certificates, DEFAULT_ORDER, DEFAULT_PREC};
pub use sampler::{sample_p_definiteness, SampleReport, SamplerConfig};

use crate::powerseries::SeriesError;
use crate::tate::TateError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KochenError {
    #[error("gamma has a pole: wp(x) = +-1 at the origin")]
    GammaPole,
    #[error("denominator vanishes")]
    ZeroDenominator,
    #[error("gamma and kfrac need a declared prime")]
    MissingPrime,
    #[error("variable X{} used but the ring has {nvars} variables", index + 1)]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("{what}: expected {expected}, found {found}")]
    Arity { what: &'static str, expected: usize, found: usize },
    #[error("|h| > 1: Gauss norm valuation {valuation}")]
    NormViolation { valuation: i64 },
    #[error("integral-valued certificates are not series identities")]
    NotASeriesIdentity,
    #[error("certificate format: {0}")]
    Format(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Tate(#[from] TateError),
}

//! Exact computer algebra for analytic Nullstellensätze over valued fields.
//!
//! The crate is organised around the rings that appear when one proves
//! Nullstellensatz-type statements for formal and restricted power series:
//!
//! * [`coefficients`]: arbitrary-precision rationals, finite-precision
//!   p-adic numbers, the Kochen operator `γ_p` and p-adic root lifting.
//! * [`powerseries`]: sparse multivariate formal power series truncated at a
//!   total degree, with Weierstrass division and preparation, shears,
//!   substitution, Hensel roots and the implicit function theorem.
//! * [`tate`]: restricted power series over `Z_p` modulo `p^N` with the Gauss
//!   norm, restricted Weierstrass division, evaluation and k-th roots.
//! * [`valued`]: Puiseux series, composite valuations and dominance
//!   relations, and evaluation of series at infinitesimal points.
//! * [`kochen`]: Kochen-ring and holomorphy-ring expressions and verification
//!   of Nullstellensatz / Hilbert-17 certificate identities.
//! * [`cli`]: the expression grammar and the `wk` command-line front end.
//!
//! Runnable walkthroughs of every capability live in the crate's
//! `examples/` directory (`cargo run -p wk --example weierstrass_division`).

pub mod cli;
pub mod coefficients;
pub mod error;
pub mod kochen;
pub mod powerseries;
pub mod tate;
pub mod valued;

pub use coefficients::{Extended, Field, PAdic, Rational};
pub use error::Error;
pub use powerseries::FormalSeries;
pub use tate::TateElement;
pub use valued::PuiseuxSeries;

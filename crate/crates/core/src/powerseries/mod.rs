//! Sparse multivariate formal power series truncated at a total degree.
//!
//! A [`FormalSeries`] stores the terms of `f ∈ k[[X_1, …, X_m]]` of total
//! degree at most the truncation order `D`. Series also carry an exactness
//! flag: an exact series is a polynomial known completely, a truncated one
//! stands for any series agreeing with it up to degree `D`.
//!
//! Variables are indexed from 0 in the library and printed as `X1 … Xm`.
//! The distinguished variable of Weierstrass division is the last one.

pub(crate) mod graded;
mod hensel;
mod subst;
mod weierstrass;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};
use smallvec::SmallVec;
use thiserror::Error;

use crate::coefficients::{Field, Rational};
use graded::{accumulate, degree, zero_exponent, Grading, Terms};

pub use hensel::{hensel_root_series, hensel_root_series_with_branch, implicit_solve};
pub use subst::{regularize, substitute, tau_shear, Direction, Regularization, DEFAULT_SHEAR_BOUND};
pub use weierstrass::{
    weierstrass_divide, weierstrass_divide_via_preparation, weierstrass_prepare, Division, PreparedForm,
};

/// Exponent vector `α ∈ N^m`.
pub type Exponent = SmallVec<[u32; 4]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("series is not a unit: constant term is zero")]
    NotAUnit,
    #[error("series is not regular in X{}", var + 1)]
    NotRegular { var: usize },
    #[error("no shear τ_d with d <= {bound} regularizes the input at this truncation")]
    RegularizationFailed { bound: u32 },
    #[error("zero series")]
    ZeroSeries,
    #[error("substituted series {index} has a nonzero constant term")]
    NonInfinitesimalArgument { index: usize },
    #[error("constant term has no {k}-th root in the coefficient field")]
    NoConstantRoot { k: u32 },
    #[error("expected {expected} series, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("equation {index} does not vanish at the origin")]
    NotZeroAtOrigin { index: usize },
    #[error("Jacobian at the origin is singular")]
    SingularJacobian,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("malformed series: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug)]
pub struct FormalSeries<C: Field = Rational> {
    nvars: usize,
    order: u32,
    exact: bool,
    terms: Terms<C>,
}

impl<C: Field> PartialEq for FormalSeries<C> {
    /// Same ring and identical normalized term sets; the exactness flag is
    /// metadata and does not take part.
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.order == other.order && self.terms == other.terms
    }
}

/// Status of `f(0, …, 0, X_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular(u32),
    NotRegular,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub var: usize,
    pub status: Regularity,
}

impl RegularityReport {
    pub fn order(&self) -> Option<u32> {
        match self.status {
            Regularity::Regular(d) => Some(d),
            _ => None,
        }
    }
}

impl<C: Field> FormalSeries<C> {
    pub fn zero(nvars: usize, order: u32) -> Self {
        FormalSeries { nvars, order, exact: true, terms: Terms::new() }
    }

    pub fn constant(c: C, nvars: usize, order: u32) -> Self {
        let mut terms = Terms::new();
        accumulate(&mut terms, zero_exponent(nvars), c);
        FormalSeries { nvars, order, exact: true, terms }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(C::one(), nvars, order)
    }

    /// The variable `X_{i+1}`. Panics if `i >= nvars`.
    pub fn var(i: usize, nvars: usize, order: u32) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = zero_exponent(nvars);
        e[i] = 1;
        Self::from_terms(nvars, order, [(e, C::one())])
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeats.
    /// Terms above the order are dropped and the result is then flagged as
    /// truncated. Panics if an exponent has the wrong length.
    pub fn from_terms<E, I>(nvars: usize, order: u32, terms: I) -> Self
    where
        E: AsRef<[u32]>,
        I: IntoIterator<Item = (E, C)>,
    {
        let mut map = Terms::new();
        let mut exact = true;
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), nvars, "exponent length must equal the variable count");
            if degree(e) > order {
                if !c.is_zero() {
                    exact = false;
                }
                continue;
            }
            accumulate(&mut map, e.iter().copied().collect(), c);
        }
        FormalSeries { nvars, order, exact, terms: map }
    }

    pub(crate) fn from_map(nvars: usize, order: u32, exact: bool, terms: Terms<C>) -> Self {
        let before = terms.len();
        let terms: Terms<C> = terms.into_iter().filter(|(e, _)| degree(e) <= order).collect();
        let exact = exact && terms.len() == before;
        FormalSeries { nvars, order, exact, terms }
    }

    /// Marks the series as truncated (not known beyond its order).
    pub fn truncated(mut self) -> Self {
        self.exact = false;
        self
    }

    pub fn with_exactness(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, C> {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Terms<C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&zero_exponent(self.nvars))
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Largest total degree of a stored term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    /// Smallest total degree of a stored term (the `(X)`-adic order).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    /// Drops every term above `order` (only ever lowers the order).
    pub fn truncate(&self, order: u32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_map(self.nvars, order, self.exact, self.terms.clone())
    }

    /// Changes the working order. An exact polynomial can be moved to a
    /// higher order; a truncated series cannot, so its order is capped.
    pub fn with_order(&self, order: u32) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        if self.exact {
            let mut out = self.clone();
            out.order = order;
            out
        } else {
            self.clone()
        }
    }

    fn aligned(&self, rhs: &Self) -> Result<(Self, Self), SeriesError> {
        if self.nvars != rhs.nvars {
            return Err(SeriesError::VariableCountMismatch { left: self.nvars, right: rhs.nvars });
        }
        let order = self.order.min(rhs.order);
        Ok((self.truncate(order), rhs.truncate(order)))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let (a, b) = self.aligned(rhs)?;
        Ok(FormalSeries {
            nvars: a.nvars,
            order: a.order,
            exact: a.exact && b.exact,
            terms: graded::add(&a.terms, &b.terms),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let (a, b) = self.aligned(rhs)?;
        Ok(FormalSeries {
            nvars: a.nvars,
            order: a.order,
            exact: a.exact && b.exact,
            terms: graded::sub(&a.terms, &b.terms),
        })
    }

    /// Product truncated at the smaller of the two orders.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let (a, b) = self.aligned(rhs)?;
        let g = Grading::total(a.nvars, a.order as u64);
        let fits = a.total_degree().unwrap_or(0) + b.total_degree().unwrap_or(0) <= a.order;
        Ok(FormalSeries {
            nvars: a.nvars,
            order: a.order,
            exact: a.exact && b.exact && fits,
            terms: graded::mul(&a.terms, &b.terms, &g),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms =
            if c.is_zero() { Terms::new() } else { self.terms.iter().map(|(e, x)| (e.clone(), x.times(c))).collect() };
        FormalSeries { terms, ..self.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.order);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse modulo degree `D`, by back-substitution.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let g = Grading::total(self.nvars, self.order as u64);
        let one = Self::one(self.nvars, self.order);
        let terms = graded::div_unit(&one.terms, &self.terms, &g).ok_or(SeriesError::NotAUnit)?;
        let exact = self.exact && self.total_degree().unwrap_or(0) == 0;
        Ok(FormalSeries { nvars: self.nvars, order: self.order, exact, terms })
    }

    /// `self / den` for a unit `den`.
    pub fn checked_div(&self, den: &Self) -> Result<Self, SeriesError> {
        let (a, b) = self.aligned(den)?;
        let g = Grading::total(a.nvars, a.order as u64);
        let terms = graded::div_unit(&a.terms, &b.terms, &g).ok_or(SeriesError::NotAUnit)?;
        let exact = a.exact && b.exact && b.total_degree().unwrap_or(0) == 0;
        Ok(FormalSeries { nvars: a.nvars, order: a.order, exact, terms })
    }

    /// Value of the stored polynomial at a point of `k^m`.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point dimension must equal the variable count");
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, a) in point.iter().zip(e.iter()) {
                if *a > 0 {
                    t = t.times(&x.pow(*a));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Tests whether `f(0, …, 0, X_j)` is nonzero and of which order.
    /// Panics if `j >= nvars`.
    pub fn regularity(&self, j: usize) -> RegularityReport {
        assert!(j < self.nvars, "variable index {j} out of range for {} variables", self.nvars);
        let d = self.terms.keys().filter(|e| e.iter().enumerate().all(|(i, a)| i == j || *a == 0)).map(|e| e[j]).min();
        let status = match d {
            Some(d) => Regularity::Regular(d),
            None if self.exact => Regularity::NotRegular,
            None => Regularity::Undetermined,
        };
        RegularityReport { var: j, status }
    }

    /// Graded order: total degree ascending, then exponents in descending
    /// lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        v
    }

    /// `{"nvars":m,"order":D,"exact":bool,"terms":[[α…,"coeff"],…]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let mut row: Vec<Value> = e.iter().map(|a| json!(a)).collect();
                row.push(json!(c.to_string()));
                Value::Array(row)
            })
            .collect();
        json!({"nvars": self.nvars, "order": self.order, "exact": self.exact, "terms": terms})
    }
}

impl FormalSeries<Rational> {
    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Malformed(m.to_string());
        let nvars = v["nvars"].as_u64().ok_or_else(|| bad("missing nvars"))? as usize;
        let order = v["order"].as_u64().ok_or_else(|| bad("missing order"))? as u32;
        let exact = v["exact"].as_bool().unwrap_or(true);
        let rows = v["terms"].as_array().ok_or_else(|| bad("missing terms"))?;
        let mut terms = Vec::new();
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("term is not an array"))?;
            if row.len() != nvars + 1 {
                return Err(bad("term has the wrong length"));
            }
            let e: Vec<u32> = row[..nvars]
                .iter()
                .map(|x| x.as_u64().map(|a| a as u32).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<_, _>>()?;
            let c: Rational = row[nvars].as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad coefficient"))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(nvars, order, terms).with_exactness(exact))
    }
}

pub(crate) fn fmt_monomial(e: &[u32], names: impl Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(names(i)),
            _ => parts.push(format!("{}^{}", names(i), a)),
        }
    }
    parts.join("*")
}

/// Writes `c1*m1 + c2*m2 - …` given already rendered monomials ("" for 1).
pub(crate) fn fmt_sum(f: &mut fmt::Formatter<'_>, terms: impl IntoIterator<Item = (String, String)>) -> fmt::Result {
    let mut first = true;
    for (coeff, mono) in terms {
        let (neg, abs) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff),
        };
        let abs = if abs.contains(' ') { format!("({abs})") } else { abs };
        let body = match (abs.as_str(), mono.is_empty()) {
            (_, true) => abs.clone(),
            ("1", false) => mono,
            (_, false) => format!("{abs}*{mono}"),
        };
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Field> fmt::Display for FormalSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered =
            self.sorted_terms().into_iter().map(|(e, c)| (c.to_string(), fmt_monomial(e, |i| format!("X{}", i + 1))));
        fmt_sum(f, rendered)
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Field> $trait<&FormalSeries<C>> for &FormalSeries<C> {
            type Output = FormalSeries<C>;
            /// Panics on a variable count mismatch.
            fn $method(self, rhs: &FormalSeries<C>) -> FormalSeries<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Field> $trait<FormalSeries<C>> for FormalSeries<C> {
            type Output = FormalSeries<C>;
            fn $method(self, rhs: FormalSeries<C>) -> FormalSeries<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

impl<C: Field> Neg for &FormalSeries<C> {
    type Output = FormalSeries<C>;
    fn neg(self) -> FormalSeries<C> {
        self.scale(&C::one().negate())
    }
}

impl<C: Field> Neg for FormalSeries<C> {
    type Output = FormalSeries<C>;
    fn neg(self) -> FormalSeries<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, ratio};

    type S = FormalSeries<Rational>;

    fn x(i: usize, m: usize, d: u32) -> S {
        S::var(i, m, d)
    }

    fn c(n: i64, m: usize, d: u32) -> S {
        S::constant(rat(n), m, d)
    }

    #[test]
    fn arithmetic_examples() {
        let x1 = x(0, 2, 5);
        let x2 = x(1, 2, 5);
        let one = c(1, 2, 5);
        assert_eq!(&(&one + &x1) * &(&one - &x1), &one - &(&x1 * &x1));
        assert_eq!(&x1 + &S::zero(2, 5), x1);
        let s = &x1 + &x2;
        assert_eq!((&s * &s).to_string(), "X1^2 + 2*X1*X2 + X2^2");
    }

    #[test]
    fn mismatch_is_reported() {
        let a = x(0, 1, 3);
        let b = x(0, 2, 3);
        assert_eq!(a.checked_add(&b), Err(SeriesError::VariableCountMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(c(2, 1, 3).invert().unwrap(), S::constant(ratio(1, 2), 1, 3));
        let g = &c(1, 1, 3) - &x(0, 1, 3);
        assert_eq!(g.invert().unwrap().to_string(), "1 + X1 + X1^2 + X1^3");
        let h = &(&c(1, 2, 2) + &x(0, 2, 2)) + &x(1, 2, 2);
        let inv = h.invert().unwrap();
        assert_eq!(inv.to_string(), "1 - X1 - X2 + X1^2 + 2*X1*X2 + X2^2");
        assert_eq!(&inv * &h, c(1, 2, 2));
        assert_eq!(x(0, 1, 3).invert(), Err(SeriesError::NotAUnit));
    }

    #[test]
    fn regularity_examples() {
        let x1 = x(0, 2, 6);
        let x2 = x(1, 2, 6);
        let f = &(&x1 * &x2) + &x2.pow(3);
        assert_eq!(f.regularity(1).status, Regularity::Regular(3));
        assert_eq!(x1.regularity(1).status, Regularity::NotRegular);
        assert_eq!(x1.clone().truncated().regularity(1).status, Regularity::Undetermined);
        let g = &c(3, 2, 6) + &x2;
        assert_eq!(g.regularity(1).status, Regularity::Regular(0));
    }

    #[test]
    fn exactness_tracking() {
        let x1 = x(0, 1, 3);
        assert!((&x1 * &x1).is_exact());
        assert!(!x1.pow(4).is_exact());
        assert!(!S::from_terms(1, 2, [(vec![3], rat(1))]).is_exact());
    }

    #[test]
    fn display_and_json() {
        let f = S::from_terms(2, 4, [(vec![0, 0], rat(1)), (vec![2, 0], rat(-1)), (vec![1, 1], rat(2))]);
        assert_eq!(f.to_string(), "1 - X1^2 + 2*X1*X2");
        assert_eq!(S::zero(2, 3).to_string(), "0");
        let back = S::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let half = S::from_terms(1, 2, [(vec![1], ratio(-1, 2))]);
        assert_eq!(half.to_string(), "-1/2*X1");
    }

    #[test]
    fn regularity_is_additive_under_products() {
        let x1 = x(0, 2, 8);
        let x2 = x(1, 2, 8);
        let f1 = &x2.pow(2) + &x1;
        let f2 = &(&x2 * &c(2, 2, 8)) + &(&x1 * &x2);
        let p = &f1 * &f2;
        assert_eq!(p.regularity(1).status, Regularity::Regular(3));
    }
}

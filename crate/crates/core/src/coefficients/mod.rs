//! Ground fields: exact rationals, finite-precision p-adic numbers and the
//! p-adic Kochen operator.

mod gamma;
mod padic;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use gamma::{kochen_gamma_rational, wp_rational, KochenOperand};
pub use padic::{PAdic, PAdicError, PAdicValue};

/// Exact arbitrary-precision rational number. The numerator and denominator
/// are kept coprime with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A value of an ordered group extended by a top element `+∞`.
///
/// The variant order makes `Infinity` compare strictly above every finite
/// value, which is the `v(0) = ∞` convention.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Extended<T> {
    Finite(T),
    Infinity,
}

impl<T> Extended<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinity => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Extended<U> {
        match self {
            Extended::Finite(v) => Extended::Finite(f(v)),
            Extended::Infinity => Extended::Infinity,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// A characteristic-zero coefficient field for [`crate::FormalSeries`].
///
/// Methods take references so that big-number implementations avoid
/// needless clones.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Some `k`-th root inside the field, if one exists.
    fn kth_root(&self, k: u32) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn kth_root(&self, k: u32) -> Option<Self> {
        rational_kth_root(self, k)
    }
}

/// Builds the rational `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`; panics on `d = 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent of the prime `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q)` for a rational `q`, with `v_p(0) = ∞`.
pub fn rational_valuation(q: &Rational, p: u64) -> Extended<i64> {
    if Zero::is_zero(q) {
        return Extended::Infinity;
    }
    Extended::Finite(int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64)
}

/// Exact `k`-th root of a rational, if it is a perfect `k`-th power.
pub fn rational_kth_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if k == 1 || Zero::is_zero(q) {
        return Some(q.clone());
    }
    if q.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(k);
        if num_traits::pow(r.clone(), k as usize) == *n {
            Some(r)
        } else {
            None
        }
    };
    let num = root_int(q.numer())?;
    let den = root_int(q.denom())?;
    Some(Rational::new(num, den))
}

/// `p^e` as a big integer.
pub fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    debug_assert!(r.sign() != Sign::Minus);
    r
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = modulo(a, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(modulo(&e.x, m))
    } else {
        None
    }
}

/// Deterministic trial-division primality test for the small primes used as
/// residue characteristics.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Converts a rational to `f64` for display or real sampling.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_rationals() {
        assert_eq!(rational_valuation(&ratio(2, 35), 3), Extended::Finite(0));
        assert_eq!(rational_valuation(&ratio(9, 5), 3), Extended::Finite(2));
        assert_eq!(rational_valuation(&ratio(1, 12), 2), Extended::Finite(-2));
        assert_eq!(rational_valuation(&rat(0), 7), Extended::Infinity);
    }

    #[test]
    fn kth_roots_of_rationals() {
        assert_eq!(rational_kth_root(&ratio(4, 9), 2), Some(ratio(2, 3)));
        assert_eq!(rational_kth_root(&rat(-8), 3), Some(rat(-2)));
        assert_eq!(rational_kth_root(&rat(-4), 2), None);
        assert_eq!(rational_kth_root(&rat(2), 2), None);
    }

    #[test]
    fn infinity_is_top() {
        assert!(Extended::Finite(i64::MAX) < Extended::Infinity);
        assert!(Extended::Finite(ratio(-1, 2)) < Extended::Finite(rat(0)));
    }

    #[test]
    fn inverse_mod_35_over_81() {
        // 35 * 44 = 1540 = 19 * 81 + 1
        assert_eq!(mod_inverse(&BigInt::from(35), &BigInt::from(81)), Some(BigInt::from(44)));
        assert_eq!(mod_inverse(&BigInt::from(3), &BigInt::from(81)), None);
    }
}

//! Finite-precision p-adic numbers.
//!
//! A nonzero value is stored as `p^v * u` where the unit `u` is known modulo
//! `p^N` (the relative precision `N`). Zero is a distinguished exact value.
//! When an addition cancels every known digit the result is that exact zero:
//! the residues agreed identically, and no smaller ball is representable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{big_pow, int_valuation, is_prime, mod_inverse, modulo, Extended, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PAdicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: every known digit cancelled")]
    PrecisionExhausted,
    #[error("no {k}-th root exists")]
    NoRoot { k: u32 },
    #[error("branch {hint} is not a simple {k}-th root modulo {p}")]
    BadBranch { hint: u64, k: u32, p: u64 },
    #[error("operands live over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PAdicValue {
    ExactZero,
    /// `p^valuation * unit` with `0 < unit < p^N` and `p ∤ unit`.
    Unit {
        valuation: i64,
        unit: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdic {
    p: u64,
    prec: u32,
    value: PAdicValue,
}

impl PAdic {
    fn check_params(p: u64, prec: u32) {
        assert!(is_prime(p), "p-adic prime must be prime, got {p}");
        assert!(prec >= 1, "p-adic precision must be at least 1");
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        Self::check_params(p, prec);
        PAdic { p, prec, value: PAdicValue::ExactZero }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::from_integer(&BigInt::one(), p, prec)
    }

    pub fn from_i64(n: i64, p: u64, prec: u32) -> Self {
        Self::from_integer(&BigInt::from(n), p, prec)
    }

    pub fn from_integer(n: &BigInt, p: u64, prec: u32) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()), p, prec)
    }

    /// The canonical embedding `Q -> Q_p`. Powers of `p` move into the
    /// valuation; the rest of the denominator is inverted modulo `p^N`.
    pub fn from_rational(q: &Rational, p: u64, prec: u32) -> Self {
        Self::check_params(p, prec);
        if q.is_zero() {
            return Self::zero(p, prec);
        }
        let pb = BigInt::from(p);
        let vn = int_valuation(q.numer(), p);
        let vd = int_valuation(q.denom(), p);
        let num = q.numer() / num_traits::pow(pb.clone(), vn as usize);
        let den = q.denom() / num_traits::pow(pb, vd as usize);
        let m = big_pow(p, prec);
        let inv = mod_inverse(&den, &m).expect("denominator is coprime to p");
        let unit = modulo(&(num * inv), &m);
        PAdic { p, prec, value: PAdicValue::Unit { valuation: vn as i64 - vd as i64, unit } }
    }

    /// Builds `p^valuation * unit`, reducing `unit` modulo `p^prec`.
    /// Panics if `unit` is divisible by `p`.
    pub fn from_parts(p: u64, prec: u32, valuation: i64, unit: &BigInt) -> Self {
        Self::check_params(p, prec);
        let m = big_pow(p, prec);
        let unit = modulo(unit, &m);
        assert!(!unit.is_multiple_of(&BigInt::from(p)), "unit part must be coprime to p");
        PAdic { p, prec, value: PAdicValue::Unit { valuation, unit } }
    }

    /// Normalises `p^shift * n` where `n` is known modulo `p^width`.
    /// Returns exact zero when `n` vanishes at that precision.
    pub(crate) fn from_residue(p: u64, shift: i64, n: &BigInt, width: u32) -> Self {
        let m = big_pow(p, width);
        let n = modulo(n, &m);
        if n.is_zero() {
            return PAdic { p, prec: width.max(1), value: PAdicValue::ExactZero };
        }
        let c = int_valuation(&n, p);
        let unit = n / big_pow(p, c);
        PAdic { p, prec: width - c, value: PAdicValue::Unit { valuation: shift + c as i64, unit } }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Relative precision `N`: the unit is known modulo `p^N`.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn value(&self) -> &PAdicValue {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.value, PAdicValue::ExactZero)
    }

    pub fn valuation(&self) -> Extended<i64> {
        match &self.value {
            PAdicValue::ExactZero => Extended::Infinity,
            PAdicValue::Unit { valuation, .. } => Extended::Finite(*valuation),
        }
    }

    pub fn unit(&self) -> Option<&BigInt> {
        match &self.value {
            PAdicValue::ExactZero => None,
            PAdicValue::Unit { unit, .. } => Some(unit),
        }
    }

    /// Absolute precision `v + N`; `None` for exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.value {
            PAdicValue::ExactZero => None,
            PAdicValue::Unit { valuation, .. } => Some(valuation + self.prec as i64),
        }
    }

    /// `|self|_p <= 1`.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Extended::Finite(0)
    }

    /// The rational `p^v * u` with `0 < u < p^N`.
    pub fn to_rational(&self) -> Rational {
        match &self.value {
            PAdicValue::ExactZero => Rational::zero(),
            PAdicValue::Unit { valuation, unit } => {
                let pv = big_pow(self.p, valuation.unsigned_abs() as u32);
                let u = Rational::from_integer(unit.clone());
                if *valuation >= 0 {
                    u * Rational::from_integer(pv)
                } else {
                    u / Rational::from_integer(pv)
                }
            }
        }
    }

    /// Integer representative modulo `p^width` of an integral element.
    pub fn residue(&self, width: u32) -> Option<BigInt> {
        match &self.value {
            PAdicValue::ExactZero => Some(BigInt::zero()),
            PAdicValue::Unit { valuation, unit } => {
                if *valuation < 0 {
                    return None;
                }
                let m = big_pow(self.p, width);
                Some(modulo(&(unit * big_pow(self.p, *valuation as u32)), &m))
            }
        }
    }

    fn same_prime(&self, rhs: &PAdic) -> Result<(), PAdicError> {
        if self.p == rhs.p {
            Ok(())
        } else {
            Err(PAdicError::PrimeMismatch(self.p, rhs.p))
        }
    }

    pub fn checked_add(&self, rhs: &PAdic) -> Result<PAdic, PAdicError> {
        self.same_prime(rhs)?;
        let p = self.p;
        let (va, ua, vb, ub) = match (&self.value, &rhs.value) {
            (PAdicValue::ExactZero, _) => return Ok(rhs.clone()),
            (_, PAdicValue::ExactZero) => return Ok(self.clone()),
            (PAdicValue::Unit { valuation: va, unit: ua }, PAdicValue::Unit { valuation: vb, unit: ub }) => {
                (*va, ua, *vb, ub)
            }
        };
        let v = va.min(vb);
        let abs = (va + self.prec as i64).min(vb + rhs.prec as i64);
        let width = (abs - v) as u32;
        let s = ua * big_pow(p, (va - v) as u32) + ub * big_pow(p, (vb - v) as u32);
        let out = Self::from_residue(p, v, &s, width);
        if out.is_zero() {
            return Ok(PAdic { p, prec: self.prec.min(rhs.prec), value: PAdicValue::ExactZero });
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &PAdic) -> Result<PAdic, PAdicError> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &PAdic) -> Result<PAdic, PAdicError> {
        self.same_prime(rhs)?;
        let prec = self.prec.min(rhs.prec);
        match (&self.value, &rhs.value) {
            (PAdicValue::Unit { valuation: va, unit: ua }, PAdicValue::Unit { valuation: vb, unit: ub }) => {
                let m = big_pow(self.p, prec);
                Ok(PAdic {
                    p: self.p,
                    prec,
                    value: PAdicValue::Unit { valuation: va + vb, unit: modulo(&(ua * ub), &m) },
                })
            }
            _ => Ok(PAdic { p: self.p, prec, value: PAdicValue::ExactZero }),
        }
    }

    pub fn inverse(&self) -> Result<PAdic, PAdicError> {
        match &self.value {
            PAdicValue::ExactZero => Err(PAdicError::DivisionByZero),
            PAdicValue::Unit { valuation, unit } => {
                let m = big_pow(self.p, self.prec);
                let inv = mod_inverse(unit, &m).expect("unit residues are invertible");
                Ok(PAdic { p: self.p, prec: self.prec, value: PAdicValue::Unit { valuation: -valuation, unit: inv } })
            }
        }
    }

    pub fn checked_div(&self, rhs: &PAdic) -> Result<PAdic, PAdicError> {
        self.same_prime(rhs)?;
        let inv = rhs.inverse()?;
        self.checked_mul(&inv)
    }

    fn neg_ref(&self) -> PAdic {
        match &self.value {
            PAdicValue::ExactZero => self.clone(),
            PAdicValue::Unit { valuation, unit } => {
                let m = big_pow(self.p, self.prec);
                PAdic { p: self.p, prec: self.prec, value: PAdicValue::Unit { valuation: *valuation, unit: m - unit } }
            }
        }
    }

    pub fn pow(&self, k: u32) -> PAdic {
        let mut acc = PAdic::one(self.p, self.prec);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lifts a `k`-th root of `self` by Newton iteration on the unit part.
    ///
    /// `branch` selects the residue class of the root modulo `p`; without a
    /// hint the root `≡ 1 (mod p)` is used for 1-units and otherwise the
    /// smallest residue root.
    pub fn kth_root(&self, k: u32, branch: Option<u64>) -> Result<PAdic, PAdicError> {
        assert!(k >= 1, "root index must be positive");
        let (valuation, unit) = match &self.value {
            PAdicValue::ExactZero => return Ok(self.clone()),
            PAdicValue::Unit { valuation, unit } => (*valuation, unit),
        };
        if valuation.rem_euclid(k as i64) != 0 {
            return Err(PAdicError::NoRoot { k });
        }
        let p = self.p;
        let pb = BigInt::from(p);
        let kb = BigInt::from(k);
        let u_mod_p = modulo(unit, &pb);
        let roots_mod_p: Vec<u64> =
            (1..p).filter(|x| modulo(&num_traits::pow(BigInt::from(*x), k as usize), &pb) == u_mod_p).collect();
        if roots_mod_p.is_empty() {
            return Err(PAdicError::NoRoot { k });
        }
        let start = match branch {
            Some(h) => {
                let h = h % p;
                if !roots_mod_p.contains(&h) {
                    return Err(PAdicError::BadBranch { hint: h, k, p });
                }
                h
            }
            None if roots_mod_p.contains(&1) => 1,
            None => roots_mod_p[0],
        };
        if (k as u64).is_multiple_of(p) {
            // f'(x) = k x^{k-1} vanishes mod p: no simple root to lift.
            return Err(PAdicError::BadBranch { hint: start, k, p });
        }
        let m = big_pow(p, self.prec);
        let mut x = BigInt::from(start);
        for _ in 0..(2 * self.prec + 2) {
            let xk = modulo(&num_traits::pow(x.clone(), k as usize), &m);
            if xk == modulo(unit, &m) {
                break;
            }
            let deriv = &kb * num_traits::pow(x.clone(), k as usize - 1);
            let inv = mod_inverse(&deriv, &m).expect("simple root has unit derivative");
            x = modulo(&(&x - (xk - unit) * inv), &m);
        }
        Ok(PAdic { p, prec: self.prec, value: PAdicValue::Unit { valuation: valuation / k as i64, unit: x } })
    }

    /// Compares `self ⪯_p rhs`, i.e. `v_p(self) >= v_p(rhs)`.
    pub fn dominated_by(&self, rhs: &PAdic) -> bool {
        self.valuation() >= rhs.valuation()
    }
}

impl fmt::Display for PAdic {
    /// `p^v * u (mod p^N)`, or `0` for exact zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            PAdicValue::ExactZero => f.write_str("0"),
            PAdicValue::Unit { valuation, unit } => {
                write!(f, "{}^{} * {} (mod {}^{})", self.p, valuation, unit, self.p, self.prec)
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&PAdic> for &PAdic {
            type Output = PAdic;
            /// Panics when the operands live over different primes.
            fn $method(self, rhs: &PAdic) -> PAdic {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<PAdic> for PAdic {
            type Output = PAdic;
            fn $method(self, rhs: PAdic) -> PAdic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        self.neg_ref()
    }
}

impl Neg for PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        self.neg_ref()
    }
}

impl PAdic {
    /// Sign-aware convenience used by tests and the CLI: the least absolute
    /// integer congruent to the unit.
    pub fn balanced_unit(&self) -> Option<BigInt> {
        let u = self.unit()?;
        let m = big_pow(self.p, self.prec);
        let half = &m / 2;
        Some(if u > &half { u - &m } else { u.clone() })
    }
}

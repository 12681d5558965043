//! Restricted power series over `Z_p`, stored exactly modulo `p^N`.
//!
//! Since `Z_p<X> / p^N = (Z/p^N)[X]`, an element is a finite polynomial.
//! A [`TateElement`] is `p^s · F` where `F` has coefficients in `Z/p^N`
//! and at least one unit coefficient, so the Gauss norm is `|p^s|` and the
//! reduction `F mod p` is never zero. `N` is a relative precision and drops
//! when an addition cancels leading digits, as for [`PAdic`].

mod division;
mod laurent;
mod roots;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coefficients::{big_pow, int_valuation, is_prime, mod_inverse, modulo, Extended, PAdic, Rational};
use crate::powerseries::graded::{degree, exp_add, zero_exponent};
use crate::powerseries::{fmt_monomial, fmt_sum, Exponent, FormalSeries};

pub use division::{tate_divide, tate_prepare, TateDivision, TatePrepared};
pub use laurent::{max_principle_probe, LaurentPoly, ProbeOutcome};
pub use roots::tate_kth_root;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error("operands disagree on {what}: {left} vs {right}")]
    Mismatch { what: &'static str, left: u64, right: u64 },
    #[error("input is zero modulo p^N")]
    ZeroInput,
    #[error("reduction is not monic in X{}", var + 1)]
    NotRegular { var: usize },
    #[error("reduction has total degree {degree} >= shear parameter {d}")]
    DegreeTooHigh { degree: u32, d: u32 },
    #[error("coordinate {index} has negative valuation")]
    OutOfDomain { index: usize },
    #[error("precision exhausted: value vanishes modulo p^N")]
    PrecisionExhausted,
    #[error("root index {k} is divisible by p = {p}")]
    RamifiedIndex { k: u32, p: u64 },
    #[error("input is not a k-th power times a 1-unit")]
    NotAOneUnitTimesPower,
    #[error("probe budget {budget} is below the {needed} points that may be needed")]
    BudgetExhausted { budget: u64, needed: u64 },
}

pub(crate) type ZTerms = BTreeMap<Exponent, BigInt>;

#[derive(Clone, Debug)]
pub struct TateElement {
    nvars: usize,
    p: u64,
    prec: u32,
    scale: i64,
    terms: ZTerms,
}

impl PartialEq for TateElement {
    /// Equality of values at the precision both sides share.
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.nvars != other.nvars {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return true,
            (false, false) => {}
            _ => return false,
        }
        if self.scale != other.scale {
            return false;
        }
        let m = big_pow(self.p, self.prec.min(other.prec));
        zt_reduce(&self.terms, &m) == zt_reduce(&other.terms, &m)
    }
}

/// Result of the restricted regularity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TateRegularity {
    pub degree: u32,
    /// Exponent `e` of the normalizer `p^e` that makes the element norm 1.
    pub normalizer: i64,
}

pub(crate) fn zt_accumulate(t: &mut ZTerms, e: Exponent, c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn zt_reduce(t: &ZTerms, m: &BigInt) -> ZTerms {
    t.iter().map(|(e, c)| (e.clone(), modulo(c, m))).filter(|(_, c)| !c.is_zero()).collect()
}

pub(crate) fn zt_add(a: &ZTerms, b: &ZTerms, m: &BigInt) -> ZTerms {
    let mut out = a.clone();
    for (e, c) in b {
        zt_accumulate(&mut out, e.clone(), c.clone());
    }
    zt_reduce(&out, m)
}

pub(crate) fn zt_sub(a: &ZTerms, b: &ZTerms, m: &BigInt) -> ZTerms {
    let mut out = a.clone();
    for (e, c) in b {
        zt_accumulate(&mut out, e.clone(), -c);
    }
    zt_reduce(&out, m)
}

pub(crate) fn zt_mul(a: &ZTerms, b: &ZTerms, m: &BigInt) -> ZTerms {
    let mut out = ZTerms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            zt_accumulate(&mut out, exp_add(ea, eb), ca * cb);
        }
    }
    zt_reduce(&out, m)
}

pub(crate) fn zt_scale(a: &ZTerms, c: &BigInt, m: &BigInt) -> ZTerms {
    zt_reduce(&a.iter().map(|(e, x)| (e.clone(), x * c)).collect(), m)
}

pub(crate) fn zt_one(nvars: usize) -> ZTerms {
    let mut t = ZTerms::new();
    t.insert(zero_exponent(nvars), BigInt::one());
    t
}

/// Inverse modulo `p^width` of a polynomial whose reduction mod `p` is a
/// nonzero constant: `c^{-1} Σ (-c^{-1} p H)^j`, a finite sum.
pub(crate) fn zt_unit_inverse(a: &ZTerms, nvars: usize, p: u64, width: u32) -> Option<ZTerms> {
    let m = big_pow(p, width);
    let pb = BigInt::from(p);
    let z = zero_exponent(nvars);
    let c0 = a.get(&z)?;
    if c0.is_multiple_of(&pb) || a.iter().any(|(e, c)| *e != z && !c.is_multiple_of(&pb)) {
        return None;
    }
    let cinv = mod_inverse(c0, &m)?;
    // a = c0 (1 + t) with t ≡ 0 mod p
    let mut t = zt_scale(a, &cinv, &m);
    zt_accumulate(&mut t, z, -BigInt::one());
    let t = zt_reduce(&t, &m);
    let neg_t = zt_scale(&t, &BigInt::from(-1), &m);
    let mut acc = zt_one(nvars);
    let mut power = zt_one(nvars);
    for _ in 0..width {
        power = zt_mul(&power, &neg_t, &m);
        if power.is_empty() {
            break;
        }
        acc = zt_add(&acc, &power, &m);
    }
    Some(zt_scale(&acc, &cinv, &m))
}

impl TateElement {
    fn check(p: u64, prec: u32) {
        assert!(is_prime(p), "p must be prime, got {p}");
        assert!(prec >= 1, "precision must be at least 1");
    }

    pub fn zero(nvars: usize, p: u64, prec: u32) -> Self {
        Self::check(p, prec);
        TateElement { nvars, p, prec, scale: 0, terms: ZTerms::new() }
    }

    /// Normalizes `p^shift · raw` where `raw` is known modulo `p^width`.
    pub(crate) fn normalize(nvars: usize, p: u64, width: u32, shift: i64, raw: &ZTerms) -> Self {
        let m = big_pow(p, width);
        let t = zt_reduce(raw, &m);
        if t.is_empty() {
            return TateElement { nvars, p, prec: width.max(1), scale: 0, terms: t };
        }
        let c = t.values().map(|x| int_valuation(x, p)).min().unwrap();
        let pc = big_pow(p, c);
        let terms = t.into_iter().map(|(e, x)| (e, x / &pc)).collect();
        TateElement { nvars, p, prec: width - c, scale: shift + c as i64, terms }
    }

    /// Builds an element from rational coefficients with `p`-adic image in
    /// `Q_p`. Terms with repeated exponents are summed.
    pub fn from_rational_terms<E, I>(nvars: usize, p: u64, prec: u32, terms: I) -> Self
    where
        E: AsRef<[u32]>,
        I: IntoIterator<Item = (E, Rational)>,
    {
        Self::check(p, prec);
        let mut sum: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), nvars, "exponent length must equal the variable count");
            *sum.entry(e.iter().copied().collect()).or_insert_with(Rational::zero) += c;
        }
        sum.retain(|_, c| !c.is_zero());
        let Some(v) =
            sum.values().map(|c| int_valuation(c.numer(), p) as i64 - int_valuation(c.denom(), p) as i64).min()
        else {
            return Self::zero(nvars, p, prec);
        };
        let m = big_pow(p, prec);
        let mut raw = ZTerms::new();
        for (e, c) in sum {
            let x = PAdic::from_rational(&c, p, prec);
            let (vx, ux) = match x.value() {
                crate::coefficients::PAdicValue::Unit { valuation, unit } => (*valuation, unit.clone()),
                _ => unreachable!(),
            };
            let shift = (vx - v) as u32;
            if shift < prec {
                raw.insert(e, modulo(&(ux * big_pow(p, shift)), &m));
            }
        }
        Self::normalize(nvars, p, prec, v, &raw)
    }

    pub fn from_series(f: &FormalSeries<Rational>, p: u64, prec: u32) -> Self {
        Self::from_rational_terms(f.nvars(), p, prec, f.terms().iter().map(|(e, c)| (e.to_vec(), c.clone())))
    }

    pub fn constant(c: &Rational, nvars: usize, p: u64, prec: u32) -> Self {
        Self::from_rational_terms(nvars, p, prec, [(vec![0; nvars], c.clone())])
    }

    pub fn one(nvars: usize, p: u64, prec: u32) -> Self {
        Self::constant(&Rational::one(), nvars, p, prec)
    }

    pub fn var(i: usize, nvars: usize, p: u64, prec: u32) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_rational_terms(nvars, p, prec, [(e, Rational::one())])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Coefficients of the integral part, residues modulo `p^N`.
    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `v_p` of the Gauss norm `max |f_α|`; `Infinity` for zero.
    pub fn gauss_norm(&self) -> Extended<i64> {
        if self.is_zero() {
            Extended::Infinity
        } else {
            Extended::Finite(self.scale)
        }
    }

    /// `F mod p`, the reduction of the norm-1 normalization.
    pub fn reduction(&self) -> BTreeMap<Exponent, u64> {
        let pb = BigInt::from(self.p);
        self.terms
            .iter()
            .filter_map(|(e, c)| {
                let r = modulo(c, &pb);
                (!r.is_zero()).then(|| (e.clone(), r.try_into().unwrap()))
            })
            .collect()
    }

    pub fn reduction_degree(&self) -> Option<u32> {
        self.reduction().keys().map(|e| degree(e)).max()
    }

    /// The coefficient of `X^α` as a p-adic number.
    pub fn coeff(&self, e: &[u32]) -> PAdic {
        match self.terms.get(e) {
            None => PAdic::zero(self.p, self.prec),
            Some(c) => PAdic::from_residue(self.p, self.scale, c, self.prec),
        }
    }

    pub fn to_rational_terms(&self) -> Vec<(Exponent, Rational)> {
        self.terms.keys().map(|e| (e.clone(), self.coeff(e).to_rational())).collect()
    }

    fn same_ring(&self, rhs: &Self) -> Result<(), TateError> {
        if self.p != rhs.p {
            return Err(TateError::Mismatch { what: "prime", left: self.p, right: rhs.p });
        }
        if self.nvars != rhs.nvars {
            return Err(TateError::Mismatch {
                what: "variable count",
                left: self.nvars as u64,
                right: rhs.nvars as u64,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, TateError> {
        self.same_ring(rhs)?;
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        let s = self.scale.min(rhs.scale);
        let abs = (self.scale + self.prec as i64).min(rhs.scale + rhs.prec as i64);
        let width = (abs - s) as u32;
        let lift = |x: &Self| -> ZTerms {
            let k = big_pow(self.p, (x.scale - s) as u32);
            x.terms.iter().map(|(e, c)| (e.clone(), c * &k)).collect()
        };
        let m = big_pow(self.p, width);
        let raw = zt_add(&lift(self), &lift(rhs), &m);
        let out = Self::normalize(self.nvars, self.p, width, s, &raw);
        if out.is_zero() {
            return Ok(Self::zero(self.nvars, self.p, self.prec.min(rhs.prec)));
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, TateError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, TateError> {
        self.same_ring(rhs)?;
        let width = self.prec.min(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.nvars, self.p, width));
        }
        let m = big_pow(self.p, width);
        let raw = zt_mul(&self.terms, &rhs.terms, &m);
        Ok(Self::normalize(self.nvars, self.p, width, self.scale + rhs.scale, &raw))
    }

    /// Multiplies by the scalar `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.scale += k;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.p, self.prec);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Reduction mod `p` monic in `X_j`: a single top term `c·X_j^d`
    /// with `c` a nonzero constant.
    pub fn tate_regularity(&self, j: usize) -> Result<TateRegularity, TateError> {
        assert!(j < self.nvars, "variable index {j} out of range for {} variables", self.nvars);
        if self.is_zero() {
            return Err(TateError::ZeroInput);
        }
        let red = self.reduction();
        let d = red.keys().map(|e| e[j]).max().unwrap();
        let top: Vec<&Exponent> = red.keys().filter(|e| e[j] == d).collect();
        let monic = top.len() == 1 && top[0].iter().enumerate().all(|(i, a)| i == j || *a == 0);
        if !monic {
            return Err(TateError::NotRegular { var: j });
        }
        Ok(TateRegularity { degree: d, normalizer: -self.scale })
    }

    /// `f ∈ R<X>^×`: norm 1 and the reduction a nonzero constant.
    pub fn is_unit(&self) -> bool {
        let red = self.reduction();
        self.scale == 0 && red.len() == 1 && red.keys().next().unwrap().iter().all(|a| *a == 0)
    }

    /// The automorphism `X_i ↦ X_i ± X_m^{d^{m-i}}`, applied exactly.
    pub fn shear(&self, d: u32, direction: crate::powerseries::Direction) -> Self {
        let m = self.nvars;
        if m == 0 || self.is_zero() {
            return self.clone();
        }
        let modulus = big_pow(self.p, self.prec);
        let sign = match direction {
            crate::powerseries::Direction::Forward => BigInt::one(),
            crate::powerseries::Direction::Inverse => -BigInt::one(),
        };
        let images: Vec<ZTerms> = (0..m)
            .map(|i| {
                let mut t = ZTerms::new();
                let mut e = zero_exponent(m);
                e[i] = 1;
                t.insert(e, BigInt::one());
                if i + 1 < m {
                    let mut e = zero_exponent(m);
                    e[m - 1] = d.checked_pow((m - 1 - i) as u32).expect("shear exponent overflows u32");
                    zt_accumulate(&mut t, e, sign.clone());
                }
                t
            })
            .collect();
        let mut out = ZTerms::new();
        for (alpha, c) in &self.terms {
            let mut prod = zt_one(m);
            prod.values_mut().for_each(|x| *x = c.clone());
            for (i, a) in alpha.iter().enumerate() {
                for _ in 0..*a {
                    prod = zt_mul(&prod, &images[i], &modulus);
                }
            }
            for (e, x) in prod {
                zt_accumulate(&mut out, e, x);
            }
        }
        Self::normalize(m, self.p, self.prec, self.scale, &out)
    }

    /// `f(a)` for a point of `Z_p^m`.
    pub fn eval(&self, point: &[PAdic]) -> Result<PAdic, TateError> {
        assert_eq!(point.len(), self.nvars, "point dimension must equal the variable count");
        let mut width = self.prec;
        for (i, a) in point.iter().enumerate() {
            if a.prime() != self.p {
                return Err(TateError::Mismatch { what: "prime", left: self.p, right: a.prime() });
            }
            if !a.is_integral() {
                return Err(TateError::OutOfDomain { index: i });
            }
            if let Some(abs) = a.absolute_precision() {
                width = width.min(abs as u32);
            }
        }
        if self.is_zero() {
            return Ok(PAdic::zero(self.p, self.prec));
        }
        let m = big_pow(self.p, width);
        let xs: Vec<BigInt> = point.iter().map(|a| a.residue(width).unwrap()).collect();
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in xs.iter().zip(e.iter()) {
                if *k > 0 {
                    t = (t * x.modpow(&BigInt::from(*k), &m)) % &m;
                }
            }
            acc = (acc + t) % &m;
        }
        let out = PAdic::from_residue(self.p, self.scale, &acc, width);
        if out.is_zero() {
            return Err(TateError::PrecisionExhausted);
        }
        Ok(out)
    }

    /// `{"nvars":m,"p":p,"prec":N,"scale":s,"terms":[[α…,"residue"],…]}`.
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
        json!({"nvars": self.nvars, "p": self.p, "prec": self.prec, "scale": self.scale, "terms": terms})
    }

    fn sorted_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        v
    }
}

/// Checked shear for restricted series: requires the
/// reduction to have total degree `< d` and returns `τ_d(f)`, which is then
/// regular in the last variable of degree `< d^m`.
pub fn tate_shear(f: &TateElement, d: u32) -> Result<TateElement, TateError> {
    let deg = f.reduction_degree().ok_or(TateError::ZeroInput)?;
    if deg >= d {
        return Err(TateError::DegreeTooHigh { degree: deg, d });
    }
    Ok(f.shear(d, crate::powerseries::Direction::Forward))
}

impl fmt::Display for TateElement {
    /// `p^s * (F)` with `F` over `Z/p^N`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "{}^{} * (", self.p, self.scale)?;
        let rendered =
            self.sorted_terms().into_iter().map(|(e, c)| (c.to_string(), fmt_monomial(e, |i| format!("X{}", i + 1))));
        fmt_sum(f, rendered)?;
        f.write_str(")")
    }
}

macro_rules! tate_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&TateElement> for &TateElement {
            type Output = TateElement;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &TateElement) -> TateElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<TateElement> for TateElement {
            type Output = TateElement;
            fn $method(self, rhs: TateElement) -> TateElement {
                (&self).$method(&rhs)
            }
        }
    };
}

tate_binop!(Add, add, checked_add);
tate_binop!(Sub, sub, checked_sub);
tate_binop!(Mul, mul, checked_mul);

impl Neg for &TateElement {
    type Output = TateElement;
    fn neg(self) -> TateElement {
        let m = big_pow(self.p, self.prec);
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), modulo(&-c, &m))).collect();
        TateElement { terms, ..self.clone() }
    }
}

impl Neg for TateElement {
    type Output = TateElement;
    fn neg(self) -> TateElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, ratio};

    fn el(p: u64, n: usize, terms: &[(&[u32], Rational)]) -> TateElement {
        TateElement::from_rational_terms(n, p, 8, terms.iter().map(|(e, c)| (e.to_vec(), c.clone())))
    }

    #[test]
    fn gauss_norm_examples() {
        let f = el(2, 1, &[(&[0], ratio(1, 2)), (&[1], rat(1))]);
        assert_eq!(f.gauss_norm(), Extended::Finite(-1));
        let g = el(3, 2, &[(&[1, 0], rat(3)), (&[0, 2], rat(1))]);
        assert_eq!(g.gauss_norm(), Extended::Finite(0));
        let a = el(5, 1, &[(&[1], rat(5)), (&[0], rat(1))]);
        let b = el(5, 1, &[(&[1], rat(5)), (&[0], rat(-1))]);
        assert_eq!((&a * &b).gauss_norm(), Extended::Finite(0));
        assert_eq!(TateElement::zero(1, 5, 4).gauss_norm(), Extended::Infinity);
    }

    #[test]
    fn regularity_examples() {
        let f = el(3, 1, &[(&[2], rat(1)), (&[3], rat(3))]);
        assert_eq!(f.tate_regularity(0).unwrap().degree, 2);
        let f = el(3, 1, &[(&[1], rat(3))]);
        assert_eq!(f.tate_regularity(0).unwrap(), TateRegularity { degree: 1, normalizer: -1 });
        let f = el(3, 2, &[(&[1, 1], rat(1))]);
        assert_eq!(f.tate_regularity(1), Err(TateError::NotRegular { var: 1 }));
        assert_eq!(TateElement::zero(1, 3, 4).tate_regularity(0), Err(TateError::ZeroInput));
    }

    #[test]
    fn shear_examples() {
        let x1 = TateElement::var(0, 2, 5, 6);
        let x2 = TateElement::var(1, 2, 5, 6);
        let s = tate_shear(&x1, 2).unwrap();
        assert_eq!(s, &x1 + &x2.pow(2));
        assert_eq!(s.tate_regularity(1).unwrap().degree, 2);
        let p = &x1 * &x2;
        let s = tate_shear(&p, 3).unwrap();
        assert_eq!(s, &p + &x2.pow(4));
        assert_eq!(s.tate_regularity(1).unwrap().degree, 4);
        let back = s.shear(3, crate::powerseries::Direction::Inverse);
        assert_eq!(back, p);
        assert_eq!(tate_shear(&p, 2), Err(TateError::DegreeTooHigh { degree: 2, d: 2 }));
    }

    #[test]
    fn eval_examples() {
        let p = 3;
        let x2 = el(p, 1, &[(&[2], rat(1))]);
        let a = PAdic::from_i64(3, p, 8);
        assert_eq!(x2.eval(&[a]).unwrap().to_rational(), rat(9));

        let terms: Vec<(Vec<u32>, Rational)> = (0..8u32).map(|i| (vec![i], rat(3i64.pow(i)))).collect();
        let geo = TateElement::from_rational_terms(1, p, 8, terms);
        let v = geo.eval(&[PAdic::one(p, 8)]).unwrap();
        assert_eq!(v, PAdic::from_rational(&ratio(1, 1 - 3), p, 8));

        let s = el(p, 2, &[(&[1, 0], rat(1)), (&[0, 1], rat(1))]);
        let v = s.eval(&[PAdic::one(p, 8), PAdic::from_i64(3, p, 8)]).unwrap();
        assert_eq!(v.to_rational(), rat(4));

        let bad = PAdic::from_rational(&ratio(1, 3), p, 8);
        assert_eq!(x2.eval(&[bad]), Err(TateError::OutOfDomain { index: 0 }));
    }

    #[test]
    fn units() {
        let u = el(3, 1, &[(&[0], rat(2)), (&[1], rat(3))]);
        assert!(u.is_unit());
        assert!(!el(3, 1, &[(&[0], rat(2)), (&[1], rat(1))]).is_unit());
        let inv = zt_unit_inverse(u.terms(), 1, 3, 8).unwrap();
        let prod = zt_mul(&inv, u.terms(), &big_pow(3, 8));
        assert_eq!(prod, zt_one(1));
    }

    #[test]
    fn display() {
        let f = el(2, 1, &[(&[0], ratio(1, 2)), (&[1], rat(1))]);
        assert_eq!(f.to_string(), "2^-1 * (1 + 2*X1)");
    }
}

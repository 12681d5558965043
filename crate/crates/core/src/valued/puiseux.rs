//! Truncated Puiseux series `Σ c_k t^{k/e}` over `Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ValuedError;
use crate::coefficients::{kochen_gamma_rational, rational_kth_root, Extended, Rational};

/// Relative t-adic window used when an inverse or root has infinite
/// support: terms up to `t^16` beyond the leading exponent are kept.
pub const DEFAULT_WINDOW: u32 = 16;

/// A Puiseux series with ramification `e`: the term at key `k` has exponent
/// `k/e`. `prec = Some(T)` means the series is only known below `t^{T/e}`;
/// `None` means it is exact (a finite sum).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxSeries {
    ram: u32,
    terms: BTreeMap<i64, Rational>,
    prec: Option<i64>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        PuiseuxSeries { ram: 1, terms: BTreeMap::new(), prec: None }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, &Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c · t^q`.
    pub fn monomial(c: Rational, q: &Rational) -> Self {
        let ram = q.denom().to_u32().expect("ramification fits in u32");
        let key = q.numer().to_i64().expect("exponent numerator fits in i64");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        PuiseuxSeries { ram, terms, prec: None }.normalized()
    }

    /// `t^q`.
    pub fn t_pow(q: &Rational) -> Self {
        Self::monomial(Rational::one(), q)
    }

    /// Builds `Σ c t^q`; `prec` is the exponent below which the sum is
    /// known, `None` for an exact finite sum.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>, prec: Option<Rational>) -> Self {
        let mut acc = Self::zero();
        for (q, c) in terms {
            acc = &acc + &Self::monomial(c, &q);
        }
        match prec {
            Some(t) => acc.truncate_at(&t),
            None => acc,
        }
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent below which the series is reliable, `None` if exact.
    pub fn precision(&self) -> Option<Rational> {
        self.prec.map(|t| Rational::new(t.into(), self.ram.into()))
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(Rational, Rational)> {
        self.terms.iter().map(|(k, c)| (Rational::new((*k).into(), self.ram.into()), c.clone())).collect()
    }

    pub fn coeff(&self, q: &Rational) -> Rational {
        let scaled = q * Rational::from_integer(self.ram.into());
        if !scaled.is_integer() {
            return Rational::zero();
        }
        let k = scaled.to_integer().to_i64().unwrap();
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `v(f) = min supp f`. An inexact zero has no determined value.
    pub fn val(&self) -> Result<Extended<Rational>, ValuedError> {
        match self.terms.keys().next() {
            Some(k) => Ok(Extended::Finite(Rational::new((*k).into(), self.ram.into()))),
            None if self.prec.is_none() => Ok(Extended::Infinity),
            None => Err(ValuedError::WindowUnderflow),
        }
    }

    /// `(exponent, coefficient)` of the lowest term.
    pub fn leading(&self) -> Option<(Rational, Rational)> {
        self.terms.iter().next().map(|(k, c)| (Rational::new((*k).into(), self.ram.into()), c.clone()))
    }

    /// Drops all terms at exponents `>= q` and records `O(t^q)`.
    pub fn truncate_at(&self, q: &Rational) -> Self {
        let cut = self.clone().with_ram(lcm(self.ram, q.denom().to_u32().unwrap()));
        let scaled = q * Rational::from_integer(cut.ram.into());
        let t = scaled.to_integer().to_i64().unwrap();
        let t = cut.prec.map_or(t, |p| p.min(t));
        let terms = cut.terms.into_iter().filter(|(k, _)| *k < t).collect();
        PuiseuxSeries { ram: cut.ram, terms, prec: Some(t) }.normalized()
    }

    /// Agreement below the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let ram = lcm(self.ram, other.ram);
        let a = self.clone().with_ram(ram);
        let b = other.clone().with_ram(ram);
        let cut = match (a.prec, b.prec) {
            (None, None) => return a == b,
            (Some(x), None) | (None, Some(x)) => x,
            (Some(x), Some(y)) => x.min(y),
        };
        let below = |s: &Self| -> Vec<(i64, Rational)> {
            s.terms.iter().filter(|(k, _)| **k < cut).map(|(k, c)| (*k, c.clone())).collect()
        };
        below(&a) == below(&b)
    }

    fn with_ram(mut self, ram: u32) -> Self {
        if ram == self.ram {
            return self;
        }
        assert!(ram.is_multiple_of(self.ram), "ramification can only be refined");
        let f = (ram / self.ram) as i64;
        self.terms = self.terms.into_iter().map(|(k, c)| (k * f, c)).collect();
        self.prec = self.prec.map(|t| t * f);
        self.ram = ram;
        self
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let mut g = self.ram as i64;
        for k in self.terms.keys() {
            g = g.gcd(k);
        }
        if let Some(t) = self.prec {
            g = g.gcd(&t);
        }
        if g > 1 {
            self.terms = self.terms.into_iter().map(|(k, c)| (k / g, c)).collect();
            self.prec = self.prec.map(|t| t / g);
            self.ram /= g as u32;
        }
        self
    }

    fn aligned(&self, rhs: &Self) -> (Self, Self) {
        let ram = lcm(self.ram, rhs.ram);
        (self.clone().with_ram(ram), rhs.clone().with_ram(ram))
    }

    /// Lowest key, or the precision for an inexact zero.
    fn low_key(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.prec)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `1/self` keeping `window` t-exponents beyond the leading one.
    pub fn inv_with_window(&self, window: u32) -> Result<Self, ValuedError> {
        let (lead_key, lead) = match self.terms.iter().next() {
            Some((k, c)) => (*k, c.clone()),
            None if self.prec.is_none() => return Err(ValuedError::DivisionByZero),
            None => return Err(ValuedError::WindowUnderflow),
        };
        if self.terms.len() == 1 && self.prec.is_none() {
            let mut terms = BTreeMap::new();
            terms.insert(-lead_key, lead.recip());
            return Ok(PuiseuxSeries { ram: self.ram, terms, prec: None });
        }
        // self = lead t^{v} (1 + h); relative keys of h are positive.
        let rel_prec = self.prec.map(|t| t - lead_key);
        let mut len = window as i64 * self.ram as i64;
        if let Some(r) = rel_prec {
            len = len.min(r);
        }
        let linv = lead.recip();
        let h: Vec<(i64, Rational)> =
            self.terms.iter().skip(1).map(|(k, c)| (k - lead_key, c * &linv)).filter(|(k, _)| *k < len).collect();
        let mut r = vec![Rational::zero(); len.max(0) as usize];
        if len > 0 {
            r[0] = Rational::one();
        }
        for n in 1..len {
            let mut s = Rational::zero();
            for (k, c) in &h {
                if *k > n {
                    break;
                }
                s -= c * &r[(n - k) as usize];
            }
            r[n as usize] = s;
        }
        let terms = r.into_iter().enumerate().map(|(n, c)| (n as i64 - lead_key, c * &linv)).collect();
        Ok(PuiseuxSeries { ram: self.ram, terms, prec: Some(len - lead_key) }.normalized())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ValuedError> {
        Ok(self * &rhs.inv_with_window(DEFAULT_WINDOW)?)
    }

    /// A `k`-th root `c^{1/k} t^{v/k} (1 + h)^{1/k}` when the leading
    /// coefficient is a rational `k`-th power.
    pub fn kth_root_with_window(&self, k: u32, window: u32) -> Option<Self> {
        let (lead_key, lead) = self.terms.iter().next().map(|(a, b)| (*a, b.clone()))?;
        let c = rational_kth_root(&lead, k)?;
        let this = self.clone().with_ram(self.ram * k);
        let lead_key_k = lead_key * k as i64;
        let root_key = lead_key; // (lead_key·k) / k in the refined grid
        let rel_prec = this.prec.map(|t| t - lead_key_k);
        let mut len = window as i64 * this.ram as i64;
        if let Some(r) = rel_prec {
            len = len.min(r);
        }
        let exact_single = self.terms.len() == 1 && self.prec.is_none();
        let linv = lead.recip();
        let h: BTreeMap<i64, Rational> =
            this.terms.iter().skip(1).map(|(a, b)| (a - lead_key_k, b * &linv)).filter(|(a, _)| *a < len).collect();
        // (1 + h)^{1/k} = Σ binom(1/k, j) h^j
        let alpha = Rational::new(BigInt::one(), BigInt::from(k));
        let mut out = BTreeMap::new();
        out.insert(0i64, Rational::one());
        if !exact_single {
            let mut power: BTreeMap<i64, Rational> = BTreeMap::from([(0, Rational::one())]);
            let mut binom = Rational::one();
            for j in 1..len.max(1) {
                let mut next = BTreeMap::new();
                for (a, x) in &power {
                    for (b, y) in &h {
                        if a + b < len {
                            *next.entry(a + b).or_insert_with(Rational::zero) += x * y;
                        }
                    }
                }
                power = next;
                if power.is_empty() {
                    break;
                }
                binom = binom * (&alpha - Rational::from_integer((j - 1).into())) / Rational::from_integer(j.into());
                for (a, x) in &power {
                    *out.entry(*a).or_insert_with(Rational::zero) += &binom * x;
                }
            }
        }
        let terms = out.into_iter().map(|(a, x)| (a + root_key, x * &c)).collect();
        let prec = if exact_single { None } else { Some(len + root_key) };
        Some(PuiseuxSeries { ram: this.ram, terms, prec }.normalized())
    }

    /// `℘(f) = f^p - f`.
    pub fn wp(&self, p: u64) -> Self {
        &self.pow(p as u32) - self
    }

    /// The Kochen operator `(1/p) ℘(f) / (℘(f)^2 - 1)`; infinite when
    /// `℘(f) = ±1`.
    pub fn kochen_gamma(&self, p: u64) -> Result<Extended<Self>, ValuedError> {
        if self.terms.len() <= 1 && self.prec.is_none() && self.terms.keys().all(|k| *k == 0) {
            let c = self.terms.get(&0).cloned().unwrap_or_else(Rational::zero);
            return Ok(kochen_gamma_rational(&c, p).map(Self::constant));
        }
        let w = self.wp(p);
        let den = &(&w * &w) - &Self::one();
        if den.is_zero() && den.is_exact() {
            return Ok(Extended::Infinity);
        }
        let scaled = &den * &Self::constant(Rational::from_integer(p.into()));
        Ok(Extended::Finite(w.checked_div(&scaled)?))
    }

    pub fn scale_by(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PuiseuxSeries { ram: 1, terms: BTreeMap::new(), prec: None };
        }
        let terms = self.terms.iter().map(|(k, x)| (*k, x * c)).collect();
        PuiseuxSeries { terms, ..self.clone() }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Add<&PuiseuxSeries> for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn add(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        let (mut a, b) = self.aligned(rhs);
        for (k, c) in b.terms {
            *a.terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        let prec = match (a.prec, b.prec) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if let Some(t) = prec {
            a.terms.retain(|k, _| *k < t);
        }
        a.prec = prec;
        a.normalized()
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        self.scale_by(&-Rational::one()).with_prec_of(self)
    }
}

impl PuiseuxSeries {
    fn with_prec_of(mut self, other: &Self) -> Self {
        let o = other.clone().with_ram(lcm(self.ram, other.ram));
        self = self.with_ram(o.ram);
        self.prec = o.prec;
        self.normalized()
    }
}

impl Sub<&PuiseuxSeries> for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn sub(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self + &(-rhs)
    }
}

impl Mul<&PuiseuxSeries> for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn mul(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        let (a, b) = self.aligned(rhs);
        let prec = match (a.prec, b.prec) {
            (None, None) => None,
            (Some(ta), None) => b.low_key().map(|vb| ta + vb),
            (None, Some(tb)) => a.low_key().map(|va| tb + va),
            (Some(ta), Some(tb)) => Some((ta + b.low_key().unwrap()).min(tb + a.low_key().unwrap())),
        };
        // An exact zero factor gives an exact zero product.
        let prec = if (a.is_zero() && a.prec.is_none()) || (b.is_zero() && b.prec.is_none()) { None } else { prec };
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                if prec.is_none_or(|t| k < t) {
                    *terms.entry(k).or_insert_with(Rational::zero) += ca * cb;
                }
            }
        }
        PuiseuxSeries { ram: a.ram, terms, prec }.normalized()
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<PuiseuxSeries> for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $method(self, rhs: PuiseuxSeries) -> PuiseuxSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        -&self
    }
}

pub(crate) fn fmt_t_power(q: &Rational) -> String {
    if q.is_zero() {
        String::new()
    } else if q.is_one() {
        "t".to_string()
    } else if q.is_integer() && q.is_positive() {
        format!("t^{q}")
    } else {
        format!("t^({q})")
    }
}

impl fmt::Display for PuiseuxSeries {
    /// `3*t^(1/2) + t + O(t^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<(String, String)> =
            self.terms().into_iter().map(|(q, c)| (c.to_string(), fmt_t_power(&q))).collect();
        if rendered.is_empty() && self.prec.is_some() {
            return write!(f, "O({})", fmt_t_power(&self.precision().unwrap()));
        }
        crate::powerseries::fmt_sum(f, rendered)?;
        if let Some(t) = self.precision() {
            let pw = if t.is_zero() { "1".to_string() } else { fmt_t_power(&t) };
            write!(f, " + O({pw})")?;
        }
        Ok(())
    }
}

impl crate::coefficients::Field for PuiseuxSeries {
    fn zero() -> Self {
        PuiseuxSeries::zero()
    }
    fn one() -> Self {
        PuiseuxSeries::one()
    }
    fn from_i64(n: i64) -> Self {
        PuiseuxSeries::constant(Rational::from_integer(n.into()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        self.inv_with_window(DEFAULT_WINDOW).ok()
    }
    fn kth_root(&self, k: u32) -> Option<Self> {
        self.kth_root_with_window(k, DEFAULT_WINDOW)
    }
}

//! Expression trees for elements of Kochen rings and real holomorphy rings,
//! interpreted as fractions of truncated series or at rational points.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::KochenError;
use crate::coefficients::{kochen_gamma_rational, Extended, Rational};
use crate::powerseries::FormalSeries;

#[derive(Clone, Debug, PartialEq)]
pub enum CertExpr {
    Const(Rational),
    /// 0-based variable index.
    Var(usize),
    Atom(Arc<FormalSeries<Rational>>),
    Add(Box<CertExpr>, Box<CertExpr>),
    Mul(Box<CertExpr>, Box<CertExpr>),
    Neg(Box<CertExpr>),
    Pow(Box<CertExpr>, u32),
    /// `γ_p`
    Gamma(Box<CertExpr>),
    /// `℘(x) = x^p - x`
    Wp(Box<CertExpr>),
    Inv(Box<CertExpr>),
    /// `f / (1 - p g)`
    KochenFrac(Box<CertExpr>, Box<CertExpr>),
    /// `1 / (1 + Σ x_i^2)`
    SosInv(Vec<CertExpr>),
}

/// Where certificate expressions are interpreted: `Q[[X_1..X_m]]` modulo
/// degree `order`, with `prime` the `p` of any Kochen nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesRing {
    pub nvars: usize,
    pub order: u32,
    pub prime: Option<u64>,
}

/// `num / den` of truncated series; `den` is 1 whenever it was a unit.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub num: FormalSeries<Rational>,
    pub den: FormalSeries<Rational>,
}

impl Fraction {
    fn whole(num: FormalSeries<Rational>) -> Self {
        let den = FormalSeries::one(num.nvars(), num.order());
        Fraction { num, den }
    }

    fn reduced(num: FormalSeries<Rational>, den: FormalSeries<Rational>) -> Result<Self, KochenError> {
        if den.is_zero() {
            return Err(KochenError::ZeroDenominator);
        }
        if den.is_unit() {
            let exact = num.is_exact() && den.is_exact();
            let q = num.checked_div(&den)?;
            // a constant denominator keeps an exact quotient exact
            let q = if exact && den.total_degree() == Some(0) { q.with_exactness(true) } else { q };
            return Ok(Fraction::whole(q));
        }
        Ok(Fraction { num, den })
    }

    pub fn is_exact(&self) -> bool {
        self.num.is_exact() && self.den.is_exact()
    }

    /// The series `num/den`, if `den` is a unit.
    pub fn as_series(&self) -> Result<FormalSeries<Rational>, KochenError> {
        if self.den.is_unit() {
            Ok(self.num.checked_div(&self.den)?)
        } else {
            Err(KochenError::ZeroDenominator)
        }
    }
}

fn frac_add(a: &Fraction, b: &Fraction) -> Result<Fraction, KochenError> {
    let num = &(&a.num * &b.den) + &(&b.num * &a.den);
    Fraction::reduced(num, &a.den * &b.den)
}

fn frac_mul(a: &Fraction, b: &Fraction) -> Result<Fraction, KochenError> {
    Fraction::reduced(&a.num * &b.num, &a.den * &b.den)
}

fn frac_inv(a: &Fraction) -> Result<Fraction, KochenError> {
    Fraction::reduced(a.den.clone(), a.num.clone())
}

fn frac_pow(a: &Fraction, k: u32) -> Result<Fraction, KochenError> {
    Fraction::reduced(a.num.pow(k), a.den.pow(k))
}

fn need_prime(ring: &SeriesRing) -> Result<u64, KochenError> {
    ring.prime.ok_or(KochenError::MissingPrime)
}

impl CertExpr {
    pub fn constant(n: i64) -> Self {
        CertExpr::Const(Rational::from_integer(n.into()))
    }

    pub fn var(i: usize) -> Self {
        CertExpr::Var(i)
    }

    pub fn atom(f: FormalSeries<Rational>) -> Self {
        CertExpr::Atom(Arc::new(f))
    }

    pub fn gamma(x: CertExpr) -> Self {
        CertExpr::Gamma(Box::new(x))
    }

    pub fn wp(x: CertExpr) -> Self {
        CertExpr::Wp(Box::new(x))
    }

    pub fn inv(x: CertExpr) -> Self {
        CertExpr::Inv(Box::new(x))
    }

    pub fn kfrac(f: CertExpr, g: CertExpr) -> Self {
        CertExpr::KochenFrac(Box::new(f), Box::new(g))
    }

    pub fn pow(self, k: u32) -> Self {
        CertExpr::Pow(Box::new(self), k)
    }

    /// Largest variable index used, plus one.
    pub fn nvars_used(&self) -> usize {
        match self {
            CertExpr::Const(_) => 0,
            CertExpr::Var(i) => i + 1,
            CertExpr::Atom(f) => f.nvars(),
            CertExpr::Add(a, b) | CertExpr::Mul(a, b) | CertExpr::KochenFrac(a, b) => {
                a.nvars_used().max(b.nvars_used())
            }
            CertExpr::Neg(a) | CertExpr::Pow(a, _) | CertExpr::Gamma(a) | CertExpr::Wp(a) | CertExpr::Inv(a) => {
                a.nvars_used()
            }
            CertExpr::SosInv(xs) => xs.iter().map(|x| x.nvars_used()).max().unwrap_or(0),
        }
    }

    /// Whether a Gamma or KochenFrac node occurs.
    pub fn uses_prime(&self) -> bool {
        match self {
            CertExpr::Gamma(_) | CertExpr::KochenFrac(..) => true,
            CertExpr::Const(_) | CertExpr::Var(_) | CertExpr::Atom(_) => false,
            CertExpr::Add(a, b) | CertExpr::Mul(a, b) => a.uses_prime() || b.uses_prime(),
            CertExpr::Neg(a) | CertExpr::Pow(a, _) | CertExpr::Wp(a) | CertExpr::Inv(a) => a.uses_prime(),
            CertExpr::SosInv(xs) => xs.iter().any(|x| x.uses_prime()),
        }
    }

    /// Total degree bound when the expression is a polynomial built from
    /// exact pieces, `None` otherwise.
    pub fn poly_degree(&self, p: Option<u64>) -> Option<u32> {
        match self {
            CertExpr::Const(_) => Some(0),
            CertExpr::Var(_) => Some(1),
            CertExpr::Atom(f) => f.is_exact().then(|| f.total_degree().unwrap_or(0)),
            CertExpr::Add(a, b) => Some(a.poly_degree(p)?.max(b.poly_degree(p)?)),
            CertExpr::Mul(a, b) => Some(a.poly_degree(p)? + b.poly_degree(p)?),
            CertExpr::Neg(a) => a.poly_degree(p),
            CertExpr::Pow(a, k) => Some(a.poly_degree(p)? * k),
            CertExpr::Wp(a) => Some(a.poly_degree(p)? * p? as u32),
            CertExpr::Inv(a) => (a.poly_degree(p)? == 0).then_some(0),
            CertExpr::Gamma(_) | CertExpr::KochenFrac(..) | CertExpr::SosInv(_) => None,
        }
    }

    /// Interprets the expression in `Frac(Q[[X]])` modulo degree `order`.
    pub fn eval_series(&self, ring: &SeriesRing) -> Result<Fraction, KochenError> {
        let (m, d) = (ring.nvars, ring.order);
        let whole = |f: FormalSeries<Rational>| Ok(Fraction::whole(f));
        match self {
            CertExpr::Const(c) => whole(FormalSeries::constant(c.clone(), m, d)),
            CertExpr::Var(i) => {
                if *i >= m {
                    return Err(KochenError::VariableOutOfRange { index: *i, nvars: m });
                }
                whole(FormalSeries::var(*i, m, d))
            }
            CertExpr::Atom(f) => {
                if f.nvars() != m {
                    return Err(KochenError::VariableOutOfRange { index: f.nvars().saturating_sub(1), nvars: m });
                }
                whole(f.with_order(d))
            }
            CertExpr::Add(a, b) => frac_add(&a.eval_series(ring)?, &b.eval_series(ring)?),
            CertExpr::Mul(a, b) => frac_mul(&a.eval_series(ring)?, &b.eval_series(ring)?),
            CertExpr::Neg(a) => {
                let x = a.eval_series(ring)?;
                Ok(Fraction { num: -&x.num, den: x.den })
            }
            CertExpr::Pow(a, k) => frac_pow(&a.eval_series(ring)?, *k),
            CertExpr::Inv(a) => frac_inv(&a.eval_series(ring)?),
            CertExpr::Wp(a) => {
                let p = need_prime(ring)?;
                let x = a.eval_series(ring)?;
                let neg = Fraction { num: -&x.num, den: x.den.clone() };
                frac_add(&frac_pow(&x, p as u32)?, &neg)
            }
            CertExpr::Gamma(a) => {
                let p = need_prime(ring)?;
                let x = a.eval_series(ring)?;
                // ℘ = W / d^p, γ = W d^p / (p (W^2 - d^{2p}))
                let dp = x.den.pow(p as u32);
                let w = &(x.num.pow(p as u32)) - &(&x.num * &x.den.pow(p as u32 - 1));
                let den = (&(&w * &w) - &(&dp * &dp)).scale(&Rational::from_integer(p.into()));
                if den.is_zero() || (x.den.is_unit() && !den.is_unit()) {
                    return Err(KochenError::GammaPole);
                }
                Fraction::reduced(&w * &dp, den)
            }
            CertExpr::KochenFrac(f, g) => {
                let p = need_prime(ring)?;
                let f = f.eval_series(ring)?;
                let g = g.eval_series(ring)?;
                // f / (1 - p gn/gd) = f gd / (gd - p gn)
                let pr = Rational::from_integer(p.into());
                let den = &g.den - &g.num.scale(&pr);
                if den.is_zero() {
                    return Err(KochenError::ZeroDenominator);
                }
                frac_mul(&f, &Fraction::reduced(g.den.clone(), den)?)
            }
            CertExpr::SosInv(xs) => {
                if xs.is_empty() {
                    return Err(KochenError::Arity { what: "sosinv", expected: 1, found: 0 });
                }
                let mut acc = Fraction::whole(FormalSeries::one(m, d));
                for x in xs {
                    acc = frac_add(&acc, &frac_pow(&x.eval_series(ring)?, 2)?)?;
                }
                frac_inv(&acc)
            }
        }
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, point: &[Rational], prime: Option<u64>) -> Result<Rational, KochenError> {
        let rec = |e: &CertExpr| e.eval_at(point, prime);
        let p = || prime.ok_or(KochenError::MissingPrime);
        Ok(match self {
            CertExpr::Const(c) => c.clone(),
            CertExpr::Var(i) => {
                point.get(*i).cloned().ok_or(KochenError::VariableOutOfRange { index: *i, nvars: point.len() })?
            }
            CertExpr::Atom(f) => {
                if f.nvars() != point.len() {
                    return Err(KochenError::VariableOutOfRange {
                        index: f.nvars().saturating_sub(1),
                        nvars: point.len(),
                    });
                }
                f.eval(point)
            }
            CertExpr::Add(a, b) => rec(a)? + rec(b)?,
            CertExpr::Mul(a, b) => rec(a)? * rec(b)?,
            CertExpr::Neg(a) => -rec(a)?,
            CertExpr::Pow(a, k) => num_traits::pow(rec(a)?, *k as usize),
            CertExpr::Inv(a) => {
                let x = rec(a)?;
                if x.is_zero() {
                    return Err(KochenError::ZeroDenominator);
                }
                x.recip()
            }
            CertExpr::Wp(a) => {
                let x = rec(a)?;
                num_traits::pow(x.clone(), p()? as usize) - x
            }
            CertExpr::Gamma(a) => match kochen_gamma_rational(&rec(a)?, p()?) {
                Extended::Finite(v) => v,
                Extended::Infinity => return Err(KochenError::GammaPole),
            },
            CertExpr::KochenFrac(f, g) => {
                let den = Rational::one() - Rational::from_integer(p()?.into()) * rec(g)?;
                if den.is_zero() {
                    return Err(KochenError::ZeroDenominator);
                }
                rec(f)? / den
            }
            CertExpr::SosInv(xs) => {
                let mut s = Rational::one();
                for x in xs {
                    let v = rec(x)?;
                    s += &v * &v;
                }
                s.recip()
            }
        })
    }
}

impl std::ops::Add for CertExpr {
    type Output = CertExpr;
    fn add(self, rhs: CertExpr) -> CertExpr {
        CertExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for CertExpr {
    type Output = CertExpr;
    fn sub(self, rhs: CertExpr) -> CertExpr {
        CertExpr::Add(Box::new(self), Box::new(CertExpr::Neg(Box::new(rhs))))
    }
}

impl std::ops::Mul for CertExpr {
    type Output = CertExpr;
    fn mul(self, rhs: CertExpr) -> CertExpr {
        CertExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Neg for CertExpr {
    type Output = CertExpr;
    fn neg(self) -> CertExpr {
        CertExpr::Neg(Box::new(self))
    }
}

impl fmt::Display for CertExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertExpr::Const(c) if c.is_integer() && *c >= Rational::zero() => write!(f, "{c}"),
            CertExpr::Const(c) => write!(f, "({c})"),
            CertExpr::Var(i) => write!(f, "X{}", i + 1),
            CertExpr::Atom(s) => write!(f, "({s})"),
            CertExpr::Add(a, b) => match b.as_ref() {
                CertExpr::Neg(c) => write!(f, "({a} - {c})"),
                _ => write!(f, "({a} + {b})"),
            },
            CertExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            CertExpr::Neg(a) => write!(f, "(-{a})"),
            CertExpr::Pow(a, k) => write!(f, "{a}^{k}"),
            CertExpr::Gamma(a) => write!(f, "gamma({a})"),
            CertExpr::Wp(a) => write!(f, "wp({a})"),
            CertExpr::Inv(a) => write!(f, "(1/{a})"),
            CertExpr::KochenFrac(a, b) => write!(f, "kfrac({a}; {b})"),
            CertExpr::SosInv(xs) => {
                write!(f, "sosinv(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, rational_valuation};

    fn ring(p: Option<u64>) -> SeriesRing {
        SeriesRing { nvars: 2, order: 8, prime: p }
    }

    #[test]
    fn constants_and_kfrac() {
        let x = CertExpr::constant(5).eval_series(&ring(None)).unwrap();
        assert_eq!(x.num, FormalSeries::constant(rat(5), 2, 8));
        assert_eq!(x.den, FormalSeries::one(2, 8));
        let k = CertExpr::kfrac(CertExpr::constant(1), CertExpr::constant(0)).eval_series(&ring(Some(3))).unwrap();
        assert_eq!(k.num, FormalSeries::one(2, 8));
        assert_eq!(CertExpr::gamma(CertExpr::var(0)).eval_series(&ring(None)), Err(KochenError::MissingPrime));
    }

    #[test]
    fn gamma_series() {
        let g = CertExpr::gamma(CertExpr::var(0)).eval_series(&ring(Some(3))).unwrap();
        let s = g.as_series().unwrap();
        assert!(s.constant_term().is_zero());
        // γ(X) = (1/3)(X^3 - X)/((X^3-X)^2 - 1) = X/3 + ...
        assert_eq!(s.coeff(&[1, 0]), crate::coefficients::ratio(1, 3));
        assert!(!s.is_exact());
        // ℘(1) = 0 so γ(1) is fine, but ℘(x) = ±1 is a pole
        let one_plus = CertExpr::constant(1) + CertExpr::var(0);
        assert!(CertExpr::gamma(one_plus).eval_series(&ring(Some(2))).is_ok());
    }

    #[test]
    fn pointwise() {
        let e = CertExpr::gamma(CertExpr::var(0));
        assert_eq!(e.eval_at(&[rat(2)], Some(3)).unwrap(), crate::coefficients::ratio(2, 35));
        for n in -20..20 {
            let v = e.eval_at(&[crate::coefficients::ratio(n, 7)], Some(3));
            if let Ok(v) = v {
                assert!(rational_valuation(&v, 3) >= Extended::Finite(0));
            }
        }
        let s = CertExpr::SosInv(vec![CertExpr::var(0), CertExpr::var(1)]);
        let v = s.eval_at(&[rat(1), rat(2)], None).unwrap();
        assert_eq!(v, crate::coefficients::ratio(1, 6));
    }
}

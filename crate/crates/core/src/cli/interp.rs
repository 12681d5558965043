//! Reading a parsed expression in a concrete ring.

use super::parse::ExprAst;
use crate::coefficients::Rational;
use crate::error::Error;
use crate::kochen::CertExpr;
use crate::powerseries::FormalSeries;
use crate::tate::TateElement;
use crate::valued::PuiseuxSeries;

fn prime_value(p: Option<u64>) -> Result<Rational, Error> {
    p.map(|p| Rational::from_integer(p.into())).ok_or_else(|| Error::Usage("`p` used without a prime (-p)".into()))
}

impl ExprAst {
    pub fn to_cert_expr(&self, p: Option<u64>) -> Result<CertExpr, Error> {
        let rec = |e: &ExprAst| e.to_cert_expr(p);
        Ok(match self {
            ExprAst::Num(q) => CertExpr::Const(q.clone()),
            ExprAst::Prime => CertExpr::Const(prime_value(p)?),
            ExprAst::Var(i) => CertExpr::Var(*i),
            ExprAst::TPow(_) => return Err(Error::Usage("`t` is only meaningful for Puiseux inputs".into())),
            ExprAst::Add(a, b) => rec(a)? + rec(b)?,
            ExprAst::Sub(a, b) => rec(a)? - rec(b)?,
            ExprAst::Mul(a, b) => rec(a)? * rec(b)?,
            ExprAst::Div(a, b) => rec(a)? * CertExpr::inv(rec(b)?),
            ExprAst::Neg(a) => -rec(a)?,
            ExprAst::Pow(a, k) => rec(a)?.pow(*k),
            ExprAst::Gamma(a) => CertExpr::gamma(rec(a)?),
            ExprAst::Wp(a) => CertExpr::wp(rec(a)?),
            ExprAst::Kfrac(a, b) => CertExpr::kfrac(rec(a)?, rec(b)?),
            ExprAst::SosInv(xs) => CertExpr::SosInv(xs.iter().map(rec).collect::<Result<_, _>>()?),
        })
    }

    /// The expression as a series in `nvars` variables modulo degree
    /// `order`; denominators must be units.
    pub fn to_series(&self, nvars: usize, order: u32, p: Option<u64>) -> Result<FormalSeries<Rational>, Error> {
        let ring = crate::kochen::SeriesRing { nvars, order, prime: p };
        let e = self.to_cert_expr(p)?;
        // exact polynomials keep every term
        let ring = match e.poly_degree(p) {
            Some(d) if d > order => crate::kochen::SeriesRing { order: d, ..ring },
            _ => ring,
        };
        Ok(e.eval_series(&ring)?.as_series()?)
    }

    pub fn to_tate(&self, nvars: usize, p: u64, prec: u32) -> Result<TateElement, Error> {
        let e = self.to_cert_expr(Some(p))?;
        let d = e.poly_degree(Some(p)).ok_or_else(|| Error::Usage("Tate inputs must be polynomials".into()))?;
        let s = self.to_series(nvars, d, Some(p))?;
        Ok(TateElement::from_series(&s, p, prec))
    }

    pub fn to_puiseux(&self, p: Option<u64>) -> Result<PuiseuxSeries, Error> {
        let rec = |e: &ExprAst| e.to_puiseux(p);
        Ok(match self {
            ExprAst::Num(q) => PuiseuxSeries::constant(q.clone()),
            ExprAst::Prime => PuiseuxSeries::constant(prime_value(p)?),
            ExprAst::TPow(q) => PuiseuxSeries::t_pow(q),
            ExprAst::Add(a, b) => &rec(a)? + &rec(b)?,
            ExprAst::Sub(a, b) => &rec(a)? - &rec(b)?,
            ExprAst::Mul(a, b) => &rec(a)? * &rec(b)?,
            ExprAst::Div(a, b) => rec(a)?.checked_div(&rec(b)?)?,
            ExprAst::Neg(a) => -rec(a)?,
            ExprAst::Pow(a, k) => rec(a)?.pow(*k),
            ExprAst::Gamma(a) => {
                let p = p.ok_or_else(|| Error::Usage("gamma needs a prime (-p)".into()))?;
                rec(a)?.kochen_gamma(p)?.into_finite().ok_or(Error::Kochen(crate::kochen::KochenError::GammaPole))?
            }
            ExprAst::Wp(a) => {
                let p = p.ok_or_else(|| Error::Usage("wp needs a prime (-p)".into()))?;
                rec(a)?.wp(p)
            }
            ExprAst::Var(_) | ExprAst::Kfrac(..) | ExprAst::SosInv(_) => {
                return Err(Error::Usage(format!("`{self}` is not a Puiseux series")))
            }
        })
    }

    pub fn to_rational(&self, p: Option<u64>) -> Result<Rational, Error> {
        let e = self.to_cert_expr(p)?;
        if e.nvars_used() > 0 {
            return Err(Error::Usage(format!("`{self}` is not a constant")));
        }
        Ok(e.eval_at(&[], p)?)
    }
}

/// Reads a comma-separated list of constants such as `1, 3/2, p`.
pub fn parse_point(src: &str, p: Option<u64>) -> Result<Vec<Rational>, Error> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(|s| super::parse::parse_expression(s)?.to_rational(p)).collect()
}

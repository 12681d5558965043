//! Certificate identities and their verification.

use serde_json::{json, Value};

use super::expr::{CertExpr, Fraction, SeriesRing};
use super::KochenError;
use crate::coefficients::{Extended, Rational};
use crate::tate::TateElement;

#[derive(Clone, Debug, PartialEq)]
pub enum CertKind {
    /// `f^k (1 - p g) = Σ g_i h_i`
    PAdicNss { p: u64, f: CertExpr, k: u32, g: CertExpr, gs: Vec<CertExpr>, hs: Vec<CertExpr> },
    /// `f^{2k} + Σ b_i^2 = Σ g_i h_i`
    RealNss { f: CertExpr, k: u32, gs: Vec<CertExpr>, hs: Vec<CertExpr>, bs: Vec<CertExpr> },
    /// `f g^2 = Σ h_i^2`
    RealH17 { f: CertExpr, g: CertExpr, hs: Vec<CertExpr> },
    /// `f = g λ` with `λ` in the Kochen ring.
    LambdaMembership { p: u64, f: CertExpr, g: CertExpr, lambda: CertExpr },
    /// `f = g h` in `Z_p<X>` with `|h| <= 1`.
    IntegralValued { f: TateElement, g: TateElement, h: TateElement },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub nvars: usize,
    /// Series identities are compared modulo this degree.
    pub order: u32,
    pub kind: CertKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `exact` is false when the identity was only checked modulo degree
    /// `order`.
    Verified {
        exact: bool,
        order: u32,
    },
    Refuted {
        discrepancy_degree: Option<u32>,
        order: u32,
    },
    Inconclusive {
        order: u32,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Verified { .. } => "verified",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Verdict::Verified { exact, order } => {
                json!({"verdict": "verified", "order": order, "discrepancy_degree": null, "exact": exact})
            }
            Verdict::Refuted { discrepancy_degree, order } => {
                json!({"verdict": "refuted", "order": order, "discrepancy_degree": discrepancy_degree})
            }
            Verdict::Inconclusive { order } => {
                json!({"verdict": "inconclusive", "order": order, "discrepancy_degree": null})
            }
        }
    }
}

fn sum(xs: impl IntoIterator<Item = CertExpr>) -> CertExpr {
    xs.into_iter().reduce(|a, b| a + b).unwrap_or_else(|| CertExpr::constant(0))
}

fn check_arity(gs: &[CertExpr], hs: &[CertExpr]) -> Result<(), KochenError> {
    if gs.len() != hs.len() {
        return Err(KochenError::Arity { what: "h", expected: gs.len(), found: hs.len() });
    }
    Ok(())
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CertKind::PAdicNss { .. } => "padic-nss",
            CertKind::RealNss { .. } => "real-nss",
            CertKind::RealH17 { .. } => "real-h17",
            CertKind::LambdaMembership { .. } => "lambda",
            CertKind::IntegralValued { .. } => "integral-valued",
        }
    }

    /// Both sides of the identity to check, with the prime if any.
    pub fn sides(&self) -> Result<(CertExpr, CertExpr, Option<u64>), KochenError> {
        Ok(match &self.kind {
            CertKind::PAdicNss { p, f, k, g, gs, hs } => {
                check_arity(gs, hs)?;
                if *k == 0 {
                    return Err(KochenError::Arity { what: "k", expected: 1, found: 0 });
                }
                let lhs = f.clone().pow(*k) * (CertExpr::constant(1) - CertExpr::constant(*p as i64) * g.clone());
                let rhs = sum(gs.iter().zip(hs).map(|(g, h)| g.clone() * h.clone()));
                (lhs, rhs, Some(*p))
            }
            CertKind::RealNss { f, k, gs, hs, bs } => {
                check_arity(gs, hs)?;
                if *k == 0 {
                    return Err(KochenError::Arity { what: "k", expected: 1, found: 0 });
                }
                let lhs = sum(std::iter::once(f.clone().pow(2 * k)).chain(bs.iter().map(|b| b.clone().pow(2))));
                let rhs = sum(gs.iter().zip(hs).map(|(g, h)| g.clone() * h.clone()));
                (lhs, rhs, None)
            }
            CertKind::RealH17 { f, g, hs } => {
                (f.clone() * g.clone().pow(2), sum(hs.iter().map(|h| h.clone().pow(2))), None)
            }
            CertKind::LambdaMembership { p, f, g, lambda } => (f.clone(), g.clone() * lambda.clone(), Some(*p)),
            CertKind::IntegralValued { .. } => return Err(KochenError::NotASeriesIdentity),
        })
    }

    pub fn verify(&self) -> Result<Verdict, KochenError> {
        if let CertKind::IntegralValued { f, g, h } = &self.kind {
            return verify_integral_valued(f, g, h);
        }
        let (lhs, rhs, p) = self.sides()?;
        // Polynomial identities are checked exactly by working at a degree
        // that holds every term.
        let order = match (lhs.poly_degree(p), rhs.poly_degree(p)) {
            (Some(a), Some(b)) => self.order.max(a).max(b),
            _ => self.order,
        };
        let ring = SeriesRing { nvars: self.nvars, order, prime: p };
        let l = lhs.eval_series(&ring)?;
        let r = rhs.eval_series(&ring)?;
        Ok(compare(&l, &r, order).with_order(self.order))
    }
}

impl Verdict {
    fn with_order(self, order: u32) -> Self {
        match self {
            Verdict::Verified { exact, .. } => Verdict::Verified { exact, order },
            Verdict::Refuted { discrepancy_degree, .. } => Verdict::Refuted { discrepancy_degree, order },
            Verdict::Inconclusive { .. } => Verdict::Inconclusive { order },
        }
    }
}

/// `l = r` after clearing denominators. A truncated non-unit denominator
/// of order `s` makes degrees above `order - s` unreliable.
fn compare(l: &Fraction, r: &Fraction, order: u32) -> Verdict {
    let diff = &(&l.num * &r.den) - &(&r.num * &l.den);
    let exact = l.is_exact() && r.is_exact() && diff.is_exact();
    let lost = if exact { 0 } else { l.den.min_degree().unwrap_or(0) + r.den.min_degree().unwrap_or(0) };
    let reliable = order.saturating_sub(lost);
    match diff.min_degree() {
        None if lost > 0 => Verdict::Inconclusive { order },
        None => Verdict::Verified { exact, order },
        Some(d) if exact || d <= reliable => Verdict::Refuted { discrepancy_degree: Some(d), order },
        Some(_) => Verdict::Inconclusive { order },
    }
}

/// `f = g h` modulo `p^N` with `h` integral.
pub fn verify_integral_valued(f: &TateElement, g: &TateElement, h: &TateElement) -> Result<Verdict, KochenError> {
    if let Extended::Finite(v) = h.gauss_norm() {
        if v < 0 {
            return Err(KochenError::NormViolation { valuation: v });
        }
    }
    let prod = g.checked_mul(h)?;
    let diff = f.checked_sub(&prod)?;
    let order = f.precision().min(prod.precision());
    Ok(if diff.is_zero() {
        Verdict::Verified { exact: true, order }
    } else {
        Verdict::Refuted { discrepancy_degree: None, order }
    })
}

/// The value of `lhs - rhs` at a rational point, for quick numeric checks.
pub fn residual_at(c: &Certificate, point: &[Rational]) -> Result<Rational, KochenError> {
    let (l, r, p) = c.sides()?;
    Ok(l.eval_at(point, p)? - r.eval_at(point, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;

    fn x(i: usize) -> CertExpr {
        CertExpr::var(i)
    }
    fn c(n: i64) -> CertExpr {
        CertExpr::constant(n)
    }

    #[test]
    fn padic_examples() {
        let trivial = Certificate {
            nvars: 1,
            order: 12,
            kind: CertKind::PAdicNss { p: 3, f: x(0), k: 1, g: c(0), gs: vec![x(0)], hs: vec![c(1)] },
        };
        assert_eq!(trivial.verify().unwrap(), Verdict::Verified { exact: true, order: 12 });

        let g1 = x(0) * (c(1) - c(3) * CertExpr::gamma(x(0)));
        let h1 = CertExpr::kfrac(c(1), CertExpr::gamma(x(0)));
        let worked = Certificate {
            nvars: 2,
            order: 12,
            kind: CertKind::PAdicNss { p: 3, f: x(0), k: 1, g: c(0), gs: vec![g1.clone()], hs: vec![h1] },
        };
        assert_eq!(worked.verify().unwrap(), Verdict::Verified { exact: false, order: 12 });

        let bad = Certificate {
            kind: CertKind::PAdicNss {
                p: 3,
                f: x(0),
                k: 1,
                g: c(0),
                gs: vec![g1],
                hs: vec![CertExpr::kfrac(c(1), CertExpr::gamma(x(1)))],
            },
            ..worked
        };
        assert!(matches!(bad.verify().unwrap(), Verdict::Refuted { discrepancy_degree: Some(_), .. }));
    }

    #[test]
    fn real_examples() {
        let h17 = Certificate {
            nvars: 2,
            order: 4,
            kind: CertKind::RealH17 { f: x(0).pow(2) + x(1).pow(2), g: c(1), hs: vec![x(0), x(1)] },
        };
        assert_eq!(h17.verify().unwrap(), Verdict::Verified { exact: true, order: 4 });

        let nss = Certificate {
            nvars: 1,
            order: 2,
            kind: CertKind::RealNss { f: x(0), k: 2, gs: vec![x(0).pow(3)], hs: vec![x(0)], bs: vec![] },
        };
        assert_eq!(nss.verify().unwrap(), Verdict::Verified { exact: true, order: 2 });

        let nss = Certificate {
            nvars: 2,
            order: 4,
            kind: CertKind::RealNss {
                f: x(0),
                k: 1,
                gs: vec![x(0).pow(2) + x(1).pow(2)],
                hs: vec![c(1)],
                bs: vec![x(1)],
            },
        };
        assert_eq!(nss.verify().unwrap(), Verdict::Verified { exact: true, order: 4 });
        assert_eq!(residual_at(&nss, &[rat(2), rat(5)]).unwrap(), rat(0));
    }

    #[test]
    fn integral_valued_examples() {
        let t = |terms: &[(u32, Rational)]| {
            TateElement::from_rational_terms(1, 3, 8, terms.iter().map(|(e, c)| (vec![*e], c.clone())))
        };
        let r = verify_integral_valued(&t(&[(1, rat(3))]), &t(&[(1, rat(1))]), &t(&[(0, rat(3))])).unwrap();
        assert!(r.is_verified());
        let r = verify_integral_valued(&t(&[(2, rat(1))]), &t(&[(1, rat(1))]), &t(&[(1, rat(1))])).unwrap();
        assert!(r.is_verified());
        let third = crate::coefficients::ratio(1, 3);
        assert_eq!(
            verify_integral_valued(&t(&[(1, rat(1))]), &t(&[(1, rat(3))]), &t(&[(0, third)])),
            Err(KochenError::NormViolation { valuation: -1 })
        );
    }
}

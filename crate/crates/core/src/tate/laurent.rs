//! Polynomials over truncated Laurent series in `t` with `|t| < 1`.
//!
//! The residue field here is `Q`, which is infinite, so a polynomial always
//! attains its Gauss norm at some point with integer residue coordinates.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::TateError;
use crate::coefficients::{Extended, Rational};
use crate::powerseries::graded::degree;
use crate::powerseries::Exponent;
use crate::valued::PuiseuxSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, PuiseuxSeries>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeOutcome {
    pub witness: Vec<u64>,
    /// t-adic valuation of the Gauss norm, `min_α v(f_α)`.
    pub norm_valuation: Rational,
    /// t-adic valuation of `f(witness)`.
    pub achieved_valuation: Rational,
    pub probes: u64,
}

impl LaurentPoly {
    pub fn new<E: Into<Exponent>>(nvars: usize, terms: impl IntoIterator<Item = (E, PuiseuxSeries)>) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            let e: Exponent = e.into();
            assert_eq!(e.len(), nvars, "exponent length must match the variable count");
            let entry = out.entry(e).or_insert_with(PuiseuxSeries::zero);
            *entry = &*entry + &c;
        }
        out.retain(|_, c: &mut PuiseuxSeries| !c.is_zero());
        LaurentPoly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, PuiseuxSeries> {
        &self.terms
    }

    /// `min_α v(f_α)`, infinite for the zero polynomial.
    pub fn gauss_valuation(&self) -> Extended<Rational> {
        self.terms.values().filter_map(|c| c.val().ok()).min().unwrap_or(Extended::Infinity)
    }

    /// The residue polynomial over `Q`: leading coefficients of the terms
    /// of minimal valuation.
    pub fn reduction(&self) -> BTreeMap<Exponent, Rational> {
        let v = match self.gauss_valuation() {
            Extended::Finite(v) => v,
            Extended::Infinity => return BTreeMap::new(),
        };
        self.terms
            .iter()
            .filter_map(|(e, c)| match c.leading() {
                Some((q, lc)) if q == v => Some((e.clone(), lc)),
                _ => None,
            })
            .collect()
    }

    /// `f(a)` at a point with rational coordinates.
    pub fn eval(&self, point: &[Rational]) -> PuiseuxSeries {
        assert_eq!(point.len(), self.nvars);
        let mut acc = PuiseuxSeries::zero();
        for (e, c) in &self.terms {
            let mut m = Rational::from_integer(1.into());
            for (x, k) in point.iter().zip(e.iter()) {
                for _ in 0..*k {
                    m *= x;
                }
            }
            acc = &acc + &c.scale_by(&m);
        }
        acc
    }
}

fn eval_rational(f: &BTreeMap<Exponent, Rational>, a: &[u64]) -> Rational {
    let mut s = Rational::zero();
    for (e, c) in f {
        let mut m = c.clone();
        for (x, k) in a.iter().zip(e.iter()) {
            m *= Rational::from_integer((*x).into()).pow(*k as i32);
        }
        s += m;
    }
    s
}

/// Searches `a ∈ {0..deg}^m` in lexicographic order (first coordinate
/// slowest) for a point where the residue polynomial does not vanish.
pub fn max_principle_probe(f: &LaurentPoly, budget: u64) -> Result<ProbeOutcome, TateError> {
    let norm_valuation = match f.gauss_valuation() {
        Extended::Finite(v) => v,
        Extended::Infinity => return Err(TateError::ZeroInput),
    };
    let red = f.reduction();
    let deg = red.keys().map(|e| degree(e)).max().unwrap_or(0) as u64;
    let m = f.nvars;
    let needed = (deg + 1).saturating_pow(m as u32);
    let mut a = vec![0u64; m];
    let mut probes = 0u64;
    loop {
        if probes >= budget {
            return Err(TateError::BudgetExhausted { budget, needed });
        }
        probes += 1;
        if !eval_rational(&red, &a).is_zero() {
            let pt: Vec<Rational> = a.iter().map(|x| Rational::from_integer((*x).into())).collect();
            let achieved_valuation = match f.eval(&pt).val() {
                Ok(Extended::Finite(v)) => v,
                _ => unreachable!("residue is nonzero so the value has a leading term"),
            };
            return Ok(ProbeOutcome { witness: a, norm_valuation, achieved_valuation, probes });
        }
        // odometer step, last coordinate fastest
        let mut i = m;
        loop {
            if i == 0 {
                unreachable!("a nonzero polynomial of degree {deg} cannot vanish on the whole grid");
            }
            i -= 1;
            if a[i] < deg {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;

    fn c(n: i64) -> PuiseuxSeries {
        PuiseuxSeries::constant(rat(n))
    }

    #[test]
    fn probe_examples() {
        let f = LaurentPoly::new(2, [(vec![1, 0], c(1))]);
        let out = max_principle_probe(&f, 100).unwrap();
        assert_eq!(out.witness, vec![1, 0]);
        assert_eq!(out.achieved_valuation, rat(0));

        let t = PuiseuxSeries::t_pow(&rat(1));
        let f = LaurentPoly::new(1, [(vec![0], t), (vec![1], c(1))]);
        let out = max_principle_probe(&f, 100).unwrap();
        assert_eq!(out.witness, vec![1]);
        assert_eq!(out.achieved_valuation, out.norm_valuation);

        // (X-1)(X-2)
        let f = LaurentPoly::new(1, [(vec![2], c(1)), (vec![1], c(-3)), (vec![0], c(2))]);
        let out = max_principle_probe(&f, 100).unwrap();
        assert_eq!(out.witness, vec![0]);
        assert!(f.eval(&[rat(1)]).is_zero());
    }

    #[test]
    fn budget_and_zero() {
        let f = LaurentPoly::new(1, [(vec![1], c(1))]);
        assert_eq!(max_principle_probe(&f, 1), Err(TateError::BudgetExhausted { budget: 1, needed: 2 }));
        let z = LaurentPoly::new(1, Vec::<(Vec<u32>, PuiseuxSeries)>::new());
        assert_eq!(max_principle_probe(&z, 10), Err(TateError::ZeroInput));
    }
}

//! `f(a) = Σ f_α a^α` for a truncated formal series `f` and a point `a`
//! whose coordinates have positive t-adic valuation.

use super::{PuiseuxSeries, ValuedError};
use crate::coefficients::{Extended, Rational};
use crate::powerseries::FormalSeries;

pub fn eval_infinitesimal(f: &FormalSeries<Rational>, a: &[PuiseuxSeries]) -> Result<PuiseuxSeries, ValuedError> {
    if a.len() != f.nvars() {
        return Err(ValuedError::WrongArity { expected: f.nvars(), found: a.len() });
    }
    let mut mu: Option<Rational> = None;
    for (i, x) in a.iter().enumerate() {
        match x.val()? {
            Extended::Infinity => {}
            Extended::Finite(v) if v > Rational::from_integer(0.into()) => {
                mu = Some(mu.map_or(v.clone(), |m| m.min(v)));
            }
            Extended::Finite(_) => return Err(ValuedError::NotInfinitesimal { index: i }),
        }
    }
    // Terms of degree > D were dropped from f; they contribute at t-order
    // at least (D+1)·μ.
    let cap = match &mu {
        Some(m) if !f.is_exact() => Some(m * Rational::from_integer((f.order() as i64 + 1).into())),
        _ => None,
    };
    let clip = |s: PuiseuxSeries| match &cap {
        Some(c) => s.truncate_at(c),
        None => s,
    };
    let max_deg = f.order() as usize;
    let powers: Vec<Vec<PuiseuxSeries>> = a
        .iter()
        .map(|x| {
            let mut v = vec![PuiseuxSeries::one()];
            for k in 1..=max_deg {
                let next = clip(&v[k - 1] * x);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = clip(PuiseuxSeries::zero());
    for (e, c) in f.terms() {
        let mut m = PuiseuxSeries::constant(c.clone());
        for (i, k) in e.iter().enumerate() {
            if *k > 0 {
                m = clip(&m * &powers[i][*k as usize]);
            }
        }
        acc = &acc + &m;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, ratio};

    #[test]
    fn eval_examples() {
        let x1 = FormalSeries::<Rational>::var(0, 2, 6);
        let x2 = FormalSeries::<Rational>::var(1, 2, 6);
        let t = PuiseuxSeries::t_pow(&rat(1));
        let t32 = PuiseuxSeries::t_pow(&ratio(3, 2));
        let out = eval_infinitesimal(&(&x1 + &x2), &[t.clone(), t32.clone()]).unwrap();
        assert_eq!(out, &t + &t32);

        let one = FormalSeries::<Rational>::one(1, 4);
        let geo = one.checked_div(&(&one - &FormalSeries::var(0, 1, 4))).unwrap();
        let out = eval_infinitesimal(&geo, std::slice::from_ref(&t)).unwrap();
        assert_eq!(out.to_string(), "1 + t + t^2 + t^3 + t^4 + O(t^5)");

        let sq = FormalSeries::<Rational>::var(0, 1, 4).pow(2);
        let out = eval_infinitesimal(&sq, &[PuiseuxSeries::t_pow(&ratio(1, 2))]).unwrap();
        assert_eq!(out, t);

        assert_eq!(eval_infinitesimal(&sq, &[PuiseuxSeries::one()]), Err(ValuedError::NotInfinitesimal { index: 0 }));
    }
}

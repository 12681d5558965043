//! Substitution of infinitesimal series, shears and regularization.

use super::graded::{self, degree, Grading, Terms};
use super::{FormalSeries, Regularity, SeriesError};
use crate::coefficients::Field;

/// Default upper bound for the shear parameter searched by [`regularize`].
pub const DEFAULT_SHEAR_BOUND: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Regularization<C: Field> {
    pub d: u32,
    pub sheared: Vec<FormalSeries<C>>,
    /// Regularity order of each sheared series in the last variable.
    pub orders: Vec<u32>,
}

/// `f(g_1, …, g_n)` for series `g_i` in `m` variables with `g_i(0) = 0`.
/// The result is truncated at the smallest order involved.
pub fn substitute<C: Field>(f: &FormalSeries<C>, gs: &[FormalSeries<C>]) -> Result<FormalSeries<C>, SeriesError> {
    if gs.len() != f.nvars() {
        return Err(SeriesError::WrongArity { expected: f.nvars(), found: gs.len() });
    }
    let m = match gs.first() {
        Some(g) => g.nvars(),
        None => {
            // f is a constant series; nothing to substitute.
            return Ok(f.clone());
        }
    };
    for (i, g) in gs.iter().enumerate() {
        if g.nvars() != m {
            return Err(SeriesError::VariableCountMismatch { left: m, right: g.nvars() });
        }
        if !g.constant_term().is_zero() {
            return Err(SeriesError::NonInfinitesimalArgument { index: i });
        }
    }
    let order = gs.iter().map(|g| g.order()).fold(f.order(), u32::min);
    let grading = Grading::total(m, order as u64);
    let gs: Vec<Terms<C>> = gs.iter().map(|g| g.truncate(order).into_terms()).collect();

    // powers[i][k] = g_i^k, built lazily up to the largest exponent used.
    let mut powers: Vec<Vec<Terms<C>>> = vec![
        vec![{
            let mut one = Terms::new();
            one.insert(graded::zero_exponent(m), C::one());
            one
        }];
        gs.len()
    ];
    let mut out = Terms::new();
    for (alpha, c) in f.terms() {
        if degree(alpha) > order {
            continue;
        }
        let mut prod: Terms<C> = Terms::new();
        prod.insert(graded::zero_exponent(m), c.clone());
        for (i, a) in alpha.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            while powers[i].len() <= *a as usize {
                let next = graded::mul(powers[i].last().unwrap(), &gs[i], &grading);
                powers[i].push(next);
            }
            prod = graded::mul(&prod, &powers[i][*a as usize], &grading);
        }
        for (e, x) in prod {
            graded::accumulate(&mut out, e, x);
        }
    }
    Ok(FormalSeries::from_map(m, order, false, out))
}

/// Substitution with exactness tracked: the result is exact when every
/// input is and no term was truncated.
fn substitute_tracked<C: Field>(f: &FormalSeries<C>, gs: &[FormalSeries<C>]) -> Result<FormalSeries<C>, SeriesError> {
    let out = substitute(f, gs)?;
    let dg = gs.iter().map(|g| g.total_degree().unwrap_or(0)).max().unwrap_or(0);
    let df = f.total_degree().unwrap_or(0);
    let exact = f.is_exact() && gs.iter().all(|g| g.is_exact()) && df * dg <= out.order();
    Ok(out.with_exactness(exact))
}

/// The shear `X_i ↦ X_i ± X_m^{d^{m-i}}` (1-based `i < m`), `X_m ↦ X_m`.
pub fn tau_shear<C: Field>(f: &FormalSeries<C>, d: u32, direction: Direction) -> FormalSeries<C> {
    let m = f.nvars();
    if m == 0 {
        return f.clone();
    }
    let order = f.order();
    let sign = match direction {
        Direction::Forward => C::one(),
        Direction::Inverse => C::one().negate(),
    };
    let gs: Vec<FormalSeries<C>> = (0..m)
        .map(|i| {
            let xi = FormalSeries::var(i, m, order);
            if i + 1 == m {
                return xi;
            }
            let mut e = graded::zero_exponent(m);
            match d.checked_pow((m - 1 - i) as u32) {
                Some(k) => e[m - 1] = k,
                None => return xi.truncated(),
            }
            let shift = FormalSeries::from_terms(m, order, [(e, sign.clone())]);
            &xi + &shift
        })
        .collect();
    substitute_tracked(f, &gs).expect("shear arguments are infinitesimal")
}

/// Smallest `d` in `1..=bound` for which every `τ_d(f_i)` is regular in the
/// last variable.
pub fn regularize<C: Field>(fs: &[FormalSeries<C>], bound: u32) -> Result<Regularization<C>, SeriesError> {
    let m = match fs.first() {
        Some(f) => f.nvars(),
        None => return Ok(Regularization { d: 1, sheared: vec![], orders: vec![] }),
    };
    for f in fs {
        if f.nvars() != m {
            return Err(SeriesError::VariableCountMismatch { left: m, right: f.nvars() });
        }
        if f.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
    }
    if m == 0 {
        return Err(SeriesError::VariableOutOfRange { index: 0, nvars: 0 });
    }
    'search: for d in 1..=bound {
        let mut sheared = Vec::with_capacity(fs.len());
        let mut orders = Vec::with_capacity(fs.len());
        for f in fs {
            let s = tau_shear(f, d, Direction::Forward);
            match s.regularity(m - 1).status {
                Regularity::Regular(k) => orders.push(k),
                _ => continue 'search,
            }
            sheared.push(s);
        }
        return Ok(Regularization { d, sheared, orders });
    }
    Err(SeriesError::RegularizationFailed { bound })
}

//! Newton lifting in the formal power series ring: k-th roots of series
//! with a k-th power constant term, and the implicit function theorem.

use super::subst::substitute;
use super::{FormalSeries, SeriesError};
use crate::coefficients::Field;

/// `g` with `g^k = f` modulo degree `D`, `g(0)` the field's preferred root
/// of `f(0)`.
pub fn hensel_root_series<C: Field>(f: &FormalSeries<C>, k: u32) -> Result<FormalSeries<C>, SeriesError> {
    assert!(k >= 1, "root index must be positive");
    let a = f.constant_term().kth_root(k).ok_or(SeriesError::NoConstantRoot { k })?;
    hensel_root_series_with_branch(f, k, a)
}

/// As [`hensel_root_series`] with the constant term of the root prescribed.
pub fn hensel_root_series_with_branch<C: Field>(
    f: &FormalSeries<C>,
    k: u32,
    a: C,
) -> Result<FormalSeries<C>, SeriesError> {
    assert!(k >= 1, "root index must be positive");
    let f0 = f.constant_term();
    if f0.is_zero() || a.pow(k) != f0 {
        return Err(SeriesError::NoConstantRoot { k });
    }
    let (m, order) = (f.nvars(), f.order());
    let inv_k = C::from_i64(k as i64).inverse().expect("characteristic zero");
    let km1 = C::from_i64(k as i64 - 1);
    let mut g = FormalSeries::constant(a, m, order);
    // Quadratic convergence: the number of correct degrees doubles.
    let rounds = 64 - (order as u64 + 1).leading_zeros() + 2;
    for _ in 0..rounds {
        // g <- ((k-1) g + f / g^{k-1}) / k
        let t = f.checked_div(&g.pow(k - 1))?;
        let next = (&g.scale(&km1) + &t).scale(&inv_k);
        if next == g {
            break;
        }
        g = next;
    }
    let fits = g.total_degree().unwrap_or(0) * k <= order;
    let exact = f.is_exact() && fits && g.pow(k) == *f;
    Ok(g.with_exactness(exact))
}

/// Solves `f_i(X, y(X)) = 0` for `y(0) = 0`, where each `f_i` lives in the
/// variables `X_1 … X_m, Y_1 … Y_n` with `n = fs.len()`.
pub fn implicit_solve<C: Field>(fs: &[FormalSeries<C>]) -> Result<Vec<FormalSeries<C>>, SeriesError> {
    let n = fs.len();
    let total = fs.first().map(|f| f.nvars()).unwrap_or(0);
    if n == 0 || total < n {
        return Err(SeriesError::WrongArity { expected: total, found: n });
    }
    for f in fs {
        if f.nvars() != total {
            return Err(SeriesError::VariableCountMismatch { left: total, right: f.nvars() });
        }
    }
    for (i, f) in fs.iter().enumerate() {
        if !f.constant_term().is_zero() {
            return Err(SeriesError::NotZeroAtOrigin { index: i });
        }
    }
    let m = total - n;
    let order = fs.iter().map(|f| f.order()).min().unwrap();
    let jac: Vec<Vec<C>> = fs
        .iter()
        .map(|f| {
            (0..n)
                .map(|j| {
                    let mut e = vec![0u32; total];
                    e[m + j] = 1;
                    f.coeff(&e)
                })
                .collect()
        })
        .collect();
    let jinv = invert_matrix(jac).ok_or(SeriesError::SingularJacobian)?;

    let xs: Vec<FormalSeries<C>> = (0..m).map(|i| FormalSeries::var(i, m, order)).collect();
    let mut ys: Vec<FormalSeries<C>> = vec![FormalSeries::zero(m, order); n];
    // Chord iteration with the Jacobian frozen at the origin: each round
    // fixes at least one more degree.
    for _ in 0..=order + 1 {
        let args: Vec<FormalSeries<C>> = xs.iter().chain(ys.iter()).cloned().collect();
        let resid: Vec<FormalSeries<C>> = fs.iter().map(|f| substitute(f, &args)).collect::<Result<_, _>>()?;
        if resid.iter().all(|r| r.is_zero()) {
            break;
        }
        for (j, y) in ys.iter_mut().enumerate() {
            let mut corr = FormalSeries::zero(m, order);
            for (i, r) in resid.iter().enumerate() {
                corr = &corr + &r.scale(&jinv[j][i]);
            }
            *y = &*y - &corr;
        }
    }
    Ok(ys.into_iter().map(|y| y.truncated()).collect())
}

/// Gauss-Jordan inverse over a field.
pub(crate) fn invert_matrix<C: Field>(mut a: Vec<Vec<C>>) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut inv: Vec<Vec<C>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].inverse()?;
        for j in 0..n {
            a[col][j] = a[col][j].times(&s);
            inv[col][j] = inv[col][j].times(&s);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].minus(&factor.times(&a[col][j]));
                    inv[r][j] = inv[r][j].minus(&factor.times(&inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

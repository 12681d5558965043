//! Weierstrass division and preparation with respect to the last variable.
//!
//! Both inputs are read as polynomials (their stored terms). Internally the
//! computation runs in the weighted grading `wt(X') = d`, `wt(X_m) = 1`,
//! in which division by a series regular of order `d` is a filtered
//! operation: the weighted truncation of the quotient and remainder only
//! depends on the weighted truncation of the inputs. Cutting at weight
//! `d·D` for quotients and `d·(D+1)` for remainders therefore returns the
//! exact division of the stored polynomials, reported up to total degree `D`.

use super::graded::{self, Grading, Terms};
use super::{FormalSeries, Regularity, SeriesError};
use crate::coefficients::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Division<C: Field> {
    pub quotient: FormalSeries<C>,
    /// Polynomial in the last variable of degree `< degree`.
    pub remainder: FormalSeries<C>,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreparedForm<C: Field> {
    pub unit: FormalSeries<C>,
    /// `X_m^d + w_1 X_m^{d-1} + … + w_d` with `w_i(0) = 0`.
    pub wpoly: FormalSeries<C>,
    pub degree: u32,
}

impl<C: Field> PreparedForm<C> {
    /// `w_i` as a series in the first `m - 1` variables (`w_0 = 1`).
    pub fn coefficient(&self, i: u32) -> FormalSeries<C> {
        let m = self.wpoly.nvars();
        let want = self.degree.checked_sub(i);
        let terms = self
            .wpoly
            .terms()
            .iter()
            .filter(|(e, _)| Some(e[m - 1]) == want)
            .map(|(e, c)| (e[..m - 1].to_vec(), c.clone()));
        FormalSeries::from_terms(m - 1, self.wpoly.order(), terms)
    }

    /// `u·w`, which reproduces the prepared series up to the order.
    pub fn product(&self) -> FormalSeries<C> {
        &self.unit * &self.wpoly
    }
}

struct Setup<C: Field> {
    m: usize,
    d: u32,
    order: u32,
    /// Cutoff for remainders and dividends: `d·(D+1)`.
    gh: Grading,
    /// Cutoff for quotients: `d·D`.
    gq: Grading,
    g_low: Terms<C>,
    e: Terms<C>,
}

fn setup<C: Field>(g: &FormalSeries<C>) -> Result<Setup<C>, SeriesError> {
    let m = g.nvars();
    if m == 0 {
        return Err(SeriesError::VariableOutOfRange { index: 0, nvars: 0 });
    }
    let l = m - 1;
    let d = match g.regularity(l).status {
        Regularity::Regular(d) => d,
        _ => return Err(SeriesError::NotRegular { var: l }),
    };
    let order = g.order();
    let (gh, gq) = if d == 0 {
        (Grading::total(m, order as u64), Grading::total(m, order as u64))
    } else {
        (Grading::weierstrass(m, d, d as u64 * (order as u64 + 1)), Grading::weierstrass(m, d, d as u64 * order as u64))
    };
    let mut g_low = Terms::new();
    let mut e = Terms::new();
    for (x, c) in g.terms() {
        if x[l] < d {
            g_low.insert(x.clone(), c.clone());
        } else {
            let mut y = x.clone();
            y[l] -= d;
            e.insert(y, c.clone());
        }
    }
    Ok(Setup { m, d, order, gh, gq, g_low, e })
}

fn split<C: Field>(h: &Terms<C>, l: usize, d: u32) -> (Terms<C>, Terms<C>) {
    let mut lead = Terms::new();
    let mut low = Terms::new();
    for (x, c) in h {
        if x[l] >= d {
            let mut y = x.clone();
            y[l] -= d;
            lead.insert(y, c.clone());
        } else {
            low.insert(x.clone(), c.clone());
        }
    }
    (lead, low)
}

/// Fixed point `q = Lead(f - q·g_low) / e`, `r = Low(f - q·g_low)`.
/// Each round raises the `X'`-adic order of the correction by one.
fn fixed_point<C: Field>(f: &Terms<C>, s: &Setup<C>) -> (Terms<C>, Terms<C>) {
    let l = s.m - 1;
    if s.d == 0 {
        let q = graded::div_unit(f, &s.e, &s.gq).expect("regular of order 0 means a unit");
        return (q, Terms::new());
    }
    let f = graded::truncate(f, &s.gh);
    let mut q = Terms::new();
    let rounds = s.gq.cutoff / s.d as u64 + 3;
    for _ in 0..rounds {
        let h = graded::sub(&f, &graded::mul(&q, &s.g_low, &s.gh));
        let (lead, low) = split(&h, l, s.d);
        let next = graded::div_unit(&lead, &s.e, &s.gq).expect("e(0) is nonzero");
        if next == q {
            return (q, low);
        }
        q = next;
    }
    panic!("Weierstrass fixed point did not stabilise; the X'-adic contraction bound was violated");
}

/// Euclidean division of `f` by a polynomial `w` monic of degree `d` in the
/// last variable, carried out in the grading `gh`.
fn euclid_monic<C: Field>(f: &Terms<C>, w: &Terms<C>, d: u32, m: usize, gh: &Grading) -> (Terms<C>, Terms<C>) {
    let l = m - 1;
    let tail: Terms<C> = w.iter().filter(|(x, _)| x[l] < d).map(|(x, c)| (x.clone(), c.clone())).collect();
    let mut rest = graded::truncate(f, gh);
    let mut quot = Terms::new();
    loop {
        let top = match rest.keys().map(|x| x[l]).max() {
            Some(k) if k >= d => k,
            _ => break,
        };
        let mut chunk = Terms::new();
        rest.retain(|x, c| {
            if x[l] == top {
                let mut y = x.clone();
                y[l] -= d;
                chunk.insert(y, c.clone());
                false
            } else {
                true
            }
        });
        rest = graded::sub(&rest, &graded::mul(&chunk, &tail, gh));
        quot = graded::add(&quot, &chunk);
    }
    (quot, rest)
}

fn to_series<C: Field>(m: usize, order: u32, terms: Terms<C>) -> FormalSeries<C> {
    FormalSeries::from_map(m, order, false, terms)
}

/// Marks quotient and remainder exact when `f = q·g + r` holds identically.
fn finish<C: Field>(f: &FormalSeries<C>, g: &FormalSeries<C>, q: Terms<C>, r: Terms<C>, s: &Setup<C>) -> Division<C> {
    let mut quotient = to_series(s.m, s.order, q);
    let mut remainder = to_series(s.m, s.order, r);
    if f.is_exact() && g.is_exact() {
        let qg = graded::mul_full(quotient.terms(), g.terms(), s.m);
        if graded::add(&qg, remainder.terms()) == *f.terms() {
            quotient = quotient.with_exactness(true);
            remainder = remainder.with_exactness(true);
        }
    }
    Division { quotient, remainder, degree: s.d }
}

fn check_pair<C: Field>(
    f: &FormalSeries<C>,
    g: &FormalSeries<C>,
) -> Result<(FormalSeries<C>, FormalSeries<C>), SeriesError> {
    if f.nvars() != g.nvars() {
        return Err(SeriesError::VariableCountMismatch { left: f.nvars(), right: g.nvars() });
    }
    let order = f.order().min(g.order());
    Ok((f.truncate(order), g.truncate(order)))
}

/// `f = q·g + r` with `deg_{X_m} r < d`, for `g` regular of order `d` in
/// the last variable.
pub fn weierstrass_divide<C: Field>(f: &FormalSeries<C>, g: &FormalSeries<C>) -> Result<Division<C>, SeriesError> {
    let (f, g) = check_pair(f, g)?;
    let s = setup(&g)?;
    let (q, r) = fixed_point(f.terms(), &s);
    Ok(finish(&f, &g, q, r, &s))
}

/// Same division computed by a second route: prepare `g = u·w`, divide `f`
/// by the monic `w` with the Euclidean algorithm in `X_m`, then multiply
/// the quotient by `u^{-1}`.
pub fn weierstrass_divide_via_preparation<C: Field>(
    f: &FormalSeries<C>,
    g: &FormalSeries<C>,
) -> Result<Division<C>, SeriesError> {
    let (f, g) = check_pair(f, g)?;
    let s = setup(&g)?;
    if s.d == 0 {
        let (q, r) = fixed_point(f.terms(), &s);
        return Ok(finish(&f, &g, q, r, &s));
    }
    let (q0, w) = prepare_terms(&s);
    let (big_q, r) = euclid_monic(f.terms(), &w, s.d, s.m, &s.gh);
    let q = graded::mul(&big_q, &q0, &s.gq);
    Ok(finish(&f, &g, q, r, &s))
}

/// `X_m^d = q0·g + r0` and `w = X_m^d - r0`.
fn prepare_terms<C: Field>(s: &Setup<C>) -> (Terms<C>, Terms<C>) {
    let mut xd = graded::zero_exponent(s.m);
    xd[s.m - 1] = s.d;
    let mut pure = Terms::new();
    pure.insert(xd, C::one());
    let (q0, r0) = fixed_point(&pure, s);
    let w = graded::sub(&pure, &r0);
    (q0, w)
}

/// `g = u·w` with `u` a unit and `w` a Weierstrass polynomial in the last
/// variable.
pub fn weierstrass_prepare<C: Field>(g: &FormalSeries<C>) -> Result<PreparedForm<C>, SeriesError> {
    let s = setup(g)?;
    let (unit, wpoly) = if s.d == 0 {
        (graded::truncate(g.terms(), &s.gq), {
            let mut one = Terms::new();
            one.insert(graded::zero_exponent(s.m), C::one());
            one
        })
    } else {
        let (q0, w) = prepare_terms(&s);
        let mut one = Terms::new();
        one.insert(graded::zero_exponent(s.m), C::one());
        let u = graded::div_unit(&one, &q0, &s.gq).expect("q0 is a unit");
        (u, w)
    };
    let mut unit = to_series(s.m, s.order, unit);
    let mut wpoly = to_series(s.m, s.order, wpoly);
    if g.is_exact() && graded::mul_full(unit.terms(), wpoly.terms(), s.m) == *g.terms() {
        unit = unit.with_exactness(true);
        wpoly = wpoly.with_exactness(true);
    }
    Ok(PreparedForm { unit, wpoly, degree: s.d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{rat, Rational};

    type S = FormalSeries<Rational>;

    fn x(i: usize) -> S {
        S::var(i, 2, 8)
    }

    fn c(n: i64) -> S {
        S::constant(rat(n), 2, 8)
    }

    #[test]
    fn division_examples() {
        let g = &x(1) - &x(0);
        let d = weierstrass_divide(&x(0), &g).unwrap();
        assert!(d.quotient.is_zero());
        assert_eq!(d.remainder, x(0));

        let d = weierstrass_divide(&x(1).pow(2), &g).unwrap();
        assert_eq!(d.quotient.to_string(), "X1 + X2");
        assert_eq!(d.remainder.to_string(), "X1^2");
        assert!(d.quotient.is_exact());

        let g = &x(1).pow(2) - &x(0);
        let d = weierstrass_divide(&x(1).pow(3), &g).unwrap();
        assert_eq!(d.quotient, x(1));
        assert_eq!(d.remainder, &x(0) * &x(1));
        assert_eq!(d.degree, 2);
    }

    #[test]
    fn both_paths_agree() {
        let g = &(&(&x(1).pow(2) - &x(0)) + &(&x(0) * &x(1).pow(3))) + &(&x(0).pow(2) * &x(1));
        let f = &(&x(1).pow(5) + &(&c(3) * &x(0).pow(2))) + &(&x(0) * &x(1).pow(4));
        let a = weierstrass_divide(&f, &g).unwrap();
        let b = weierstrass_divide_via_preparation(&f, &g).unwrap();
        assert_eq!(a, b);
        let back = &(&a.quotient * &g) + &a.remainder;
        assert_eq!(back, f);
        assert!(a.remainder.terms().keys().all(|e| e[1] < 2));
    }

    #[test]
    fn not_regular_is_rejected() {
        assert_eq!(weierstrass_divide(&x(1), &x(0)), Err(SeriesError::NotRegular { var: 1 }));
    }

    #[test]
    fn preparation_examples() {
        let p = weierstrass_prepare(&x(1)).unwrap();
        assert_eq!(p.unit, c(1));
        assert_eq!(p.wpoly, x(1));

        let p = weierstrass_prepare(&(&c(2) * &x(1))).unwrap();
        assert_eq!(p.unit, c(2));
        assert_eq!(p.wpoly, x(1));

        let g = &(&(&c(1) + &x(0)) * &x(1)) + &x(0);
        let p = weierstrass_prepare(&g).unwrap();
        assert_eq!(p.unit, &c(1) + &x(0));
        let expected = &x(1) + &x(0).checked_div(&(&c(1) + &x(0))).unwrap();
        assert_eq!(p.wpoly, expected);
        assert_eq!(p.product(), g);
        assert_eq!(p.coefficient(0).to_string(), "1");
        assert_eq!(p.coefficient(1).constant_term(), rat(0));
    }

    #[test]
    fn unit_divisor() {
        let g = &c(1) - &x(1);
        let d = weierstrass_divide(&x(0), &g).unwrap();
        assert_eq!(d.degree, 0);
        assert!(d.remainder.is_zero());
        assert_eq!(&d.quotient * &g, x(0));
    }
}

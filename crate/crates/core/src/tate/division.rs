//! Weierstrass division and preparation in `Z_p<X>` modulo `p^N`.
//!
//! Each round divides the reduction mod `p` by the monic reduction of the
//! divisor over `F_p[X'][X_m]`; the defect is divisible by `p` and is
//! carried into the next round. After `N` rounds the identity holds
//! exactly modulo `p^N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{zt_add, zt_mul, zt_sub, zt_unit_inverse, TateElement, TateError, ZTerms};
use crate::coefficients::{big_pow, mod_inverse, modulo};
use crate::powerseries::Exponent;

#[derive(Clone, Debug, PartialEq)]
pub struct TateDivision {
    pub quotient: TateElement,
    /// Polynomial in the last variable of degree `< degree`.
    pub remainder: TateElement,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TatePrepared {
    pub unit: TateElement,
    /// Monic in the last variable of degree `degree`.
    pub wpoly: TateElement,
    pub degree: u32,
}

type FpTerms = BTreeMap<Exponent, u64>;

fn fp_accumulate(t: &mut FpTerms, e: Exponent, c: u64, p: u64) {
    let entry = t.entry(e.clone()).or_insert(0);
    *entry = (*entry + c) % p;
    if *entry == 0 {
        t.remove(&e);
    }
}

/// Euclidean division over `F_p[X'][X_m]` by `g`, whose top term in the
/// last variable is `lead·X_m^d`.
fn euclid_fp(f: &FpTerms, g: &FpTerms, d: u32, lead: u64, p: u64) -> (FpTerms, FpTerms) {
    let l = g.keys().next().map(|e| e.len() - 1).unwrap_or(0);
    let inv = mod_inverse(&BigInt::from(lead), &BigInt::from(p)).unwrap();
    let inv: u64 = inv.try_into().unwrap();
    let mut rest = f.clone();
    let mut quot = FpTerms::new();
    loop {
        let top = match rest.keys().map(|e| e[l]).max() {
            Some(k) if k >= d => k,
            _ => break,
        };
        let chunk: Vec<(Exponent, u64)> = rest
            .iter()
            .filter(|(e, _)| e[l] == top)
            .map(|(e, c)| {
                let mut y = e.clone();
                y[l] -= d;
                (y, c * inv % p)
            })
            .collect();
        for (y, c) in chunk {
            for (ge, gc) in g {
                let e: Exponent = y.iter().zip(ge.iter()).map(|(a, b)| a + b).collect();
                fp_accumulate(&mut rest, e, (p - c * gc % p) % p, p);
            }
            fp_accumulate(&mut quot, y, c, p);
        }
    }
    (quot, rest)
}

fn lift(t: &FpTerms) -> ZTerms {
    t.iter().map(|(e, c)| (e.clone(), BigInt::from(*c))).collect()
}

fn reduce_mod_p(t: &ZTerms, p: u64) -> FpTerms {
    let pb = BigInt::from(p);
    t.iter()
        .filter_map(|(e, c)| {
            let r: u64 = modulo(c, &pb).try_into().unwrap();
            (r != 0).then(|| (e.clone(), r))
        })
        .collect()
}

/// Integral division `F = Q·G + R` modulo `p^width` for normalized `G`.
fn divide_integral(f: &ZTerms, g: &TateElement, d: u32, width: u32) -> (ZTerms, ZTerms) {
    let p = g.p;
    let l = g.nvars - 1;
    let m = big_pow(p, width);
    let g_red = g.reduction();
    let lead = g_red.iter().find(|(e, _)| e[l] == d).map(|(_, c)| *c).unwrap();
    let pb = BigInt::from(p);
    let mut resid = super::zt_reduce(f, &m);
    let mut q = ZTerms::new();
    let mut r = ZTerms::new();
    let mut pk = BigInt::from(1);
    for _ in 0..width {
        if resid.is_empty() {
            break;
        }
        let (qb, rb) = euclid_fp(&reduce_mod_p(&resid, p), &g_red, d, lead, p);
        let (ql, rl) = (lift(&qb), lift(&rb));
        let defect = zt_sub(&zt_sub(&resid, &zt_mul(&ql, &g.terms, &m), &m), &rl, &m);
        q = zt_add(&q, &super::zt_scale(&ql, &pk, &m), &m);
        r = zt_add(&r, &super::zt_scale(&rl, &pk, &m), &m);
        resid = defect
            .into_iter()
            .map(|(e, c)| {
                debug_assert!(c.is_multiple_of(&pb));
                (e, c / &pb)
            })
            .collect();
        pk *= &pb;
    }
    (q, r)
}

fn regular_degree(g: &TateElement) -> Result<u32, TateError> {
    if g.nvars == 0 {
        return Err(TateError::NotRegular { var: 0 });
    }
    Ok(g.tate_regularity(g.nvars - 1)?.degree)
}

/// `f = q·g + r` exactly modulo `p^N`, for `g` regular in the last
/// variable.
pub fn tate_divide(f: &TateElement, g: &TateElement) -> Result<TateDivision, TateError> {
    f.same_ring(g)?;
    let d = regular_degree(g)?;
    let width = f.prec.min(g.prec);
    let (nv, p) = (f.nvars, f.p);
    if f.is_zero() {
        let z = TateElement::zero(nv, p, width);
        return Ok(TateDivision { quotient: z.clone(), remainder: z, degree: d });
    }
    let (q, r) = divide_integral(&f.terms, g, d, width);
    Ok(TateDivision {
        quotient: TateElement::normalize(nv, p, width, f.scale - g.scale, &q),
        remainder: TateElement::normalize(nv, p, width, f.scale, &r),
        degree: d,
    })
}

/// `g = u·w` with `u` a unit of `K<X>` and `w` monic of degree `d` in the
/// last variable, obtained by dividing `X_m^d` by `g`.
pub fn tate_prepare(g: &TateElement) -> Result<TatePrepared, TateError> {
    let d = regular_degree(g)?;
    let (nv, p, width) = (g.nvars, g.p, g.prec);
    let m = big_pow(p, width);
    let mut xd = ZTerms::new();
    let mut e = crate::powerseries::graded::zero_exponent(nv);
    e[nv - 1] = d;
    xd.insert(e, BigInt::from(1));
    let (q0, r0) = divide_integral(&xd, g, d, width);
    let w = zt_sub(&xd, &r0, &m);
    let u = zt_unit_inverse(&q0, nv, p, width).expect("quotient of X_m^d by a regular element is a unit");
    debug_assert_eq!(zt_mul(&u, &w, &m), super::zt_reduce(&g.terms, &m));
    Ok(TatePrepared {
        unit: TateElement::normalize(nv, p, width, g.scale, &u),
        wpoly: TateElement::normalize(nv, p, width, 0, &w),
        degree: d,
    })
}

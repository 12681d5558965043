//! Sparse term maps truncated along a weighted grading.
//!
//! With every weight equal to 1 this is the usual total-degree truncation.
//! Weierstrass division runs with weight `d` on `X'` and weight 1 on `X_m`,
//! which makes `X_m^d` and a linear form in `X'` the same size.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::Exponent;
use crate::coefficients::Field;

pub(crate) type Terms<C> = BTreeMap<Exponent, C>;

#[derive(Clone, Debug)]
pub(crate) struct Grading {
    pub weights: Vec<u64>,
    pub cutoff: u64,
}

impl Grading {
    pub fn total(nvars: usize, cutoff: u64) -> Self {
        Grading { weights: vec![1; nvars], cutoff }
    }

    /// Weight `d` on the first `nvars - 1` variables, 1 on the last.
    pub fn weierstrass(nvars: usize, d: u32, cutoff: u64) -> Self {
        let mut weights = vec![d as u64; nvars];
        if let Some(last) = weights.last_mut() {
            *last = 1;
        }
        Grading { weights, cutoff }
    }

    pub fn weight(&self, e: &[u32]) -> u64 {
        e.iter().zip(&self.weights).map(|(a, w)| *a as u64 * w).sum()
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }
}

pub(crate) fn exp_add(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn zero_exponent(nvars: usize) -> Exponent {
    SmallVec::from_elem(0, nvars)
}

pub(crate) fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// `map[k] += c`, dropping the entry if it cancels.
pub(crate) fn accumulate<K: Ord, C: Field>(map: &mut BTreeMap<K, C>, k: K, c: C) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().plus(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn truncate<C: Field>(t: &Terms<C>, g: &Grading) -> Terms<C> {
    t.iter().filter(|(e, _)| g.weight(e) <= g.cutoff).map(|(e, c)| (e.clone(), c.clone())).collect()
}

pub(crate) fn add<C: Field>(a: &Terms<C>, b: &Terms<C>) -> Terms<C> {
    let mut out = a.clone();
    for (e, c) in b {
        accumulate(&mut out, e.clone(), c.clone());
    }
    out
}

pub(crate) fn sub<C: Field>(a: &Terms<C>, b: &Terms<C>) -> Terms<C> {
    let mut out = a.clone();
    for (e, c) in b {
        accumulate(&mut out, e.clone(), c.negate());
    }
    out
}

pub(crate) fn mul<C: Field>(a: &Terms<C>, b: &Terms<C>, g: &Grading) -> Terms<C> {
    let bw: Vec<(u64, &Exponent, &C)> = b.iter().map(|(e, c)| (g.weight(e), e, c)).collect();
    let mut out = Terms::new();
    for (ea, ca) in a {
        let wa = g.weight(ea);
        if wa > g.cutoff {
            continue;
        }
        for (wb, eb, cb) in &bw {
            if wa + wb <= g.cutoff {
                accumulate(&mut out, exp_add(ea, eb), ca.times(cb));
            }
        }
    }
    out
}

/// Exact product with no truncation.
pub(crate) fn mul_full<C: Field>(a: &Terms<C>, b: &Terms<C>, nvars: usize) -> Terms<C> {
    mul(a, b, &Grading::total(nvars, u64::MAX / 4))
}

/// `num / den` up to the grading cutoff, by back-substitution from the
/// lowest weight upwards. `None` if `den` has no constant term.
pub(crate) fn div_unit<C: Field>(num: &Terms<C>, den: &Terms<C>, g: &Grading) -> Option<Terms<C>> {
    let z = zero_exponent(g.nvars());
    let inv0 = den.get(&z)?.inverse()?;
    let tail: Vec<(u64, &Exponent, &C)> =
        den.iter().filter(|(e, _)| **e != z).map(|(e, c)| (g.weight(e), e, c)).collect();
    assert!(tail.iter().all(|(w, _, _)| *w > 0), "grading weights must be positive");
    let mut residual: BTreeMap<(u64, Exponent), C> = BTreeMap::new();
    for (e, c) in num {
        let w = g.weight(e);
        if w <= g.cutoff {
            accumulate(&mut residual, (w, e.clone()), c.clone());
        }
    }
    let mut out = Terms::new();
    while let Some(((w, e), c)) = residual.pop_first() {
        let qc = c.times(&inv0);
        for (wt, et, ct) in &tail {
            if w + wt <= g.cutoff {
                accumulate(&mut residual, (w + wt, exp_add(&e, et)), qc.times(ct).negate());
            }
        }
        out.insert(e, qc);
    }
    Some(out)
}

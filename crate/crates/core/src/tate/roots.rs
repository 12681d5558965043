//! k-th roots in `K<X>` of elements `c^k·(1 + 𝔪R<X>)` with `p ∤ k`.

use num_bigint::BigInt;

use super::{zt_mul, zt_one, zt_scale, zt_sub, zt_unit_inverse, TateElement, TateError, ZTerms};
use crate::coefficients::{big_pow, PAdic, PAdicValue};
use crate::powerseries::graded::zero_exponent;

/// `g` with `g^k = f` modulo `p^N`. The constant term of the root is the
/// default branch of [`PAdic::kth_root`] unless `branch` selects another
/// residue class modulo `p`.
pub fn tate_kth_root(f: &TateElement, k: u32, branch: Option<u64>) -> Result<TateElement, TateError> {
    assert!(k >= 1, "root index must be positive");
    let p = f.p;
    if (k as u64).is_multiple_of(p) {
        return Err(TateError::RamifiedIndex { k, p });
    }
    if f.is_zero() {
        return Err(TateError::ZeroInput);
    }
    let red = f.reduction();
    let constant_only = red.len() == 1 && red.keys().next().unwrap().iter().all(|a| *a == 0);
    if !constant_only || f.scale.rem_euclid(k as i64) != 0 {
        return Err(TateError::NotAOneUnitTimesPower);
    }
    let (nv, width) = (f.nvars, f.prec);
    let m = big_pow(p, width);
    let z = zero_exponent(nv);
    let c0 = PAdic::from_residue(p, 0, &f.terms[&z], width);
    let r = c0.kth_root(k, branch).map_err(|_| TateError::NotAOneUnitTimesPower)?;
    let r = match r.value() {
        PAdicValue::Unit { unit, .. } => unit.clone(),
        PAdicValue::ExactZero => unreachable!("unit constant term"),
    };
    // Newton: g <- g - (g^k - F) / (k g^{k-1})
    let mut g: ZTerms = zt_one(nv);
    g.insert(z, r);
    let kb = BigInt::from(k);
    for _ in 0..(2 * width + 4) {
        let mut gk1 = zt_one(nv);
        for _ in 0..k - 1 {
            gk1 = zt_mul(&gk1, &g, &m);
        }
        let defect = zt_sub(&zt_mul(&gk1, &g, &m), &f.terms, &m);
        if defect.is_empty() {
            break;
        }
        let den = zt_scale(&gk1, &kb, &m);
        let inv = zt_unit_inverse(&den, nv, p, width).expect("k g^{k-1} is a unit");
        g = zt_sub(&g, &zt_mul(&defect, &inv, &m), &m);
    }
    Ok(TateElement::normalize(nv, p, width, f.scale / k as i64, &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;

    fn el(p: u64, terms: &[(u32, i64)]) -> TateElement {
        TateElement::from_rational_terms(1, p, 10, terms.iter().map(|(e, c)| (vec![*e], rat(*c))))
    }

    #[test]
    fn root_examples() {
        let one = el(3, &[(0, 1)]);
        assert_eq!(tate_kth_root(&one, 2, None).unwrap(), one);

        let f = el(3, &[(0, 1), (1, 3)]);
        let g = tate_kth_root(&f, 2, None).unwrap();
        assert_eq!(g.pow(2), f);

        let f = el(2, &[(0, 1), (1, 2)]);
        assert_eq!(tate_kth_root(&f, 2, None), Err(TateError::RamifiedIndex { k: 2, p: 2 }));
    }

    #[test]
    fn scaled_roots_and_failures() {
        // 9·4·(1 + 3X + 9X^2) over Q_5 is a square times a 1-unit only if the
        // reduction is constant; 1 + X is not.
        let f = el(5, &[(0, 1), (1, 1)]);
        assert_eq!(tate_kth_root(&f, 3, None), Err(TateError::NotAOneUnitTimesPower));
        let f = el(5, &[(0, 25 * 4), (2, 125)]);
        let g = tate_kth_root(&f, 2, None).unwrap();
        assert_eq!(g.scale(), 1);
        assert_eq!(g.pow(2), f);
        let h = el(5, &[(0, 5)]);
        assert_eq!(tate_kth_root(&h, 2, None), Err(TateError::NotAOneUnitTimesPower));
    }
}

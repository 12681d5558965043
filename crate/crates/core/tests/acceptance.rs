//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if
//! any criterion fails. Every generator is a seeded ChaCha8 stream.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wk::coefficients::{big_pow, rat, ratio, KochenOperand};
use wk::kochen::{
    parse_certificate, sample_p_definiteness, CertExpr, CertKind, Certificate, SampleReport, SamplerConfig, Verdict,
};
use wk::powerseries::{
    hensel_root_series, regularize, substitute, weierstrass_divide, weierstrass_divide_via_preparation,
    weierstrass_prepare,
};
use wk::tate::{max_principle_probe, tate_kth_root, tate_shear, LaurentPoly, TateError};
use wk::valued::{coarsen_specialize, dominance_compare, eval_infinitesimal, value, GroupValue, ValuationTag};
use wk::{Extended, FormalSeries, PAdic, PuiseuxSeries, Rational, TateElement};

type Poly = BTreeMap<Vec<u32>, Rational>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome { pass: failures == 0, detail: format!("{detail}, {failures} failures") }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rat(r: &mut ChaCha8Rng) -> Rational {
    let n = loop {
        let n = r.gen_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    ratio(n, r.gen_range(1..=4))
}

fn rand_exp(r: &mut ChaCha8Rng, m: usize, max_deg: u32) -> Vec<u32> {
    let total = r.gen_range(0..=max_deg);
    let mut e = vec![0u32; m];
    for _ in 0..total {
        e[r.gen_range(0..m)] += 1;
    }
    e
}

fn series(m: usize, order: u32, terms: Vec<(Vec<u32>, Rational)>) -> FormalSeries<Rational> {
    FormalSeries::from_terms(m, order, terms)
}

// ---------------------------------------------------------------- 1, 2

/// `c·X_m^d` plus a few terms that leave the regularity order at `d`.
fn regular_divisor(r: &mut ChaCha8Rng, m: usize, d: u32, order: u32) -> FormalSeries<Rational> {
    let mut top = vec![0u32; m];
    top[m - 1] = d;
    let mut terms = vec![(top, small_rat(r))];
    for _ in 0..r.gen_range(1..=3) {
        let mut e = rand_exp(r, m, 4);
        let mixed = e[..m - 1].iter().any(|x| *x > 0);
        if !mixed {
            e[m - 1] = d + r.gen_range(1..=3);
        }
        terms.push((e, small_rat(r)));
    }
    series(m, order, terms)
}

fn criterion_1() -> Outcome {
    const D: u32 = 10;
    let mut r = rng(1);
    let mut failures = 0;
    let mut full = 0;
    for m in 1..=3usize {
        for _ in 0..200 {
            let d = r.gen_range(1..=3);
            let g = regular_divisor(&mut r, m, d, D);
            let f =
                series(m, D, (0..r.gen_range(3..=6)).map(|_| (rand_exp(&mut r, m, D), small_rat(&mut r))).collect());
            let (a, b) = match (weierstrass_divide(&f, &g), weierstrass_divide_via_preparation(&f, &g)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    failures += 1;
                    continue;
                }
            };
            let diff = &(&(&a.quotient * &g) + &a.remainder) - &f;
            let ok = a == b
                && a.degree == d
                && a.remainder.terms().keys().all(|e| e[m - 1] < d)
                && diff.truncate(D - d).is_zero();
            if diff.is_zero() {
                full += 1;
            }
            if !ok {
                failures += 1;
            }
        }
    }
    outcome(failures, format!("600 divisions, m in 1..3, D = 10 ({full} also exact mod degree D)"))
}

fn criterion_2() -> Outcome {
    const D: u32 = 10;
    let mut r = rng(2);
    let mut failures = 0;
    for i in 0..200 {
        let m = 1 + i % 3;
        let d = r.gen_range(1..=3);
        let mut e = rand_exp(&mut r, m, 3);
        e[0] += 1;
        let unit = series(m, D, vec![(vec![0; m], small_rat(&mut r)), (e, small_rat(&mut r))]);
        let g = &regular_divisor(&mut r, m, d, D) * &unit;
        let Ok(p) = weierstrass_prepare(&g) else {
            failures += 1;
            continue;
        };
        let monic = p.coefficient(0) == FormalSeries::one(m - 1, D)
            && p.wpoly.terms().keys().all(|e| e[m - 1] <= d)
            && (1..=d).all(|i| p.coefficient(i).constant_term().is_zero());
        let ok = p.degree == d && !p.unit.constant_term().is_zero() && monic && p.product() == g;
        if !ok {
            failures += 1;
        }
    }
    outcome(failures, "200 preparations, u(0) != 0, w monic distinguished, u*w = g mod degree 10".into())
}

// ---------------------------------------------------------------- 3, 4

fn tate_el(r: &mut ChaCha8Rng, m: usize, p: u64, prec: u32, max_deg: u32, low_scale: i32) -> TateElement {
    let pr = Rational::from_integer(p.into());
    let terms: Vec<(Vec<u32>, Rational)> = (0..r.gen_range(1..=4))
        .map(|_| (rand_exp(r, m, max_deg), small_rat(r) * pr.pow(r.gen_range(low_scale..=3))))
        .collect();
    TateElement::from_rational_terms(m, p, prec, terms)
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut failures = 0;
    for i in 0..200 {
        let m = 1 + i % 3;
        let f = series(m, 10, (0..r.gen_range(1..=4)).map(|_| (rand_exp(&mut r, m, 5), small_rat(&mut r))).collect());
        if f.is_zero() {
            continue;
        }
        match regularize(&[f], 16) {
            Ok(reg) => {
                if reg.sheared[0].regularity(m - 1).order() != Some(reg.orders[0]) {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    let mut worst = 0.0f64;
    for i in 0..200 {
        let m = 1 + i % 3;
        let p = [2, 3, 5][i % 3];
        let mut f = tate_el(&mut r, m, p, 8, 3, 0);
        // make sure the reduction is nonzero
        f = &f + &TateElement::from_rational_terms(m, p, 8, [(rand_exp(&mut r, m, 3), rat(1))]);
        if f.reduction().is_empty() {
            continue;
        }
        let d = f.reduction_degree().unwrap() + 1 + r.gen_range(0..=1);
        let bound = d.pow(m as u32);
        match tate_shear(&f, d).and_then(|s| s.tate_regularity(m - 1)) {
            Ok(reg) if reg.degree < bound => worst = worst.max(reg.degree as f64 / bound as f64),
            _ => failures += 1,
        }
    }
    outcome(failures, format!("200 formal regularizations (bound 16), 200 Tate shears, max degree/d^m = {worst:.3}"))
}

fn criterion_4() -> Outcome {
    const D: u32 = 8;
    let mut r = rng(4);
    let mut failures = 0;
    for i in 0..100 {
        let k = [2, 3, 5][i % 3];
        let m = 1 + i % 2;
        let mut terms = vec![(vec![0; m], rat(1))];
        for _ in 0..r.gen_range(1..=3) {
            let mut e = rand_exp(&mut r, m, 4);
            if e.iter().all(|x| *x == 0) {
                e[0] = 1;
            }
            terms.push((e, small_rat(&mut r)));
        }
        let f = series(m, D, terms);
        match hensel_root_series(&f, k) {
            Ok(root) if root.pow(k) == f => {}
            _ => failures += 1,
        }

        let p = *[2u64, 3, 5, 7].iter().filter(|p| !(k as u64).is_multiple_of(**p)).nth(i % 3).unwrap();
        // 1 + p·(integer polynomial)
        let mut terms = vec![(vec![0; m], rat(1))];
        for _ in 0..r.gen_range(1..=4) {
            let c = r.gen_range(-20i64..=20) * (p as i64).pow(r.gen_range(1..=3));
            terms.push((rand_exp(&mut r, m, 3), rat(c)));
        }
        let t = TateElement::from_rational_terms(m, p, 8, terms);
        match tate_kth_root(&t, k, None) {
            Ok(root) if root.pow(k) == t => {}
            _ => failures += 1,
        }
    }
    outcome(failures, "100 formal roots mod degree 8, 100 Tate roots mod p^8, k in {2,3,5}".into())
}

// ---------------------------------------------------------------- 5, 6

fn rand_unit(r: &mut ChaCha8Rng, p: u64, prec: u32) -> BigInt {
    let m = big_pow(p, prec);
    loop {
        let mut u = BigInt::zero();
        let mut pk = BigInt::one();
        for _ in 0..prec {
            u += &pk * r.gen_range(0..p);
            pk *= p;
        }
        let u = u % &m;
        if !(&u % p).is_zero() {
            return u;
        }
    }
}

fn criterion_5() -> Outcome {
    const N: u32 = 12;
    let mut failures = 0;
    let mut poles = 0;
    for p in [2u64, 3, 5, 7] {
        let mut r = rng(50 + p);
        for _ in 0..10_000 {
            let v = r.gen_range(-4i64..=4);
            let a = PAdic::from_parts(p, N, v, &rand_unit(&mut r, p, N));
            match a.kochen_gamma(p) {
                Extended::Finite(g) => {
                    if let Extended::Finite(w) = g.valuation() {
                        if w < 0 {
                            failures += 1;
                        }
                    }
                }
                Extended::Infinity => poles += 1,
            }
        }
    }
    outcome(failures, format!("4 x 10^4 samples, p in {{2,3,5,7}}, N = 12 ({poles} poles)"))
}

fn rand_puiseux(r: &mut ChaCha8Rng, p: u64, allow_zero: bool) -> PuiseuxSeries {
    if allow_zero && r.gen_range(0..10) == 0 {
        return PuiseuxSeries::zero();
    }
    let pr = Rational::from_integer(p.into());
    let e = r.gen_range(1..=3i64);
    loop {
        let terms: Vec<(Rational, Rational)> = (0..r.gen_range(1..=3))
            .map(|_| (ratio(r.gen_range(-4..=4), e), small_rat(r) * pr.pow(r.gen_range(-2..=2))))
            .collect();
        let s = PuiseuxSeries::from_terms(terms, None);
        if !s.is_zero() {
            return s;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut failures = 0;
    for i in 0..500 {
        let m = 1 + i % 3;
        let p = [2, 3, 5][i % 3];
        let f = tate_el(&mut r, m, p, 10, 4, -2);
        let g = tate_el(&mut r, m, p, 10, 4, -2);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let (Extended::Finite(a), Extended::Finite(b), Extended::Finite(c)) =
            (f.gauss_norm(), g.gauss_norm(), (&f * &g).gauss_norm())
        else {
            failures += 1;
            continue;
        };
        if a + b != c {
            failures += 1;
        }
    }

    let mut max_probes = 0u64;
    for i in 0..100 {
        let m = 1 + i % 3;
        let terms: Vec<(Vec<u32>, PuiseuxSeries)> =
            (0..r.gen_range(1..=5)).map(|_| (rand_exp(&mut r, m, 3), rand_puiseux(&mut r, 2, false))).collect();
        let f = LaurentPoly::new(m, terms);
        if f.terms().is_empty() {
            continue;
        }
        let deg = f.reduction().keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0) as u64;
        let budget = (deg + 1).pow(m as u32);
        match max_principle_probe(&f, budget) {
            Ok(out) if out.achieved_valuation == out.norm_valuation && out.probes <= budget => {
                max_probes = max_probes.max(out.probes)
            }
            _ => failures += 1,
        }
    }

    let mut min_val = i64::MAX;
    for p in [2u64, 3, 5, 7] {
        let w = TateElement::from_rational_terms(1, p, 8, [(vec![p as u32], rat(1)), (vec![1], rat(-1))]);
        if w.gauss_norm() != Extended::Finite(0) {
            failures += 1;
        }
        for _ in 0..200 {
            let a = PAdic::from_integer(&(rand_unit(&mut r, p, 8) * r.gen_range(0..=1)), p, 8);
            let v = match w.eval(&[a]) {
                Ok(x) => x.valuation().into_finite().unwrap_or(i64::MAX),
                Err(TateError::PrecisionExhausted) => 8,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            min_val = min_val.min(v);
            if v < 1 {
                failures += 1;
            }
        }
    }
    outcome(
        failures,
        format!(
            "500 Gauss-norm pairs, 100 probes (max {max_probes} evaluations), X^p - X has |f| = 1 and min sampled v_p(f(a)) = {min_val}"
        ),
    )
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let p = 3;
    let mut failures = 0;
    let one = PuiseuxSeries::one();
    let zero = PuiseuxSeries::zero();
    for tag in [ValuationTag::TAdic, ValuationTag::CompositeP(p)] {
        let le = |a: &PuiseuxSeries, b: &PuiseuxSeries| dominance_compare(a, b, tag).unwrap().preceq;
        if le(&one, &zero) {
            failures += 1;
        }
        for _ in 0..10_000 {
            let f = rand_puiseux(&mut r, p, true);
            let g = rand_puiseux(&mut r, p, true);
            let h = rand_puiseux(&mut r, p, true);
            let (fg, gh, fh) = (le(&f, &g), le(&g, &h), le(&f, &h));
            let d2 = le(&f, &f);
            let d3 = !(fg && gh) || fh;
            let d4 = fg || le(&g, &f);
            let d5 = h.is_zero() || fg == le(&(&f * &h), &(&g * &h));
            let d6 = !(fh && gh) || le(&(&f + &g), &h);
            if !(d2 && d3 && d4 && d5 && d6) {
                failures += 1;
            }
        }
    }
    for _ in 0..10_000 {
        let a = rand_puiseux(&mut r, p, false);
        let ok = match (coarsen_specialize(&a, p, 12), value(&a, ValuationTag::CompositeP(p))) {
            (Ok(c), Ok(Extended::Finite(GroupValue::Composite(t, v)))) => {
                let rv = c.residue.valuation().into_finite();
                rv == Some(c.composite.1) && c.composite.0 == c.coarse && (t, v) == c.composite
            }
            _ => false,
        };
        if !ok {
            failures += 1;
        }
    }
    outcome(failures, "D1-D6 on 10^4 triples under tadic and composite:3, 10^4 coarsenings".into())
}

// ---------------------------------------------------------------- 8

const WORKED: [(&str, &str); 4] =
    [("f", "X1"), ("g", "0"), ("g1", "X1*(1-3*gamma(X1))"), ("h1", "kfrac(1; gamma(X1))")];

fn worked(mutate: Option<(&str, String)>) -> String {
    let mut out = String::from("padic-nss p=3 vars=2 order=12 k=1");
    for (k, v) in WORKED {
        match &mutate {
            Some((field, addend)) if *field == k => out.push_str(&format!(" {k}=({v})+{addend}")),
            _ => out.push_str(&format!(" {k}={v}")),
        }
    }
    out
}

/// The worked certificate with `δ·X^α` added to one of its fields.
fn mutated(r: &mut ChaCha8Rng) -> String {
    let field = WORKED[r.gen_range(0..4)].0;
    let e = rand_exp(r, 2, 10);
    let delta = small_rat(r);
    worked(Some((field, format!("({delta})*X1^{}*X2^{}", e[0], e[1]))))
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_const(c: Rational, m: usize) -> Poly {
    let mut out = Poly::new();
    if !c.is_zero() {
        out.insert(vec![0; m], c);
    }
    out
}

fn poly_pow(a: &Poly, k: u32, m: usize) -> Poly {
    (0..k).fold(poly_const(rat(1), m), |acc, _| poly_mul(&acc, a))
}

fn rand_poly(r: &mut ChaCha8Rng, m: usize, max_deg: u32) -> Poly {
    let mut out = Poly::new();
    for _ in 0..r.gen_range(1..=3) {
        out = poly_add(&out, &[(rand_exp(r, m, max_deg), small_rat(r))].into_iter().collect());
    }
    out
}

fn atom(p: &Poly, m: usize) -> CertExpr {
    CertExpr::atom(series(m, 12, p.iter().map(|(e, c)| (e.clone(), c.clone())).collect()))
}

/// Random degree <= 6 certificate, true about half of the time, and the
/// oracle's opinion of it.
fn oracle_instance(r: &mut ChaCha8Rng, i: usize) -> (Certificate, bool) {
    let m = 2;
    let sum_prod =
        |gs: &[Poly], hs: &[Poly]| gs.iter().zip(hs).fold(Poly::new(), |acc, (g, h)| poly_add(&acc, &poly_mul(g, h)));
    let (kind, mut lhs, gs, mut hs) = match i % 3 {
        0 => {
            let f = rand_poly(r, m, 1);
            let k = r.gen_range(1..=3);
            let bs: Vec<Poly> = (0..r.gen_range(0..=2)).map(|_| rand_poly(r, m, 3)).collect();
            let lhs = bs.iter().fold(poly_pow(&f, 2 * k, m), |acc, b| poly_add(&acc, &poly_mul(b, b)));
            let gs = vec![rand_poly(r, m, 3), poly_const(rat(1), m)];
            let hs = vec![rand_poly(r, m, 3), Poly::new()];
            let kind = move |gs: &[Poly], hs: &[Poly]| CertKind::RealNss {
                f: atom(&f, m),
                k,
                gs: gs.iter().map(|x| atom(x, m)).collect(),
                hs: hs.iter().map(|x| atom(x, m)).collect(),
                bs: bs.iter().map(|x| atom(x, m)).collect(),
            };
            (Box::new(kind) as Box<dyn Fn(&[Poly], &[Poly]) -> CertKind>, lhs, gs, hs)
        }
        1 => {
            let p = 3;
            let f = rand_poly(r, m, 2);
            let g = rand_poly(r, m, 2);
            let k = r.gen_range(1..=2);
            let one_minus = poly_add(&poly_const(rat(1), m), &poly_mul(&poly_const(rat(-3), m), &g));
            let lhs = poly_mul(&poly_pow(&f, k, m), &one_minus);
            let gs = vec![rand_poly(r, m, 2), poly_const(rat(1), m)];
            let hs = vec![rand_poly(r, m, 2), Poly::new()];
            let kind = move |gs: &[Poly], hs: &[Poly]| CertKind::PAdicNss {
                p,
                f: atom(&f, m),
                k,
                g: atom(&g, m),
                gs: gs.iter().map(|x| atom(x, m)).collect(),
                hs: hs.iter().map(|x| atom(x, m)).collect(),
            };
            (Box::new(kind) as Box<dyn Fn(&[Poly], &[Poly]) -> CertKind>, lhs, gs, hs)
        }
        _ => {
            // f g^2 = Σ h_i^2 with h_i = g s_i and f = Σ s_i^2
            let g = rand_poly(r, m, 1);
            let ss: Vec<Poly> = (0..r.gen_range(1..=3)).map(|_| rand_poly(r, m, 1)).collect();
            let f = ss.iter().fold(Poly::new(), |acc, s| poly_add(&acc, &poly_mul(s, s)));
            let hs: Vec<Poly> = ss.iter().map(|s| poly_mul(&g, s)).collect();
            let lhs = poly_mul(&f, &poly_mul(&g, &g));
            let kind = move |_: &[Poly], hs: &[Poly]| CertKind::RealH17 {
                f: atom(&f, m),
                g: atom(&g, m),
                hs: hs.iter().map(|x| atom(x, m)).collect(),
            };
            (Box::new(kind) as Box<dyn Fn(&[Poly], &[Poly]) -> CertKind>, lhs, vec![], hs)
        }
    };
    if !gs.is_empty() {
        // close the identity with the last pair (g_n = 1)
        let n = hs.len() - 1;
        let rest = sum_prod(&gs[..n], &hs[..n]);
        hs[n] = poly_add(&lhs, &poly_mul(&poly_const(rat(-1), m), &rest));
    }
    if r.gen_bool(0.5) {
        let j = r.gen_range(0..hs.len());
        let e = rand_exp(r, m, 2);
        hs[j] = poly_add(&hs[j], &[(e, small_rat(r))].into_iter().collect());
    }
    let rhs = if gs.is_empty() {
        hs.iter().fold(Poly::new(), |acc, h| poly_add(&acc, &poly_mul(h, h)))
    } else {
        sum_prod(&gs, &hs)
    };
    lhs = poly_add(&lhs, &poly_mul(&poly_const(rat(-1), m), &rhs));
    (Certificate { nvars: m, order: 12, kind: kind(&gs, &hs) }, lhs.is_empty())
}

fn criterion_8() -> Outcome {
    let mut failures = 0;
    let mut notes = vec![];
    match parse_certificate(&worked(None)).and_then(|c| c.verify()) {
        Ok(Verdict::Verified { order: 12, .. }) => {}
        other => {
            failures += 1;
            notes.push(format!("worked certificate: {other:?}"));
        }
    }

    let mut r = rng(8);
    let mut refuted = 0;
    for _ in 0..1000 {
        let text = mutated(&mut r);
        match parse_certificate(&text).and_then(|c| c.verify()) {
            Ok(Verdict::Refuted { .. }) => refuted += 1,
            other => {
                failures += 1;
                if notes.len() < 3 {
                    notes.push(format!("{text}: {other:?}"));
                }
            }
        }
    }

    for text in [
        "real-h17 f=X1^2+X2^2 g=1 h1=X1 h2=X2",
        "real-nss f=X1 k=2 g1=X1^3 h1=X1",
        "real-nss vars=2 f=X1 k=1 g1=X1^2+X2^2 b1=X2 h1=1",
    ] {
        match parse_certificate(text).and_then(|c| c.verify()) {
            Ok(Verdict::Verified { exact: true, .. }) => {}
            other => {
                failures += 1;
                notes.push(format!("{text}: {other:?}"));
            }
        }
    }

    let mut agree = 0;
    for i in 0..300 {
        let (cert, truth) = oracle_instance(&mut r, i);
        let ok = match cert.verify() {
            Ok(Verdict::Verified { exact: true, .. }) => truth,
            Ok(Verdict::Refuted { .. }) => !truth,
            _ => false,
        };
        if ok {
            agree += 1;
        } else {
            failures += 1;
        }
    }
    let mut detail = format!("worked certificate at D = 12, {refuted}/1000 mutations refuted, 3 real certificates, oracle agrees {agree}/300");
    for n in notes {
        detail.push_str(&format!("\n    {n}"));
    }
    outcome(failures, detail)
}

// ---------------------------------------------------------------- 9

fn infinitesimal(r: &mut ChaCha8Rng) -> PuiseuxSeries {
    let e = r.gen_range(1..=2i64);
    let terms: Vec<(Rational, Rational)> =
        (0..r.gen_range(1..=2)).map(|_| (ratio(r.gen_range(1..=4), e), small_rat(r))).collect();
    let prec = if r.gen_bool(0.3) { Some(rat(6)) } else { None };
    let s = PuiseuxSeries::from_terms(terms, prec);
    if s.is_zero() {
        PuiseuxSeries::t_pow(&rat(1))
    } else {
        s
    }
}

fn criterion_9() -> Outcome {
    const D: u32 = 6;
    let mut r = rng(9);
    let mut failures = 0;
    for _ in 0..50 {
        let n = r.gen_range(1..=2);
        let m = r.gen_range(1..=2);
        let f = series(n, D, (0..r.gen_range(1..=4)).map(|_| (rand_exp(&mut r, n, 3), small_rat(&mut r))).collect());
        let gs: Vec<FormalSeries<Rational>> = (0..n)
            .map(|_| {
                let terms = (0..r.gen_range(1..=3))
                    .map(|_| {
                        let mut e = rand_exp(&mut r, m, 2);
                        if e.iter().all(|x| *x == 0) {
                            e[0] = 1;
                        }
                        (e, small_rat(&mut r))
                    })
                    .collect();
                series(m, D, terms)
            })
            .collect();
        let a: Vec<PuiseuxSeries> = (0..m).map(|_| infinitesimal(&mut r)).collect();
        let lhs = substitute(&f, &gs).map_err(|_| ()).and_then(|fg| eval_infinitesimal(&fg, &a).map_err(|_| ()));
        let ga: Result<Vec<PuiseuxSeries>, _> = gs.iter().map(|g| eval_infinitesimal(g, &a)).collect();
        let rhs = ga.map_err(|_| ()).and_then(|ga| eval_infinitesimal(&f, &ga).map_err(|_| ()));
        match (lhs, rhs) {
            (Ok(x), Ok(y)) if x.agrees_with(&y) => {}
            _ => failures += 1,
        }
    }
    outcome(failures, "50 substitutions evaluated at Puiseux points".into())
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Outcome {
    let mut failures = 0;
    let mut skipped_total = 0;
    let cfg = SamplerConfig { samples: 10_000, seed: 10, ..SamplerConfig::default() };
    for p in [2u64, 3, 5] {
        let pr = Rational::from_integer(p.into());
        let order = 4 * p as u32;
        let x = FormalSeries::<Rational>::var(0, 2, order);
        let y = FormalSeries::<Rational>::var(1, 2, order);
        // gamma(X1) and gamma(X1 X2 + X2) as numerator / denominator
        for arg in [x.clone(), &(&x * &y) + &y] {
            let wp = &arg.pow(p as u32) - &arg;
            let den = (&(&wp * &wp) - &FormalSeries::one(2, order)).scale(&pr);
            let f = TateElement::from_series(&wp, p, 12);
            let g = TateElement::from_series(&den, p, 12);
            match sample_p_definiteness(&f, &g, &cfg) {
                Ok(SampleReport::NoCounterexample { skipped, .. }) => skipped_total += skipped,
                _ => failures += 1,
            }
        }
    }
    let p = 3u64;
    let el = |terms: &[(u32, i64)]| {
        TateElement::from_rational_terms(1, p, 8, terms.iter().map(|(e, c)| (vec![*e], rat(*c))))
    };
    let pairs = [(el(&[(0, 1)]), el(&[(0, 3)])), (el(&[(1, 1)]), el(&[(0, 3)])), (el(&[(2, 1)]), el(&[(1, 3)]))];
    let cfg = SamplerConfig { samples: 10, seed: 10, ..SamplerConfig::default() };
    for (f, g) in &pairs {
        match sample_p_definiteness(f, g, &cfg) {
            Ok(SampleReport::Counterexample { index, .. }) if index < 10 => {}
            _ => failures += 1,
        }
    }
    outcome(
        failures,
        format!("gamma pairs over 10^4 samples for p in {{2,3,5}} ({skipped_total} skipped), 3 non-definite pairs"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("weierstrass division", criterion_1),
        ("preparation round trip", criterion_2),
        ("regularization", criterion_3),
        ("hensel roots", criterion_4),
        ("kochen integrality", criterion_5),
        ("gauss norm and max principle", criterion_6),
        ("dominance axioms", criterion_7),
        ("certificate verification", criterion_8),
        ("substitution coherence", criterion_9),
        ("definiteness falsifier", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name}: {} [{:.2}s]", i + 1, out.detail, t.elapsed().as_secs_f64());
        if !out.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 passed in {:.1}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

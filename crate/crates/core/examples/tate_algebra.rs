//! Restricted power series over Z_p modulo p^N: Gauss norm, division,
//! preparation, evaluation and the maximum principle.
//!
//! ```bash
//! cargo run -p wk --example tate_algebra
//! ```

use wk::coefficients::rat;
use wk::tate::{max_principle_probe, tate_divide, tate_prepare, LaurentPoly, TateElement};
use wk::{PAdic, PuiseuxSeries};

fn el(p: u64, terms: &[(u32, i64)]) -> TateElement {
    TateElement::from_rational_terms(1, p, 8, terms.iter().map(|(e, c)| (vec![*e], rat(*c))))
}

fn main() -> Result<(), wk::Error> {
    let p = 3;
    let f = el(p, &[(0, 9), (2, 3), (5, 6)]);
    let g = el(p, &[(0, 1), (1, 3)]);
    println!("f = {f}, v(|f|) = {}", f.gauss_norm());
    println!("g = {g}, v(|g|) = {}", g.gauss_norm());
    println!("v(|fg|) = {}", (&f * &g).gauss_norm());

    // g = 3X^4 + X^2 + 2X + 3 reduces to X^2 + 2X, regular of degree 2.
    let g = el(p, &[(4, 3), (2, 1), (1, 2), (0, 3)]);
    let f = el(p, &[(7, 1), (0, 1)]);
    let d = tate_divide(&f, &g)?;
    println!("\nf = {f}\ng = {g}");
    println!("q = {}\nr = {}", d.quotient, d.remainder);
    println!("q*g + r == f mod 3^8: {}", &(&d.quotient * &g) + &d.remainder == f);

    let w = tate_prepare(&g)?;
    println!("u = {}\nw = {}", w.unit, w.wpoly);

    let h = el(p, &[(0, 1), (1, 1), (2, 9)]);
    let a = PAdic::from_i64(3, p, 8);
    println!("\n(1 + X + 9X^2)(3) = {}", h.eval(&[a])?);

    // Over Q_p the residue field is finite: X^3 - X vanishes mod 3 everywhere.
    let witness = el(p, &[(3, 1), (1, -1)]);
    for n in 0..3 {
        let v = witness.eval(&[PAdic::from_i64(n, p, 8)]).map(|x| x.valuation().to_string());
        println!("|X^3 - X| at {n}: v = {}", v.unwrap_or_else(|_| ">= 8".into()));
    }
    // Over Laurent series in t the residue field Q is infinite.
    let one = PuiseuxSeries::constant(rat(1));
    let f = LaurentPoly::new(1, [(vec![3], one.clone()), (vec![1], -one), (vec![0], PuiseuxSeries::t_pow(&rat(1)))]);
    let out = max_principle_probe(&f, 16)?;
    println!("X^3 - X + t over Q((t)): norm attained at a = {:?} after {} probes", out.witness, out.probes);
    Ok(())
}

//! k-th roots of 1-units: formal series over Q, p-adic numbers and
//! restricted series over Z_p.
//!
//! ```bash
//! cargo run -p wk --example hensel_roots
//! ```

use wk::coefficients::{rat, ratio};
use wk::powerseries::{hensel_root_series, hensel_root_series_with_branch};
use wk::tate::{tate_kth_root, TateElement};
use wk::{FormalSeries, PAdic, Rational};

fn main() -> Result<(), wk::Error> {
    let x = FormalSeries::<Rational>::var(0, 1, 6);
    let f = &FormalSeries::one(1, 6) + &x;
    let g = hensel_root_series(&f, 2)?;
    println!("sqrt(1 + X1) = {g}");
    println!("root^2 == 1 + X1 mod degree 6: {}", g.pow(2) == f);

    let f4 = f.scale(&rat(4));
    let g = hensel_root_series_with_branch(&f4, 2, rat(-2))?;
    println!("branch -2 of sqrt(4 + 4 X1) = {g}");

    let g = hensel_root_series(&f, 3)?;
    println!("cbrt(1 + X1) = {g}");

    // 2 is a square in Q_7 (3^2 = 9 = 2 mod 7).
    let two = PAdic::from_i64(2, 7, 10);
    let r = two.kth_root(2, Some(3))?;
    println!("\nsqrt(2) in Q_7 = {r}");
    println!("check: {}", r.pow(2) == two);
    let half = PAdic::from_rational(&ratio(1, 2), 7, 10);
    println!("1/2 in Q_7 = {half}");

    // Restricted series: (1 + 3 X1)^(1/2) in Z_3<X1> modulo 3^8.
    let t = TateElement::from_rational_terms(1, 3, 8, [(vec![0u32], rat(1)), (vec![1], rat(3))]);
    let root = tate_kth_root(&t, 2, None)?;
    println!("\nsqrt(1 + 3 X1) in Z_3<X1> = {root}");
    println!("check: {}", &root * &root == t);
    let t2 = TateElement::from_rational_terms(1, 2, 8, [(vec![0u32], rat(1)), (vec![1], rat(2))]);
    println!("sqrt(1 + 2 X1) over Z_2: {}", tate_kth_root(&t2, 2, None).unwrap_err());
    Ok(())
}

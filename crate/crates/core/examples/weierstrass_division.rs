//! Weierstrass division in Q[[X1, X2]] truncated at degree 8.
//!
//! ```bash
//! cargo run -p wk --example weierstrass_division
//! ```

use wk::powerseries::{weierstrass_divide, weierstrass_divide_via_preparation};
use wk::{FormalSeries, Rational};

fn main() -> Result<(), wk::Error> {
    let order = 8;
    let x1 = FormalSeries::<Rational>::var(0, 2, order);
    let x2 = FormalSeries::<Rational>::var(1, 2, order);

    // g = X2 - X1 is regular in X2 of degree 1
    let g = &x2 - &x1;
    let f = x2.pow(2);
    let d = weierstrass_divide(&f, &g)?;
    println!("f = {f}");
    println!("g = {g}   (regular of degree {})", d.degree);
    println!("q = {}", d.quotient);
    println!("r = {}", d.remainder);

    // A unit divisor: the remainder vanishes.
    let unit = &FormalSeries::one(2, order) + &x1;
    let d = weierstrass_divide(&f, &unit)?;
    println!("\n{f} / ({unit}): q = {}, r = {}", d.quotient, d.remainder);

    // Degree 2 in X2, with higher-order noise in both variables.
    let g = &(&x2.pow(2) - &x1) + &(&x1 * &x2.pow(2));
    let f = &(&x2.pow(5) + &x1.pow(3)) + &x2;
    let fixed_point = weierstrass_divide(&f, &g)?;
    let prepared = weierstrass_divide_via_preparation(&f, &g)?;
    println!("\ng = {g}");
    println!("r = {}", fixed_point.remainder);
    println!("both algorithms agree: {}", fixed_point == prepared);
    let check = &(&fixed_point.quotient * &g) + &fixed_point.remainder;
    println!("q*g + r == f mod degree {order}: {}", check == f);
    Ok(())
}

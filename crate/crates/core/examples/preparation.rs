//! Weierstrass preparation g = u*w with u a unit and w a distinguished
//! polynomial in the last variable.
//!
//! ```bash
//! cargo run -p wk --example preparation
//! ```

use wk::powerseries::weierstrass_prepare;
use wk::{FormalSeries, Rational};

fn main() -> Result<(), wk::Error> {
    let order = 6;
    let x1 = FormalSeries::<Rational>::var(0, 2, order);
    let x2 = FormalSeries::<Rational>::var(1, 2, order);
    let one = FormalSeries::one(2, order);

    // (1 + X1 + X2) (X2^2 - X1)
    let g = &(&(&one + &x1) + &x2) * &(&x2.pow(2) - &x1);
    let p = weierstrass_prepare(&g)?;
    println!("g = {g}");
    println!("u = {}", p.unit);
    println!("w = {}   (degree {} in X2)", p.wpoly, p.degree);
    for i in 1..=p.degree {
        let c = p.coefficient(i);
        println!("  w_{i} = {c}   (vanishes at 0: {})", c.constant_term() == Rational::from_integer(0.into()));
    }
    println!("u*w == g mod degree {order}: {}", p.product() == g);

    // Not regular in X2: g(0, X2) = 0.
    match weierstrass_prepare(&(&x1 * &x2)) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("\nX1*X2: {e}"),
    }
    Ok(())
}

//! Puiseux series, t-adic and composite valuations, dominance, coarsening
//! and evaluation at infinitesimal points.
//!
//! ```bash
//! cargo run -p wk --example puiseux_valuations
//! ```

use wk::coefficients::{rat, ratio};
use wk::valued::{coarsen_specialize, dominance_compare, eval_infinitesimal, value, ValuationTag};
use wk::{FormalSeries, PuiseuxSeries, Rational};

fn main() -> Result<(), wk::Error> {
    let t = PuiseuxSeries::t_pow(&rat(1));
    let s = PuiseuxSeries::t_pow(&ratio(1, 2));
    let three = PuiseuxSeries::constant(rat(3));

    println!("(t^(1/2))^2 = {}", &s * &s);
    println!("v(t^(1/2) + t) = {}", (&s + &t).val()?);
    println!("1/(1 - t) = {}", (&PuiseuxSeries::one() - &t).inv_with_window(6)?);

    let tag = ValuationTag::CompositeP(3);
    println!("\nunder {tag}:");
    for x in [&t, &three, &(&three * &t), &(&s + &t)] {
        println!("  v({x}) = {}", value(x, tag)?);
    }
    let v = dominance_compare(&t, &three, tag)?;
    println!("t < 3: {}", v.prec);
    let v = dominance_compare(&three, &(&three * &(&PuiseuxSeries::one() + &t)), tag)?;
    println!("3 ~ 3(1 + t): {}", v.sim()?);
    let v = dominance_compare(&three, &PuiseuxSeries::one(), ValuationTag::TAdic)?;
    println!("3 asymp 1 t-adically: {}", v.asymp);

    let a = &three.clone() * &s + t.clone();
    let c = coarsen_specialize(&a, 3, 8)?;
    println!(
        "\ncoarsen({a}): coarse = {}, residue = {}, composite = ({}, {})",
        c.coarse, c.residue, c.composite.0, c.composite.1
    );

    let x1 = FormalSeries::<Rational>::var(0, 2, 5);
    let x2 = FormalSeries::<Rational>::var(1, 2, 5);
    let f = &FormalSeries::one(2, 5).checked_div(&(&FormalSeries::one(2, 5) - &x1))? + &x2;
    println!("\nf = {f}");
    println!("f(t, t^(3/2)) = {}", eval_infinitesimal(&f, &[t.clone(), PuiseuxSeries::t_pow(&ratio(3, 2))])?);
    Ok(())
}

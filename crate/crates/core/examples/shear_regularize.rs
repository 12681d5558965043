//! Shears X_i -> X_i + X_m^(d^(m-i)) that make a series regular in the last
//! variable, in both the formal and the restricted setting.
//!
//! ```bash
//! cargo run -p wk --example shear_regularize
//! ```

use wk::powerseries::{regularize, tau_shear, Direction, DEFAULT_SHEAR_BOUND};
use wk::tate::{tate_shear, TateElement};
use wk::{FormalSeries, Rational};

fn main() -> Result<(), wk::Error> {
    let order = 10;
    let x1 = FormalSeries::<Rational>::var(0, 2, order);
    let x2 = FormalSeries::<Rational>::var(1, 2, order);

    // X1*X2 vanishes on the X2 axis, so it is not regular in X2.
    let f = &x1 * &x2;
    println!("f = {f}, regularity in X2: {:?}", f.regularity(1).status);
    let r = regularize(&[f.clone(), &x1 + &x2.pow(3)], DEFAULT_SHEAR_BOUND)?;
    println!("shear parameter d = {}", r.d);
    for (g, o) in r.sheared.iter().zip(&r.orders) {
        println!("  {g}   regular of order {o}");
    }
    let back = tau_shear(&r.sheared[0], r.d, Direction::Inverse);
    println!("inverse shear recovers f: {}", back == f);

    // Restricted case: the reduction X1*X2 mod 3 becomes monic in X2.
    let t = TateElement::from_series(&f, 3, 6);
    let s = tate_shear(&t, 3)?;
    let reg = s.tate_regularity(1)?;
    println!("\nin Z_3<X1,X2>: tau_3(X1*X2) = {s}");
    println!("regular in X2 of degree {} < d^m = 9", reg.degree);
    Ok(())
}

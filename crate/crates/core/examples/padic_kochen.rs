//! p-adic numbers at finite precision and the Kochen operator
//! gamma(a) = (1/p) wp(a) / (wp(a)^2 - 1) with wp(a) = a^p - a.
//!
//! ```bash
//! cargo run -p wk --example padic_kochen
//! ```

use wk::coefficients::{kochen_gamma_rational, ratio, KochenOperand};
use wk::{Extended, PAdic};

fn main() -> Result<(), wk::Error> {
    let p = 3;
    let a = PAdic::from_rational(&ratio(5, 9), p, 12);
    let b = PAdic::from_i64(27, p, 12);
    println!("a = {a}, v(a) = {}", a.valuation());
    println!("b = {b}, v(b) = {}", b.valuation());
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("a / b = {}", a.checked_div(&b)?);

    // Cancellation lowers the known precision.
    let c = PAdic::from_i64(1 + 3i64.pow(5), p, 12);
    let d = &c - &PAdic::from_i64(1, p, 12);
    println!("(1 + 3^5) - 1 = {d}   (relative precision {})", d.precision());

    println!("\ngamma_3 on a few rationals:");
    for (n, m) in [(0, 1), (1, 1), (2, 1), (1, 3), (5, 9), (-7, 2)] {
        let q = ratio(n, m);
        match kochen_gamma_rational(&q, p) {
            Extended::Finite(g) => {
                let v = wk::coefficients::rational_valuation(&g, p);
                println!("  gamma({q}) = {g}   v_3 = {v}");
            }
            Extended::Infinity => println!("  gamma({q}) = inf"),
        }
    }
    let g = a.kochen_gamma(p);
    println!("gamma(a) in Q_3 = {g}");
    Ok(())
}

//! Solving f(X, Y) = 0 for Y = y(X) with y(0) = 0.
//!
//! ```bash
//! cargo run -p wk --example implicit_function
//! ```

use wk::powerseries::{implicit_solve, substitute};
use wk::{FormalSeries, Rational};

fn main() -> Result<(), wk::Error> {
    let order = 7;
    let x = FormalSeries::<Rational>::var(0, 2, order);
    let y = FormalSeries::<Rational>::var(1, 2, order);

    // Y = X + Y^2, the Catalan generating function shifted by one.
    let f = &(&y - &x) - &y.pow(2);
    let sol = implicit_solve(std::slice::from_ref(&f))?;
    println!("Y - X - Y^2 = 0  =>  Y = {}", sol[0]);

    let args = [FormalSeries::var(0, 1, order), sol[0].clone()];
    let resid = substitute(&f, &args)?;
    println!("f(X, y(X)) = {resid}   (zero mod degree {order})");

    // A system in three variables: Y1 = X + Y2, Y2 = X*Y1.
    let x = FormalSeries::<Rational>::var(0, 3, order);
    let y1 = FormalSeries::<Rational>::var(1, 3, order);
    let y2 = FormalSeries::<Rational>::var(2, 3, order);
    let sys = [&(&y1 - &x) - &y2, &y2 - &(&x * &y1)];
    for (i, s) in implicit_solve(&sys)?.iter().enumerate() {
        println!("y{} = {s}", i + 1);
    }
    Ok(())
}

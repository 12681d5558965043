//! Sampling Z_p^m for points where |f(a)| > |g(a)|. Finding none is not a
//! proof; finding one is.
//!
//! ```bash
//! cargo run -p wk --example definiteness_sampler
//! ```

use wk::coefficients::rat;
use wk::kochen::{sample_p_definiteness, SampleReport, SamplerConfig};
use wk::TateElement;

fn el(p: u64, terms: &[(u32, i64)]) -> TateElement {
    TateElement::from_rational_terms(1, p, 10, terms.iter().map(|(e, c)| (vec![*e], rat(*c))))
}

fn main() -> Result<(), wk::Error> {
    let cfg = SamplerConfig { samples: 10_000, seed: 2024, ..Default::default() };
    for p in [2u64, 3, 5] {
        // gamma_p(X) = wp(X) / (p (wp(X)^2 - 1)) takes integral values
        let wp = el(p, &[(p as u32, 1), (1, -1)]);
        let den = (&(&wp * &wp) - &el(p, &[(0, 1)])).shift(1);
        let r = sample_p_definiteness(&wp, &den, &cfg)?;
        println!("p = {p}: wp / p(wp^2 - 1): {r:?}");
    }

    let cfg = SamplerConfig { samples: 10, ..cfg };
    for (name, f, g) in
        [("1 vs 3", el(3, &[(0, 1)]), el(3, &[(0, 3)])), ("X1 vs 3", el(3, &[(1, 1)]), el(3, &[(0, 3)]))]
    {
        match sample_p_definiteness(&f, &g, &cfg)? {
            SampleReport::Counterexample { index, point, f_valuation, g_valuation } => {
                println!("{name}: sample {index} at a = {} gives v(f) = {f_valuation} < v(g) = {g_valuation}", point[0])
            }
            other => println!("{name}: {other:?}"),
        }
    }
    Ok(())
}

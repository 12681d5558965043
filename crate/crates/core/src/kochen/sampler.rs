//! A randomized falsifier for `|f(a)|_p <= |g(a)|_p` on `Z_p^m`.
//!
//! Sample `i` draws its point from a ChaCha8 stream keyed by `(seed, i)`,
//! so the report does not depend on how samples are split across threads.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::KochenError;
use crate::coefficients::{Extended, PAdic};
use crate::tate::{TateElement, TateError};

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub samples: u64,
    pub seed: u64,
    /// Draw points from `pZ_p^m` instead of `Z_p^m`.
    pub germ: bool,
    pub threads: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
        SamplerConfig { samples: 10_000, seed: 0, germ: false, threads }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SampleReport {
    /// `skipped` samples had both values vanish at the working precision.
    NoCounterexample {
        samples: u64,
        skipped: u64,
    },
    Counterexample {
        index: u64,
        point: Vec<PAdic>,
        f_valuation: Extended<i64>,
        g_valuation: Extended<i64>,
    },
}

fn draw(rng: &mut ChaCha8Rng, p: u64, prec: u32, germ: bool) -> PAdic {
    let mut n = BigInt::from(0);
    let mut pk = BigInt::from(1);
    for _ in 0..prec {
        n += &pk * rng.gen_range(0..p);
        pk *= p;
    }
    if germ {
        n *= p;
    }
    PAdic::from_integer(&n, p, prec)
}

fn point_for(i: u64, seed: u64, nvars: usize, p: u64, prec: u32, germ: bool) -> Vec<PAdic> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    (0..nvars).map(|_| draw(&mut rng, p, prec, germ)).collect()
}

enum Outcome {
    Fine,
    Skipped,
    Bad(Extended<i64>, Extended<i64>),
}

fn valuation_at(h: &TateElement, a: &[PAdic]) -> Result<Option<Extended<i64>>, KochenError> {
    match h.eval(a) {
        Ok(v) => Ok(Some(v.valuation())),
        Err(TateError::PrecisionExhausted) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn judge(f: &TateElement, g: &TateElement, a: &[PAdic]) -> Result<Outcome, KochenError> {
    let vf = valuation_at(f, a)?;
    let vg = valuation_at(g, a)?;
    // A vanishing value is only known to have valuation >= N + scale.
    let floor = |h: &TateElement| h.precision() as i64 + h.scale();
    Ok(match (vf, vg) {
        (None, None) => Outcome::Skipped,
        (None, Some(_)) => Outcome::Fine,
        (Some(x), None) => match x {
            Extended::Finite(v) if v < floor(g) => Outcome::Bad(x, Extended::Infinity),
            _ => Outcome::Skipped,
        },
        (Some(x), Some(y)) if x < y => Outcome::Bad(x, y),
        _ => Outcome::Fine,
    })
}

pub fn sample_p_definiteness(
    f: &TateElement,
    g: &TateElement,
    cfg: &SamplerConfig,
) -> Result<SampleReport, KochenError> {
    if f.prime() != g.prime() || f.nvars() != g.nvars() {
        return Err(TateError::Mismatch { what: "ring", left: f.prime(), right: g.prime() }.into());
    }
    let (p, m) = (f.prime(), f.nvars());
    let prec = f.precision().max(g.precision());
    let workers = cfg.threads.max(1).min(cfg.samples.max(1) as usize);
    let results: Vec<Result<(Option<(u64, Extended<i64>, Extended<i64>)>, u64), KochenError>> =
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    s.spawn(move || {
                        let mut skipped = 0;
                        let mut i = w as u64;
                        while i < cfg.samples {
                            let a = point_for(i, cfg.seed, m, p, prec, cfg.germ);
                            match judge(f, g, &a)? {
                                Outcome::Fine => {}
                                Outcome::Skipped => skipped += 1,
                                Outcome::Bad(x, y) => return Ok((Some((i, x, y)), skipped)),
                            }
                            i += workers as u64;
                        }
                        Ok((None, skipped))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("sampler worker panicked")).collect()
        });
    let mut first: Option<(u64, Extended<i64>, Extended<i64>)> = None;
    let mut skipped = 0;
    for r in results {
        let (bad, s) = r?;
        skipped += s;
        if let Some(b) = bad {
            if first.as_ref().is_none_or(|f| b.0 < f.0) {
                first = Some(b);
            }
        }
    }
    Ok(match first {
        Some((index, f_valuation, g_valuation)) => SampleReport::Counterexample {
            point: point_for(index, cfg.seed, m, p, prec, cfg.germ),
            index,
            f_valuation,
            g_valuation,
        },
        None => SampleReport::NoCounterexample { samples: cfg.samples, skipped },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;

    fn el(p: u64, terms: &[(u32, i64)]) -> TateElement {
        TateElement::from_rational_terms(1, p, 8, terms.iter().map(|(e, c)| (vec![*e], rat(*c))))
    }

    #[test]
    fn falsifier_examples() {
        let cfg = SamplerConfig { samples: 10, seed: 7, germ: false, threads: 3 };
        let r = sample_p_definiteness(&el(3, &[(0, 1)]), &el(3, &[(0, 3)]), &cfg).unwrap();
        assert!(matches!(r, SampleReport::Counterexample { index: 0, .. }));
        let r = sample_p_definiteness(&el(3, &[(1, 1)]), &el(3, &[(0, 3)]), &cfg).unwrap();
        assert!(matches!(r, SampleReport::Counterexample { .. }));

        // ℘(X) against p(℘(X)^2 - 1)
        for p in [2u64, 3, 5] {
            let wp = el(p, &[(p as u32, 1), (1, -1)]);
            let den = (&(&wp * &wp) - &el(p, &[(0, 1)])).shift(1);
            let cfg = SamplerConfig { samples: 500, seed: 1, germ: false, threads: 4 };
            let r = sample_p_definiteness(&wp, &den, &cfg).unwrap();
            assert!(matches!(r, SampleReport::NoCounterexample { samples: 500, .. }), "{r:?}");
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let f = el(5, &[(2, 1), (0, 5)]);
        let g = el(5, &[(1, 5)]);
        let a = SamplerConfig { samples: 200, seed: 3, germ: false, threads: 1 };
        let b = SamplerConfig { threads: 6, ..a.clone() };
        assert_eq!(sample_p_definiteness(&f, &g, &a).unwrap(), sample_p_definiteness(&f, &g, &b).unwrap());
    }
}

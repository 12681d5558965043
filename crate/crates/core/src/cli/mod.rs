//! The expression grammar and the `wk` command-line front end.
//!
//! Every subcommand maps onto one library call. Exit status is 0 on
//! success or a verified certificate, 1 on a refuted certificate or a
//! counterexample, 2 on usage and evaluation errors.

mod interp;
mod parse;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use interp::parse_point;
pub use parse::{parse_expression, ExprAst, ParseError};

use crate::coefficients::{Extended, PAdic, Rational};
use crate::error::Error;
use crate::kochen::{self, SampleReport, SamplerConfig, Verdict};
use crate::powerseries::{self as ps, Direction, FormalSeries};
use crate::tate::{self, TateElement};
use crate::valued::{self, PuiseuxSeries, ValuationTag};

#[derive(Parser, Debug)]
#[command(name = "wk", version, about = "Weierstrass division, p-adic and Puiseux valuations, certificate checking")]
pub struct Cli {
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Number of variables (default: highest X<i> used).
    #[arg(long, global = true)]
    pub vars: Option<usize>,
    /// Truncation degree D.
    #[arg(long, global = true, default_value_t = 8)]
    pub order: u32,
    /// Prime for p-adic, Tate and Kochen inputs.
    #[arg(short = 'p', global = true)]
    pub prime: Option<u64>,
    /// p-adic precision N.
    #[arg(short = 'N', global = true, default_value_t = kochen::DEFAULT_PREC)]
    pub prec: u32,
    /// trivial | tadic | composite:p
    #[arg(long, global = true)]
    pub valuation: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest shear parameter tried by `regularize`.
    #[arg(long, global = true, default_value_t = ps::DEFAULT_SHEAR_BOUND)]
    pub bound: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weierstrass division f = q*g + r by g regular in the last variable.
    Divide {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Weierstrass preparation g = u*w.
    Prepare {
        #[arg(long)]
        g: String,
    },
    /// Apply the shear X_i -> X_i + X_m^(d^(m-i)).
    Shear {
        #[arg(long)]
        f: String,
        #[arg(short = 'd')]
        d: u32,
        #[arg(long)]
        inverse: bool,
    },
    /// Find one shear making every input regular in the last variable.
    Regularize {
        #[arg(long, required = true)]
        f: Vec<String>,
    },
    /// Multiplicative inverse of a unit series.
    Invert {
        #[arg(long)]
        f: String,
    },
    /// f(g_1, ..., g_n) for g_i without constant term; f has one variable per --g.
    Subst {
        #[arg(long)]
        f: String,
        #[arg(long, required = true)]
        g: Vec<String>,
    },
    /// k-th root of a series whose constant term is a k-th power.
    HenselRoot {
        #[arg(long)]
        f: String,
        #[arg(short = 'k')]
        k: u32,
        /// Constant term of the root.
        #[arg(long)]
        branch: Option<String>,
    },
    /// Solve f_i(X, Y) = 0 for Y(X); the last (number of --f) variables are Y.
    Ift {
        #[arg(long, required = true)]
        f: Vec<String>,
    },
    /// Gauss norm valuation of a Tate element.
    GaussNorm {
        #[arg(long)]
        f: String,
    },
    /// Restricted Weierstrass division modulo p^N.
    TateDivide {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Restricted Weierstrass preparation modulo p^N.
    TatePrepare {
        #[arg(long)]
        g: String,
    },
    /// k-th root of a scalar times a 1-unit in Z_p<X>.
    TateRoot {
        #[arg(long)]
        f: String,
        #[arg(short = 'k')]
        k: u32,
        /// Residue mod p of the root's leading scalar.
        #[arg(long)]
        branch: Option<u64>,
    },
    /// Evaluate f at a point: Puiseux coordinates (with t) give f(a) in the
    /// Puiseux field, otherwise p-adic (with -p) or rational.
    Eval {
        #[arg(long)]
        f: String,
        /// Comma-separated coordinates.
        #[arg(long)]
        at: String,
    },
    /// Value of a Puiseux series under --valuation (default tadic).
    Val {
        #[arg(long)]
        a: String,
    },
    /// Dominance relations between two Puiseux series.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Coarse value, residue and composite value of a Puiseux series.
    Coarsen {
        #[arg(long)]
        a: String,
    },
    /// Verify every certificate in a file.
    Verify { file: std::path::PathBuf },
    /// Search for a in Z_p^m with |f(a)| > |g(a)|.
    SampleDefinite {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(short = 'n', default_value_t = 10_000)]
        samples: u64,
        /// Sample from pZ_p^m.
        #[arg(long)]
        germ: bool,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    json: bool,
    lines: Vec<String>,
    fields: serde_json::Map<String, Value>,
}

impl Out {
    fn put(&mut self, key: &str, text: impl ToString, value: Value) {
        self.lines.push(format!("{key} = {}", text.to_string()));
        self.fields.insert(key.to_string(), value);
    }

    fn series(&mut self, key: &str, s: &FormalSeries<Rational>) {
        self.put(key, s, s.to_json());
    }

    fn tate(&mut self, key: &str, s: &TateElement) {
        self.put(key, s, s.to_json());
    }

    fn render(self) -> String {
        if self.json {
            let mut s = serde_json::to_string(&Value::Object(self.fields)).unwrap();
            s.push('\n');
            s
        } else {
            self.lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

fn ext_json<T: ToString>(v: &Extended<T>) -> Value {
    match v {
        Extended::Finite(x) => json!(x.to_string()),
        Extended::Infinity => json!("inf"),
    }
}

struct Ctx<'a> {
    ring: &'a RingArgs,
}

impl Ctx<'_> {
    fn parse(&self, src: &str) -> Result<ExprAst, Error> {
        Ok(parse_expression(src)?)
    }

    fn nvars(&self, asts: &[&ExprAst]) -> Result<usize, Error> {
        let used = asts.iter().map(|a| a.nvars_used()).max().unwrap_or(0).max(1);
        match self.ring.vars {
            Some(v) if v < used => Err(Error::Usage(format!("--vars {v} but X{used} is used"))),
            Some(v) => Ok(v),
            None => Ok(used),
        }
    }

    fn series(&self, srcs: &[&str]) -> Result<Vec<FormalSeries<Rational>>, Error> {
        let asts: Vec<ExprAst> = srcs.iter().map(|s| self.parse(s)).collect::<Result<_, _>>()?;
        let m = self.nvars(&asts.iter().collect::<Vec<_>>())?;
        asts.iter().map(|a| Ok(a.to_series(m, self.ring.order, self.ring.prime)?.with_order(self.ring.order))).collect()
    }

    fn prime(&self) -> Result<u64, Error> {
        let p = self.ring.prime.ok_or_else(|| Error::Usage("this command needs a prime (-p)".into()))?;
        if !crate::coefficients::is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        Ok(p)
    }

    fn tate(&self, srcs: &[&str]) -> Result<Vec<TateElement>, Error> {
        let p = self.prime()?;
        let asts: Vec<ExprAst> = srcs.iter().map(|s| self.parse(s)).collect::<Result<_, _>>()?;
        let m = self.nvars(&asts.iter().collect::<Vec<_>>())?;
        asts.iter().map(|a| a.to_tate(m, p, self.ring.prec)).collect()
    }

    fn puiseux(&self, src: &str) -> Result<PuiseuxSeries, Error> {
        self.parse(src)?.to_puiseux(self.ring.prime)
    }

    fn tag(&self, default: ValuationTag) -> Result<ValuationTag, Error> {
        match &self.ring.valuation {
            Some(s) => Ok(s.parse()?),
            None => Ok(default),
        }
    }
}

fn verdict_status(v: &Verdict) -> i32 {
    match v {
        Verdict::Verified { .. } => 0,
        Verdict::Refuted { .. } => 1,
        Verdict::Inconclusive { .. } => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<(i32, String), Error> {
    let ctx = Ctx { ring: &cli.ring };
    let mut out = Out { json: cli.ring.json, lines: Vec::new(), fields: serde_json::Map::new() };
    let mut status = 0;
    match &cli.command {
        Command::Divide { f, g } => {
            let s = ctx.series(&[f, g])?;
            let d = ps::weierstrass_divide(&s[0], &s[1])?;
            out.series("q", &d.quotient);
            out.series("r", &d.remainder);
            out.put("d", d.degree, json!(d.degree));
        }
        Command::Prepare { g } => {
            let s = ctx.series(&[g])?;
            let w = ps::weierstrass_prepare(&s[0])?;
            out.series("u", &w.unit);
            out.series("w", &w.wpoly);
            out.put("d", w.degree, json!(w.degree));
        }
        Command::Shear { f, d, inverse } => {
            let s = ctx.series(&[f])?;
            let dir = if *inverse { Direction::Inverse } else { Direction::Forward };
            out.series("f", &ps::tau_shear(&s[0], *d, dir));
        }
        Command::Regularize { f } => {
            let srcs: Vec<&str> = f.iter().map(|s| s.as_str()).collect();
            let s = ctx.series(&srcs)?;
            let r = ps::regularize(&s, cli.ring.bound)?;
            out.put("d", r.d, json!(r.d));
            for (i, (g, o)) in r.sheared.iter().zip(&r.orders).enumerate() {
                out.series(&format!("f{}", i + 1), g);
                out.put(&format!("order{}", i + 1), o, json!(o));
            }
        }
        Command::Invert { f } => {
            let s = ctx.series(&[f])?;
            out.series("inverse", &s[0].invert()?);
        }
        Command::Subst { f, g } => {
            let srcs: Vec<&str> = g.iter().map(|s| s.as_str()).collect();
            let gs = ctx.series(&srcs)?;
            let fa = ctx.parse(f)?;
            if fa.nvars_used() > gs.len() {
                return Err(Error::Usage(format!("f uses X{} but only {} --g given", fa.nvars_used(), gs.len())));
            }
            let fs = fa.to_series(gs.len(), cli.ring.order, cli.ring.prime)?.with_order(cli.ring.order);
            out.series("f", &ps::substitute(&fs, &gs)?);
        }
        Command::HenselRoot { f, k, branch } => {
            if *k == 0 {
                return Err(Error::Usage("-k must be positive".into()));
            }
            let s = ctx.series(&[f])?;
            let root = match branch {
                Some(b) => ps::hensel_root_series_with_branch(&s[0], *k, ctx.parse(b)?.to_rational(cli.ring.prime)?)?,
                None => ps::hensel_root_series(&s[0], *k)?,
            };
            out.series("root", &root);
        }
        Command::Ift { f } => {
            let srcs: Vec<&str> = f.iter().map(|s| s.as_str()).collect();
            let s = ctx.series(&srcs)?;
            for (i, y) in ps::implicit_solve(&s)?.iter().enumerate() {
                out.series(&format!("y{}", i + 1), y);
            }
        }
        Command::GaussNorm { f } => {
            let t = ctx.tate(&[f])?;
            let v = t[0].gauss_norm();
            out.put("valuation", &v, ext_json(&v));
            let red: Vec<Value> = t[0]
                .reduction()
                .iter()
                .map(|(e, c)| {
                    let mut row: Vec<Value> = e.iter().map(|a| json!(a)).collect();
                    row.push(json!(c));
                    Value::Array(row)
                })
                .collect();
            out.fields.insert("reduction".into(), Value::Array(red));
        }
        Command::TateDivide { f, g } => {
            let t = ctx.tate(&[f, g])?;
            let d = tate::tate_divide(&t[0], &t[1])?;
            out.tate("q", &d.quotient);
            out.tate("r", &d.remainder);
            out.put("d", d.degree, json!(d.degree));
        }
        Command::TatePrepare { g } => {
            let t = ctx.tate(&[g])?;
            let w = tate::tate_prepare(&t[0])?;
            out.tate("u", &w.unit);
            out.tate("w", &w.wpoly);
            out.put("d", w.degree, json!(w.degree));
        }
        Command::TateRoot { f, k, branch } => {
            let t = ctx.tate(&[f])?;
            out.tate("root", &tate::tate_kth_root(&t[0], *k, *branch)?);
        }
        Command::Eval { f, at } => {
            let coords: Vec<&str> = if at.trim().is_empty() { Vec::new() } else { at.split(',').collect() };
            let fa = ctx.parse(f)?;
            let m = ctx.nvars(&[&fa])?.max(coords.len());
            if coords.len() != m {
                return Err(Error::Usage(format!("point has {} coordinates, f has {m} variables", coords.len())));
            }
            if at.contains('t') {
                let pts: Vec<PuiseuxSeries> = coords.iter().map(|c| ctx.puiseux(c)).collect::<Result<_, _>>()?;
                let fs = fa.to_series(m, cli.ring.order, cli.ring.prime)?.with_order(cli.ring.order);
                let v = valued::eval_infinitesimal(&fs, &pts)?;
                out.put("value", &v, json!(v.to_string()));
            } else if let Some(p) = cli.ring.prime {
                let pts = parse_point(at, Some(p))?;
                let pts: Vec<PAdic> = pts.iter().map(|q| PAdic::from_rational(q, p, cli.ring.prec)).collect();
                let t = fa.to_tate(m, ctx.prime()?, cli.ring.prec)?;
                let v = t.eval(&pts)?;
                out.put("value", &v, json!(v.to_string()));
                out.put("valuation", v.valuation(), ext_json(&v.valuation()));
            } else {
                let pts = parse_point(at, None)?;
                let fs = fa.to_series(m, cli.ring.order, None)?.with_order(cli.ring.order);
                let v = fs.eval(&pts);
                out.put("value", &v, json!(v.to_string()));
            }
        }
        Command::Val { a } => {
            let x = ctx.puiseux(a)?;
            let tag = ctx.tag(ValuationTag::TAdic)?;
            let v = valued::value(&x, tag)?;
            out.put("value", &v, ext_json(&v));
        }
        Command::Compare { a, b } => {
            let (x, y) = (ctx.puiseux(a)?, ctx.puiseux(b)?);
            let tag = ctx.tag(ValuationTag::TAdic)?;
            let v = valued::dominance_compare(&x, &y, tag)?;
            out.put("preceq", v.preceq, json!(v.preceq));
            out.put("prec", v.prec, json!(v.prec));
            out.put("asymp", v.asymp, json!(v.asymp));
            match v.sim() {
                Ok(s) => out.put("sim", s, json!(s)),
                Err(e) => out.put("sim", "undefined", json!(Error::from(e).code())),
            }
        }
        Command::Coarsen { a } => {
            let p = match (cli.ring.prime, ctx.tag(ValuationTag::TAdic)?) {
                (Some(p), _) | (None, ValuationTag::CompositeP(p)) => p,
                _ => return Err(Error::Usage("coarsen needs -p or --valuation composite:p".into())),
            };
            let x = ctx.parse(a)?.to_puiseux(Some(p))?;
            let c = valued::coarsen_specialize(&x, p, cli.ring.prec)?;
            out.put("coarse", &c.coarse, json!(c.coarse.to_string()));
            out.put("residue", &c.residue, json!(c.residue.to_rational().to_string()));
            let comp = format!("({}, {})", c.composite.0, c.composite.1);
            out.put("composite", comp, json!([c.composite.0.to_string(), c.composite.1]));
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", file.display())))?;
            let certs = kochen::parse_certificates(&text)?;
            if certs.is_empty() {
                return Err(Error::Usage(format!("{} contains no certificates", file.display())));
            }
            let mut reports = Vec::new();
            for (line, c) in &certs {
                let v = c.verify()?;
                status = status.max(verdict_status(&v));
                let caveat = match v {
                    Verdict::Verified { exact: false, order } => format!(" (modulo degree {order})"),
                    Verdict::Refuted { discrepancy_degree: Some(d), .. } => {
                        format!(" (first discrepancy in degree {d})")
                    }
                    _ => String::new(),
                };
                out.lines.push(if certs.len() == 1 {
                    format!("{}{caveat}", v.name())
                } else {
                    format!("line {line}: {} {}{caveat}", c.kind_name(), v.name())
                });
                let mut j = v.to_json();
                j["line"] = json!(line);
                j["kind"] = json!(c.kind_name());
                reports.push(j);
            }
            if certs.len() == 1 {
                out.fields = reports.pop().unwrap().as_object().unwrap().clone();
            } else {
                out.fields.insert("certificates".into(), Value::Array(reports));
            }
        }
        Command::SampleDefinite { f, g, samples, germ } => {
            let t = ctx.tate(&[f, g])?;
            let cfg = SamplerConfig { samples: *samples, seed: cli.ring.seed, germ: *germ, ..Default::default() };
            match kochen::sample_p_definiteness(&t[0], &t[1], &cfg)? {
                SampleReport::NoCounterexample { samples, skipped } => {
                    out.lines.push(format!("no counterexample in {samples} samples ({skipped} skipped)"));
                    out.fields.insert("verdict".into(), json!("no_counterexample"));
                    out.fields.insert("samples".into(), json!(samples));
                    out.fields.insert("skipped".into(), json!(skipped));
                }
                SampleReport::Counterexample { index, point, f_valuation, g_valuation } => {
                    status = 1;
                    let pt: Vec<String> = point.iter().map(|a| a.to_rational().to_string()).collect();
                    out.lines.push(format!(
                        "counterexample at sample {index}: a = ({}), v(f(a)) = {f_valuation} < v(g(a)) = {g_valuation}",
                        pt.join(", ")
                    ));
                    out.fields.insert("verdict".into(), json!("counterexample"));
                    out.fields.insert("samples".into(), json!(index + 1));
                    out.fields.insert("point".into(), json!(pt));
                    out.fields.insert("f_valuation".into(), ext_json(&f_valuation));
                    out.fields.insert("g_valuation".into(), ext_json(&g_valuation));
                }
            }
        }
    }
    Ok((status, out.render()))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Report { status, stdout: String::new(), stderr: text }
            } else {
                Report { status, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok((status, stdout)) => Report { status, stdout, stderr: String::new() },
        Err(e) if cli.ring.json => Report {
            status: 2,
            stdout: format!("{}\n", json!({"error": e.code(), "message": e.to_string()})),
            stderr: String::new(),
        },
        Err(e) => Report { status: 2, stdout: String::new(), stderr: format!("error[{}]: {e}\n", e.code()) },
    }
}

pub fn main() -> i32 {
    let r = run(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    r.status
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wk(args: &[&str]) -> Report {
        run(std::iter::once("wk").chain(args.iter().copied()))
    }

    #[test]
    fn divide_example() {
        let r = wk(&["divide", "--vars", "2", "--order", "8", "--f", "X2^2", "--g", "X2-X1"]);
        assert_eq!(r.status, 0, "{r:?}");
        assert!(r.stdout.contains("q = X1 + X2\n"), "{}", r.stdout);
        assert!(r.stdout.contains("r = X1^2\n"), "{}", r.stdout);
    }

    #[test]
    fn sampler_exit_codes() {
        let r = wk(&["sample-definite", "-p", "3", "-N", "8", "--f", "1", "--g", "3", "-n", "10"]);
        assert_eq!(r.status, 1, "{r:?}");
        assert!(r.stdout.starts_with("counterexample"));
        let r = wk(&["sample-definite", "-p", "3", "--f", "wp(X1)", "--g", "p*(wp(X1)^2 - 1)", "-n", "200", "--json"]);
        assert_eq!(r.status, 0, "{r:?}");
        assert!(r.stdout.contains("\"verdict\":\"no_counterexample\""));
    }

    #[test]
    fn errors_map_to_two() {
        let r = wk(&["divide", "--f", "X1", "--g", "X1^2 + (", "--json"]);
        assert_eq!(r.status, 2);
        assert!(r.stdout.contains("parse.syntax"));
        let r = wk(&["prepare", "--vars", "2", "--g", "X1"]);
        assert_eq!(r.status, 2);
        assert!(r.stderr.starts_with("error[series.not_regular]"), "{}", r.stderr);
        assert_eq!(wk(&["frobnicate"]).status, 2);
        assert_eq!(wk(&["--help"]).status, 0);
    }

    #[test]
    fn valued_commands() {
        let r = wk(&["val", "--a", "t^(1/2) + t"]);
        assert_eq!(r.stdout, "value = 1/2\n");
        let r = wk(&["compare", "--a", "t", "--b", "p", "--valuation", "composite:3", "-p", "3"]);
        assert!(r.stdout.contains("prec = true"), "{r:?}");
        let r = wk(&["coarsen", "-p", "3", "--a", "p*t^(1/2) + t"]);
        assert!(r.stdout.contains("composite = (1/2, 1)"), "{r:?}");
        let r = wk(&["eval", "--f", "X1 + X2", "--at", "t, t^(3/2)"]);
        assert_eq!(r.stdout, "value = t + t^(3/2)\n");
        let r = wk(&["eval", "-p", "3", "--f", "X1 + X2", "--at", "1, 3"]);
        assert!(r.stdout.contains("valuation = 0"), "{r:?}");
    }
}

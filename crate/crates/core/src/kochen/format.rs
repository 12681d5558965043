//! Certificate files: one certificate per line, `kind key=value ...`, with
//! `#` starting a comment. Values are expressions in the shared grammar and
//! may contain spaces; a new field starts at a top-level `key=`.
//!
//! ```text
//! padic-nss p=3 order=12 f=X1 k=1 g=0 g1=X1*(1-3*gamma(X1)) h1=kfrac(1; gamma(X1))
//! real-nss order=4 f=X1 k=1 g1=X1^2+X2^2 h1=1 b1=X2
//! real-h17 f=X1^2+X2^2 g=1 h1=X1 h2=X2
//! lambda p=3 f=X1 g=X1 lambda=kfrac(1; 0)
//! integral-valued p=3 prec=8 f=3*X1 g=X1 h=3
//! ```

use std::collections::BTreeMap;

use super::cert::{CertKind, Certificate};
use super::{CertExpr, KochenError};
use crate::cli::{parse_expression, ExprAst};

pub const DEFAULT_ORDER: u32 = 12;
pub const DEFAULT_PREC: u32 = 8;

fn split_fields(body: &str) -> Result<Vec<(String, String)>, KochenError> {
    let bytes = body.as_bytes();
    let mut starts = Vec::new();
    let mut depth = 0i32;
    let mut i = 0;
    let mut at_boundary = true;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if at_boundary && depth == 0 && b.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            if bytes.get(j) == Some(&b'=') {
                starts.push((i, j));
            }
        }
        at_boundary = b.is_ascii_whitespace() && depth == 0;
        i += 1;
    }
    if starts.first().map_or(!body.trim().is_empty(), |(s, _)| !body[..*s].trim().is_empty()) {
        return Err(KochenError::Format(format!("expected `key=value`, found `{}`", body.trim())));
    }
    let mut out = Vec::new();
    for (n, (s, e)) in starts.iter().enumerate() {
        let end = starts.get(n + 1).map_or(body.len(), |(next, _)| *next);
        out.push((body[*s..*e].to_string(), body[e + 1..end].trim().to_string()));
    }
    Ok(out)
}

struct Fields {
    map: BTreeMap<String, String>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn required(&mut self, key: &str) -> Result<String, KochenError> {
        self.take(key).ok_or_else(|| KochenError::Format(format!("missing field `{key}`")))
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T, KochenError> {
        match self.take(key) {
            Some(v) => {
                v.parse().map_err(|_| KochenError::Format(format!("field `{key}` must be an integer, found `{v}`")))
            }
            None => default.ok_or_else(|| KochenError::Format(format!("missing field `{key}`"))),
        }
    }

    /// `prefix1`, `prefix2`, ... in order, stopping at the first gap.
    fn indexed(&mut self, prefix: &str) -> Vec<String> {
        let mut out = Vec::new();
        while let Some(v) = self.take(&format!("{prefix}{}", out.len() + 1)) {
            out.push(v);
        }
        out
    }

    fn finish(self) -> Result<(), KochenError> {
        match self.map.keys().next() {
            Some(k) => Err(KochenError::Format(format!("unknown or out-of-sequence field `{k}`"))),
            None => Ok(()),
        }
    }
}

fn ast(src: &str) -> Result<ExprAst, KochenError> {
    parse_expression(src).map_err(|e| KochenError::Format(format!("in `{src}`: {e}")))
}

/// Parses one certificate line.
pub fn parse_certificate(line: &str) -> Result<Certificate, KochenError> {
    let line = line.trim();
    let (kind, body) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let mut f = Fields { map: split_fields(body)?.into_iter().collect() };
    let p: Option<u64> = match f.take("p") {
        Some(v) => {
            let p = v.parse().map_err(|_| KochenError::Format(format!("bad prime `{v}`")))?;
            if !crate::coefficients::is_prime(p) {
                return Err(KochenError::Format(format!("{p} is not prime")));
            }
            Some(p)
        }
        None => None,
    };
    let need_p = || p.ok_or_else(|| KochenError::Format(format!("`{kind}` needs p=")));
    let order = f.number("order", Some(DEFAULT_ORDER))?;
    let prec = f.number("prec", Some(DEFAULT_PREC))?;
    let explicit_vars: Option<usize> = match f.take("vars") {
        Some(v) => Some(v.parse().map_err(|_| KochenError::Format(format!("bad vars `{v}`")))?),
        None => None,
    };

    let mut asts: Vec<ExprAst> = Vec::new();
    let read = |src: String, asts: &mut Vec<ExprAst>| -> Result<ExprAst, KochenError> {
        let a = ast(&src)?;
        asts.push(a.clone());
        Ok(a)
    };
    let conv = |a: &ExprAst| -> Result<CertExpr, KochenError> {
        a.to_cert_expr(p).map_err(|e| KochenError::Format(e.to_string()))
    };
    let conv_all = |xs: &[ExprAst]| xs.iter().map(conv).collect::<Result<Vec<_>, _>>();

    let kind = match kind {
        "padic-nss" => {
            let p = need_p()?;
            let fx = read(f.required("f")?, &mut asts)?;
            let k = f.number("k", Some(1))?;
            let g = read(f.take("g").unwrap_or_else(|| "0".into()), &mut asts)?;
            let gs = f.indexed("g").into_iter().map(|s| read(s, &mut asts)).collect::<Result<Vec<_>, _>>()?;
            let hs = f.indexed("h").into_iter().map(|s| read(s, &mut asts)).collect::<Result<Vec<_>, _>>()?;
            CertKind::PAdicNss { p, f: conv(&fx)?, k, g: conv(&g)?, gs: conv_all(&gs)?, hs: conv_all(&hs)? }
        }
        "real-nss" => {
            let fx = read(f.required("f")?, &mut asts)?;
            let k = f.number("k", Some(1))?;
            let gs = f.indexed("g").into_iter().map(|s| read(s, &mut asts)).collect::<Result<Vec<_>, _>>()?;
            let hs = f.indexed("h").into_iter().map(|s| read(s, &mut asts)).collect::<Result<Vec<_>, _>>()?;
            let bs = f.indexed("b").into_iter().map(|s| read(s, &mut asts)).collect::<Result<Vec<_>, _>>()?;
            CertKind::RealNss { f: conv(&fx)?, k, gs: conv_all(&gs)?, hs: conv_all(&hs)?, bs: conv_all(&bs)? }
        }
        "real-h17" => {
            let fx = read(f.required("f")?, &mut asts)?;
            let g = read(f.take("g").unwrap_or_else(|| "1".into()), &mut asts)?;
            let hs = f.indexed("h").into_iter().map(|s| read(s, &mut asts)).collect::<Result<Vec<_>, _>>()?;
            CertKind::RealH17 { f: conv(&fx)?, g: conv(&g)?, hs: conv_all(&hs)? }
        }
        "lambda" => {
            let p = need_p()?;
            let fx = read(f.required("f")?, &mut asts)?;
            let g = read(f.required("g")?, &mut asts)?;
            let l = read(f.required("lambda")?, &mut asts)?;
            CertKind::LambdaMembership { p, f: conv(&fx)?, g: conv(&g)?, lambda: conv(&l)? }
        }
        "integral-valued" => {
            let p = need_p()?;
            let fx = read(f.required("f")?, &mut asts)?;
            let g = read(f.required("g")?, &mut asts)?;
            let h = read(f.required("h")?, &mut asts)?;
            let m = explicit_vars.unwrap_or_else(|| asts.iter().map(|a| a.nvars_used()).max().unwrap_or(0).max(1));
            let tate = |a: &ExprAst| a.to_tate(m, p, prec).map_err(|e| KochenError::Format(e.to_string()));
            let kind = CertKind::IntegralValued { f: tate(&fx)?, g: tate(&g)?, h: tate(&h)? };
            f.finish()?;
            return Ok(Certificate { nvars: m, order, kind });
        }
        other => {
            return Err(KochenError::Format(format!(
                "unknown certificate kind `{other}` (expected padic-nss, real-nss, real-h17, lambda or integral-valued)"
            )))
        }
    };
    f.finish()?;
    let used = asts.iter().map(|a| a.nvars_used()).max().unwrap_or(0).max(1);
    let nvars = match explicit_vars {
        Some(v) if v < used => {
            return Err(KochenError::Format(format!("vars={v} but X{used} is used")));
        }
        Some(v) => v,
        None => used,
    };
    Ok(Certificate { nvars, order, kind })
}

/// Every certificate in a file, with 1-based line numbers.
pub fn parse_certificates(text: &str) -> Result<Vec<(usize, Certificate)>, KochenError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let cert = parse_certificate(line).map_err(|e| match e {
            KochenError::Format(msg) => KochenError::Format(format!("line {}: {msg}", n + 1)),
            other => other,
        })?;
        out.push((n + 1, cert));
    }
    Ok(out)
}

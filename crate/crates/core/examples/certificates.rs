//! Checking Nullstellensatz and Hilbert-17 certificates, both from the
//! text format and built in code.
//!
//! ```bash
//! cargo run -p wk --example certificates
//! ```

use wk::kochen::{parse_certificates, CertExpr, CertKind, Certificate};

const FILE: &str = "\
# f^k (1 - p g) = sum g_i h_i, with h1 = 1/(1 - 3 gamma(X1))
padic-nss p=3 prec=8 order=12 f=X1 k=1 g=0 g1=X1*(1-3*gamma(X1)) h1=kfrac(1; gamma(X1))
# same, but h1 uses the wrong variable
padic-nss p=3 order=12 f=X1 k=1 g=0 g1=X1*(1-3*gamma(X1)) h1=kfrac(1; gamma(X2))
real-nss order=4 f=X1 k=2 g1=X1^3 h1=X1
real-nss order=4 f=X1 k=1 g1=X1^2 + X2^2 h1=1 b1=X2
real-h17 f=X1^2 + X2^2 g=1 h1=X1 h2=X2
integral-valued p=3 prec=8 f=3*X1 g=X1 h=3
";

fn main() -> Result<(), wk::Error> {
    for (line, cert) in parse_certificates(FILE)? {
        println!("line {line:>2} {:<16} {:?}", cert.kind_name(), cert.verify()?);
    }

    // h = 1/p is not integral, so f = X is not in (pX) Z_3<X>.
    let bad = parse_certificates("integral-valued p=3 f=X1 g=3*X1 h=1/3")?;
    println!("\nX1 in (3 X1)? {}", bad[0].1.verify().unwrap_err());

    // X1^2 * (X1^2 + 1)^2 = (X1^3 + X1)^2 as a Hilbert-17 witness.
    let x = CertExpr::var(0);
    let c = Certificate {
        nvars: 1,
        order: 8,
        kind: CertKind::RealH17 {
            f: x.clone().pow(2),
            g: x.clone().pow(2) + CertExpr::constant(1),
            hs: vec![x.clone().pow(3) + x],
        },
    };
    println!("built in code: {:?}", c.verify()?);
    Ok(())
}

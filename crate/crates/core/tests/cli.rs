use std::process::{Command, Output};

fn wk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cert_file(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("wk-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn divide() {
    let o = wk(&["--vars", "2", "--order", "8", "divide", "--f", "X2^2", "--g", "X2-X1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("q = X1 + X2"), "{out}");
    assert!(out.contains("r = X1^2"), "{out}");
}

#[test]
fn verify_file() {
    let good =
        cert_file("good.txt", "padic-nss p=3 order=12 f=X1 k=1 g=0 g1=X1*(1-3*gamma(X1)) h1=kfrac(1; gamma(X1))\n");
    let o = wk(&["verify", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified"));

    let both = cert_file(
        "both.txt",
        "# two lines\nreal-h17 f=X1^2+X2^2 g=1 h1=X1 h2=X2\n\
         padic-nss p=3 vars=2 f=X1 k=1 g=0 g1=X1*(1-3*gamma(X1)) h1=kfrac(1; gamma(X2))\n",
    );
    let o = wk(&["--json", "verify", both.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["verdict"], "verified");
    assert_eq!(certs[0]["line"], 2);
    assert_eq!(certs[1]["verdict"], "refuted");
    assert_eq!(certs[1]["discrepancy_degree"], 2);
    let _ = std::fs::remove_file(good);
    let _ = std::fs::remove_file(both);
}

#[test]
fn sampler_is_deterministic() {
    let args = ["-p", "3", "-N", "8", "--seed", "7", "sample-definite", "--f", "1", "--g", "3", "-n", "10"];
    let a = wk(&args);
    let b = wk(&args);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_input_exits_two() {
    let o = wk(&["--vars", "1", "invert", "--f", "X1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wk(&["--vars", "1", "invert", "--f", "kfrac(1; X1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[parse.syntax]"));
}

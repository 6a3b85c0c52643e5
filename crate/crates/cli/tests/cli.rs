use std::path::Path;
use std::process::{Command, Output};

fn katra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_katra"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn equiv_exit_codes_and_witness() {
    let o = katra(&[
        "equiv",
        "--programs",
        "p,q",
        "--tests",
        "",
        "p(qp)*",
        "(pq)*p",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = katra(&["equiv", "--programs", "p", "--tests", "b", "bp", "p"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: x[0] p x[0]"));
}

#[test]
fn denote_lists_sorted_words() {
    let o = katra(&[
        "denote",
        "--programs",
        "p",
        "--tests",
        "b",
        "--max-len",
        "1",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x[0]\nx[1]\n");
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(
        katra(&["nnf", "--programs", "p", "--tests", "b", "(p"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        katra(&["nnf", "--programs", "p", "--tests", "b", "~p"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        katra(&["nnf", "--programs", "p", "--tests", "b", "r"])
            .status
            .code(),
        Some(2)
    );
    let tests: Vec<String> = (0..17).map(|i| format!("t{i}")).collect();
    assert_eq!(
        katra(&["nnf", "--tests", &tests.join(","), "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(katra(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn compile_then_check_cert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (aut, cert) = (dir.path().join("aut.json"), dir.path().join("cert.json"));
    let src = "(b p)* ~b + q c";
    let alpha = ["--programs", "p,q", "--tests", "b,c"];
    let mut args = vec![
        "compile",
        src,
        "-o",
        path(&aut),
        "--certificate",
        path(&cert),
    ];
    args.extend(alpha);
    let o = katra(&args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).starts_with("states: "));

    let mut args = vec!["check-cert", path(&cert), path(&aut), src];
    args.extend(alpha);
    let o = katra(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "accepted\n");

    let mut args = vec!["check-cert", path(&cert), path(&aut), "q c"];
    args.extend(alpha);
    assert_eq!(katra(&args).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "compile",
        "--programs",
        "p,q",
        "--tests",
        "b",
        "(p + b q)* ~b",
    ];
    assert_eq!(katra(&args).stdout, katra(&args).stdout);
}

#[test]
fn hoare_and_while_subcommands() {
    let base = [
        "--programs",
        "p",
        "--tests",
        "b",
        "--r",
        "b",
        "--p",
        "b",
        "--q",
        "0",
    ];
    let mut args = vec!["hoare"];
    args.extend(base);
    assert_eq!(katra(&args).status.code(), Some(1));
    args.push("--starred-u");
    let o = katra(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("valid\n"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("loop.w");
    std::fs::write(&file, "while b do { p; q }").unwrap();
    let o = katra(&[
        "while",
        "--programs",
        "p,q",
        "--tests",
        "b",
        "--file",
        path(&file),
        "--check-determinism",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("(b (p q))* ~b\n"), "{out}");
    assert!(out.ends_with("deterministic\n"));
}

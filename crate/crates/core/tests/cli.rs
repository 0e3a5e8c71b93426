use std::path::Path;
use std::process::{Command, Output};

use zerosum::{parse_pair, parse_pair_json};

fn zerosum(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosum"))
        .args(args)
        .env("ZEROSUM_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = zerosum(args, dir.path());
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_examples() {
    let (code, out, _) = run(&["check", "7^3 1^2 | 6^3 5"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("irreducible: true\nlength: 9\nmax_element: 7\n"),
        "{out}"
    );

    let (code, out, _) = run(&["check", "2^2 | 1^4"]);
    assert_eq!(code, 1);
    assert!(out.contains("irreducible: false"));
    assert!(out.contains("witness: 2 | 1^2"), "{out}");

    let (code, out, _) = run(&["check", "1 | 1"]);
    assert_eq!(code, 0);
    assert!(out.contains("irreducible: true"));

    let (code, out, _) = run(&["check", r#"{"A": [[7,3],[1,2]], "B": [[6,3],[5,1]]}"#]);
    assert_eq!(code, 0, "{out}");

    let (code, out, _) = run(&["check", "3 | 2"]);
    assert_eq!(code, 1);
    assert!(out.contains("unbalanced"));
}

#[test]
fn parse_errors_exit_2() {
    for input in ["7^3 1^2", "0 | 0", "a | 1", "3^ | 3", "1 | 1 | 1", ""] {
        let (code, _, err) = run(&["check", input]);
        assert_eq!(code, 2, "input {input:?}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let (code, _, _) = run(&["derive", "5^2 | 2^5", "--product", "5;2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn derive_examples() {
    let (code, out, _) = run(&["derive", "7^3 1^2 | 6^3 5", "--product", "7,6^2;7,5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2 1^4 | 6\nirreducible: true\n");

    let (code, out, _) = run(&["derive", "5^2 | 2^5", "--chain", "5,2;3,2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("5 1 | 2^3"));

    let (code, out, err) = run(&["derive", "5^2 | 2^5", "--chain", "3,2;5,2"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("step 0"), "{err}");
}

#[test]
fn ell_examples() {
    for (k, ell) in [("1", "2"), ("2", "3"), ("3", "5")] {
        let (code, out, _) = run(&["ell", k, "--mode", "brute"]);
        assert_eq!(code, 0);
        assert!(out.contains(&format!("\nell: {ell}\n")), "{out}");
    }
    let (_, out, _) = run(&["ell", "3"]);
    assert!(out.contains("witness: 3^2 | 2^3"));
    assert!(out.contains("sum_cap: 9"));
}

#[test]
fn resource_limits_exit_2() {
    let (code, _, err) = run(&["ell", "7", "--mode", "brute"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    let (code, _, _) = run(&["ell", "10", "--mode", "pruned"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["enumerate", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for json in [false, true] {
        let mut args = vec!["ell", "4", "--mode", "pruned"];
        if json {
            args.push("--json");
        }
        let cold = zerosum(&args, dir.path());
        let warm = zerosum(&args, dir.path());
        assert!(cold.status.success() && warm.status.success());
        assert_eq!(cold.stdout, warm.stdout);
        let cold_err = String::from_utf8_lossy(&cold.stderr);
        let warm_err = String::from_utf8_lossy(&warm.stderr);
        if !json {
            assert!(cold_err.contains("cache: miss"), "{cold_err}");
        }
        assert!(warm_err.contains("cache: hit"), "{warm_err}");
    }
    assert!(dir.path().join("ell-k4-pruned-cap16.json").exists());

    let off = zerosum(&["ell", "4", "--mode", "pruned", "--no-cache"], dir.path());
    assert!(String::from_utf8_lossy(&off.stderr).contains("cache: disabled"));
}

#[test]
fn enumerate_examples() {
    let (code, out, _) = run(&["enumerate", "2", "--sum-cap", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);

    let (_, out, _) = run(&["enumerate", "3", "--min-len", "5"]);
    assert_eq!(out, "3^2 | 2^3\n");

    let (_, out, _) = run(&["enumerate", "1", "--sum-cap", "3"]);
    assert_eq!(out, "1 | 1\n");

    let (_, out, _) = run(&["enumerate", "3", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,sum,length,A,B"));
    assert_eq!(lines.next(), Some("3,1,2,1,1"));
}

#[test]
fn printed_pairs_re_parse() {
    let (_, plain, _) = run(&["enumerate", "4"]);
    let (_, json, _) = run(&["enumerate", "4", "--format", "json"]);
    let plain: Vec<&str> = plain.lines().collect();
    let json: Vec<&str> = json.lines().collect();
    assert_eq!(plain.len(), json.len());
    assert!(!plain.is_empty());
    for (text, j) in plain.iter().zip(&json) {
        let p = parse_pair(text).unwrap();
        assert_eq!(p.to_string(), *text);
        assert_eq!(parse_pair_json(j).unwrap(), p);
        let (code, out, _) = run(&["check", text]);
        assert_eq!(code, 0, "{text}: {out}");
    }
}

#[test]
fn extremal_and_selftest() {
    let (code, out, _) = run(&["extremal", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("4^3 | 3^4\n"));
    assert!(out.contains("unique: true"));

    let (code, out, _) = run(&["selftest", "--seed", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

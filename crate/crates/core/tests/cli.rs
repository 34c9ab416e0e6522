//! End-to-end tests of the command-line surface: the documented examples,
//! the exit-code contract, output determinism across thread counts, and
//! JSON schema round-trips.

use smoothsum::repr::{RepresentationTable, TableSummary};
use smoothsum::residue::ObstructionCertificate;
use smoothsum::signed::SignedSearchResult;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    cli_env(args, &[])
}

fn cli_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_smoothsum"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

#[test]
fn documented_examples() {
    let r = cli(&["enumerate", "--primes", "2,3", "--limit", "10"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "1 2 3 4 6 8 9");

    let r = cli(&["f", "--primes", "2,3", "--k", "2", "--limit", "1000"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "23");

    let r = cli(&["lambda", "--m", "15"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "4");

    let r = cli(&["greedy", "--primes", "2,3", "--n", "23"]);
    assert_eq!(r.stdout.trim(), "18 4 1");
}

#[test]
fn f_index_convention_flag() {
    // "fewer than k" convention shifts the index by one
    let r = cli(&[
        "f", "--primes", "2,3", "--k", "2", "--less-than", "--limit", "100",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "5");
    let r = cli(&[
        "f", "--primes", "2,3", "--k", "1", "--less-than", "--limit", "100",
    ]);
    assert_eq!(r.stdout.trim(), "1");
}

#[test]
fn exit_code_contract() {
    // 1: invalid arguments (library validation)
    let r = cli(&["enumerate", "--primes", "2,4", "--limit", "10"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("not prime"), "stderr: {}", r.stderr);

    // 1: invalid arguments (usage)
    let r = cli(&["enumerate", "--limit", "10"]);
    assert_eq!(r.code, 1);

    // 0: help
    let r = cli(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("smoothsum"));

    // 2: resource cap
    let r = cli(&[
        "gaps",
        "--primes",
        "2,3",
        "--lo",
        "1",
        "--hi",
        "999999999999",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("resource limit"), "stderr: {}", r.stderr);

    // 2: env-configured memory cap
    let r = cli_env(
        &[
            "min-terms",
            "--primes",
            "2,3",
            "--limit",
            "100000",
        ],
        &[("SMOOTHSUM_MAX_MEM", "1024")],
    );
    assert_eq!(r.code, 2);

    // 3: absent result (threshold beyond the search limit)
    let r = cli(&["f", "--primes", "2,3", "--k", "12", "--limit", "500"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.stdout.trim(), "exceeds 500");

    // 3: window search budget exhausted
    let r = cli(&[
        "lambda-window",
        "--i",
        "1000000",
        "--c3",
        "1.5",
        "--c4",
        "1.0",
        "--max-y",
        "2",
    ]);
    assert_eq!(r.code, 3);
}

#[test]
fn json_outputs_reparse() {
    let r = cli(&[
        "min-terms",
        "--primes",
        "2,3",
        "--limit",
        "1000",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    let summary: TableSummary = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(summary.limit, 1000);
    assert_eq!(summary.f[1].outcome, smoothsum::repr::FOutcome::Value(23));

    let r = cli(&[
        "signed-terms",
        "--primes",
        "2,3",
        "--n",
        "23",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    let result: SignedSearchResult = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(result.length, Some(2));
    let sum: i64 = result
        .terms
        .iter()
        .map(|t| {
            let v = t.term.value() as i64;
            if t.negative {
                -v
            } else {
                v
            }
        })
        .sum();
    assert_eq!(sum, 23);
    for t in &result.terms {
        assert!(!t.term.exponents().is_empty());
    }

    let r = cli(&[
        "certify",
        "--primes",
        "2,3",
        "--k",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    // documented schema keys
    let v: serde_json::Value = serde_json::from_str(r.stdout.trim()).unwrap();
    for key in ["P", "k", "m", "lambda_m", "residue", "witness_n", "checked_by_search"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    let cert: ObstructionCertificate = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(cert.witness_n % cert.m, cert.residue);
    assert!(cert.checked_by_search);

    let r = cli(&["lambda", "--m", "2730", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(v["lambda"], 12);
    assert_eq!(v["factorization"], "2*3*5*7*13");
}

#[test]
fn deterministic_across_thread_counts() {
    let args = [
        "gaps",
        "--primes",
        "2,3",
        "--lo",
        "1000",
        "--hi",
        "50000",
        "--format",
        "csv",
    ];
    let single: Vec<String> = {
        let mut a = vec!["--threads", "1"];
        a.extend_from_slice(&args);
        a.iter().map(|s| s.to_string()).collect()
    };
    let quad: Vec<String> = {
        let mut a = vec!["--threads", "4"];
        a.extend_from_slice(&args);
        a.iter().map(|s| s.to_string()).collect()
    };
    let r1 = cli(&single.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    let r4 = cli(&quad.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert_eq!(r1.code, 0);
    assert_eq!(r1.stdout, r4.stdout, "gap sweep must not depend on workers");
    assert!(r1.stdout.starts_with("n,predecessor,gap\n"));
}

#[test]
fn binary_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.smtb");
    let r = cli(&[
        "min-terms",
        "--primes",
        "2,3",
        "--limit",
        "500",
        "--term-cap",
        "9",
        "--export",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let mut f = std::fs::File::open(&path).unwrap();
    let table = RepresentationTable::read_binary(&mut f).unwrap();
    assert_eq!(table.limit(), 500);
    assert_eq!(table.term_cap(), 9);
    assert_eq!(table.min_terms(23), Some(3));
    assert_eq!(table.min_terms(431), Some(4));
}

#[test]
fn min_terms_query_output() {
    let r = cli(&[
        "min-terms",
        "--primes",
        "2,3",
        "--limit",
        "500",
        "--n",
        "431",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "4");

    let r = cli(&[
        "min-terms",
        "--primes",
        "2,3",
        "--limit",
        "500",
        "--term-cap",
        "3",
        "--n",
        "431",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "unreachable(>3)");
}

#[test]
fn f_signed_and_coverage_text() {
    let r = cli(&[
        "f-signed",
        "--primes",
        "2,3",
        "--k",
        "2",
        "--limit",
        "200",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "103");

    let r = cli(&[
        "coverage",
        "--primes",
        "2,3",
        "--k",
        "1",
        "--m",
        "24",
        "--signed",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("missing"), "stdout: {}", r.stdout);
    assert!(r.stdout.contains("holds"));
}

#[test]
fn eps_construct_output() {
    let r = cli(&["eps-construct", "--y", "3", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(v["l"], 6);
    assert_eq!(v["m"], "42");
    assert_eq!(v["lambda"], 6);

    let r = cli(&["eps-construct", "--y", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(v["lambda"], 2520);
    assert_eq!(v["m_digits"], 37);
}

#[test]
fn bounds_csv_columns() {
    let r = cli(&[
        "bounds",
        "--k",
        "3",
        "--t",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "section,name,n,observed,log_value,log_bound,holds"
    );
    assert!(lines.next().unwrap().starts_with("bound,lower_unsigned"));
    // every data row has the full column count (the note row is a quoted
    // free-text field, checked separately)
    for line in r.stdout.lines().skip(1) {
        if line.starts_with("note,") {
            continue;
        }
        assert_eq!(line.split(',').count(), 7, "row: {line}");
    }
    assert!(r.stdout.lines().any(|l| l.starts_with("note,\"")));
}

#[test]
fn csv_rejected_where_not_tabular() {
    let r = cli(&[
        "lambda",
        "--m",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("csv"), "stderr: {}", r.stderr);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "bounds", "--k", "4", "--primes", "2,3", "--sweep-max", "10000", "--m-max", "1000",
        "--format", "json",
    ];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

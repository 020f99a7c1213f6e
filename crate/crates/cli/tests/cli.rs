use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yokonuma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{e}: {l}")))
        .collect()
}

fn rows(out: &Output) -> Vec<Value> {
    records(out)
        .into_iter()
        .filter(|r| r["kind"] == "row")
        .collect()
}

#[test]
fn every_line_is_a_tagged_record_ending_in_a_summary() {
    let out = run(&["rank", "--d", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    for r in &recs {
        assert!(
            matches!(
                r["kind"].as_str(),
                Some("row" | "note" | "check" | "summary")
            ),
            "{r}"
        );
        assert_eq!(r["command"], "rank");
    }
    let last = recs.last().unwrap();
    assert_eq!(last["kind"], "summary");
    assert_eq!(last["failed"], 0);
}

#[test]
fn ranks_of_the_algebra_and_fixed_subalgebras() {
    let cases: [(&[&str], u64); 3] = [
        (&["rank", "--d", "2", "--n", "3"], 48),
        (&["rank", "--d", "2", "--n", "3", "--group", "sd"], 24),
        (
            &["rank", "--d", "4", "--n", "2", "--group", "zp", "--p", "2"],
            16,
        ),
    ];
    for (args, want) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(rows(&out)[0]["basis_size"], want, "{args:?}");
    }
}

#[test]
fn products_in_generator_notation() {
    let out = run(&["mul", "--d", "2", "--n", "2", "--mode", "cyc", "t1", "t1"]);
    assert_eq!(out.status.code(), Some(0));
    let one = run(&["mul", "--d", "2", "--n", "2", "--mode", "cyc", "1", "1"]);
    assert_eq!(rows(&out)[0]["product"], rows(&one)[0]["product"]);
    assert_eq!(rows(&out)[0]["terms"], 4);
    let e = run(&["mul", "--d", "2", "--n", "2", "e1", "e1"]);
    let idem = run(&["mul", "--d", "2", "--n", "2", "e1", "1"]);
    assert_eq!(rows(&e)[0]["product"], rows(&idem)[0]["product"]);
    assert_eq!(rows(&e)[0]["terms"], 2);
    let rational_t = run(&["mul", "--d", "2", "--n", "2", "t1", "t1"]);
    assert_eq!(rational_t.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "psi-check",
        "--d",
        "2",
        "--n",
        "2",
        "--tier",
        "quick",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    let strip = |o: &Output| -> Vec<Value> {
        records(o)
            .into_iter()
            .map(|mut r| {
                if let Some(m) = r.as_object_mut() {
                    m.remove("elapsed_ms");
                }
                r
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn worker_count_does_not_change_results() {
    let one = run(&[
        "--workers",
        "1",
        "verify",
        "--relset",
        "YH_E",
        "--assign",
        "identity-e",
        "--d",
        "2",
        "--n",
        "3",
    ]);
    let four = run(&[
        "--workers",
        "4",
        "verify",
        "--relset",
        "YH_E",
        "--assign",
        "identity-e",
        "--d",
        "2",
        "--n",
        "3",
    ]);
    assert_eq!(one.status.code(), Some(0));
    let statuses = |o: &Output| -> Vec<(Value, Value, Value)> {
        records(o)
            .into_iter()
            .filter(|r| r["kind"] == "check")
            .map(|r| (r["id"].clone(), r["instance"].clone(), r["status"].clone()))
            .collect()
    };
    assert_eq!(statuses(&one), statuses(&four));
}

#[test]
fn simple_modules_of_the_two_strand_fixed_subalgebra() {
    let out = run(&["simples", "--d", "2", "--n", "2", "--group", "sd", "--dims"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = rows(&out);
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["dim"] == 1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["rank", "--d", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["rank", "--d", "3", "--n", "2", "--group", "zp", "--p", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--relset", "NOPE", "--assign", "phi", "--d", "2", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simples", "--d", "2", "--n", "2", "--e", "3", "--dims"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn text_format_is_accepted() {
    let out = run(&["--format", "text", "rank", "--d", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains('8'));
}

#[test]
fn presentation_files_extend_the_library() {
    let path = std::env::temp_dir().join(format!("yokonuma-cli-{}.rel", std::process::id()));
    std::fs::write(
        &path,
        "relset TIES\n\
         gen g(i = 1..n-1) invertible\n\
         gen E(k = 0..P-1)\n\
         define e(i) = sum(k = 0..P-1 where pos(i, k) == pos(i+1, k), E(k))\n\
         rel idem(i = 1..n-1): e(i)^2 == e(i)\n\
         rel commute(i = 1..n-1): g(i) * e(i) == e(i) * g(i)\n\
         \n\
         relset WRONG\n\
         gen g(i = 1..n-1) invertible\n\
         rel involution(i = 1..n-1): g(i)^2 == 1\n",
    )
    .unwrap();
    let file = path.to_str().unwrap();
    let good = run(&[
        "verify",
        "--library",
        file,
        "--relset",
        "TIES",
        "--assign",
        "identity-e",
        "--d",
        "2",
        "--n",
        "3",
    ]);
    let bad = run(&[
        "verify",
        "--library",
        file,
        "--relset",
        "WRONG",
        "--assign",
        "identity-e",
        "--d",
        "2",
        "--n",
        "3",
    ]);
    let missing = run(&[
        "verify",
        "--library",
        "/nonexistent.rel",
        "--relset",
        "TIES",
        "--assign",
        "identity-e",
        "--d",
        "2",
        "--n",
        "3",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        good.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&good.stderr)
    );
    assert_eq!(rows(&good)[0]["relations"], 4);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(missing.status.code(), Some(2));
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use dalg_core::{EquationDoc, Poly, PrimeField, Rationals, ResultDoc};

fn dalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn dalg_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dalg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn tree_automaton_text() {
    let o = dalg(&[
        "guess-fun",
        "--builtin",
        "labelled_rooted_trees",
        "--n",
        "9",
        "--deg-ade",
        "2",
        "--deg-poly",
        "1",
        "--all-poly-deg",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "y - x*y' + x*y'*y = 0\n");
}

#[test]
fn fib_pow2_mod_101() {
    let o = dalg(&[
        "guess-seq",
        "--builtin",
        "fib_pow2",
        "--n",
        "15",
        "--deg-ade",
        "5",
        "--modulus",
        "101",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "4*s(n)^2 + 97*s(n)^3 + 5*s(n)^4 + 96*s(n)^5 + 100*s(n+1)^2 + s(n+1)^2*s(n) = 0\n"
    );
}

#[test]
fn fib_pow2_lifted() {
    let o = dalg(&[
        "guess-modular",
        "--builtin",
        "fib_pow2",
        "--n",
        "15",
        "--deg-ade",
        "5",
        "--primes",
        "101,103",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "4*s(n)^2 - 4*s(n)^3 + 5*s(n)^4 - 5*s(n)^5 - s(n+1)^2 + s(n+1)^2*s(n) = 0\n"
    );
}

#[test]
fn terms_of_odd_indexed_primes() {
    let o = dalg(&["terms", "--builtin", "odd_indexed_primes", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 7 13 19 29\n");
    let o = dalg(&["terms", "--builtin", "catalan", "--n", "3", "--format", "bfile"]);
    assert_eq!(stdout(&o), "0 1\n1 1\n2 2\n");
    let o = dalg(&["terms", "--list"]);
    assert!(stdout(&o).contains("zeta_even_scaled"));
}

#[test]
fn default_flags() {
    let base = ["guess-fun", "--builtin", "zeta_even_scaled", "--n", "15"];
    let explicit = [
        &base[..],
        &["--deg-ade", "2", "--deg-poly", "2", "--start-from-ord", "0"],
    ]
    .concat();
    let a = dalg(&base);
    let b = dalg(&explicit);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(stdout(&a), stdout(&b));

    let seq = ["guess-seq", "--builtin", "catalan", "--n", "20"];
    let seq_explicit = [&seq[..], &["--deg-ade", "2", "--start-from-ord", "0"]].concat();
    assert_eq!(stdout(&dalg(&seq)), stdout(&dalg(&seq_explicit)));
}

#[test]
fn exit_codes() {
    let none = dalg(&["guess-seq", "--builtin", "fibonacci", "--n", "3", "--deg-ade", "3"]);
    assert_eq!(none.status.code(), Some(1));
    assert_eq!(stdout(&none), "None\n");

    for args in [
        &["guess-seq", "--builtin", "nope", "--n", "5"][..],
        &["guess-seq", "--builtin", "catalan", "--input", "x.txt", "--n", "5"],
        &["guess-seq", "--builtin", "catalan"],
        &["guess-fun", "--builtin", "catalan", "--n", "10", "--deg-ade", "0"],
        &["guess-seq", "--builtin", "catalan", "--n", "10", "--deg-ade", "two"],
        &["guess-modular", "--builtin", "catalan", "--n", "10", "--primes", "100"],
    ] {
        let o = dalg(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn stdin_and_files() {
    let o = dalg_stdin(
        &["guess-seq", "--input", "-", "--deg-ade", "1"],
        "0\n1\n1\n2\n3\n5\n8\n13\n21\n34\n55\n",
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "-s(n) - s(n+1) + s(n+2) = 0\n");

    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.txt");
    let bfile = stdout(&dalg(&[
        "terms",
        "--builtin",
        "fibonacci",
        "--n",
        "12",
        "--format",
        "bfile",
    ]));
    std::fs::write(&b, bfile).unwrap();
    let o = dalg(&["guess-seq", "--bfile", b.to_str().unwrap(), "--deg-ade", "1"]);
    assert_eq!(stdout(&o), "-s(n) - s(n+1) + s(n+2) = 0\n");

    let j = dir.path().join("t.json");
    let json = stdout(&dalg(&[
        "terms",
        "--builtin",
        "fibonacci",
        "--n",
        "12",
        "--format",
        "json",
    ]));
    std::fs::write(&j, json).unwrap();
    let o = dalg(&["guess-seq", "--input", j.to_str().unwrap(), "--deg-ade", "1"]);
    assert_eq!(stdout(&o), "-s(n) - s(n+1) + s(n+2) = 0\n");

    let bad = dalg_stdin(&["guess-seq", "--input", "-"], "1\nabc\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("line 2"), "{}", stderr(&bad));
}

/// Guess invocations on the built-in examples: (guess args, data args for verify).
fn examples() -> Vec<(Vec<&'static str>, Vec<&'static str>)> {
    vec![
        (
            vec![
                "guess-fun",
                "--builtin",
                "labelled_rooted_trees",
                "--n",
                "9",
                "--deg-poly",
                "1",
                "--all-poly-deg",
            ],
            vec!["--builtin", "labelled_rooted_trees", "--n", "30"],
        ),
        (
            vec![
                "guess-fun",
                "--builtin",
                "zeta_even_scaled",
                "--n",
                "15",
                "--deg-poly",
                "1",
            ],
            vec!["--builtin", "zeta_even_scaled", "--n", "30"],
        ),
        (
            vec![
                "guess-fun",
                "--builtin",
                "catalan3_partial_sums",
                "--n",
                "15",
                "--deg-ade",
                "1",
                "--deg-poly",
                "4",
                "--start-from-ord",
                "3",
                "--all-poly-deg",
                "--presume-rows",
                "1",
            ],
            vec!["--builtin", "catalan3_partial_sums", "--n", "25"],
        ),
        (
            vec!["guess-seq", "--builtin", "catalan", "--n", "20"],
            vec!["--builtin", "catalan", "--n", "40"],
        ),
        (
            vec![
                "guess-seq",
                "--builtin",
                "fib_pow2",
                "--n",
                "15",
                "--deg-ade",
                "5",
                "--modulus",
                "103",
            ],
            vec!["--builtin", "fib_pow2", "--n", "15"],
        ),
        (
            vec![
                "guess-modular",
                "--builtin",
                "fib_pow2",
                "--n",
                "15",
                "--deg-ade",
                "5",
                "--primes",
                "101,103",
            ],
            vec!["--builtin", "fib_pow2", "--n", "16"],
        ),
        (
            vec![
                "guess-seq",
                "--builtin",
                "odd_indexed_primes",
                "--n",
                "55",
                "--deg-ade",
                "8",
                "--start-from-ord",
                "1",
            ],
            vec!["--builtin", "odd_indexed_primes", "--n", "55"],
        ),
    ]
}

#[test]
fn json_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (i, (guess, data)) in examples().into_iter().enumerate() {
        let args = [&guess[..], &["--format", "json"]].concat();
        let o = dalg(&args);
        assert_eq!(o.status.code(), Some(0), "{guess:?}: {}", stderr(&o));
        let json = stdout(&o);
        let text = stdout(&dalg(&guess));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let (field, docs): (String, Vec<EquationDoc>) = if value.get("basis").is_some() {
            let doc: ResultDoc = serde_json::from_str(&json).unwrap();
            assert_eq!(serde_json::to_string(&doc).unwrap() + "\n", json, "{guess:?}");
            (doc.field, doc.basis)
        } else {
            let eq: EquationDoc = serde_json::from_value(value["equation"].clone()).unwrap();
            assert!(json.contains(&serde_json::to_string(&eq).unwrap()), "{guess:?}");
            ("Q".to_string(), vec![eq])
        };
        let rendered: String = docs
            .iter()
            .map(|d| match field.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
                Some(p) => {
                    let f = PrimeField::new(p.parse().unwrap()).unwrap();
                    Poly::from_doc(&f, d).unwrap().render(&f)
                }
                None => Poly::from_doc(&Rationals, d).unwrap().render(&Rationals),
            } + " = 0\n")
            .collect();
        assert_eq!(rendered, text, "{guess:?}");

        let path = dir.path().join(format!("eq{i}.json"));
        std::fs::write(&path, &json).unwrap();
        let v = dalg(&[&["verify", "--equation", path.to_str().unwrap()][..], &data[..]].concat());
        assert_eq!(v.status.code(), Some(0), "{guess:?}: {}{}", stdout(&v), stderr(&v));
        assert!(stdout(&v).lines().all(|l| l.contains("holds")), "{}", stdout(&v));
    }
}

#[test]
fn verify_reports_failures() {
    let o = dalg(&[
        "guess-seq",
        "--builtin",
        "odd_indexed_primes",
        "--n",
        "55",
        "--deg-ade",
        "8",
        "--start-from-ord",
        "1",
        "--format",
        "json",
    ]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let v = dalg(&[
        "verify",
        "--equation",
        path.to_str().unwrap(),
        "--builtin",
        "odd_indexed_primes",
        "--n",
        "100",
    ]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("fails at row"));

    std::fs::write(&path, "{\"kind\":\"difference\"}").unwrap();
    let v = dalg(&[
        "verify",
        "--equation",
        path.to_str().unwrap(),
        "--builtin",
        "catalan",
        "--n",
        "10",
    ]);
    assert_eq!(v.status.code(), Some(2));
}

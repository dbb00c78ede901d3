use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use mcs_enum::{oracle, CanonicalPair};

const F1: [&str; 4] = ["--x", "acbcded", "--y", "edeabcb"];
const F2: [&str; 4] = ["--x", "acabba", "--y", "cbabcc"];
const F3: [&str; 4] = ["--x", "dacabdacbcbdea", "--y", "acbabcdecaadab"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcs-enum"))
        .args(args)
        .env_remove("MCS_ENUM_DEBUG_VALIDATE")
        .output()
        .expect("spawn mcs-enum")
}

fn run_with_stdin(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mcs-enum"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mcs-enum");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(String::from).collect()
}

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn enumerates_the_short_fixture_in_order() {
    for algo in ["enum221", "enum211", "enum331"] {
        let out = run(&with(&["enumerate"], &with(&F1, &["--algo", algo])));
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(lines(&out), ["abc", "acb", "de", "ed"], "{algo}");
    }
}

#[test]
fn limit_truncates_in_lexicographic_order() {
    let out = run(&with(&["enumerate"], &with(&F3, &["--limit", "3"])));
    assert_eq!(out.status.code(), Some(0));
    // "acabcdea" is not maximal here (it extends to "acbabcdea"), so the third
    // line is the third MCS of the oracle's sorted set instead
    let p = CanonicalPair::from_chars("dacabdacbcbdea", "acbabcdecaadab");
    let want: Vec<String> = oracle::all_mcs_bruteforce_capped(&p, 32)
        .unwrap()
        .iter()
        .take(3)
        .map(|z| p.render(z))
        .collect();
    assert_eq!(lines(&out), want);
    assert_eq!(lines(&out)[2], "acabdab");
}

#[test]
fn empty_inputs_give_one_empty_line() {
    let out = run(&["enumerate", "--x", "", "--y", ""]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, b"\n");
}

#[test]
fn check_verdicts_and_codes() {
    for (z, word, code) in [("abc", "maximal", 0), ("ab", "not-maximal", 1), ("zz", "not-common", 4), ("", "not-maximal", 1)] {
        let out = run(&with(&["check"], &with(&F1, &["--z", z])));
        assert_eq!(out.status.code(), Some(code), "{z}");
        assert_eq!(lines(&out), [word]);
    }
    let out = run(&["check", "--x", "ab", "--y", "cd", "--z", ""]);
    assert_eq!(lines(&out), ["maximal"]);
}

#[test]
fn graph_queries_on_the_dag_fixture() {
    assert_eq!(lines(&run(&with(&["graph", "--quasi-lcs"], &F2))), ["ac"]);
    assert_eq!(lines(&run(&with(&["graph", "--most-stable"], &F2))), ["cbb"]);
    let p = CanonicalPair::from_chars("acabba", "cbabcc");
    let n = oracle::all_mcs_bruteforce(&p).unwrap().len();
    assert_eq!(lines(&run(&with(&["graph", "--count"], &F2))), [n.to_string()]);
    let out = run(&with(&["graph", "--count", "--quasi-lcs"], &F2));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_dot_to_stdout_and_file() {
    let out = run(&with(&["graph"], &F2));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph allmcs {\n"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("->").count(), 13);
    assert!(dot.contains("label=\"((1,1),(1,1))\""));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let out = run(&with(&["graph", "--out", path.to_str().unwrap()], &F2));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), dot);
}

#[test]
fn inputs_from_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("x.txt"), dir.path().join("y.txt"));
    std::fs::write(&a, "acbcded\n").unwrap();
    std::fs::write(&b, "edeabcb").unwrap();
    let out = run(&["enumerate", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(lines(&out), ["abc", "acb", "de", "ed"]);

    let out = run_with_stdin(&["enumerate", "--count-only"], b"acbcded\nedeabcb\n");
    assert_eq!(lines(&out), ["4"]);

    let missing = dir.path().join("nope");
    let out = run(&["enumerate", missing.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_lines_round_trip() {
    let out = run(&with(&["enumerate", "--json"], &F1));
    let got: Vec<(String, u64)> = lines(&out)
        .iter()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            (v["mcs"].as_str().unwrap().to_string(), v["index"].as_u64().unwrap())
        })
        .collect();
    assert_eq!(
        got,
        vec![("abc".into(), 0), ("acb".into(), 1), ("de".into(), 2), ("ed".into(), 3)]
    );
}

#[test]
fn utf8_mode_compares_code_points() {
    let out = run(&["enumerate", "--utf8", "--x", "αβγ", "--y", "βαγ"]);
    assert_eq!(lines(&out), ["αγ", "βγ"]);
    // byte mode sees the shared lead byte of α and β as well
    let out = run(&["enumerate", "--x", "αβγ", "--y", "βαγ", "--count-only"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn algorithms_agree_on_random_inputs() {
    let seeds = ["1", "2", "3"];
    for seed in seeds {
        let mut sets = Vec::new();
        for algo in ["enum221", "enum211", "enum331"] {
            let (x, y) = (format!("abcab{seed}bca"), format!("cab{seed}acbba"));
            let out = run(&["enumerate", "--x", &x, "--y", &y, "--algo", algo]);
            sets.push(lines(&out).into_iter().collect::<BTreeSet<_>>());
        }
        assert_eq!(sets[0], sets[1]);
        assert_eq!(sets[0], sets[2]);
    }
}

#[test]
fn bad_flags_and_caps() {
    assert_eq!(run(&["enumerate", "--algo", "enum999", "--x", "a", "--y", "a"]).status.code(), Some(2));
    assert_eq!(run(&with(&["enumerate", "--order", "graph"], &F1)).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--x", "a"]).status.code(), Some(2));
    let out = run(&with(&["enumerate", "--algo", "enum331", "--max-graph-vertices", "5"], &F3));
    assert_eq!(out.status.code(), Some(3));
    let out = run(&with(&["graph", "--max-graph-vertices", "5"], &F3));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn graph_order_streams_every_mcs() {
    let out = run(&with(&["enumerate", "--algo", "enum331", "--order", "graph"], &F3));
    let got: BTreeSet<String> = lines(&out).into_iter().collect();
    let lex: BTreeSet<String> = lines(&run(&with(&["enumerate"], &F3))).into_iter().collect();
    assert_eq!(got, lex);
}

#[test]
fn debug_validation_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_mcs-enum"))
        .args(with(&["enumerate", "--algo", "enum211"], &F3))
        .env("MCS_ENUM_DEBUG_VALIDATE", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).len(), 13);
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let ls = lines(out);
    assert_eq!(
        ls[0],
        "algo,n,sigma,preprocess_ns,peak_words,delay_p50,delay_p95,delay_max,outputs_count"
    );
    ls[1..].iter().map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let args = ["bench", "--n", "120", "--seed", "5", "--algo", "enum221,enum211", "--limit", "40", "--reps", "2"];
    let (a, b) = (csv_rows(&run(&args)), csv_rows(&run(&args)));
    let stable = |rows: &[Vec<String>]| -> Vec<Vec<String>> {
        rows.iter().map(|r| vec![r[0].clone(), r[1].clone(), r[2].clone(), r[4].clone(), r[8].clone()]).collect()
    };
    assert_eq!(stable(&a), stable(&b));
    assert_eq!(a.len(), 4);
    // both algorithms report the same number of outputs on the same input
    assert_eq!(a[0][8], a[1][8]);
}

#[test]
fn bench_file_and_periodic_sources() {
    let out = run(&with(&["bench", "--gen", "file", "--algo", "enum331"], &F1));
    let rows = csv_rows(&out);
    assert_eq!(rows[0][0], "enum331");
    assert_eq!(rows[0][8], "4");
    let out = run(&["bench", "--gen", "file"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["bench", "--gen", "periodic", "--n", "60", "--sigma", "3", "--algo", "enum211"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bench_memory_grows_linearly_for_enum211_and_quadratically_for_enum221() {
    let sizes = [256usize, 512, 1024, 2048];
    let mut peaks = [Vec::new(), Vec::new()];
    for n in sizes {
        let n = n.to_string();
        let out = run(&["bench", "--n", &n, "--seed", "1", "--algo", "enum211,enum221", "--limit", "20"]);
        for (k, row) in csv_rows(&out).iter().enumerate() {
            peaks[k].push(row[4].parse::<f64>().unwrap());
        }
    }
    let slope = |ys: &[f64]| {
        let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
        let ys: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        cov / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>()
    };
    let (s211, s221) = (slope(&peaks[0]), slope(&peaks[1]));
    assert!((0.75..=1.25).contains(&s211), "enum211 slope {s211}");
    assert!((1.75..=2.25).contains(&s221), "enum221 slope {s221}");
}

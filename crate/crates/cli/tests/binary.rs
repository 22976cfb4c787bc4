//! Drives the `paley` binary: exit codes, output formats, determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn paley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paley")).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn strip_ms(out: &Output) -> Vec<Value> {
    lines(out)
        .into_iter()
        .map(|mut v| {
            v["ms"] = Value::from(0);
            v
        })
        .collect()
}

#[test]
fn lemma1_example_passes() {
    let out = paley(&["verify", "lemma1", "--q", "13", "--d", "2", "--k", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["schema"], 1);
    assert_eq!(v[0]["verdict"], "pass");
    assert_eq!(v[0]["config"]["field"]["modulus"], serde_json::json!([0, 1]));
    assert_eq!(v[0]["result"]["m"], v[0]["result"]["m_charsum"]);
}

#[test]
fn degenerate_probe_reports_deficit_one() {
    let out = paley(&["verify", "thm12", "--p", "5", "--e", "1", "--n", "2", "--d", "2", "--degenerate-probe"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["verdict"], "pass-with-allowance");
    assert_eq!(v["result"]["m"], 4);
    assert_eq!(v["result"]["main_term"], 5);
    assert_eq!(v["result"]["deficit"], 1);
    assert_eq!(v["result"]["strict_holds"], false);
}

#[test]
fn peisert_range_all_pass() {
    let out = paley(&["verify", "thm16", "--qmin", "7", "--qmax", "31", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let qs: std::collections::BTreeSet<u64> = lines(&out)
        .iter()
        .filter(|v| v["task"] == "thm16")
        .map(|v| v["config"]["instance"]["q"].as_u64().unwrap())
        .collect();
    assert_eq!(qs.into_iter().collect::<Vec<_>>(), vec![7, 11, 19, 23, 27, 31]);
}

#[test]
fn failing_check_exits_one() {
    // GP(13, 3) is not strongly regular.
    let out = paley(&["verify", "srg", "--q", "13", "--d", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["verdict"], "fail");
}

#[test]
fn parameter_errors_exit_two() {
    for args in [
        &["verify", "lemma1", "--q", "12", "--d", "2", "--k", "1"][..],
        &["verify", "lemma1", "--q", "13", "--d", "5", "--k", "1"],
        &["verify", "thm16", "--q", "13"],
        &["verify", "chain", "--m", "9", "--d", "2"],
        &["verify", "thm15", "--q", "11", "--d", "2"],
        &["verify", "bogus"],
        &["verify", "thm12", "--q", "5", "--n", "3", "--d", "2", "--degenerate-probe"],
    ] {
        let out = paley(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn ambient_cap_exits_three() {
    let out = paley(&["verify", "lemma21", "--p", "3", "--e", "1", "--n", "16", "--d", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = paley(&["verify", "lemma1", "--q", "13", "--d", "2", "--k", "1", "--ambient-bits", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn identical_configs_give_identical_reports() {
    let args = ["verify", "thm32", "--p", "3", "--n", "2", "--ext", "2", "--d", "4", "--k", "2", "--reps", "6", "--seed", "9"];
    let a = paley(&args);
    let b = paley(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip_ms(&a), strip_ms(&b));
    let mut wide: Vec<&str> = args.to_vec();
    wide.extend(["--jobs", "3"]);
    assert_eq!(strip_ms(&a), strip_ms(&paley(&wide)));
    let other = paley(&["verify", "thm32", "--p", "3", "--n", "2", "--ext", "2", "--d", "4", "--k", "2", "--reps", "6", "--seed", "10"]);
    assert_ne!(strip_ms(&a), strip_ms(&other));
}

#[test]
fn csv_output_has_header_and_rows() {
    let out = paley(&["verify", "lemma1", "--q", "29", "--d", "4", "--k", "3", "--reps", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "schema");
    let m_col = headers.iter().position(|h| h == "result.m").unwrap();
    let c_col = headers.iter().position(|h| h == "result.m_charsum").unwrap();
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[m_col] == r[c_col] && &r[2] == "pass"));
}

#[test]
fn sweeps() {
    let out = paley(&["sweep", "fq-alpha", "--qmin", "13", "--qmax", "61"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = lines(&out);
    assert!(!rows.is_empty());
    for r in &rows {
        let q = r["config"]["instance"]["q"].as_u64().unwrap();
        let size = r["result"]["size"].as_u64().unwrap();
        // (q + 1)/2 for q = 1 mod 4, (q + 3)/2 otherwise.
        assert_eq!(size, if q % 4 == 1 { (q + 1) / 2 } else { (q + 3) / 2 });
    }

    let out = paley(&["sweep", "fq-alpha", "--qmin", "14", "--qmax", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let out = paley(&["sweep", "thm14", "--q", "193", "--d", "2", "--ms", "1,2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let ratios: Vec<f64> = lines(&out).iter().map(|r| r["result"]["ratio"].as_f64().unwrap()).collect();
    assert_eq!(ratios.len(), 3);
    assert_eq!(ratios[0], 1.0);
    assert!((ratios[1] - 0.5).abs() < 0.05 && (ratios[2] - 0.25).abs() < 0.06, "{ratios:?}");
}

#[test]
fn dimacs_export() {
    let dir = std::env::temp_dir().join(format!("paley-dimacs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gp25.col");
    let out = paley(&["verify", "srg", "--q", "25", "--d", "2", "--export-dimacs", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "p edge 25 150"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 150);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn clique_tasks_run() {
    let out = paley(&["verify", "prop42", "--q", "13", "--d", "4", "--degrees", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["verdict"], "pass");

    let out = paley(&["verify", "thm14", "--q", "13", "--d", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["verdict"], "empirical");

    let out = paley(&["verify", "chain", "--m", "12", "--d", "12"]);
    assert_eq!(lines(&out)[0]["result"]["chain"], serde_json::json!([2, 6]));

    let out = paley(&["verify", "lemma41", "--q", "5", "--d", "4", "--dprime", "2"]);
    assert_eq!(lines(&out)[0]["result"]["induced_edges"], 150);

    let out = paley(&["verify", "thm15", "--q", "11", "--d", "4", "--all-u"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.iter().filter(|r| r["task"] == "thm15").count(), 110);
    assert!(v.iter().filter(|r| r["task"] == "thm15").all(|r| r["result"]["size"] == 3 && r["result"]["case"] == "a"));
}

#[test]
fn residue_and_sum_tasks_run() {
    for args in [
        &["verify", "thm13", "--q", "9", "--d", "4", "--k", "2", "--reps", "5"][..],
        &["verify", "thm12", "--q", "7", "--n", "3", "--d", "3", "--k", "2", "--reps", "5"],
        &["verify", "lemma21", "--q", "9", "--n", "2", "--d", "4"],
        &["verify", "weil", "--q", "13", "--d", "3", "--max-degree", "2"],
        &["verify", "cor35", "--p", "5", "--n", "2", "--ext", "2", "--d", "3", "--reps", "5"],
    ] {
        let out = paley(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!lines(&out).is_empty());
    }
}

use kunion_core::cli::run_args;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["kunion"];
    argv.extend_from_slice(args);
    let out = run_args(argv);
    (out.exit_code, out.stdout, out.stderr)
}

fn records(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

#[test]
fn table_csv_rows() {
    let (code, out, _) = run(&["table", "--kmax", "8", "--prec", "1e-6", "--format", "csv", "--no-timestamp"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# {") && lines[0].contains("\"command\":\"table\""));
    assert_eq!(lines[1], "k,phi,psi,z,alpha,mu");
    assert_eq!(lines.len(), 2 + 7);
    assert!(lines[3].starts_with("3,0.6823278,0.3176722,0.3176722,0.4655712,"));
    // alpha_8 = 0.23205..., printed as 0.2319 in the published table.
    assert_eq!(code, 1);
}

#[test]
fn table_without_the_misprinted_row_passes() {
    let (code, out, _) = run(&["table", "--k", "2,3,4,5,6,7,16", "--format", "json", "--no-timestamp"]);
    assert_eq!(code, 0, "{out}");
    let recs = records(&out);
    assert_eq!(recs[0]["kind"], "run_config");
    assert_eq!(recs.iter().filter(|r| r["kind"] == "constants_row").count(), 7);
    let check = recs.last().unwrap();
    assert_eq!(check["claim_id"], "table-1");
    assert_eq!(check["status"], "pass");
}

#[test]
fn bound_example() {
    let (code, out, _) = run(&["bound", "--k", "3", "--eps", "0", "--family-size", "1024", "--format", "json", "--no-timestamp"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    let b = &recs[1];
    assert_eq!(b["kind"], "frequency_bound");
    assert_eq!(b["delta"].as_str().unwrap().trim_start_matches("0.").trim_matches('0'), "");
    let f: f64 = b["guaranteed_fraction"].as_str().unwrap().parse().unwrap();
    assert!((f - 0.3176).abs() < 1e-4);
    assert_eq!(recs[0]["eps"], "0");
    assert_eq!(recs[0]["family_size"], "1024");
}

#[test]
fn appendix_pattern() {
    let (code, out, _) = run(&["verify-appendix", "--k", "4", "--format", "json", "--no-timestamp"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    let rp = recs.iter().find(|r| r["claim_id"] == "appendix-a-root-pattern").unwrap();
    assert_eq!(rp["witnesses"][0]["value"], "(3,2,3,2,1,2,3,2,1,2,3,2,1,2,1)");
    for r in &recs[1..] {
        for key in ["claim_id", "anchor", "status", "precision_bits", "schema_version"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
    }
}

#[test]
fn numbers_are_strings() {
    let (_, out, _) = run(&["simulate", "--n", "12", "--k", "2", "--trials", "2000", "--format", "json", "--no-timestamp"]);
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => panic!("bare number {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(o) => o.values().for_each(walk),
            _ => {}
        }
    }
    for r in records(&out) {
        walk(&r);
    }
}

#[test]
fn stochastic_runs_are_reproducible() {
    let args = ["verify-entropy-lemma", "--n", "2", "--trials", "300", "--seed", "11", "--format", "json", "--no-timestamp"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, &a), (c2, &b));
    let recs = records(&a);
    assert_eq!(recs[1]["seed"], "11");
    let (_, other, _) = run(&["verify-entropy-lemma", "--n", "2", "--trials", "300", "--seed", "12", "--format", "json", "--no-timestamp"]);
    assert_ne!(a, other);
}

#[test]
fn timestamp_is_present_unless_suppressed() {
    let (_, with, _) = run(&["bound", "--k", "2", "--eps", "1/100", "--family-size", "64", "--format", "json"]);
    assert!(records(&with)[0].get("timestamp").is_some());
    let (_, without, _) = run(&["bound", "--k", "2", "--eps", "1/100", "--family-size", "64", "--format", "json", "--no-timestamp"]);
    assert!(records(&without)[0].get("timestamp").is_none());
}

#[test]
fn usage_errors() {
    for args in [
        vec!["table", "--nope"],
        vec!["frobnicate"],
        vec!["bound", "--k", "1", "--eps", "0", "--family-size", "8"],
        vec!["bound", "--k", "3", "--eps", "x", "--family-size", "8"],
        vec!["verify-fk", "--k", "3", "--grid", "10"],
        vec!["table", "--prec", "2"],
        vec!["simulate", "--n", "12", "--k", "2", "--format", "yaml"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 3, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains("Usage") || err.contains("usage"), "{args:?}: {err}");
    }
}

#[test]
fn failing_claim_exits_one() {
    // The limit ratio is far from reached at k = 2^20.
    let (code, out, _) = run(&["verify-constants", "--kmax", "50", "--no-timestamp"]);
    assert_eq!(code, 1);
    assert!(out.contains("[fail] proposition-5.1"));
    assert!(out.contains("[pass] lemma-4.3"));
}

#[test]
fn poly_and_roots() {
    let (code, out, _) = run(&["poly", "--k", "2", "--format", "csv", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1) == Some("degree,rational,alpha"));
    let (code, out, _) = run(&["roots", "--k", "2,3,4", "--format", "csv", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert!(out.contains("k,distinct,with_multiplicity\n2,2,2\n3,2,2\n4,2,2\n"));
}

#[test]
fn fk_scan_csv() {
    let (code, out, _) = run(&["verify-fk", "--k", "3", "--scan-points", "11", "--format", "csv", "--no-timestamp"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "x,f_k");
    assert_eq!(lines.len(), 2 + 11);
}

#[test]
fn binary_reads_environment_and_writes_output_file() {
    let dir = std::env::temp_dir().join(format!("kunion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.json");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_kunion"))
        .args(["table", "--k", "2", "--format", "json", "--no-timestamp", "--output"])
        .arg(&path)
        .env("KUNION_PRECISION", "96")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(records(&text)[0]["precision_bits"], "96");
    std::fs::remove_dir_all(&dir).unwrap();

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_kunion")).args(["roots", "--k", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

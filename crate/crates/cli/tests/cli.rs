use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BETTI_SCHEMA: &str = include_str!("../schema/betti-table.schema.json");
const EXPORT_SCHEMA: &str = include_str!("../schema/export.schema.json");

fn graphcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphcx"))
        .args(args)
        .env_remove("GRAPHCX_CACHE_DIR")
        .output()
        .expect("spawn graphcx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

/// `(i, degree) -> dim` from a JSON Betti table.
fn cells(v: &Value) -> Vec<(u64, i64, u64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["i"].as_u64().unwrap(),
                r["degree"].as_i64().unwrap(),
                r["dim"].as_u64().unwrap(),
            )
        })
        .collect()
}

fn dim(v: &Value, i: u64, degree: i64) -> u64 {
    cells(v).iter().filter(|c| c.0 == i && c.1 == degree).map(|c| c.2).sum()
}

fn validator(schema: &str) -> jsonschema::Validator {
    let betti: Value = serde_json::from_str(BETTI_SCHEMA).unwrap();
    jsonschema::options()
        .with_resource(
            "urn:graphcx:betti-table",
            jsonschema::Resource::from_contents(betti).unwrap(),
        )
        .build(&serde_json::from_str(schema).unwrap())
        .unwrap()
}

#[test]
fn betti_tot_p_has_the_bottom_classes_at_d4() {
    let v = json(&graphcx(&[
        "betti",
        "--complex",
        "totP",
        "--d",
        "4",
        "--max-complexity",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(dim(&v, 1, 1), 1);
    assert_eq!(dim(&v, 2, 2), 1);
    assert_eq!(dim(&v, 2, 3), 0);
    assert!(validator(BETTI_SCHEMA).is_valid(&v));
}

#[test]
fn betti_d2_matches_a2() {
    let v = json(&graphcx(&[
        "betti",
        "--complex",
        "Dn",
        "--n",
        "2",
        "--d",
        "4",
        "--max-complexity",
        "1",
        "--format",
        "json",
    ]));
    // A_2 is spanned by 1 and a_12
    assert_eq!(dim(&v, 0, 0), 1);
    assert_eq!(dim(&v, 1, 3), 1);
    assert_eq!(cells(&v).iter().map(|c| c.2).sum::<u64>(), 2);
}

#[test]
fn betti_runs_at_d3() {
    let o = graphcx(&["betti", "--complex", "totA", "--d", "3", "--max-complexity", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("# totA d=3"));
}

#[test]
fn betti_csv_has_one_header_and_rows_per_parity() {
    let o = graphcx(&[
        "betti",
        "--complex",
        "totA",
        "--d",
        "4",
        "--d",
        "5",
        "--max-complexity",
        "2",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("complex,d,i,level,degree,dim"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("totA,4,")));
    assert!(rows.iter().any(|r| r.starts_with("totA,5,")));
}

#[test]
fn verify_cycles_reports_absence_at_2d_minus_5() {
    let o = graphcx(&["verify", "--claim", "cycles", "--d", "4", "--format", "json"]);
    let v = json(&o);
    let report = &v[0];
    assert_eq!(report["claim"], "cycles");
    let absent = report["cells"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["label"] == "class absent")
        .expect("absence cell");
    assert_eq!(absent["degree"], 3);
    assert_eq!(absent["actual"], 0);
    assert_eq!(absent["pass"], true);
    let reps = report["representatives"].as_array().unwrap();
    assert_eq!(reps.len(), 2);
    assert!(reps.iter().all(|r| r["certified"] == true));
}

#[test]
fn verify_all_passes_in_both_parities() {
    let o = graphcx(&["verify", "--all", "--d", "4", "--d", "5", "--max-complexity", "3"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 18);
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        graphcx(&["betti", "--complex", "Dn", "--d", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        graphcx(&["betti", "--complex", "totA", "--d", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        graphcx(&["betti", "--complex", "nope", "--d", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        graphcx(&["verify", "--claim", "nope", "--d", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        graphcx(&["betti", "--complex", "totA", "--d", "4", "--max-complexity", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(graphcx(&["bogus"]).status.code(), Some(2));
}

#[test]
fn failed_import_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.json");
    // a valid diagram that is not written in canonical form
    let body =
        r#"{"complex":"totP","d":4,"records":[{"i":1,"level":2,"degree":1,"index":0,"element":"2 0 ; e2-e1 ; s0"}]}"#;
    fs::write(&path, body).unwrap();
    let o = graphcx(&["import", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

fn export(dir: &Path, complex: &str, max: &str) {
    let o = graphcx(&[
        "export",
        "--complex",
        complex,
        "--d",
        "4",
        "--d",
        "5",
        "--max-complexity",
        max,
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn export_tot_p_at_complexity_one_has_one_chord() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path(), "totP", "1");
    let basis: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("basis-totP-d4.json")).unwrap()).unwrap();
    let records = basis["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["i"], 1);
    assert_eq!(records[0]["level"], 2);
    assert_eq!(records[0]["element"], "2 0 ; e1-e2 ; s0");
}

#[test]
fn exports_validate_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path(), "totP", "3");
    export(dir.path(), "D3", "2");
    let schema = validator(EXPORT_SCHEMA);
    let mut files = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let errors: Vec<String> = schema.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
        files += 1;
    }
    assert_eq!(files, 16);

    for d in [4, 5] {
        let path = dir.path().join(format!("basis-totP-d{d}.json"));
        let o = graphcx(&["import", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).ends_with(" 0 mismatches\n"));
    }
}

#[test]
fn dn_export_requires_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphcx(&[
        "export",
        "--complex",
        "Dn",
        "--d",
        "4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exports_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    export(a.path(), "totD", "2");
    export(b.path(), "totD", "2");
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(!names.is_empty());
    for name in names {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name:?}"
        );
    }
}

#[test]
fn cold_and_warm_cache_agree() {
    let cache = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_graphcx"))
            .args([
                "verify",
                "--all",
                "--d",
                "4",
                "--d",
                "5",
                "--max-complexity",
                "2",
                "--format",
                "json",
            ])
            .env("GRAPHCX_CACHE_DIR", cache.path())
            .output()
            .unwrap()
    };
    let cold = run();
    assert!(cold.status.success());
    let entries = fs::read_dir(cache.path()).unwrap().count();
    assert!(entries > 0);
    let warm = run();
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(fs::read_dir(cache.path()).unwrap().count(), entries);

    let uncached = graphcx(&[
        "verify",
        "--all",
        "--d",
        "4",
        "--d",
        "5",
        "--max-complexity",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(uncached.stdout, warm.stdout);
}

#[test]
fn cache_is_shared_between_dimensions_of_one_parity() {
    let cache = tempfile::tempdir().unwrap();
    let betti = |d: &str| {
        Command::new(env!("CARGO_BIN_EXE_graphcx"))
            .args([
                "betti",
                "--complex",
                "totP",
                "--d",
                d,
                "--max-complexity",
                "2",
                "--format",
                "json",
            ])
            .env("GRAPHCX_CACHE_DIR", cache.path())
            .output()
            .unwrap()
    };
    let warm_six = {
        betti("4");
        betti("6")
    };
    let cold_six = graphcx(&[
        "betti",
        "--complex",
        "totP",
        "--d",
        "6",
        "--max-complexity",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(json(&warm_six), json(&cold_six));
    // the bottom class sits in degree d - 3
    assert_eq!(dim(&json(&warm_six), 1, 3), 1);
}

#[test]
fn schema_command_prints_the_published_schemas() {
    assert_eq!(stdout(&graphcx(&["schema", "betti"])), BETTI_SCHEMA);
    assert_eq!(stdout(&graphcx(&["schema", "export"])), EXPORT_SCHEMA);
}

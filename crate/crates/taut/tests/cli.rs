use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn taut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taut"))
        .args(args)
        .env_remove("TAUT_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn assert_valid(schema: &str, v: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "{v} violates schema: {msgs:?}");
}

#[test]
fn ring_genus_two() {
    let o = taut(&["ring", "--g", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("hilbert: [1,1,1,1]"));
    assert!(s.contains("u1^2 = 2*u2"));
    assert!(s.contains("u2^2 = 0"));
}

#[test]
fn ring_genus_one_is_dual_numbers() {
    let s = stdout(&taut(&["ring", "--g", "1"]));
    assert!(s.contains("ring Q[u1]/I"));
    assert!(s.contains("  u1^2\n"));
    assert!(s.contains("hilbert: [1,1]"));
}

#[test]
fn ring_json_matches_schema() {
    let o = taut(&["--format", "json", "ring", "--g", "6"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_valid("ring.schema.json", &v);
    for rel in v["relations"].as_array().unwrap() {
        assert_valid("polynomial.schema.json", rel);
    }
    let sum: u64 = v["hilbert"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert_eq!(sum, 64);
    assert_eq!(v["dimension"], 64);
    let nf = &v["identities"][0]["normal_form"];
    assert_valid("polynomial.schema.json", nf);
    assert_eq!(nf["terms"][0]["exp"], serde_json::json!([0, 1, 0, 0, 0, 0]));
    assert_eq!(nf["terms"][0]["num"], "2");
}

#[test]
fn ring_genus_out_of_range_is_usage_error() {
    for g in ["0", "9"] {
        let o = taut(&["ring", "--g", g]);
        assert_eq!(o.status.code(), Some(2), "g={g}");
    }
    assert_eq!(taut(&["ring"]).status.code(), Some(2));
    assert_eq!(
        taut(&["--max-ring-genus", "9", "ring", "--g", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_taut"))
        .args(["ring", "--g", "2"])
        .env("TAUT_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(json(&o)["dimension"], 4);
}

#[test]
fn hilbert_range() {
    let o = taut(&["--jobs", "4", "--format", "json", "hilbert", "--g", "1-8"]);
    assert!(o.status.success());
    let v = json(&o);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row["dimension"], 1u64 << (k + 1));
        assert_eq!(row["matches_product"], true);
    }
}

#[test]
fn weyl_csv() {
    let o = taut(&["--format", "csv", "weyl", "--g", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("rep,length,label"));
    assert_eq!(lines.next(), Some("[1 2 3],0,[]"));
    assert_eq!(s.lines().count(), 9);
    assert!(s.contains("[-3 -2 -1],6,\"[3,2,1]\""));
}

#[test]
fn weyl_json_labels() {
    let v = json(&taut(&["--format", "json", "weyl", "--g", "2"]));
    assert_eq!(v["cosets"], 4);
    assert_eq!(v["matches_hilbert"], true);
    for r in v["representatives"].as_array().unwrap() {
        assert_valid("eotype.schema.json", &r["label"]);
    }
}

#[test]
fn borel_check_report() {
    let o = taut(&["borel-check", "--g", "2", "--p", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("equal in all degrees <= 3"));
    let v = json(&taut(&[
        "--format",
        "json",
        "borel-check",
        "--g",
        "2",
        "--p",
        "3",
        "--chern",
    ]));
    assert_valid("brokemper.schema.json", &v);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 4);
    assert_eq!(v["chern_map"]["in_borel_ideal"], true);
    let o = taut(&[
        "--format",
        "json",
        "borel-check",
        "--g",
        "2",
        "--p",
        "2,3,5",
    ]);
    let v = json(&o);
    for r in v["reports"].as_array().unwrap() {
        assert_valid("brokemper.schema.json", r);
    }
    assert_eq!(
        taut(&["borel-check", "--g", "2", "--p", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn prank_single_record() {
    let o = taut(&["prank", "--g", "3", "--f", "0", "--p", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "g=3 p=2 f=0 codim=3 coefficient=21 class=21*u3\n"
    );
    let v = json(&taut(&[
        "--format",
        "json",
        "prank",
        "--g",
        "3",
        "--p",
        "2",
        "--certify",
    ]));
    assert_valid("prank.schema.json", &v);
    let coeffs: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["21", "3", "1", "1"]);
    assert_eq!(v["effectivity"]["holds"], true);
    assert!(v["effectivity"]["notes"][0]
        .as_str()
        .unwrap()
        .contains("skipped"));
    assert_eq!(
        taut(&["prank", "--g", "2", "--f", "3", "--p", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn prank_certify_uses_oracle_when_small() {
    let v = json(&taut(&[
        "--format",
        "json",
        "prank",
        "--g",
        "2",
        "--p",
        "2",
        "--certify",
    ]));
    assert_eq!(v["effectivity"]["holds"], true);
    let pts = v["effectivity"]["oracle_points"].as_array().unwrap();
    assert_eq!(pts.len(), 2);
    assert!(pts.iter().all(|x| x.as_u64().unwrap() > 0));
}

#[test]
fn prank_csv_columns() {
    let s = stdout(&taut(&["--format", "csv", "prank", "--g", "2", "--p", "2"]));
    assert_eq!(
        s,
        "g,p,f,codim,coefficient,class\n2,2,0,2,3,3*u2\n2,2,1,1,1,1*u1\n2,2,2,0,1,1\n"
    );
}

#[test]
fn oracle_genus_one() {
    let o = taut(&["oracle", "--g", "1", "--p", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("g=1 p=2: 9 zips, 2 orbits, 2 invariant classes"));
    let v = json(&taut(&[
        "--format", "json", "oracle", "--g", "1", "--p", "2",
    ]));
    assert_valid("oracle.schema.json", &v);
    let points: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["points"].as_u64().unwrap())
        .collect();
    assert_eq!(points, [6, 3]);
}

#[test]
fn oracle_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = |mode: &'static str| {
        vec![
            "--format",
            "json",
            "--cache-dir",
            d,
            "oracle",
            "--g",
            "2",
            "--p",
            "2",
            "--r",
            "1",
            mode,
        ]
    };
    let fresh = taut(&args("--refresh"));
    assert!(fresh.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files.len(), 1, "no temporary files left behind: {files:?}");
    let name = files[0].to_str().unwrap().to_string();
    assert!(name.starts_with("oracle-g2-p2-r1-v"));
    let on_disk: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(&name)).unwrap()).unwrap();
    assert_valid("oracle.schema.json", &on_disk);
    assert_eq!(on_disk["iota"]["table"].as_array().unwrap().len(), 2);

    let cached = taut(&args("--use-cache"));
    assert_eq!(fresh.stdout, cached.stdout);

    // a cached record is really read back
    let mut tampered = on_disk.clone();
    tampered["orbit_count"] = Value::from(9999);
    std::fs::write(dir.path().join(&name), tampered.to_string()).unwrap();
    assert_eq!(json(&taut(&args("--use-cache")))["orbit_count"], 9999);
    assert_eq!(
        json(&taut(&args("--refresh")))["orbit_count"],
        on_disk["orbit_count"]
    );
}

#[test]
fn guard_violation_is_machine_readable() {
    let o = taut(&["--format", "json", "oracle", "--g", "4", "--p", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_valid("error.schema.json", &err);
    assert_eq!(err["error"]["kind"], "resource_guard");
    assert_eq!(err["error"]["module"], "zip_oracle");
    let o = taut(&["--max-candidates", "5", "oracle", "--g", "1", "--p", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource_guard"));
    assert_eq!(
        taut(&["oracle", "--g", "1", "--p", "17"]).status.code(),
        Some(3)
    );
    assert_eq!(
        taut(&["oracle", "--g", "1", "--p", "9"]).status.code(),
        Some(2)
    );
}

#[test]
fn iota_table() {
    let o = taut(&[
        "--format", "json", "iota", "--g", "2", "--r", "1", "--p", "2,3",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["prime_independent"], true);
    assert_eq!(v["matches_weyl_table"], true);
    assert_eq!(v["weyl_table"], "verified");
    for row in v["table"].as_array().unwrap() {
        assert_valid("eotype.schema.json", &row["from"]);
        assert_valid("eotype.schema.json", &row["to"]);
        assert_eq!(row["from"]["parts"], row["to"]["parts"]);
    }
    assert_eq!(
        taut(&["iota", "--g", "2", "--r", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--format", "json", "oracle", "--g", "1", "--p", "3"],
        vec!["--format", "json", "--jobs", "3", "hilbert", "--g", "1-5"],
        vec!["--format", "csv", "prank", "--g", "4", "--p", "5"],
    ] {
        assert_eq!(taut(&args).stdout, taut(&args).stdout, "{args:?}");
    }
}

#[test]
fn selftest_quick_passes() {
    let start = std::time::Instant::now();
    let o = taut(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(start.elapsed().as_secs() < 30);
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains(": PASS")).count(),
        10
    );
}

#[test]
fn selftest_rejects_corrupted_relation() {
    let o = taut(&["selftest", "--corrupt-relation"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("taut_ring"), "{err}");
    let o = taut(&["--format", "json", "selftest", "--corrupt-relation"]);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_valid("error.schema.json", &err);
    assert_eq!(err["error"]["module"], "taut_ring");
}

use std::process::{Command, Output};

use deligne::ring::{parse_poly, CycPoly, PolyJson};
use serde_json::Value;

fn deligne(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deligne")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = deligne(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    deligne(args).status.code()
}

#[test]
fn documented_invocations() {
    assert_eq!(stdout(&["invariant", "--object", "W[mu=(2); rho=trivial]", "--link", "torus:2,-3", "--normalize"]), "2*t - 3\n");
    assert_eq!(stdout(&["invariant", "--object", "W[mu=(1); rho=trivial]", "--link", "torus:1,0"]), "t\n");
    assert_eq!(stdout(&["invariant", "--object", "D[n=2]", "--link", "torus:2,-2", "--at", "2"]), "4\n");
    assert!(stdout(&["verify", "naturality", "--n", "3"]).starts_with("PASS naturality"));
    assert!(stdout(&["verify", "twist", "--n", "3"]).starts_with("PASS twist"));
    assert!(stdout(&["verify", "oracles", "--n", "3", "--links", "torus:2,-3"]).starts_with("PASS oracles"));
}

#[test]
fn sigma_anchors_agree_with_cycle_types() {
    let by_mu = stdout(&["invariant", "--object", "W[mu=(3); rho=cyclic:1]", "--link", "torus:2,-3"]);
    let by_sigma = stdout(&["invariant", "--object", "W[sigma=(1 2 3); rho=cyclic:1]", "--link", "torus:2,-3"]);
    assert_eq!(by_mu, by_sigma);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["invariant", "--object", "W[mu=(2); rho=bogus]", "--link", "unknot"]), Some(2));
    assert_eq!(code(&["invariant", "--object", "W[mu=(2)]", "--link", "torus:0,1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["invariant", "--object", "W[mu=(6)]", "--link", "unknot"]), Some(3));
    assert_eq!(code(&["--max-width", "5", "invariant", "--object", "W[mu=(3)]", "--link", "torus:2,-3"]), Some(3));
    assert_eq!(code(&["--max-states", "2", "invariant", "--object", "W[mu=(2)]", "--link", "torus:3,-4"]), Some(3));
    // V objects do not normalize to polynomials.
    assert_eq!(code(&["invariant", "--object", "V[mu=(2)]", "--link", "torus:2,-2", "--normalize"]), Some(4));
    assert_eq!(code(&["table", "table1"]), Some(0));
    // Two printed cells of this table disagree with the computed values.
    assert_eq!(code(&["table", "table3"]), Some(4));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn table_csv_marks_every_cell() {
    let out = deligne(&["--format", "csv", "table", "table3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("table,mu,rho,link,normalized,computed,printed,status"));
    let statuses: Vec<&str> = rows.map(|r| r.rsplit(',').next().unwrap()).collect();
    assert_eq!(statuses, ["MATCH", "MATCH", "MATCH", "MISMATCH", "MISMATCH"]);
}

#[test]
fn json_values_round_trip() {
    let cases = [
        ("W[mu=(2); rho=sign]", "torus:2,-3", "-2*t + 3"),
        ("W[mu=(3); rho=cyclic:1]", "torus:2,-5", "(3*t^2 - 21*t + 36 + z3)*z3"),
        ("W[mu=(3); rho=cyclic:2]", "torus:2,-2", ""),
    ];
    for (object, link, expected) in cases {
        for extra in [&["--normalize"][..], &["--at", "5"]] {
            let mut args = vec!["--format", "json", "invariant", "--object", object, "--link", link];
            args.extend_from_slice(extra);
            round_trip(&stdout(&args), if extra.len() == 1 { expected } else { "" });
        }
    }
}

fn round_trip(out: &str, expected: &str) {
    let parsed: Value = serde_json::from_str(out).unwrap();
    let record = &parsed[0];
    let poly = CycPoly::from_json(&serde_json::from_value::<PolyJson>(record["value"].clone()).unwrap()).unwrap();
    assert_eq!(poly, parse_poly(record["text"].as_str().unwrap()).unwrap(), "{out}");
    if !expected.is_empty() {
        assert_eq!(poly, parse_poly(expected).unwrap(), "{out}");
    }
    // Serializing again yields the same document.
    assert_eq!(serde_json::to_value(poly.to_json()).unwrap(), record["value"]);
}

#[test]
fn evaluation_point_matches_the_polynomial() {
    let poly = stdout(&["invariant", "--object", "W[mu=(2,1)]", "--link", "torus:2,-3"]);
    let poly = parse_poly(poly.trim()).unwrap();
    for n in 3..=6 {
        let at = stdout(&["invariant", "--object", "W[mu=(2,1)]", "--link", "torus:2,-3", "--at", &n.to_string()]);
        assert_eq!(at.trim(), poly.eval_int(n).to_string());
    }
}

#[test]
fn oracle_verdicts() {
    let out = stdout(&["--format", "json", "oracle", "--object", "D[n=3]", "--object", "W[mu=(2); rho=sign]", "--link", "torus:2,-3", "--at", "3"]);
    let parsed: Value = serde_json::from_str(&out).unwrap();
    let records = parsed.as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r["agree"] == true));
    assert!(records[0]["hom_count"].is_u64());
    assert!(records[1].get("hom_count").is_none());
    // V objects have no finite model here.
    assert_eq!(code(&["oracle", "--object", "V[mu=(2)]", "--link", "unknot"]), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "csv", "invariant", "--object", "W[mu=(3); rho=cyclic:2]", "--object", "D[n=2]", "--link", "torus:2,-3", "--link", "torus:3,-2"];
    assert_eq!(stdout(&args), stdout(&args));
    let verify = ["--format", "json", "verify", "functor", "--n", "2", "--seed", "7"];
    assert_eq!(stdout(&verify), stdout(&verify));
}

#[test]
fn dims_of_regular_objects() {
    assert_eq!(stdout(&["dims", "--object", "W[mu=(2)]", "--at", "5"]), "10\n");
    let out = stdout(&["dims", "--object", "V[mu=(1,1)]", "--object", "V[mu=(2)]"]);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn characters_from_files() {
    let path = std::env::temp_dir().join(format!("deligne-sign-{}.json", std::process::id()));
    let file = r#"{"cyclotomic_order": 1, "values": [{"element": "()", "matrix": [["1"]]}, {"element": "(1 2)", "matrix": [["-1"]]}]}"#;
    std::fs::write(&path, file).unwrap();
    let from_file = format!("W[mu=(2); rho=@{}]", path.display());
    for link in ["torus:2,-3", "torus:3,-4"] {
        assert_eq!(stdout(&["invariant", "--object", &from_file, "--link", link]), stdout(&["invariant", "--object", "W[mu=(2); rho=sign]", "--link", link]));
    }
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&["invariant", "--object", &from_file, "--link", "unknot"]), Some(2));
}

use grp_cli::{run, EXIT_OVERFLOW, EXIT_UNKNOWN, EXIT_USAGE, VERDICT_SCHEMA};
use serde_json::Value;

fn grp(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("grp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn verdict_validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(VERDICT_SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn abelianization_of_trefoil_presentation() {
    assert_eq!(grp(&["abel", "< x, y | x y x = y x y >"]), (0, "Z\n".into(), String::new()));
}

#[test]
fn enumerate_cyclic_six() {
    let (code, out, _) = grp(&["enum", "< x | x^6 >", "--max-cosets", "100"]);
    assert_eq!((code, out.as_str()), (0, "6\n"));
}

#[test]
fn overflow_exit_code() {
    let (code, out, err) = grp(&["enum", "< x, y | >", "--max-cosets", "50"]);
    assert_eq!(code, EXIT_OVERFLOW);
    assert!(out.is_empty());
    assert!(err.contains("50 cosets"), "{err}");
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(grp(&["abel", "< x | x^ >"]).0, EXIT_USAGE);
    assert_eq!(grp(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(grp(&["order", "green:G42"]).0, EXIT_USAGE);
    assert_eq!(grp(&["knot", "wirtinger", "O1+ O1+"]).0, EXIT_USAGE);
    assert_eq!(grp(&["cocycle", "carry", "0"]).0, EXIT_USAGE);
}

#[test]
fn order_of_g2_is_not_circularly_orderable() {
    let (code, out, _) = grp(&["order", "green:G2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["group"], "G2");
    assert_eq!(v["status"], "NOT_CIRC_ORDERABLE");
    assert!(verdict_validator().is_valid(&v));
}

#[test]
fn unknown_verdict_exits_three() {
    // finite, so neither free, one-relator, metacyclic nor a bundled shape
    let (code, out, _) = grp(&["order", "< a, b | a^2, b^3, (a b)^5 >"]);
    assert_eq!(code, EXIT_UNKNOWN);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "UNKNOWN");
    assert!(verdict_validator().is_valid(&v));
}

#[test]
fn every_green_verdict_matches_schema() {
    let (code, out, _) = grp(&["green", "all", "--format", "json"]);
    assert_eq!(code, 0);
    let all: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(all.len(), 10);
    let validator = verdict_validator();
    for v in &all {
        if let Err(e) = validator.validate(v) {
            panic!("{}: {e}", v["group"]);
        }
    }
}

#[test]
fn schema_rejects_malformed_verdicts() {
    let validator = verdict_validator();
    let bad = serde_json::json!({ "group": "G1", "status": "MAYBE", "trace": [] });
    assert!(!validator.is_valid(&bad));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["green", "all", "--format", "json"][..],
        &["tensor", "< i, j | i^4, i^2 j^-2, j^-1 i j i >"],
        &["analyze", "< x, y | x y x = y x y, y = x^-3 y x^3, x^3 >"],
    ] {
        let first = grp(args);
        assert_eq!(first.0, 0);
        assert_eq!(first, grp(args), "{args:?}");
    }
}

#[test]
fn input_from_file() {
    let dir = std::env::temp_dir().join(format!("grp-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pres = dir.join("q8.txt");
    std::fs::write(&pres, "< i, j | i^4, i^2 j^-2, j^-1 i j i >\n").unwrap();
    let (code, out, _) = grp(&["schur", pres.to_str().unwrap(), "--format", "text"]);
    assert_eq!((code, out.as_str()), (0, "0\n"));

    let code_file = dir.join("trefoil.gauss");
    std::fs::write(&code_file, "O1+ U2+ O3+ U1+ O2+ U3+\n").unwrap();
    let (code, out, _) = grp(&["knot", "wirtinger", code_file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["arcs"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_payloads() {
    let (_, out, _) = grp(&["tensor", "< x, y | x y x = y x y, y = x^-3 y x^3, x^3 >"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["source_order"], 24);
    assert_eq!(v["carrier_order"], 24);
    assert_eq!(v["j_order"], 3);
    assert_eq!(v["carrier_fingerprint"]["abelianization"], serde_json::json!([2, 6]));

    let (_, out, _) = grp(&["exterior", "< a, b | a^2, b^2, a b a^-1 b^-1 >"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["carrier_order"].as_u64(), v["multiplier"].as_str()), (Some(2), Some("Z/2")));

    let (_, out, _) = grp(&["cocycle", "carry", "4"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["homogeneous_valid"], true);
    assert_eq!(v["table"][3], serde_json::json!([0, 1, 1, 1]));

    let (_, out, _) = grp(&["analyze", "< x | x^6 >"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["exponent"], 6);

    let (_, out, _) = grp(&["parse", "green:G7", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["deficiency"], 1);
    assert_eq!(v["generators"], serde_json::json!(["x", "y"]));
}

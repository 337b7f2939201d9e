use std::path::Path;

use serde_json::Value;
use slopebound::cli;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&value).unwrap()
}

fn run(args: &[&str]) -> Value {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        std::iter::once("slopebound").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    serde_json::from_slice(&out).unwrap()
}

fn check(name: &str, doc: &Value) {
    let v = schema(name);
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

#[test]
fn bound_reports_validate() {
    check("bound", &run(&["bound", "--g", "0", "--gb", "2"]));
    check(
        "bound",
        &run(&["bound", "--g", "2", "--gb", "40", "--n", "3"]),
    );
    check(
        "bound",
        &run(&["bound", "--g", "1", "--components", "t:2;g:2,3", "--N", "5"]),
    );
    check(
        "bound",
        &run(&["bound", "--g", "0", "--components", "t:3", "--N", "4"]),
    );
    check("bound", &run(&["bound", "--sweep"]));
}

#[test]
fn verify_report_validates() {
    check(
        "verify",
        &run(&["verify", "--builtin", "perturbed:3", "--U", "2"]),
    );
}

#[test]
fn pack_outputs_validate() {
    check("pack", &run(&["pack", "--R", "2", "--seeds", "1..3"]));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let mut sink = Vec::new();
    let args = [
        "slopebound",
        "pack",
        "--R",
        "2",
        "--seeds",
        "9",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(cli::run(args, &mut sink, &mut Vec::new()), 0);
    check(
        "pack",
        &serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap(),
    );
    let dump: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("seed-9.json")).unwrap()).unwrap();
    check("pack-experiment", &dump);
}

#[test]
fn spectrum_report_validates() {
    check(
        "spectrum",
        &run(&["spectrum", "--preset", "modular-torus", "--Lmax", "4"]),
    );
    check("spectrum", &run(&["spectrum", "--preset", "octagon-g2"]));
}

#[test]
fn shipped_group_file_validates() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/modular-torus.json");
    check(
        "group",
        &serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap(),
    );
}

#[test]
fn schemas_reject_wrong_shapes() {
    let mut doc = run(&["bound", "--g", "0", "--gb", "2"]);
    doc["result"]["surprise"] = Value::Bool(true);
    assert!(!schema("bound").is_valid(&doc));
    let mut doc = run(&["spectrum", "--preset", "modular-torus", "--Lmax", "2"]);
    doc["command"] = Value::from("bound");
    assert!(!schema("spectrum").is_valid(&doc));
}

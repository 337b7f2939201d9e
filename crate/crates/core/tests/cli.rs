use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn slopebound(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slopebound"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .env_remove("SLOPEBOUND_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

#[test]
fn bound_connected() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(&["bound", "--g", "0", "--gb", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "slopebound");
    assert_eq!(v["generated_at"], "2023-11-14T22:13:20Z");
    assert_eq!(v["config"]["gb"], 2);
    let u = v["result"]["U_star"].as_f64().unwrap();
    assert!((u - 0.27465).abs() < 1e-5);
    assert_eq!(v["result"]["total"]["floor"], 11083446207u64);
}

#[test]
fn bound_multi_component() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(
        &["bound", "--g", "1", "--components", "t:2;g:2,3", "--N", "5"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["per_component"].as_array().unwrap().len(), 2);
    assert_eq!(r["count_torus"]["value"].as_f64(), Some(10.0));
    assert_eq!(r["g_boundary"], 7);
    assert_eq!(r["closing_claim"]["holds"], true);
}

#[test]
fn bound_genus_one_suggests_torus_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(&["bound", "--g", "0", "--gb", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--N") && err.contains("pole"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn bound_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(
        &[
            "bound",
            "--sweep",
            "--g-range",
            "0..1",
            "--gb-range",
            "2..3",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], slopebound::bounds::SWEEP_CSV_HEADER);
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("0,2,2.7465307216702745e-1,"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["bound", "--g", "0", "--gb", "2", "--unknown"][..],
        &["bound", "--g", "x"],
        &["frobnicate"],
        &["verify"],
        &["pack", "--R", "20"],
        &["spectrum", "--preset", "nonesuch"],
        &["bound", "--g", "0", "--components", "g:2", "--L", "-1"],
    ] {
        let out = slopebound(args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = slopebound(&["--version"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_constant_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(
        &["verify", "--builtin", "constant:-1", "--U", "5"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["certified"], true);
    assert!(r["margin"].as_f64().unwrap().abs() <= 1e-7);
    assert!(r["grid"].as_array().unwrap().len() <= 1001);

    let out = slopebound(
        &["verify", "--builtin", "constant:-4", "--U", "3"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["certified"], true);
    assert!(r["margin_interior"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_rejects_curvature_above_minus_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.tsv"),
        "# u K\n0 -1.5\n0.5 -0.5\n1 -2\n",
    )
    .unwrap();
    let out = slopebound(&["verify", "--profile", "bad.tsv"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("u = 0.5"), "{err}");
}

#[test]
fn verify_profile_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k.tsv"), "0 -1\n1 -2\n2 -1.5\n").unwrap();
    let out = slopebound(
        &["verify", "--profile", "k.tsv", "--out", "reports/v.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("reports/v.json")).unwrap())
            .unwrap();
    assert_eq!(v["result"]["U"].as_f64(), Some(2.0));
}

#[test]
fn out_dir_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_slopebound"))
        .args(["spectrum", "--preset", "modular-torus", "--Lmax", "2"])
        .env("SLOPEBOUND_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(dir.path().join("spectrum.json").exists());
}

#[test]
fn pack_diameter_and_campaign() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(
        &["pack", "--R", "1", "--L", "3", "--seeds", "1..20"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["max_count"], 1);
    assert_eq!(r["min_count"], 1);

    let out = slopebound(
        &["pack", "--R", "3", "--L", "1.75", "--seeds", "1..100"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["rigorous_violations"], 0);

    let out = slopebound(
        &[
            "pack", "--R", "5", "--L", "1.75", "--seeds", "1..100", "--format", "csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        slopebound::cli::PACK_CSV_HEADER
    );
    assert_eq!(text.lines().count(), 101);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",true,false") || l.ends_with(",false,false")));
}

#[test]
fn pack_writes_experiment_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(
        &["pack", "--R", "2", "--seeds", "4..6", "--out", "run"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    for seed in 4..=6 {
        let v: Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join(format!("run/seed-{seed}.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(v["seed"], seed);
        assert_eq!(
            v["points"].as_array().unwrap().len() as u64,
            v["count"].as_u64().unwrap()
        );
    }
    assert!(dir.path().join("run/summary.json").exists());
}

#[test]
fn spectrum_presets_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = slopebound(
        &["spectrum", "--preset", "modular-torus", "--Lmax", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    let l = r["spectrum"]["entries"][0]["length"].as_f64().unwrap();
    assert!((l - 1.9248473).abs() < 1e-6);

    let out = slopebound(
        &["spectrum", "--preset", "octagon-g2", "--Lmax", "1.75"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["spectrum"]["entries"].as_array().unwrap().len(), 0);
    assert_eq!(r["collar_report"]["count"], 0);
    assert_eq!(r["collar_report"]["bound_floor"], 6);

    let out = slopebound(&["spectrum", "--group", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));

    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/modular-torus.json");
    let out = slopebound(
        &[
            "spectrum",
            "--group",
            shipped.to_str().unwrap(),
            "--Lmax",
            "4",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "length,trace_abs,word,multiplicity"
    );
    assert!(text.lines().nth(1).unwrap().starts_with("1.9248473002384"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["bound", "--sweep", "--format", "csv"][..],
        &["verify", "--builtin", "quartic", "--U", "3"],
        &["pack", "--R", "4", "--seeds", "1..8", "--format", "csv"],
        &[
            "spectrum",
            "--preset",
            "octagon-g2",
            "--Lmax",
            "5.5",
            "--max-word-length",
            "6",
        ],
    ] {
        let a = slopebound(args, dir.path());
        let b = slopebound(args, dir.path());
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

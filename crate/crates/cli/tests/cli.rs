use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn isocover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isocover"))
        .args(args)
        .env_remove("ISOCOVER_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn labels(report: &Value, key: &str) -> Vec<String> {
    report[key].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap().to_string()).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_degree_four() {
    let out = isocover(&["classify", "--dmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let mut admissible = labels(&report, "admissible");
    admissible.sort();
    assert_eq!(
        admissible,
        ["Bielliptic1", "Genus2", "Lame", "Quadratic", "Quartic", "UncompleteGenus2", "UncompleteTwicePuncturedTorus"]
    );
    assert_eq!(labels(&report, "eliminated"), ["Eliminated-Sigma4"]);
    assert_eq!(labels(&report, "informational"), ["Picard"]);
    let quartic = &report["admissible"].as_array().unwrap().iter().find(|e| e["label"] == "Quartic").unwrap();
    assert_eq!(quartic["candidate"]["degree"], 4);
    assert_eq!(quartic["constraints"]["area_inequality"], true);
}

#[test]
fn classify_without_pruning_agrees() {
    let pruned = json(&isocover(&["classify", "--dmax", "4"]));
    let out = isocover(&["classify", "--dmax", "4", "--no-pruning"]);
    assert_eq!(out.status.code(), Some(0));
    let wide = json(&out);
    assert!(wide["failures"].as_array().unwrap().is_empty());
    let mut a = labels(&pruned, "admissible");
    let mut b = labels(&wide, "admissible");
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn classify_degree_two_and_table() {
    let report = json(&isocover(&["classify", "--dmax", "2"]));
    assert_eq!(labels(&report, "admissible").len(), 6);
    assert!(labels(&report, "eliminated").is_empty());
    let out = isocover(&["classify", "--dmax", "4", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("Quartic")).count(), 1);
    assert!(text.contains("Eliminated-Sigma4"));
}

#[test]
fn sigma4_table() {
    let out = isocover(&["sigma4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["rows"].as_array().unwrap().len(), 27);
    assert_eq!(report["verdict"], "cover nonexistent");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "r0", "--trials", "500", "--seed", "7"][..],
        &["verify", "fricke", "--trials", "1000", "--backend", "exact"],
        &["verify", "two-to-one", "--trials", "200"],
        &["verify", "words", "--trials", "20"],
    ] {
        let out = isocover(args);
        let report = json(&out);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {report}");
        assert!(report["failures"].as_array().unwrap().is_empty());
        assert!(report["trials"].as_u64().unwrap() >= 20);
    }
}

#[test]
fn verify_is_deterministic_and_reads_the_seed_from_the_environment() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = strip(json(&isocover(&["verify", "bielliptic", "--trials", "30", "--seed", "11"])));
    let b = strip(json(&isocover(&["verify", "bielliptic", "--trials", "30", "--seed", "11"])));
    assert_eq!(a, b);
    let out = Command::new(env!("CARGO_BIN_EXE_isocover"))
        .args(["verify", "fricke", "--trials", "3"])
        .env("ISOCOVER_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "riemann"][..],
        &["verify", "r0", "--trials", "0"],
        &["verify", "r0", "--backend", "quad"],
        &["--epsilon", "-1", "verify", "r0"],
        &["map", "unknown-map", "--input", "x"],
    ] {
        assert_eq!(isocover(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn map_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let five = dir.path().join("five.json");
    let torus = dir.path().join("torus.json");
    let back = dir.path().join("back.json");
    let torus2 = dir.path().join("torus2.json");
    assert!(isocover(&["sample", "five", "--theta", "1/3", "--seed", "4", "--output", path(&five)]).status.success());
    let out = isocover(&["map", "phi1-pullback", "--input", path(&five), "--output", path(&torus)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["command"], "map phi1-pullback");
    assert!(isocover(&["map", "phi1-descend", "--input", path(&torus), "--output", path(&back)]).status.success());
    assert!(isocover(&["map", "phi1-pullback", "--input", path(&back), "--output", path(&torus2)]).status.success());

    let read = |p: &Path| -> Value { serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap() };
    let (t1, t2) = (read(&torus), read(&torus2));
    assert_eq!(t1["type"], "torus");
    for name in ["a", "b", "d1", "d2"] {
        for entry in ["m11", "m12", "m21", "m22"] {
            for part in 0..2 {
                let x = t1["matrices"][name][entry][part].as_f64().unwrap();
                let y = t2["matrices"][name][entry][part].as_f64().unwrap();
                assert!((x - y).abs() < 1e-8, "{name}.{entry}: {x} vs {y}");
            }
        }
    }

    let fiber = json(&isocover(&["map", "fiber", "--input", path(&torus)]));
    assert_eq!(fiber.as_array().unwrap().len(), 2);
}

#[test]
fn bielliptic_maps() {
    let dir = tempfile::tempdir().unwrap();
    let five = dir.path().join("five.json");
    let genus2 = dir.path().join("genus2.json");
    assert!(isocover(&["sample", "five", "--seed", "8", "--output", path(&five)]).status.success());
    assert!(isocover(&["map", "five-to-genus2", "--input", path(&five), "--output", path(&genus2)]).status.success());
    let c = json(&isocover(&["map", "pi-descend", "--input", path(&genus2)]));
    assert_eq!(c["type"], "torusC");
    let fiber = json(&isocover(&["map", "fiber", "--input", path(&genus2)]));
    assert_eq!(fiber.as_array().unwrap().len(), 2);
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"type\": ").unwrap();
    assert_eq!(isocover(&["map", "phi1-pullback", "--input", path(&bad)]).status.code(), Some(2));

    let five = dir.path().join("five.json");
    assert!(isocover(&["sample", "five", "--theta", "1/3", "--output", path(&five)]).status.success());
    // wrong representation type, and a theta the map does not accept
    assert_eq!(isocover(&["map", "phi1-descend", "--input", path(&five)]).status.code(), Some(2));
    assert_eq!(isocover(&["map", "five-to-genus2", "--input", path(&five)]).status.code(), Some(2));

    // break the determinant of M0
    let mut rep: Value = serde_json::from_str(&std::fs::read_to_string(&five).unwrap()).unwrap();
    rep["matrices"]["m0"]["m11"] = serde_json::json!([7.0, 0.0]);
    std::fs::write(&five, rep.to_string()).unwrap();
    let out = isocover(&["map", "phi1-pullback", "--input", path(&five)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid five representation"));
}

#[test]
fn words_round_trip_as_text() {
    let out = json(&isocover(&["word", "reduce", "g0 g1^-1 gt"]));
    assert_eq!(out["input"], "g0 g1^-1 gt");
    let out = json(&isocover(&["word", "involution", "alpha beta^-1 delta1"]));
    let again = json(&isocover(&["word", "involution", out["output"].as_str().unwrap()]));
    assert_eq!(again["output"], "alpha beta^-1 delta1");
    assert_eq!(isocover(&["word", "reduce", "g0 alpha"]).status.code(), Some(2));
}

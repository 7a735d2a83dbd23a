use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn jumploci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jumploci")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn obstruct_report_schema() {
    let out = jumploci(&["obstruct", &path("genus2.txt"), "--class", "projective", "--formal", "--json"]);
    let v = json_of(&out);
    for key in ["input", "b1", "torsion", "checks", "components", "overall", "seed", "truncation_degree"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["b1"], 4);
    assert_eq!(v["overall"], "pass");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["even_b1", "resonance_components", "isotropy", "pairwise_intersections", "tangent_cone", "curve_profiles", "morgan_degrees"]
    );
    for c in v["checks"].as_array().unwrap() {
        assert!(["pass", "fail", "inconclusive"].contains(&c["verdict"].as_str().unwrap()));
        assert!(c["evidence"].is_object());
    }
    for c in v["components"].as_array().unwrap() {
        assert!(["linear", "subtorus"].contains(&c["kind"].as_str().unwrap()));
        for key in ["k", "dim", "basis", "translate", "certified"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn obstruct_graph_and_verdicts_do_not_change_exit_code() {
    let out = jumploci(&["obstruct", "--graph", &path("p4.graph"), "--class", "quasiprojective", "--json"]);
    let v = json_of(&out);
    assert_eq!(v["overall"], "fail");
    assert_eq!(v["checks"].as_array().unwrap().last().unwrap()["name"], "raag_classification");
    let f3 = jumploci(&["obstruct", &path("free3.txt"), "--class", "projective"]);
    assert!(f3.status.success());
    let text = String::from_utf8(f3.stdout).unwrap();
    assert!(text.contains("even_b1") && text.contains("overall: fail"), "{text}");
}

#[test]
fn identical_seeds_give_identical_bytes() {
    for args in [
        vec!["obstruct", "--graph", "k22.graph", "--class", "quasiprojective", "--json"],
        vec!["charvar", "trefoil.txt", "--torsion-bound", "8", "--json"],
        vec!["resonance", "f2xf2.txt", "--seed", "9", "--json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { path(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = jumploci(&args);
        let second = jumploci(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn resonance_and_charvar_output() {
    let v = json_of(&jumploci(&["resonance", &path("f2xf2.txt"), "--json"]));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert!(v["components"].as_array().unwrap().iter().all(|c| c["dim"] == 2 && c["certified"] == true));

    let t = json_of(&jumploci(&["charvar", &path("trefoil.txt"), "--torsion-bound", "12", "--json"]));
    let comps = t["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c["translate"]["order"] == 6 && c["dim"] == 0));
    assert_eq!(t["torsion_scan"]["truncated"], false);

    let z = json_of(&jumploci(&["charvar", &path("z2.txt"), "--json"]));
    assert_eq!(z["ideal"]["includes_identity"], true);
    assert!(z["components"].as_array().unwrap().is_empty());
}

#[test]
fn malcev_output() {
    let v = json_of(&jumploci(&["malcev", &path("heisenberg.txt"), "--json"]));
    assert_eq!(v["dims"], serde_json::json!([2, 1, 0, 0]));
    assert_eq!(v["relation_degrees"], serde_json::json!([3]));
    assert_eq!(v["morgan"]["projective"]["pass"], false);
    assert_eq!(v["morgan"]["projective"]["witness"]["degree"], 3);
    assert_eq!(v["morgan"]["quasiprojective"]["pass"], true);
    let low = json_of(&jumploci(&["malcev", &path("heisenberg.txt"), "--degree", "3", "--json"]));
    assert!(low["morgan"]["quasiprojective"]["error"].is_string());
}

#[test]
fn raag_output() {
    let v = json_of(&jumploci(&["raag", "--graph", &path("k22.graph"), "--json"]));
    assert_eq!(v["realizable"], true);
    assert_eq!(v["description"], "F_2 x F_2");
    let text = String::from_utf8(jumploci(&["raag", "--graph", &path("k3.graph")]).stdout).unwrap();
    assert!(text.contains("Z^3") && text.contains("projective (free abelian of even rank): no"), "{text}");
}

#[test]
fn cover_output() {
    let v = json_of(&jumploci(&["cover", &path("free2.txt"), "--phi", "1,0", "--order", "3", "--json"]));
    assert_eq!(v["b1"], 4);
    assert_eq!(v["cover"]["generators"].as_array().unwrap().len(), 4);
    let neg = json_of(&jumploci(&["cover", &path("z2.txt"), "--phi", "1,-1", "--order", "3", "--json"]));
    assert_eq!(neg["b1"], 2);
    let text = String::from_utf8(jumploci(&["cover", &path("z2.txt"), "--phi", "1,0", "--order", "2"]).stdout).unwrap();
    assert!(text.starts_with("gens:"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(jumploci(&["--help"]).status.code(), Some(0));
    assert_eq!(jumploci(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(jumploci(&["obstruct", &path("z2.txt")]).status.code(), Some(1));
    assert_eq!(jumploci(&["resonance", "/nonexistent/file.txt"]).status.code(), Some(1));
    assert_eq!(jumploci(&["cover", &path("z2.txt"), "--phi", "0,0", "--order", "3"]).status.code(), Some(1));
    assert_eq!(jumploci(&["malcev", &path("z2.txt"), "--degree", "9"]).status.code(), Some(1));

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("bad_presentation.txt");
    std::fs::write(&bad, "gens: a b\nrels: a c\n").unwrap();
    let out = jumploci(&["resonance", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c"));

    // b1 above the sampling limit is a computation failure
    let names: Vec<String> = (1..=13).map(|i| format!("x{i}")).collect();
    let big = dir.join("free13.txt");
    std::fs::write(&big, format!("gens: {}\nrels:\n", names.join(" "))).unwrap();
    assert_eq!(jumploci(&["resonance", big.to_str().unwrap()]).status.code(), Some(2));
}

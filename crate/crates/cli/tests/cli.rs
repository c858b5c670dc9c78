use std::fs;
use std::process::{Command, Output};

fn goeritz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goeritz")).args(args).env_remove("GOERITZ_FUEL").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = goeritz(&all);
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn eq_gamma_squared_is_identity() {
    let o = goeritz(&["eq", "gg", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    assert_eq!(stdout(&goeritz(&["eq", "b", "d"])).trim(), "false");
}

#[test]
fn nf_prints_syllables_and_tail() {
    let o = goeritz(&["nf", "bbbddg"]);
    assert_eq!(stdout(&o).trim(), "P(b^3) Q(d^2) | tail=g");
    assert_eq!(stdout(&goeritz(&["nf", ""])).trim(), "1 | tail=1");
}

#[test]
fn verify_presentation_succeeds() {
    let o = goeritz(&["verify-presentation"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify-presentation", "--samples", "50"]);
    assert_eq!(v["passed"], true);
    assert!(v["verifies"].is_string());
}

#[test]
fn tree_dot_has_eight_vertices_and_seven_edges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.dot");
    let o = goeritz(&["tree", "--radius", "1", "--max-power", "2", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(&path).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("shape=")).count(), 8);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 7);
    assert_eq!(dot.lines().filter(|l| l.contains("shape=circle")).count(), 3);
    assert!(dot.contains("v0 [shape=circle, label=\"1 H_P\"]"));
}

#[test]
fn quotient_and_stabilizers_pass() {
    let q = json(&["quotient"]);
    assert_eq!(q["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(q["edges"].as_array().unwrap().len(), 1);
    assert_eq!(q["witnesses"].as_array().unwrap().len(), 20);
    let s = goeritz(&["stabilizers"]);
    assert_eq!(s.status.code(), Some(0));
    let v = json(&["stabilizers", "b", "g", "d"]);
    assert_eq!(v["fixing"], serde_json::json!(["b", "g"]));
}

#[test]
fn primitive_reports() {
    let v = json(&["primitive", "xyXY"]);
    assert_eq!(v["criterion"], "certified non-primitive");
    assert_eq!(v["primitive"], false);
    let v = json(&["primitive", "xxy"]);
    assert_eq!(v["primitive"], true);
}

#[test]
fn simplicial_commands_on_a_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.json");
    fs::write(&input, r#"{"max_simplices": [["a","b","c"]]}"#).unwrap();
    let path = input.to_str().unwrap();
    assert_eq!(json(&["simplicial", "flag", path])["flag"], true);
    let sd = json(&["simplicial", "barycentric", path]);
    assert_eq!(sd["euler_characteristic"], 1);
    let g = json(&["simplicial", "remove-stars", path]);
    assert_eq!((g["vertices"].as_u64(), g["edges"].as_u64()), (Some(4), Some(3)));
    assert_eq!(g["acyclic"], true);

    let hollow = dir.path().join("hollow.json");
    fs::write(&hollow, r#"{"max_simplices": [["a","b"],["b","c"],["a","c"]]}"#).unwrap();
    assert_eq!(json(&["simplicial", "flag", hollow.to_str().unwrap()])["flag"], false);
}

#[test]
fn farey_outputs_are_labelled_as_analogue() {
    let o = goeritz(&["farey", "build", "1"]);
    let text = stdout(&o);
    assert!(text.contains("analogue"));
    assert!(text.contains("slopes: 0/1 1/1 inf"));
    let v = json(&["farey", "verify-axioms", "10", "--samples", "100", "--seed", "4"]);
    assert_eq!(v["passed"], true);
    assert!(v["fixture"].as_str().unwrap().contains("analogue"));
}

#[test]
fn contraction_is_deterministic_and_valid() {
    let args = ["contract", "--fixture", "farey", "--seed", "7", "--max-denominator", "30", "--json"];
    let (a, b) = (goeritz(&args), goeritz(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert!(v["certificate"]["final"].as_array().unwrap().iter().all(|s| s == "inf"));
}

#[test]
fn fuel_from_environment_and_exit_codes() {
    let o = Command::new(env!("CARGO_BIN_EXE_goeritz"))
        .args(["contract", "--seed", "3"])
        .env("GOERITZ_FUEL", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fuel exhausted"));
    assert_eq!(goeritz(&["nf", "q"]).status.code(), Some(2));
    assert_eq!(goeritz(&["tree", "--max-power", "0"]).status.code(), Some(2));
    assert_eq!(goeritz(&["no-such-command"]).status.code(), Some(2));
}

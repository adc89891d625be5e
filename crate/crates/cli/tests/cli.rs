use std::process::{Command, Output};

use serde_json::Value;

fn prepdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prepdyn")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn relation_between_two_x_and_x_squared() {
    let out = prepdyn(&["relations", "--gens", "p1:[0,2]/[1,0]", "p1:[0,0,1]/[1,0,0]", "--max-len", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["status"], "RELATION(ffg, gf)");
    assert_eq!(v["map"], "p1:[0,0,4]/[1,0,0]");
    assert_eq!(v["verified"], true);
}

#[test]
fn portrait_of_x_squared() {
    let v = json_of(&prepdyn(&["portrait", "--map", "p1:[0,0,1]/[1,0,0]"]));
    let mut vertices = strings(&v["vertices"]);
    vertices.sort();
    assert_eq!(vertices, ["-1", "0", "1", "inf"]);
}

#[test]
fn charp_exhaustive_run() {
    let out = prepdyn(&["charp-check", "--q", "2", "--n", "1", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["matrices_checked"], 6);
    assert_eq!(v["diagonalizable_all"], true);
    assert_eq!(v["identity_holds"], false);
    assert_eq!(v["witnesses"][0]["period"], 3);
}

#[test]
fn parse_error_has_exit_code_two() {
    let out = prepdyn(&["portrait", "--map", "p1:[0,0,1/[1,0,0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "parse");
    let out = prepdyn(&["portrait", "--map", "p1:[1,0,-1]/[1,0,-1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "validation");
    assert_eq!(prepdyn(&["portrait"]).status.code(), Some(2));
}

#[test]
fn degree_cap_has_exit_code_three() {
    let out = prepdyn(&["relations", "--gens", "p1:[0,0,2]/[1,0,0]", "p1:[0,0,1]/[1,0,0]", "--max-len", "6", "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"], "resource");
}

#[test]
fn mixed_radicands_are_rejected() {
    let out = prepdyn(&["group-verify", "--gens", "mat(d=2):[[1,(0,1)],[0,1]]", "mat(d=3):[[1,(0,1)],[0,1]]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "mixed_radicand");
}

#[test]
fn output_is_deterministic_and_replayable() {
    let dir = std::env::temp_dir().join(format!("prepdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let manifest = dir.join("run.json");
    let args = ["preimage-bound", "--map", "p1:[0,0,1]/[1,0,0]", "--alpha", "1", "--gamma", "-1", "--p", "3"];
    let first = prepdyn(&args);
    let mut with_manifest: Vec<&str> = args.to_vec();
    with_manifest.extend(["--manifest", manifest.to_str().unwrap()]);
    let second = prepdyn(&with_manifest);
    assert_eq!(first.stdout, second.stdout);
    let recorded: Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(recorded["command"], "preimage-bound");
    assert_eq!(recorded["caps"]["degree"], 4096);
    let replayed = prepdyn(&["--replay", manifest.to_str().unwrap()]);
    assert_eq!(replayed.stdout, first.stdout);
    let v = json_of(&first);
    assert_eq!((v["s"].as_u64(), v["m"].as_u64()), (Some(1), Some(4)));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn emitted_maps_reparse() {
    let v = json_of(&prepdyn(&["perlocus", "--map", "mat:[[0,-1],[1,0]]", "--n", "2"]));
    let map = v["map"].as_str().unwrap();
    let again = json_of(&prepdyn(&["perlocus", "--map", map, "--n", "2"]));
    assert_eq!(v, again);
    assert_eq!(v["per_star_star"].as_array().unwrap().len(), 0);
    let v = json_of(&prepdyn(&["relations", "--gens", "p1:[0,2]/[1,0]", "p1:[0,0,1]/[1,0,0]"]));
    let out = prepdyn(&["portrait", "--map", v["map"].as_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn demo_reproduces_the_group_examples() {
    let v = json_of(&prepdyn(&["demo"]));
    let nil = &v["nil_example"];
    assert_eq!(nil["zero_in_per_star_f"], true);
    assert_eq!(nil["zero_periodic_under_g"], false);
    assert_eq!(nil["per_star_star_f"].as_array().unwrap().len(), 0);
    let solv = &v["solvable_example"];
    assert_eq!(solv["affine_per_star_counts"], serde_json::json!([0, 0]));
    assert_eq!(solv["solvable"]["hypothesis_holds"], false);
    assert_eq!(solv["solvable"]["common_periodic_point"], Value::Null);
    assert_eq!(v["relation_example"]["status"], "RELATION(ffg, gf)");
}

#[test]
fn point_based_commands() {
    let v = json_of(&prepdyn(&["preper", "--map", "p1:[-1,0,1]/[1,0,0]", "--point", "-1"]));
    assert_eq!((v["status"].as_str(), v["cycle"].as_u64()), (Some("preperiodic"), Some(2)));
    let v = json_of(&prepdyn(&["chgt", "--map", "p1:[0,0,1]/[1,0,0]", "--point", "2"]));
    let h: f64 = v["canonical_height"]["value"].as_str().unwrap().parse().unwrap();
    assert!((h - 2f64.ln()).abs() < 1e-12);
    let v = json_of(&prepdyn(&["orbit", "--gens", "mat:[[0,1],[1,0]]", "mat:[[-1,0],[0,1]]", "--point", "2"]));
    assert_eq!(v["orbit"].as_array().unwrap().len(), 4);
    let v = json_of(&prepdyn(&["padic-cycles", "--map", "p1:[-1,0,1]/[1,0,0]", "--p", "5", "--e0", "1"]));
    assert_eq!(v["period_bound"]["bound"], 40);
    let v = json_of(&prepdyn(&["arc-test", "--map", "mat:[[1,5],[0,1]]", "--gamma", "(1:0)", "--p", "5"]));
    assert_eq!(v["in_arc_subgroup"], true);
    let v = json_of(&prepdyn(&["certify-unbounded", "--f", "p1:[0,0,1]/[1,0,0]", "--g", "p1:[0,2]/[1,0]", "--point", "1"]));
    assert_eq!(v["orbit_infinite"], true);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use uniflearn::formats::{DescriptorJson, FamilyJson, Sigma2Json, SnapshotJson, TreeJson};
use uniflearn_core::learn::{witness_sentence, Abstraction};
use uniflearn_core::session::quasi_scott_sentences;
use uniflearn_core::tree::FinTree;
use uniflearn_core::{parse_expr, Family, Snapshot, StructureDescriptor};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uniflearn"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn chain_json(n: usize) -> String {
    serde_json::to_string(&SnapshotJson::from_snapshot(&Snapshot::chain(n))).unwrap()
}

const ALL_P: &str = r#"{"kind":"unary","vocab":["P"],"exceptional":[],"tail":1}"#;
const ONE_NOT_P: &str = r#"{"kind":"unary","vocab":["P"],"exceptional":[{"type":0,"count":1}],"tail":1}"#;

fn unary_family(dir: &TempDir) {
    write(dir, "ufam.json", &format!(r#"{{"base":[{ALL_P},{ONE_NOT_P}],"pattern":{{"initial":[0,1],"tail":1}}}}"#));
}

#[test]
fn bf_examples() {
    let dir = TempDir::new().unwrap();
    write(&dir, "chain3.json", &chain_json(3));
    write(&dir, "chain2.json", &chain_json(2));
    write(&dir, "e.json", &chain_json(0));
    write(&dir, "wplus1.ord", "w+1");
    write(&dir, "w.ord", "w");
    let v = json(&run(&["bf", "--left", "chain3.json", "--right", "chain2.json", "--n", "1"], dir.path()));
    assert_eq!(v["result"], true);
    assert_eq!(v["relation"], "leq_n");
    assert_eq!(v["mode"], "snapshot");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["relation", "n", "left", "right", "result", "cap", "mode"]);
    let v = json(&run(&["bf", "--left", "chain2.json", "--right", "chain3.json", "--n", "1"], dir.path()));
    assert_eq!(v["result"], false);
    let v = json(&run(&["bf", "--left", "e.json", "--right", "e.json", "--n", "2"], dir.path()));
    assert_eq!(v["result"], true);
    // Holds in this direction only; the reverse check below fails.
    let v = json(&run(&["bf", "--left", "wplus1.ord", "--right", "w.ord", "--n", "2", "--cap", "4"], dir.path()));
    assert_eq!((v["result"].clone(), v["mode"].clone()), (Value::Bool(true), Value::from("described")));
    let v = json(&run(&["bf", "--left", "w.ord", "--right", "wplus1.ord", "--n", "2"], dir.path()));
    assert_eq!(v["result"], false);
}

#[test]
fn algebra_prints_normal_forms() {
    let out = run(&["algebra", "(W + W*q + 3)*w"], Path::new("."));
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "W + W*q");
    let out = run(&["algebra", "1+w"], Path::new("."));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "w");
}

#[test]
fn kb_outputs() {
    let dir = TempDir::new().unwrap();
    write(&dir, "t.json", r#"{"nodes":[[],[0],[1],[1,0]]}"#);
    write(&dir, "s.json", r#"{"nodes":[[],[0],[0,0]]}"#);
    let v = json(&run(&["kb", "--interleave", "t.json", "s.json"], dir.path()));
    let tree: TreeJson = serde_json::from_value(v).unwrap();
    let t = tree.to_tree().unwrap();
    let expected = FinTree::prefix_closure([vec![0, 0], vec![1, 0], vec![1, 0, 0, 0]]);
    assert_eq!(t, expected);

    let v = json(&run(&["kb", "t.json"], dir.path()));
    let nodes: Vec<Vec<u64>> = serde_json::from_value(v["nodes"].clone()).unwrap();
    assert_eq!(nodes, vec![vec![0], vec![1, 0], vec![1], vec![]]);
    let order: SnapshotJson = serde_json::from_value(v["order"].clone()).unwrap();
    assert_eq!(order.to_snapshot().unwrap().size(), 4);
}

#[test]
fn check_examples() {
    let dir = TempDir::new().unwrap();
    write(
        &dir,
        "wfam.json",
        r#"{"base":[{"kind":"order","expr":"w"},{"kind":"order","expr":"w+w"}],"pattern":{"initial":[0],"tail":1}}"#,
    );
    let v = json(&run(&["check", "--family", "wfam.json", "--tuple-bound", "2", "--cap", "4"], dir.path()));
    assert_eq!(v["condition3"], false);
    unary_family(&dir);
    let v = json(&run(&["check", "--family", "ufam.json"], dir.path()));
    assert_eq!((v["condition3"].clone(), v["condition3a"].clone()), (Value::Bool(true), Value::Bool(true)));
    assert_eq!(v["witnesses"][1]["types"][0]["type"], 0);
    write(&dir, "dup.json", &format!(r#"{{"base":[{ALL_P},{ALL_P}],"pattern":{{"initial":[],"tail":"parity"}}}}"#));
    let v = json(&run(&["check", "--family", "dup.json"], dir.path()));
    assert_eq!(v["condition3a"], Value::Null);
    assert_eq!(v["duplicates"], serde_json::json!([0, 1]));
}

#[test]
fn learn_is_deterministic_and_parallel_safe() {
    let dir = TempDir::new().unwrap();
    unary_family(&dir);
    let args = ["learn", "--family", "ufam.json", "--seeds", "0..4,9", "--horizon", "40"];
    let one = run(&args, dir.path());
    let again = run(&args, dir.path());
    let mut parallel_args = args.to_vec();
    parallel_args.extend(["--jobs", "3"]);
    let parallel = run(&parallel_args, dir.path());
    assert_eq!(one.stdout, again.stdout);
    assert_eq!(one.stdout, parallel.stdout);
    let v = json(&one);
    let sessions = v["sessions"].as_array().unwrap();
    assert_eq!(sessions.len(), 10);
    assert!(sessions.iter().all(|s| s["success_at_horizon"] == true));
    assert_eq!(sessions[4]["seed"], 9);

    let bc = json(&run(
        &["learn", "--family", "ufam.json", "--member", "1", "--mode", "bc", "--window", "10", "--horizon", "40"],
        dir.path(),
    ));
    assert_eq!(bc["sessions"][0]["mode"], "bc");
    assert_eq!(bc["sessions"][0]["success_at_horizon"], true);
}

#[test]
fn swap_verdicts() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a1.json", ALL_P);
    write(&dir, "a2.json", ONE_NOT_P);
    let args = |t: &'static str| ["swap", "--a1", "a1.json", "--a2", "a2.json", "--translation", t];
    let v = json(&run(&args("freeze"), dir.path()));
    assert_eq!(v["outcome"], "refuted_at_horizon");
    let swapped: FamilyJson = serde_json::from_value(v["evidence"]["swapped"].clone()).unwrap();
    assert!(swapped.to_family().is_ok());
    for t in ["min-iso", "equiv2"] {
        assert_eq!(json(&run(&args(t), dir.path()))["outcome"], "no_refutation_found");
    }
    assert_eq!(run(&args("freeze"), dir.path()).stdout, run(&args("freeze"), dir.path()).stdout);

    // Explicit sentences give the same verdict as the derived ones.
    let (a1, a2): (DescriptorJson, DescriptorJson) =
        (serde_json::from_str(ALL_P).unwrap(), serde_json::from_str(ONE_NOT_P).unwrap());
    let (a1, a2) = (a1.to_descriptor().unwrap(), a2.to_descriptor().unwrap());
    let psi = witness_sentence(&a1, &Abstraction::Types(Default::default()), 1).unwrap();
    let theta = witness_sentence(&a2, &Abstraction::Types([(0, 1)].into()), 1).unwrap();
    write(&dir, "psi.json", &serde_json::to_string(&Sigma2Json::from_sentence(&psi)).unwrap());
    write(&dir, "theta.json", &serde_json::to_string(&Sigma2Json::from_sentence(&theta)).unwrap());
    let mut explicit = args("freeze").to_vec();
    explicit.extend(["--psi", "psi.json", "--theta", "theta.json"]);
    assert_eq!(json(&run(&explicit, dir.path()))["outcome"], "refuted_at_horizon");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    write(&dir, "w.ord", "w");
    write(&dir, "chain2.json", &chain_json(2));
    write(&dir, "bad.json", "{\"vocab\": ");
    write(&dir, "a1.json", ALL_P);
    let code = |args: &[&str]| run(args, dir.path()).status.code().unwrap();
    assert_eq!(code(&["algebra", "w+"]), 1);
    assert_eq!(code(&["learn"]), 1);
    assert_eq!(code(&["bf", "--left", "bad.json", "--right", "w.ord", "--n", "1"]), 1);
    assert_eq!(code(&["bf", "--left", "missing.json", "--right", "w.ord", "--n", "1"]), 1);
    assert_eq!(code(&["bf", "--left", "w.ord", "--right", "w.ord", "--n", "1", "--cap", "0"]), 1);
    assert_eq!(code(&["bf", "--left", "chain2.json", "--right", "w.ord", "--n", "1"]), 2);
    assert_eq!(code(&["bf", "--left", "w.ord", "--right", "w.ord", "--n", "3"]), 2);
    assert_eq!(code(&["swap", "--a1", "a1.json", "--a2", "a1.json", "--translation", "freeze"]), 2);
    assert_eq!(code(&["--help"]), 0);
    let err = run(&["algebra", "w+"], dir.path()).stderr;
    assert!(String::from_utf8(err).unwrap().starts_with("error: "));
}

#[test]
fn schemas_round_trip() {
    let v = uniflearn_core::structure::Vocabulary::unary(["P", "Q"]).unwrap();
    let d = StructureDescriptor::unary_tail(std::sync::Arc::new(v), [(1, 2), (2, 1)].into(), 3).unwrap();
    let o = StructureDescriptor::order_type(parse_expr("w*+q").unwrap()).unwrap();
    for desc in [&d, &o] {
        let j = DescriptorJson::from_descriptor(desc);
        let back: DescriptorJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(&back.to_descriptor().unwrap(), desc);
    }

    let fam = Family::parity(o.clone(), StructureDescriptor::order_type(parse_expr("w").unwrap()).unwrap()).unwrap();
    let j = serde_json::to_string(&FamilyJson::from_family(&fam)).unwrap();
    assert!(j.contains("\"parity\""));
    let back: FamilyJson = serde_json::from_str(&j).unwrap();
    assert_eq!(back.to_family().unwrap(), fam);
    let odd = Family::new(fam.base().to_vec(), uniflearn_core::Pattern { initial: vec![1], cycle: vec![0, 0, 1] }).unwrap();
    let back: FamilyJson = serde_json::from_str(&serde_json::to_string(&FamilyJson::from_family(&odd)).unwrap()).unwrap();
    assert_eq!(back.to_family().unwrap(), odd);

    let s = Snapshot::chain(4);
    let back: SnapshotJson = serde_json::from_str(&serde_json::to_string(&SnapshotJson::from_snapshot(&s)).unwrap()).unwrap();
    assert_eq!(back.to_snapshot().unwrap(), s);

    let t = FinTree::random(&mut uniflearn_core::rng::SplitMix64::new(3), 20, 3);
    let back: TreeJson = serde_json::from_str(&serde_json::to_string(&TreeJson::from_tree(&t)).unwrap()).unwrap();
    assert_eq!(back.to_tree().unwrap(), t);

    let ufam = Family::identity(vec![d.clone(), StructureDescriptor::unary_tail(d.vocab(), Default::default(), 3).unwrap()]).unwrap();
    for phi in quasi_scott_sentences(&ufam, 2, 4, 1).unwrap() {
        let j = serde_json::to_string(&Sigma2Json::from_sentence(&phi)).unwrap();
        let back: Sigma2Json = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_sentence().unwrap(), phi);
    }
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn frcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frcalc"))
        .args(args)
        .env_remove("FRCALC_CONFIG")
        .output()
        .expect("frcalc runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("frcalc-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn frame_round_trip_exit_zero() {
    let dir = scratch("frame");
    let f = dir.join("f.json");
    let out = frcalc(&["frame", "make-units", "--d", "3", "--cofactor", "2", "--out", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verb"], "frame make-units");
    assert_eq!(r["artifacts"][0], s(&f));
    assert!(r.get("result").is_none());

    let out = frcalc(&["frame", "verify", "--in", s(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["pass"], true);
    assert_eq!(r["residuals"]["axiom_i"], 0.0);
}

#[test]
fn broken_frame_exit_one() {
    let dir = scratch("broken");
    let f = dir.join("bad.json");
    std::fs::write(&f, r#"[{"rows":1,"cols":1,"entries":[[2,0]]}]"#).unwrap();
    let out = frcalc(&["frame", "verify", "--in", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    let out = frcalc(&["frame", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let out = frcalc(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = scratch("usage");
    let f = dir.join("garbled.json");
    std::fs::write(&f, "{not json").unwrap();
    let out = frcalc(&["frame", "verify", "--in", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"].is_string());

    let out = frcalc(&["frame", "verify", "--in", s(&dir.join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    // six matrices is not a square count
    let units = frcalc(&["frame", "make-units", "--d", "2"]);
    let mut mats = report(&units)["result"]["mats"].as_array().unwrap().clone();
    mats.extend(mats.clone()[..2].to_vec());
    std::fs::write(&f, serde_json::to_string(&mats).unwrap()).unwrap();
    assert_eq!(frcalc(&["frame", "verify", "--in", s(&f)]).status.code(), Some(2));

    assert_eq!(frcalc(&["mat", "random-unitary", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn torsion_colimit_example() {
    let chain = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/z2_chain.json");
    let out = frcalc(&["ab", "colim", "--file", s(&chain), "--invert", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(r["result"]["free_rank"], 0);

    let chain = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/z_chain.json");
    let r = report(&frcalc(&["ab", "colim", "--file", s(&chain), "--invert", "3"]));
    assert_eq!(r["result"]["free_rank"], 1);
    assert_eq!(r["result"]["invariant_factors"], serde_json::json!([]));
}

#[test]
fn ill_defined_hom_is_rejected() {
    let dir = scratch("illdef");
    let f = dir.join("h.json");
    // 1 ↦ 1 from Z/4 to Z/6 does not respect 4 = 0
    std::fs::write(&f, r#"{"src":{"gens":1,"rels":[[4]]},"dst":{"gens":1,"rels":[[6]]},"matrix":[[1]]}"#).unwrap();
    let out = frcalc(&["ab", "coker", "--in", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ill-defined"));
}

#[test]
fn seeded_verbs_are_deterministic() {
    let a = report(&frcalc(&["hom", "random", "--d", "2", "--l", "3", "--seed", "5"]));
    let b = report(&frcalc(&["hom", "random", "--d", "2", "--l", "3", "--seed", "5"]));
    let c = report(&frcalc(&["hom", "random", "--d", "2", "--l", "3", "--seed", "6"]));
    assert_eq!(a["result"], b["result"]);
    assert_ne!(a["result"], c["result"]);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = scratch("config");
    let cfg = dir.join("frcalc.toml");
    std::fs::write(&cfg, "seed = 3\nabs_eps = 1e-6\n").unwrap();
    let via_file = Command::new(env!("CARGO_BIN_EXE_frcalc"))
        .args(["frame", "random", "--d", "2"])
        .env("FRCALC_CONFIG", &cfg)
        .output()
        .unwrap();
    let r = report(&via_file);
    assert_eq!(r["thresholds"]["axiom_i"], 1e-6);
    let via_flag = report(&frcalc(&["frame", "random", "--d", "2", "--seed", "3"]));
    assert_eq!(r["result"], via_flag["result"]);
    assert_eq!(via_flag["thresholds"]["axiom_i"], 1e-9);

    let overridden = report(&frcalc(&["frame", "random", "--d", "2", "--config", s(&cfg), "--abs-eps", "1e-10"]));
    assert_eq!(overridden["thresholds"]["axiom_i"], 1e-10);
    assert_eq!(overridden["result"], via_flag["result"]);

    std::fs::write(&cfg, "tolerance = 1\n").unwrap();
    assert_eq!(frcalc(&["frame", "random", "--d", "2", "--config", s(&cfg)]).status.code(), Some(2));
}

#[test]
fn fredholm_amplification_via_cli() {
    let dir = scratch("fred");
    let (t, h, ta) = (dir.join("t.json"), dir.join("h.json"), dir.join("ta.json"));
    frcalc(&["fred", "random", "--n", "2", "--dom", "3", "--cod", "1", "--deficiency", "1", "--out", s(&t)]);
    frcalc(&["hom", "random", "--d", "2", "--l", "3", "--out", s(&h)]);
    let r = report(&frcalc(&["fred", "index", "--in", s(&t)]));
    assert_eq!(r["result"]["index"], 4);
    let out = frcalc(&["fred", "amplify", "--hom", s(&h), "--in", s(&t), "--out", s(&ta)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&frcalc(&["fred", "index", "--in", s(&ta)]));
    assert_eq!(r["result"]["index"], 12);
}

#[test]
fn category_verbs_chain_together() {
    let dir = scratch("cat");
    let (m, ap, chain) = (dir.join("m.json"), dir.join("ap.json"), dir.join("chain.json"));
    frcalc(&["cat", "random", "--a", "2", "--s1", "1", "--t", "2", "--c", "2", "--out", s(&m)]);
    frcalc(&["frame", "random", "--d", "2", "--out", s(&ap), "--seed", "4"]);
    let out = frcalc(&["cat", "naturality", "--f", s(&m), "--g", s(&m), "--alpha-prime", s(&ap), "--phi-prime", s(&ap)]);
    assert_eq!(out.status.code(), Some(0));

    let h1 = report(&frcalc(&["hom", "random", "--d", "2", "--l", "2"]))["result"].clone();
    let h2 = report(&frcalc(&["hom", "random", "--d", "4", "--l", "1", "--seed", "9"]))["result"].clone();
    std::fs::write(&chain, serde_json::json!({ "homs": [h1, h2] }).to_string()).unwrap();
    let out = frcalc(&["cat", "simplicial", "--chain", s(&chain)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&frcalc(&["cat", "nerve-face", "--chain", s(&chain), "--i", "1"]));
    assert_eq!(r["result"]["homs"].as_array().unwrap().len(), 1);
    let out = frcalc(&["cat", "nerve-face", "--chain", s(&chain), "--i", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_listed_verb_parses() {
    let ops = report(&frcalc(&["list-ops"]));
    let ops = ops["result"].as_array().unwrap();
    assert!(ops.len() > 50);
    for op in ops {
        let verb = op["verb"].as_str().unwrap();
        let mut args: Vec<&str> = verb.split(' ').collect();
        args.push("--help");
        assert_eq!(frcalc(&args).status.code(), Some(0), "{verb}");
    }
}

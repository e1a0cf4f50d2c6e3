use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn softnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_softnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn shop() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/shop")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn extract(dir: &Path) -> PathBuf {
    let net = dir.join("net.tsv");
    let out = softnet(&["extract", shop().to_str().unwrap(), "-o", net.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    net
}

#[test]
fn extract_writes_an_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(extract(dir.path())).unwrap();
    assert!(text.contains("source\ttarget\tkinds\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 17);

    let out = softnet(&["extract", shop().to_str().unwrap(), "--fold-nested"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(!stdout.contains("Order.Line"));
}

#[test]
fn metrics_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let net = extract(dir.path());
    let (json, hist) = (dir.path().join("m.json"), dir.path().join("h.tsv"));
    let out = softnet(&[
        "metrics",
        net.to_str().unwrap(),
        "--seed",
        "3",
        "--json",
        json.to_str().unwrap(),
        "--histogram",
        hist.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = read_json(&json);
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(12), Some(16)));
    assert!(std::fs::read_to_string(hist).unwrap().starts_with("# k\tp_k\tp_k_in\tp_k_out\n"));
}

#[test]
fn centrality_control_modules_predict() {
    let dir = tempfile::tempdir().unwrap();
    let net = extract(dir.path());
    let net = net.to_str().unwrap();

    let v: Value = serde_json::from_slice(&softnet(&["centrality", net, "--top", "2"]).stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    assert!(v["rankings"]["by_k_in"].as_array().unwrap().len() <= 2);

    let v: Value = serde_json::from_slice(&softnet(&["control", net]).stdout).unwrap();
    let n_d = v["control"]["n_d"].as_u64().unwrap();
    assert_eq!(v["driver_names"].as_array().unwrap().len() as u64, n_d);

    let (part, dot) = (dir.path().join("p.tsv"), dir.path().join("m.dot"));
    let out = softnet(&[
        "modules",
        net,
        "--algo",
        "lpa",
        "--seed",
        "5",
        "--min-module",
        "3",
        "--partition",
        part.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["algorithm"], "lpa");
    assert!(!v["hierarchy"]["levels"].as_array().unwrap().is_empty());
    assert_eq!(std::fs::read_to_string(part).unwrap().lines().count(), 12);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph"));

    let v: Value = serde_json::from_slice(&softnet(&["predict", net, "--algo", "cnm", "--nodes"]).stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    assert!(v["report"]["ca_bottom"].is_number());
}

#[test]
fn report_is_reproducible_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "er_samples = 5\nseed = 9\n").unwrap();
    let run = |name: &str| {
        let bundle = dir.path().join(name);
        let graph = dir.path().join(format!("{name}.graphml"));
        let out = softnet(&[
            "report",
            shop().to_str().unwrap(),
            "--config",
            cfg.to_str().unwrap(),
            "-o",
            bundle.to_str().unwrap(),
            "--export",
            "graphml",
            "--export-to",
            graph.to_str().unwrap(),
        ]);
        let code = out.status.code().unwrap();
        assert!(code == 0 || code == 2, "{}", String::from_utf8_lossy(&out.stderr));
        assert!(std::fs::read_to_string(graph).unwrap().contains("<graphml"));
        (code, std::fs::read_to_string(bundle).unwrap())
    };
    let (code_a, a) = run("a.json");
    let (code_b, b) = run("b.json");
    assert_eq!((code_a, &a), (code_b, &b));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 9);
    let any_fail = v["quality"]["project"]
        .as_array()
        .unwrap()
        .iter()
        .chain(v["quality"]["classes"].as_array().unwrap())
        .any(|i| i["verdict"] == "fail");
    assert_eq!(code_a == 2, any_fail);
}

#[test]
fn bad_input_fails_cleanly() {
    let out = softnet(&["metrics", "/no/such/net.tsv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("softnet:"));

    let out = softnet(&["report", "/no/such/net.tsv"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["errors"][0]["stage"], "load");

    let out = softnet(&["modules", "x.tsv", "--algo", "spectral"]);
    assert_eq!(out.status.code(), Some(2));
}

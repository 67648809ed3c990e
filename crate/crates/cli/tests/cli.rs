use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use uvinfo::chancap::Channel;
use uvinfo::uvcore::UncertainPair;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run_with(env: &[(&str, &str)], args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_uvinfo"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(&[], args)
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("uvinfo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn zero_error_capacity_of_block_channel() {
    let block_channel = fixture("block_channel.json");
    let v = json(&[
        "capacity",
        "--channel",
        &block_channel,
        "--m",
        "card:19:1",
        "--delta",
        "0",
    ]);
    assert_eq!(v["capacity"]["count"], 2);
    assert_eq!(v["capacity"]["bits"]["bits"], "1");
    assert_eq!(v["v_min"], "7/19");
}

#[test]
fn bundled_examples_pass() {
    let out = run(&["examples"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5, "{text}");
}

#[test]
fn mi_in_neither_band_has_no_family() {
    let walkers = fixture("walkers.json");
    let v = json(&[
        "mi", "--pair", &walkers, "--mx", "card:5:1", "--my", "leb+10", "--delta1", "1/4",
    ]);
    assert_eq!(v["x_given_y"]["result"]["status"], "NoFamily");
    assert_eq!(v["x_given_y"]["result"]["bits"]["count"], 1);
    assert!(v.get("y_given_x").is_none());
}

#[test]
fn mi_with_both_levels_reports_regime() {
    let walkers = fixture("walkers.json");
    let args = [
        "mi", "--pair", &walkers, "--mx", "card:5:1", "--my", "leb+10", "--delta1", "1/6", "--delta2", "1/4",
    ];
    let v = json(&args);
    assert_eq!(v["levels"]["level"], "Disassociated");
    assert_eq!(v["taxicab"]["exists"], true);
}

#[test]
fn analyze_reports_association_sets() {
    let walkers = fixture("walkers.json");
    let v = json(&["analyze", "--pair", &walkers, "--mx", "card:5:1", "--my", "leb+10"]);
    assert_eq!(v["association_sets"]["a_xy"], serde_json::json!(["1/5", "3/5"]));
    assert_eq!(v["association_sets"]["a_yx"], serde_json::json!(["3/8", "1/2"]));
}

#[test]
fn malformed_inputs_exit_with_two() {
    let unknown = temp_file(
        "unknown.json",
        r#"{"x":["a","b"],"y":["p"],"map":{"a":["p"],"b":["q"]}}"#,
    );
    let empty = temp_file("empty.json", r#"{"x":["a","b"],"y":["p"],"map":{"a":["p"],"b":[]}}"#);
    for path in [&unknown, &empty] {
        let out = run(&["capacity", "--channel", path, "--delta", "0"]);
        assert_eq!(out.status.code(), Some(2), "{path}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let block_channel = fixture("block_channel.json");
    let decimal = run(&["capacity", "--channel", &block_channel, "--delta", "0.1"]);
    assert_eq!(decimal.status.code(), Some(2));
    let missing = run(&["capacity", "--channel", "no/such/file.json", "--delta", "0"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_threads = run_with(&[("UVINFO_THREADS", "zero")], &["examples"]);
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn level_at_least_image_uncertainty_needs_opt_in() {
    let block_channel = fixture("block_channel.json");
    let refused = run(&["capacity", "--channel", &block_channel, "--delta", "7/19"]);
    assert_eq!(refused.status.code(), Some(2));
    let v = json(&[
        "capacity",
        "--channel",
        &block_channel,
        "--delta",
        "7/19",
        "--beyond-range",
    ]);
    assert!(v["capacity"]["count"].as_u64().unwrap() >= 1);
}

#[test]
fn fixtures_round_trip() {
    let text = std::fs::read_to_string(fixture("block_channel.json")).unwrap();
    let ch: Channel = serde_json::from_str(&text).unwrap();
    let again: Channel = serde_json::from_str(&serde_json::to_string(&ch).unwrap()).unwrap();
    assert_eq!(ch, again);

    let text = std::fs::read_to_string(fixture("walkers.json")).unwrap();
    let pair: UncertainPair = serde_json::from_str(&text).unwrap();
    let again: UncertainPair = serde_json::from_str(&serde_json::to_string(&pair).unwrap()).unwrap();
    assert_eq!(pair, again);
}

#[test]
fn output_is_stable_across_runs_and_thread_counts() {
    let block_channel = fixture("block_channel.json");
    let hamming = fixture("hamming7.txt");
    let cases: [&[&str]; 3] = [
        &[
            "--format",
            "json",
            "capacity",
            "--channel",
            &block_channel,
            "--delta",
            "1/19",
            "--average",
        ],
        &[
            "--format",
            "json",
            "rates",
            "--channel",
            &block_channel,
            "--sequence",
            "geometric:7/342",
        ],
        &["--format", "json", "hamming", "--codebook", &hamming, "--tau", "1/7"],
    ];
    for args in cases {
        let one = run_with(&[("UVINFO_THREADS", "1")], args);
        let four = run_with(&[("UVINFO_THREADS", "4")], args);
        let default = run(args);
        assert!(one.status.success());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, default.stdout, "{args:?}");
    }
}

#[test]
fn single_letter_failure_exits_with_one() {
    let block_channel = fixture("block_channel.json");
    let ok = run(&[
        "single-letter",
        "--channel",
        &block_channel,
        "--theorem",
        "cor2",
        "--codebook",
        "1,7,13",
    ]);
    assert!(ok.status.success());
    let bad = run(&[
        "single-letter",
        "--channel",
        &block_channel,
        "--theorem",
        "cor2",
        "--codebook",
        "1,13",
    ]);
    assert_eq!(bad.status.code(), Some(1), "{}", String::from_utf8_lossy(&bad.stdout));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("[FAIL] uncovered inputs"));
    let short = run(&[
        "single-letter",
        "--channel",
        &block_channel,
        "--theorem",
        "cor2",
        "--codebook",
        "1,7",
    ]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn verify_finds_no_mismatch() {
    let block_channel = fixture("block_channel.json");
    let walkers = fixture("walkers.json");
    let v = json(&[
        "verify",
        "--channel",
        &block_channel,
        "--pair",
        &walkers,
        "--mx",
        "card:5:1",
        "--my",
        "leb+10",
    ]);
    assert_eq!(v["coding_theorem"]["mismatches"], 0);
    assert_eq!(v["tensorization"][0]["status"], "Holds");
    assert_eq!(v["symmetry"]["status"], "holds");
}

#[test]
fn hamming_code_corrects_one_flip() {
    let v = json(&["hamming", "--codebook", &fixture("hamming7.txt"), "--tau", "1/7"]);
    assert_eq!(v["codebook_size"], 16);
    assert_eq!(v["min_distance"], 3);
    assert_eq!(v["correctable"], 1);
    assert_eq!(v["all_hold"], true);
    let pair = json(&["hamming", "--pair", "0000", "0011", "--tau", "1/4"]);
    assert_eq!(pair["equivocation"], "3/5");
}

#[test]
fn classify_confusions_and_matrices() {
    let v = json(&["classify", "--confusion", &fixture("confusion.csv")]);
    assert_eq!(v["capacity"]["count"], 2);
    let m = json(&["classify", "--matrix", &fixture("matrix.json"), "--delta", "1/4"]);
    assert_eq!(m["capacity"]["count"], 2);
    let zero = json(&["classify", "--matrix", &fixture("matrix.json"), "--delta", "0"]);
    assert_eq!(zero["capacity"]["count"], 2);
    let bad = temp_file("bad.csv", "label,guess\na,a\n");
    assert_eq!(run(&["classify", "--confusion", &bad]).status.code(), Some(2));
}

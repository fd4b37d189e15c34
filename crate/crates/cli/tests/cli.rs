use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn econlex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_econlex")).args(args).env_remove("ECONLEX_CONFIG_DIR").output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

fn read_json(p: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn compare_writes_json_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "cmp.json");
    let o = econlex(&["compare", "--a", &fixture("el.tsv"), "--b", &fixture("lmd.tsv"), "--format", "json", "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = read_json(&out);
    assert_eq!(report["lexicon_a"], "el");
    assert_eq!(report["size_a"], 36);
    assert_eq!(report["size_b"], 22);
    let printed: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(printed, report);

    let manifest = read_json(&path(dir.path(), "cmp.manifest.json"));
    assert_eq!(manifest["subcommand"], "compare");
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(manifest["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn existing_output_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "cmp.json");
    std::fs::write(&out, "keep me").unwrap();
    let args = ["compare", "--a", &fixture("el.tsv"), "--b", &fixture("lmd.tsv"), "--format", "json", "--out", &out];
    let o = econlex(&args);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "keep me");

    let mut forced = args.to_vec();
    forced.push("--force");
    assert!(econlex(&forced).status.success());
    assert!(read_json(&out).get("common_terms").is_some());
}

#[test]
fn exit_codes() {
    assert_eq!(econlex(&[]).status.code(), Some(2));
    assert_eq!(econlex(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(econlex(&["compare", "--a", "missing.tsv", "--b", &fixture("lmd.tsv")]).status.code(), Some(2));
    assert_eq!(econlex(&["--help"]).status.code(), Some(0));

    // a well-formed command on bad data is a runtime failure
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.tsv");
    std::fs::write(&bad, "term\tscore\nweak\t7\n").unwrap();
    let o = econlex(&["compare", "--a", &bad, "--b", &fixture("lmd.tsv")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["build-lexicon", "candidates", "compare", "score", "ep-series", "regress", "forecast", "auc-test", "decompose"] {
        let o = econlex(&[sub, "--help"]);
        assert!(o.status.success(), "{sub}");
        assert!(o.stdout.len() > 200, "{sub}");
    }
}

#[test]
fn forecast_json_has_fit_and_design() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "f.json");
    let o = econlex(&[
        "forecast",
        "--series",
        &format!("recession={}", fixture("recession.csv")),
        "--series",
        &format!("spread={}", fixture("spread.csv")),
        "--target",
        "recession",
        "--regressors",
        "spread",
        "--horizon",
        "6",
        "--out",
        &out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&out);
    assert_eq!(v["fit"]["kind"], "logit");
    assert_eq!(v["design"]["target"], "recession_lead6");
    assert_eq!(v["design"]["n_obs"], 144 - 6);
    let ll = v["fit"]["log_likelihood"].as_f64().unwrap();
    assert_eq!(v["fit"]["aic"].as_f64().unwrap(), 4.0 - 2.0 * ll);
    assert!(String::from_utf8_lossy(&o.stdout).contains("AIC"));
}

#[test]
fn regress_reports_bandwidth() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "r.json");
    let o = econlex(&[
        "regress",
        "--series",
        &format!("ads={}", fixture("ads.csv")),
        "--series",
        &format!("spread={}", fixture("spread.csv")),
        "--target",
        "ads",
        "--ar-lags",
        "1",
        "--regressors",
        "spread",
        "--bandwidth",
        "2",
        "--out",
        &out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&out);
    assert_eq!(v["fit"]["bandwidth"], 2);
    assert_eq!(v["design"]["columns"], serde_json::json!(["const", "ads_lag1", "spread"]));
}

#[test]
fn build_lexicon_drops_flagged_terms() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "el.tsv");
    let o = econlex(&[
        "build-lexicon",
        "--annotations",
        &fixture("annotations.csv"),
        "--review-flags",
        &fixture("review_flags.csv"),
        "--out",
        &out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    for gone in ["tight", "volatile", "steady", "fragile"] {
        assert!(!text.lines().any(|l| l.starts_with(&format!("{gone}\t"))), "{gone}");
    }
    assert!(text.lines().any(|l| l.starts_with("robust\t")));
    let report = read_json(&path(dir.path(), "el.report.json"));
    assert_eq!(report["flagged_for_disagreement"], serde_json::json!(["tight", "volatile"]));
}

#[test]
fn candidates_respect_relations_from_config_dir() {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/conllu");
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str, cfg: Option<&Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_econlex"));
        c.args(["candidates", "--conllu"])
            .arg(data.join("gold.conllu"))
            .arg("--concepts")
            .arg(data.join("concepts.txt"))
            .args(["--min-count", "1", "--out", out]);
        match cfg {
            Some(p) => c.env("ECONLEX_CONFIG_DIR", p),
            None => c.env_remove("ECONLEX_CONFIG_DIR"),
        };
        let o = c.output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(out).unwrap()
    };
    let default = run(&path(dir.path(), "a.tsv"), None);
    assert!(default.lines().any(|l| l.starts_with("sharply\t")));

    let cfg = tempfile::tempdir().unwrap();
    std::fs::write(cfg.path().join("relations.toml"), "head_children = []\ngovernor_children = []\n").unwrap();
    let narrow = run(&path(dir.path(), "b.tsv"), Some(cfg.path()));
    assert!(!narrow.lines().any(|l| l.starts_with("sharply\t")));
    assert!(narrow.lines().count() < default.lines().count());
}

#[test]
fn score_and_decompose_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = ["--corpus", &fixture("corpus.jsonl"), "--concepts", &fixture("concepts.txt")].map(String::from);
    let scores = path(dir.path(), "s.csv");
    let (lmd, el) = (fixture("lmd.tsv"), fixture("el.tsv"));
    let mut args: Vec<&str> = vec!["score"];
    args.extend(corpus.iter().map(String::as_str));
    args.extend(["--lexicon", &lmd, "--out", &scores]);
    assert!(econlex(&args).status.success());
    let text = std::fs::read_to_string(&scores).unwrap();
    assert!(text.starts_with("sentence_ref,date,pos_count,neg_count,count_score,sum_score\n"));

    let dec = path(dir.path(), "d.csv");
    let mut args: Vec<&str> = vec!["decompose"];
    args.extend(corpus.iter().map(String::as_str));
    args.extend(["--lexicon", &lmd, "--reference", &el, "--out", &dec]);
    let o = econlex(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&dec).unwrap();
    assert_eq!(text.lines().count(), 145);
    assert!(!text.contains("-0.0,"));
}

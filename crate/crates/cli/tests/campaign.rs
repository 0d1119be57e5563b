use std::path::Path;
use std::process::Command;

use hitchin_cli::{replay, run, trial_seed, CampaignConfig, CampaignReport, ExperimentName};

const BIN: &str = env!("CARGO_BIN_EXE_hitchin");

fn config_json(experiments: &str, precision: usize) -> String {
    format!(
        r#"{{"schema":"hitchin-campaign/1","field":{{"p":101}},"precision":{precision},
        "parabolic":{{"genus":2,"rank":3,"degree":1,"points":[{{"levi":[2,1]}}]}},
        "experiments":[{experiments}]}}"#
    )
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run_bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn census_only_config_reports_census() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", &config_json("", 8));
    let (code, stdout, _) = run_bin(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: CampaignReport = serde_json::from_str(&stdout).unwrap();
    assert!(report.experiments.is_empty());
    assert!(report.all_passed);
    assert_eq!(report.census.dim_higgs, 2 * report.census.dim_parabolic_base);
}

#[test]
fn valuation_campaign_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        &config_json(r#"{"name":"valuation_bounds","trials":100,"seed":7,"levi":[2,1]}"#, 8),
    );
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let (code, _, stderr) = run_bin(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--jobs", "2"]);
        assert_eq!(code, 0, "{stderr}");
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let report: CampaignReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.experiments[0].trials, 100);
    assert_eq!(report.experiments[0].passes, 100);
}

#[test]
fn thread_count_does_not_change_report() {
    let cfg = CampaignConfig::from_json(&config_json(
        r#"{"name":"decomposition","trials":6,"seed":3},{"name":"census_identities","trials":20,"seed":4}"#,
        10,
    ))
    .unwrap();
    let one = run(&cfg, 1).unwrap();
    let three = run(&cfg, 3).unwrap();
    assert_eq!(one, three);
    assert!(one.all_passed);
}

#[test]
fn failing_trials_replay_and_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let json = config_json(r#"{"name":"decomposition","trials":3,"seed":11}"#, 1);
    let cfg = write(dir.path(), "c.json", &json);
    let (code, stdout, _) = run_bin(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: CampaignReport = serde_json::from_str(&stdout).unwrap();
    assert!(!report.all_passed);
    let failure = &report.experiments[0].failures[0];
    assert_eq!(failure.seed, trial_seed(11, failure.trial));
    let config = CampaignConfig::from_json(&json).unwrap();
    assert_eq!(replay(&config, 0, failure.trial, failure.seed).as_ref(), Some(failure));
    assert_eq!(report.experiments[0].name, ExperimentName::Decomposition);
}

#[test]
fn table_format_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", &config_json(r#"{"name":"jordan_type","trials":5,"seed":1}"#, 8));
    let (code, stdout, _) = run_bin(&["--config", cfg.to_str().unwrap(), "--format", "table", "--seed", "99"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("dim_parabolic_base"));
    assert!(stdout.contains("jordan_type"));
    assert!(stdout.trim_end().ends_with("result: PASS"));
    let (_, json, _) = run_bin(&["--config", cfg.to_str().unwrap(), "--seed", "99"]);
    let report: CampaignReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.experiments[0].base_seed, 99);
}

#[test]
fn bad_configs_exit_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &config_json("", 8).replace("\"p\":101", "\"p\":100"));
    let (code, _, stderr) = run_bin(&["--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
    let (code, _, _) = run_bin(&["--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

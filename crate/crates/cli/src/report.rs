//! Campaign reports and their table rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use hitchin_core::census::CensusReport;
use hitchin_core::combinatorics::LeviType;

use crate::config::{CampaignConfig, ExperimentName};
use crate::experiments::FailureRecord;

pub const REPORT_SCHEMA: &str = "hitchin-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: ExperimentName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<LeviType>,
    pub base_seed: u64,
    pub trials: u64,
    pub passes: u64,
    pub failures: Vec<FailureRecord>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema: String,
    pub tool_version: String,
    pub config: CampaignConfig,
    pub census: CensusReport,
    pub experiments: Vec<ExperimentReport>,
    pub all_passed: bool,
}

/// Plain-text rendering: census values, then one row per experiment, then
/// one row per failing trial.
pub fn report_human(report: &CampaignReport) -> String {
    let mut out = String::new();
    let c = &report.census;
    let _ = writeln!(out, "census (g = {}, r = {}, d = {}, {} marked points)", c.genus, c.rank, c.degree, c.marked_points);
    let rows: [(&str, String); 16] = [
        ("par_degree", c.par_degree.to_string()),
        ("par_slope", c.par_slope.to_string()),
        ("dim_moduli", c.dim_moduli.to_string()),
        ("dim_higgs", c.dim_higgs.to_string()),
        ("dim_higgs_weak", c.dim_higgs_weak.to_string()),
        ("dim_hitchin_base", c.dim_hitchin_base.to_string()),
        ("dim_parabolic_base", c.dim_parabolic_base.to_string()),
        ("genus_spectral", c.genus_spectral.to_string()),
        ("genus_normalized", c.genus_normalized.to_string()),
        ("local_delta", c.local_delta.to_string()),
        ("bnr_degree", c.bnr_degree.to_string()),
        ("weak_fiber_components", c.weak_fiber_components.to_string()),
        ("nilpotent_cone_dim", c.nilpotent_cone_dim.to_string()),
        ("weak_nilpotent_cone_dim", c.weak_nilpotent_cone_dim.to_string()),
        ("sl_variant_base_dim", c.sl_variant_base_dim.to_string()),
        (
            "identities",
            format!(
                "{}/{} hold",
                c.identities.iter().filter(|i| i.holds).count(),
                c.identities.len()
            ),
        ),
    ];
    for (name, value) in rows {
        let _ = writeln!(out, "  {name:<24} {value}");
    }
    for e in &c.extensions {
        let _ = writeln!(out, "  extension: {e}");
    }
    if !report.experiments.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<20} {:<14} {:>8} {:>8} {:>8}", "experiment", "levi", "trials", "passes", "failures");
        for e in &report.experiments {
            let levi = e.levi.as_ref().map_or("-".to_string(), ToString::to_string);
            let _ = writeln!(
                out,
                "{:<20} {:<14} {:>8} {:>8} {:>8}",
                e.name.as_str(),
                levi,
                e.trials,
                e.passes,
                e.failures.len()
            );
        }
        let failures: Vec<_> = report.experiments.iter().flat_map(|e| e.failures.iter().map(move |f| (e, f))).collect();
        if !failures.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "{:<20} {:>6} {:>20} {:<20} message", "experiment", "trial", "seed", "kind");
            for (e, f) in failures {
                let _ = writeln!(out, "{:<20} {:>6} {:>20} {:<20} {}", e.name.as_str(), f.trial, f.seed, f.kind, f.message);
            }
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "result: {}", if report.all_passed { "PASS" } else { "FAIL" });
    out
}

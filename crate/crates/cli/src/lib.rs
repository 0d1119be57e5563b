//! Seeded verification campaigns.
//!
//! A campaign reads a JSON configuration, evaluates the census of the given
//! parabolic data, runs each configured experiment for its number of trials
//! and collects a deterministic report. Trial `i` of an experiment with base
//! seed `s` uses the seed [`trial_seed`]`(s, i)`, so any failure can be replayed
//! on its own with [`replay`].

pub mod config;
pub mod experiments;
pub mod report;

use rayon::prelude::*;

use hitchin_core::census::census;

pub use config::{CampaignConfig, ConfigError, ExperimentName, ExperimentSpec, CONFIG_SCHEMA};
pub use experiments::{run_trial, trial_seed, FailureRecord, Setup};
pub use report::{report_human, CampaignReport, ExperimentReport, REPORT_SCHEMA};

fn setup_for(config: &CampaignConfig, spec: &ExperimentSpec) -> Setup {
    Setup {
        ring: config.ring(),
        genus: config.parabolic.genus(),
        levi: if spec.name.is_local() { config.levi_for(spec) } else { None },
        extension_cap: spec.extension_cap,
        max_resamples: spec.max_resamples,
    }
}

/// Runs a validated campaign on a pool of `jobs` threads.
pub fn run(config: &CampaignConfig, jobs: usize) -> Result<CampaignReport, ConfigError> {
    config.validate()?;
    let census = census(&config.parabolic).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let mut experiments = Vec::with_capacity(config.experiments.len());
    for spec in &config.experiments {
        let setup = setup_for(config, spec);
        let results: Vec<Option<FailureRecord>> = pool.install(|| {
            (0..spec.trials)
                .into_par_iter()
                .map(|i| run_trial(&setup, spec.name, i, trial_seed(spec.seed, i)))
                .collect()
        });
        let failures: Vec<FailureRecord> = results.into_iter().flatten().collect();
        experiments.push(ExperimentReport {
            name: spec.name,
            levi: setup.levi.clone(),
            base_seed: spec.seed,
            trials: spec.trials,
            passes: spec.trials - failures.len() as u64,
            failures,
        });
    }
    let all_passed = census.all_identities_hold() && experiments.iter().all(ExperimentReport::passed);
    Ok(CampaignReport {
        schema: REPORT_SCHEMA.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        census,
        experiments,
        all_passed,
    })
}

/// Re-runs one trial of experiment `experiment` (index into the config's
/// list) with a recorded trial seed.
pub fn replay(config: &CampaignConfig, experiment: usize, trial: u64, seed: u64) -> Option<FailureRecord> {
    let spec = &config.experiments[experiment];
    run_trial(&setup_for(config, spec), spec.name, trial, seed)
}

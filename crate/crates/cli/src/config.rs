//! Campaign configuration.

use std::fmt;

use serde::{Deserialize, Serialize};

use hitchin_core::census::ParabolicData;
use hitchin_core::combinatorics::LeviType;
use hitchin_core::field::{FieldSpec, GaloisField};
use hitchin_core::series_ring::SeriesRing;
use hitchin_core::spectral::DEFAULT_EXTENSION_CAP;

/// Value of the `schema` field this version accepts.
pub const CONFIG_SCHEMA: &str = "hitchin-campaign/1";

pub const DEFAULT_MAX_RESAMPLES: u32 = 100;

/// Names in the experiment registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentName {
    ValuationBounds,
    Decomposition,
    JordanType,
    PolygonProfile,
    BnrRoundtrip,
    DeltaMatch,
    CensusIdentities,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 7] = [
        ExperimentName::ValuationBounds,
        ExperimentName::Decomposition,
        ExperimentName::JordanType,
        ExperimentName::PolygonProfile,
        ExperimentName::BnrRoundtrip,
        ExperimentName::DeltaMatch,
        ExperimentName::CensusIdentities,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentName::ValuationBounds => "valuation_bounds",
            ExperimentName::Decomposition => "decomposition",
            ExperimentName::JordanType => "jordan_type",
            ExperimentName::PolygonProfile => "polygon_profile",
            ExperimentName::BnrRoundtrip => "bnr_roundtrip",
            ExperimentName::DeltaMatch => "delta_match",
            ExperimentName::CensusIdentities => "census_identities",
        }
    }

    /// Whether the experiment works on a flagged lattice.
    pub fn is_local(&self) -> bool {
        !matches!(self, ExperimentName::CensusIdentities)
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn default_max_resamples() -> u32 {
    DEFAULT_MAX_RESAMPLES
}

fn default_extension_cap() -> usize {
    DEFAULT_EXTENSION_CAP
}

/// One experiment of a campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: ExperimentName,
    pub trials: u64,
    pub seed: u64,
    /// Levi type of the local experiments; defaults to the first marked point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<LeviType>,
    #[serde(default = "default_max_resamples")]
    pub max_resamples: u32,
    #[serde(default = "default_extension_cap")]
    pub extension_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub schema: String,
    pub field: FieldSpec,
    pub precision: usize,
    pub parabolic: ParabolicData,
    #[serde(default)]
    pub experiments: Vec<ExperimentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// Configuration errors.
#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
            ConfigError::Parse(e) => write!(f, "malformed config: {e}"),
            ConfigError::Invalid(m) => write!(f, "invalid config: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: CampaignConfig = serde_json::from_str(text).map_err(ConfigError::Parse)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_json(&std::fs::read_to_string(path).map_err(ConfigError::Io)?)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if self.schema != CONFIG_SCHEMA {
            return invalid(format!("schema {:?}, expected {CONFIG_SCHEMA:?}", self.schema));
        }
        let field = GaloisField::from_spec(self.field).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        SeriesRing::new(field, self.precision).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.parabolic
            .check_characteristic(self.field.p)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        for (i, e) in self.experiments.iter().enumerate() {
            if e.trials == 0 {
                return invalid(format!("experiment {i} ({}) has no trials", e.name));
            }
            if e.name.is_local() {
                match self.levi_for(e) {
                    None => return invalid(format!("experiment {i} ({}) needs a Levi type", e.name)),
                    Some(l) if l.rank() != self.parabolic.rank() => {
                        return invalid(format!("experiment {i}: Levi type {l} does not have rank {}", self.parabolic.rank()))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    /// Levi type used by a local experiment.
    pub fn levi_for(&self, e: &ExperimentSpec) -> Option<LeviType> {
        e.levi.clone().or_else(|| self.parabolic.points().first().map(|p| p.levi().clone()))
    }

    pub fn ring(&self) -> SeriesRing {
        let field = GaloisField::from_spec(self.field).expect("validated field");
        SeriesRing::new(field, self.precision).expect("validated precision")
    }
}

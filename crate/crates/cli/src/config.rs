//! JSON scenario configuration.
//!
//! Every block is optional and falls back to defaults; unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use truthcoupling::MixingMode;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub base_seed: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub model: Option<ModelBlock>,
    pub effort: Option<EffortBlock>,
    pub pareto: Option<ParetoBlock>,
    pub fields: Option<Vec<FieldBlock>>,
    pub policy: Option<PolicyBlock>,
    pub sim: Option<SimBlock>,
    pub phase: Option<PhaseBlock>,
    pub estimate: Option<EstimateBlock>,
    /// Directory of the config file; relative input paths resolve against it.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: ScenarioConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        match &self.base_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }
}

/// Mixing interpretation as spelled in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    LinearShrinkage,
    BernoulliMixture,
}

impl From<ModeName> for MixingMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::LinearShrinkage => MixingMode::LinearShrinkage,
            ModeName::BernoulliMixture => MixingMode::BernoulliMixture,
        }
    }
}

fn both_modes() -> Vec<ModeName> {
    vec![ModeName::LinearShrinkage, ModeName::BernoulliMixture]
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PressureBlock {
    pub claim_rate: f64,
    pub raw_cost: f64,
    #[serde(default = "one")]
    pub fidelity: f64,
    pub bandwidth: f64,
}

/// `q` is given directly or derived from `pressure`, never both.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    #[serde(default = "one")]
    pub var_t: f64,
    pub var_delta: f64,
    pub q: Option<f64>,
    pub pressure: Option<PressureBlock>,
}

impl Default for ModelBlock {
    fn default() -> Self {
        Self {
            var_t: 1.0,
            var_delta: 5.0,
            q: Some(0.5),
            pressure: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimBlock {
    #[serde(default = "SimBlock::default_reps")]
    pub replications: usize,
    #[serde(default = "SimBlock::default_samples")]
    pub samples_per_rep: usize,
    #[serde(default = "both_modes")]
    pub modes: Vec<ModeName>,
}

impl SimBlock {
    fn default_reps() -> usize {
        50
    }

    fn default_samples() -> usize {
        20_000
    }
}

impl Default for SimBlock {
    fn default() -> Self {
        Self {
            replications: Self::default_reps(),
            samples_per_rep: Self::default_samples(),
            modes: both_modes(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum FamilyBlock {
    Log { a: f64, b: f64 },
    Power { scale: f64, exponent: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffortBlock {
    pub family: FamilyBlock,
    pub gamma: f64,
    /// Explicit verification rates; otherwise `q_points` evenly spaced rates on `[0, 1]`.
    pub q_grid: Option<Vec<f64>>,
    pub q_points: Option<usize>,
}

impl Default for EffortBlock {
    fn default() -> Self {
        Self {
            family: FamilyBlock::Log { a: 1.0, b: 1.0 },
            gamma: 2.0,
            q_grid: None,
            q_points: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParetoBlock {
    #[serde(default = "one")]
    pub x_min: f64,
    pub alpha: f64,
    #[serde(default = "one")]
    pub k0: f64,
    pub beta: f64,
    #[serde(default = "ParetoBlock::default_lambdas")]
    pub lambdas: Vec<f64>,
    #[serde(default = "ParetoBlock::default_draws")]
    pub n_draws: usize,
}

impl ParetoBlock {
    fn default_lambdas() -> Vec<f64> {
        vec![1.0, 2.0, 5.0, 10.0, 20.0, 40.0]
    }

    fn default_draws() -> usize {
        100_000
    }
}

impl Default for ParetoBlock {
    fn default() -> Self {
        Self {
            x_min: 1.0,
            alpha: 2.5,
            k0: 1.0,
            beta: 0.1,
            lambdas: Self::default_lambdas(),
            n_draws: Self::default_draws(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    pub name: String,
    pub q: f64,
    pub r_c: f64,
    #[serde(default = "one")]
    pub s: f64,
    #[serde(default)]
    pub mu: f64,
}

/// The two-field comparison: a weakly verified field with five times the citation scale.
pub fn default_fields() -> Vec<FieldBlock> {
    vec![
        FieldBlock {
            name: "A".into(),
            q: 0.1,
            r_c: 100.0,
            s: 5.0,
            mu: 0.0,
        },
        FieldBlock {
            name: "B".into(),
            q: 0.5,
            r_c: 5.0,
            s: 1.0,
            mu: 0.0,
        },
    ]
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyBlock {
    #[serde(default = "PolicyBlock::default_r")]
    pub r: Vec<f64>,
    #[serde(default = "PolicyBlock::default_cost")]
    pub lambda_cost: Vec<f64>,
    #[serde(default = "one")]
    pub unit_cost: f64,
    #[serde(default = "PolicyBlock::default_modes")]
    pub modes: Vec<ModeName>,
}

impl PolicyBlock {
    fn default_r() -> Vec<f64> {
        vec![5.0]
    }

    fn default_cost() -> Vec<f64> {
        vec![0.1]
    }

    fn default_modes() -> Vec<ModeName> {
        vec![ModeName::LinearShrinkage]
    }
}

impl Default for PolicyBlock {
    fn default() -> Self {
        Self {
            r: Self::default_r(),
            lambda_cost: Self::default_cost(),
            unit_cost: 1.0,
            modes: Self::default_modes(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseBlock {
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub lambda_points: Option<usize>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub r_points: Option<usize>,
    pub contour_levels: Option<Vec<f64>>,
    pub contour_lambdas: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VenueBlock {
    pub claim_rate: f64,
    pub reviewer_hours: f64,
    pub mean_check_cost: f64,
    #[serde(default = "one")]
    pub fidelity: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateBlock {
    pub audit_csv: Option<PathBuf>,
    pub headroom_csv: Option<PathBuf>,
    pub window: Option<usize>,
    pub venue: Option<VenueBlock>,
}

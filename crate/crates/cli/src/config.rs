//! Flat run configuration shared by every subcommand.
//!
//! JSON config files use exactly these keys; command-line flags override
//! file values field by field, and the fully resolved configuration is
//! embedded in every output file so a run can be repeated from its artifacts.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qcosmo::ansatz::{AnsatzSpec, Entanglement};
use qcosmo::models::{published_instance, Basis, ModelKind, ModelSpec};
use qcosmo::spsa::SpsaConfig;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: String,
    /// Grid points per minisuperspace dimension, a power of two.
    pub num_points: usize,
    /// Grid spacing; omitted means `sqrt(2 pi) / num_points`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    pub offset: f64,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_tilde: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<f64>,
    pub lapse: f64,
    /// Fill unset physical parameters from the published set for the model.
    pub paper_params: bool,
    pub basis: String,
    pub prune_threshold: f64,
    pub depth: usize,
    pub entanglement: String,
    pub iterations: usize,
    pub spsa_a: f64,
    pub spsa_c: f64,
    pub spsa_alpha: f64,
    pub spsa_gamma: f64,
    /// Stability constant; omitted means `0.01 * iterations`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spsa_stability: Option<f64>,
    pub calibrate: bool,
    pub trials: usize,
    pub seed: u64,
    pub zero_threshold: f64,
    /// Output directory. Accepted in config files but never embedded in
    /// outputs, so artifacts stay byte-identical across locations.
    #[serde(skip_serializing)]
    pub out_dir: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: "oscillator1d".to_string(),
            num_points: 4,
            spacing: None,
            offset: 0.0,
            epsilon: 1e-4,
            lambda: None,
            gamma: None,
            beta_tilde: None,
            curvature: None,
            lapse: 1.0,
            paper_params: false,
            basis: "table".to_string(),
            prune_threshold: 1e-10,
            depth: 3,
            entanglement: "full".to_string(),
            iterations: 1000,
            spsa_a: 0.2,
            spsa_c: 0.1,
            spsa_alpha: 0.602,
            spsa_gamma: 0.101,
            spsa_stability: None,
            calibrate: true,
            trials: 10,
            seed: 42,
            zero_threshold: 1e-3,
            out_dir: None,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn model_kind(&self) -> Result<ModelKind, CliError> {
        self.model.parse().map_err(|_| {
            let names: Vec<&str> = ModelKind::ALL.iter().map(|k| k.name()).collect();
            CliError::Config(format!(
                "unknown model '{}'; valid kinds: {}",
                self.model,
                names.join(", ")
            ))
        })
    }

    /// Applies grid, basis, and scale conventions onto a spec, validating
    /// the raw string and integer fields as it goes.
    pub fn apply_conventions(&self, spec: &mut ModelSpec) -> Result<(), CliError> {
        if self.num_points < 2 || !self.num_points.is_power_of_two() {
            return Err(CliError::Config(format!(
                "num_points must be a power of two >= 2, got {}",
                self.num_points
            )));
        }
        let basis: Basis = self.basis.parse().map_err(|_| {
            CliError::Config(format!(
                "unknown basis '{}', expected 'table' or 'plain'",
                self.basis
            ))
        })?;
        spec.qubits_per_dim = self.num_points.trailing_zeros() as usize;
        spec.spacing = self.spacing;
        spec.offset = self.offset;
        spec.basis = basis;
        spec.prune_threshold = self.prune_threshold;
        spec.params.epsilon = self.epsilon;
        spec.params.lapse = self.lapse;
        Ok(())
    }

    /// Copies explicitly set physical parameters onto a spec.
    pub fn apply_params(&self, spec: &mut ModelSpec) {
        if let Some(v) = self.lambda {
            spec.params.lambda = Some(v);
        }
        if let Some(v) = self.gamma {
            spec.params.gamma = Some(v);
        }
        if let Some(v) = self.beta_tilde {
            spec.params.beta_tilde = Some(v);
        }
        if let Some(v) = self.curvature {
            spec.params.curvature = Some(v);
        }
    }

    /// Resolves the full model spec: conventions, explicit parameters, and
    /// the published fill-ins when `paper_params` is set.
    pub fn model_spec(&self) -> Result<ModelSpec, CliError> {
        let kind = self.model_kind()?;
        let mut spec = ModelSpec::new(kind);
        self.apply_conventions(&mut spec)?;
        self.apply_params(&mut spec);
        if self.paper_params {
            let published = published_instance(kind).map_err(|_| {
                CliError::Config(format!(
                    "paper_params: no published parameter set for model '{kind}'"
                ))
            })?;
            let params = &mut spec.params;
            params.lambda = params.lambda.or(published.params.lambda);
            params.gamma = params.gamma.or(published.params.gamma);
            params.beta_tilde = params.beta_tilde.or(published.params.beta_tilde);
            params.curvature = params.curvature.or(published.params.curvature);
        }
        Ok(spec)
    }

    pub fn ansatz_spec(&self, num_qubits: usize) -> Result<AnsatzSpec, CliError> {
        let entanglement = match self.entanglement.as_str() {
            "full" => Entanglement::Full,
            "linear" => Entanglement::Linear,
            other => {
                return Err(CliError::Config(format!(
                    "unknown entanglement '{other}', expected 'full' or 'linear'"
                )))
            }
        };
        Ok(AnsatzSpec {
            num_qubits,
            depth: self.depth,
            entanglement,
        })
    }

    pub fn spsa_config(&self) -> Result<SpsaConfig, CliError> {
        if self.iterations == 0 {
            return Err(CliError::Config("iterations must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        let mut config = SpsaConfig::with_max_iterations(self.iterations, self.seed);
        config.a = self.spsa_a;
        config.c = self.spsa_c;
        config.alpha = self.spsa_alpha;
        config.gamma = self.spsa_gamma;
        if let Some(stability) = self.spsa_stability {
            config.stability = stability;
        }
        config.calibrate = self.calibrate;
        Ok(config)
    }

    pub fn resolved_out_dir(&self) -> PathBuf {
        if let Some(dir) = &self.out_dir {
            return PathBuf::from(dir);
        }
        if let Ok(dir) = env::var("QCOSMO_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        PathBuf::from(".")
    }
}

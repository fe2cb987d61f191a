//! Variational eigensolver loop: bind the ansatz, simulate the circuit, read
//! the energy expectation, and drive it down with the stochastic optimizer
//! across independent trials. Aggregates are compared against the in-repo
//! exact eigensolver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

use crate::ansatz::{self, AnsatzSpec, AnsatzTemplate};
use crate::eigensolver::eigh;
use crate::models::{self, Conventions, ModelKind, ModelParams, ModelSpec, PublishedReference};
use crate::pauli::{reconstruct, PauliSum};
use crate::simulator::{expectation, run};
use crate::spsa::{minimize, SpsaConfig, TracePoint};
use crate::{Error, Result};

/// One independent optimization restart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    /// Best energy this trial evaluated.
    pub energy: f64,
    /// Parameters behind `energy`.
    pub theta: Vec<f64>,
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
}

/// Aggregate over all trials plus the exact-solver comparison.
///
/// The reported spread is the sample standard deviation of per-trial best
/// energies, zero when only one trial ran.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub energy_mean: f64,
    pub energy_std: f64,
    pub best_energy: f64,
    pub best_theta: Vec<f64>,
    pub best_trial: usize,
    pub trials: Vec<TrialResult>,
    /// Minimum eigenvalue from the exact eigensolver.
    pub exact_min: f64,
    /// Eigenvalue closest to zero, the constraint-equation reading.
    pub exact_nearest_zero: f64,
    pub master_seed: u64,
    pub ansatz: AnsatzSpec,
    /// Optimizer settings shared by all trials; each trial replaces the seed
    /// with one derived from `master_seed`.
    pub optimizer: SpsaConfig,
}

/// Energy expectation of the bound ansatz state.
pub fn energy(template: &AnsatzTemplate, theta: &[f64], hamiltonian: &PauliSum) -> Result<f64> {
    let circuit = template.bind(theta)?;
    let state = run(&circuit)?;
    expectation(&state, hamiltonian)
}

/// Runs `num_trials` independent VQE restarts and aggregates them.
///
/// Trial seeds derive deterministically from `master_seed`; each trial draws
/// its starting angles uniformly from `[-pi, pi)` and then minimizes. Trials
/// execute in parallel but the result is ordered by trial index, so identical
/// inputs reproduce identical output regardless of scheduling.
pub fn run_vqe(
    hamiltonian: &PauliSum,
    ansatz_spec: &AnsatzSpec,
    optimizer: &SpsaConfig,
    num_trials: usize,
    master_seed: u64,
) -> Result<VqeResult> {
    if num_trials == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if hamiltonian.num_qubits() != ansatz_spec.num_qubits {
        return Err(Error::QubitMismatch {
            left: hamiltonian.num_qubits(),
            right: ansatz_spec.num_qubits,
        });
    }
    let template = ansatz::build(ansatz_spec)?;

    let mut master = ChaCha8Rng::seed_from_u64(master_seed);
    let trial_seeds: Vec<u64> = (0..num_trials).map(|_| master.gen()).collect();

    let trials = trial_seeds
        .par_iter()
        .enumerate()
        .map(|(index, &seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let theta0: Vec<f64> = (0..template.parameter_count())
                .map(|_| rng.gen_range(-PI..PI))
                .collect();
            let config = SpsaConfig {
                seed: rng.gen::<u64>(),
                ..*optimizer
            };
            let objective =
                |theta: &[f64]| energy(&template, theta, hamiltonian).unwrap_or(f64::NAN);
            let outcome = minimize(objective, &theta0, &config)?;
            Ok(TrialResult {
                trial: index,
                seed,
                energy: outcome.objective,
                theta: outcome.theta,
                evaluations: outcome.evaluations,
                trace: outcome.trace,
            })
        })
        .collect::<Result<Vec<TrialResult>>>()?;

    let mean = trials.iter().map(|t| t.energy).sum::<f64>() / trials.len() as f64;
    let std = if trials.len() > 1 {
        let ss: f64 = trials
            .iter()
            .map(|t| (t.energy - mean) * (t.energy - mean))
            .sum();
        (ss / (trials.len() - 1) as f64).sqrt()
    } else {
        0.0
    };
    let best_trial = trials
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.energy.total_cmp(&b.1.energy))
        .map(|(i, _)| i)
        .expect("at least one trial");

    let eig = eigh(&reconstruct(hamiltonian))?;
    let exact_min = eig.eigenvalues[0];
    let exact_nearest_zero = eig.eigenvalues[eig.nearest_zero_index()];

    Ok(VqeResult {
        energy_mean: mean,
        energy_std: std,
        best_energy: trials[best_trial].energy,
        best_theta: trials[best_trial].theta.clone(),
        best_trial,
        trials,
        exact_min,
        exact_nearest_zero,
        master_seed,
        ansatz: *ansatz_spec,
        optimizer: *optimizer,
    })
}

/// One model's row of the study: exact spectrum endpoints, variational
/// estimate, constraint verdict, and the published energies when they exist.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub model: ModelKind,
    pub conventions: Conventions,
    pub params: ModelParams,
    pub pauli_terms: usize,
    pub exact_min: f64,
    pub exact_nearest_zero: f64,
    /// Whether `|exact_nearest_zero| < zero_threshold`.
    pub constraint_compatible: bool,
    pub zero_threshold: f64,
    pub vqe_mean: f64,
    pub vqe_std: f64,
    pub vqe_best: f64,
    pub trials: usize,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<PublishedReference>,
    pub wall_ms: u64,
}

/// Builds a model, solves it both ways, and assembles the comparison row.
pub fn wheeler_dewitt_report(
    spec: &ModelSpec,
    ansatz_spec: &AnsatzSpec,
    optimizer: &SpsaConfig,
    num_trials: usize,
    master_seed: u64,
    zero_threshold: f64,
) -> Result<ReportRecord> {
    let start = Instant::now();
    let built = models::build(spec)?;
    let vqe = run_vqe(
        &built.hamiltonian,
        ansatz_spec,
        optimizer,
        num_trials,
        master_seed,
    )?;
    Ok(ReportRecord {
        model: spec.kind,
        conventions: built.conventions,
        params: spec.params,
        pauli_terms: built.hamiltonian.len(),
        exact_min: vqe.exact_min,
        exact_nearest_zero: vqe.exact_nearest_zero,
        constraint_compatible: vqe.exact_nearest_zero.abs() < zero_threshold,
        zero_threshold,
        vqe_mean: vqe.energy_mean,
        vqe_std: vqe.energy_std,
        vqe_best: vqe.best_energy,
        trials: num_trials,
        iterations: optimizer.max_iterations,
        published: models::published_reference(spec.kind),
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

//! Simultaneous perturbation stochastic approximation.
//!
//! Each iteration estimates the full gradient from two objective evaluations
//! at symmetric random perturbations:
//!
//! 1. draw a Rademacher direction `delta` with entries +1 or -1,
//! 2. form `ghat_i = (f(theta + c_k delta) - f(theta - c_k delta)) / (2 c_k delta_i)`,
//! 3. step `theta <- theta - a_k ghat`,
//!
//! with gain schedules `a_k = a / (k + 1 + A)^alpha` and
//! `c_k = c / (k + 1)^gamma`. The returned iterate is the best objective
//! value actually evaluated, not necessarily the final one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Gain schedule and bookkeeping knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpsaConfig {
    pub max_iterations: usize,
    /// Step gain used directly when `calibrate` is false.
    pub a: f64,
    /// Perturbation size at the first iteration.
    pub c: f64,
    /// Step gain decay exponent.
    pub alpha: f64,
    /// Perturbation decay exponent.
    pub gamma: f64,
    /// Stability constant added to the iteration index in `a_k`.
    pub stability: f64,
    /// Derive `a` from probe gradients before iterating.
    pub calibrate: bool,
    /// First-step parameter change the calibration aims for.
    pub target_update: f64,
    pub seed: u64,
    /// Cadence of midpoint evaluations used for best tracking, trace
    /// snapshots included.
    pub eval_interval: usize,
}

impl SpsaConfig {
    /// Defaults tuned for the variational runs in this crate.
    pub fn new(seed: u64) -> Self {
        Self::with_max_iterations(1000, seed)
    }

    /// Defaults with an explicit iteration budget; the stability constant
    /// scales with it.
    pub fn with_max_iterations(max_iterations: usize, seed: u64) -> Self {
        Self {
            max_iterations,
            a: 0.2,
            c: 0.1,
            alpha: 0.602,
            gamma: 0.101,
            stability: 0.01 * max_iterations as f64,
            calibrate: true,
            target_update: 2.0 * std::f64::consts::PI / 10.0,
            seed,
            eval_interval: 10,
        }
    }

    fn step_gain(&self, a: f64, k: usize) -> f64 {
        a / (k as f64 + 1.0 + self.stability).powf(self.alpha)
    }

    fn perturbation(&self, k: usize) -> f64 {
        self.c / (k as f64 + 1.0).powf(self.gamma)
    }
}

/// One objective reading along the optimization path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    /// Mean of the two perturbed evaluations at this iteration.
    pub energy: f64,
    /// Parameter snapshot, recorded every `eval_interval` iterations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<f64>>,
}

/// Outcome of a minimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpsaResult {
    /// Parameters with the lowest objective value seen.
    pub theta: Vec<f64>,
    /// Objective at `theta`.
    pub objective: f64,
    /// Step gain actually used after any calibration.
    pub step_gain: f64,
    /// Total objective evaluations spent.
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
}

fn rademacher(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect()
}

fn check_finite(value: f64, iteration: usize) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteObjective { iteration })
    }
}

/// Two-sided gradient estimate along one Rademacher direction.
fn gradient_estimate<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    theta: &[f64],
    ck: f64,
    delta: &[f64],
    iteration: usize,
) -> Result<(Vec<f64>, f64, f64)> {
    let plus: Vec<f64> = theta.iter().zip(delta).map(|(t, d)| t + ck * d).collect();
    let minus: Vec<f64> = theta.iter().zip(delta).map(|(t, d)| t - ck * d).collect();
    let fplus = check_finite(f(&plus), iteration)?;
    let fminus = check_finite(f(&minus), iteration)?;
    let scale = (fplus - fminus) / (2.0 * ck);
    let ghat = delta.iter().map(|d| scale / d).collect();
    Ok((ghat, fplus, fminus))
}

/// Chooses the step gain `a` so the mean first-step magnitude over 25 probe
/// perturbations equals `target_update`. Errors with [`Error::ZeroGradientRegion`]
/// when every probe sees a flat objective.
pub fn calibrate_step<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    theta0: &[f64],
    config: &SpsaConfig,
) -> Result<f64> {
    const PROBES: usize = 25;
    let mut rng = probe_rng(config.seed);
    let c0 = config.perturbation(0);
    let dim = theta0.len();
    let mut mean_norm = 0.0;
    for _ in 0..PROBES {
        let delta = rademacher(&mut rng, dim);
        let (ghat, _, _) = gradient_estimate(f, theta0, c0, &delta, 0)?;
        let norm: f64 = ghat.iter().map(|g| g * g).sum::<f64>().sqrt();
        mean_norm += norm / PROBES as f64;
    }
    if mean_norm == 0.0 {
        return Err(Error::ZeroGradientRegion);
    }
    Ok(config.target_update * (1.0 + config.stability).powf(config.alpha) / mean_norm)
}

fn probe_rng(seed: u64) -> ChaCha8Rng {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let probe_seed = master.gen::<u64>();
    ChaCha8Rng::seed_from_u64(probe_seed)
}

fn iteration_rng(seed: u64) -> ChaCha8Rng {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let _ = master.gen::<u64>();
    let iter_seed = master.gen::<u64>();
    ChaCha8Rng::seed_from_u64(iter_seed)
}

/// Minimizes `f` from `theta0`.
///
/// With `calibrate` set, a flat objective at the starting point falls back to
/// the configured `a` instead of failing; the gradient loop then leaves the
/// parameters untouched, which is the correct fixed point for a constant
/// objective.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    theta0: &[f64],
    config: &SpsaConfig,
) -> Result<SpsaResult> {
    let dim = theta0.len();
    let mut evaluations = 0usize;

    let mut theta = theta0.to_vec();
    evaluations += 1;
    let mut best_value = check_finite(f(&theta), 0)?;
    let mut best_theta = theta.clone();

    let a = if config.calibrate {
        let calibrated = calibrate_step(&mut f, theta0, config);
        evaluations += 50;
        match calibrated {
            Ok(value) => value,
            Err(Error::ZeroGradientRegion) => config.a,
            Err(other) => return Err(other),
        }
    } else {
        config.a
    };

    let mut rng = iteration_rng(config.seed);
    let mut trace = Vec::with_capacity(config.max_iterations);
    for k in 0..config.max_iterations {
        let ck = config.perturbation(k);
        let ak = config.step_gain(a, k);
        let delta = rademacher(&mut rng, dim);
        let (ghat, fplus, fminus) = gradient_estimate(&mut f, &theta, ck, &delta, k)?;
        evaluations += 2;
        for (t, g) in theta.iter_mut().zip(&ghat) {
            *t -= ak * g;
        }

        let snapshot = (k + 1) % config.eval_interval == 0;
        if snapshot {
            evaluations += 1;
            let mid = check_finite(f(&theta), k)?;
            if mid < best_value {
                best_value = mid;
                best_theta = theta.clone();
            }
        }
        trace.push(TracePoint {
            iteration: k,
            energy: 0.5 * (fplus + fminus),
            theta: snapshot.then(|| theta.clone()),
        });
    }

    evaluations += 1;
    let final_value = check_finite(f(&theta), config.max_iterations)?;
    if final_value < best_value {
        best_value = final_value;
        best_theta = theta;
    }

    Ok(SpsaResult {
        theta: best_theta,
        objective: best_value,
        step_gain: a,
        evaluations,
        trace,
    })
}

//! Minisuperspace model library.
//!
//! Every model is assembled from grid operators: coordinates become real
//! diagonal matrices, momenta are their Fourier conjugations, and the
//! two-dimensional models live on a tensor product of two grid slots with
//! slot 0 as the most significant index block. [`build`] returns the dense
//! matrix together with its Pauli decomposition and a record of every
//! convention that shaped them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::grid::{default_spacing, function_of_position, momentum_operator, Grid};
use crate::matrix::OperatorMatrix;
use crate::pauli::{decompose, PauliSum, DEFAULT_PRUNE_THRESHOLD};
use crate::{Error, Result};

/// Statement of the index convention recorded in every output.
pub const QUBIT_ORDER: &str = "qubit 0 is the most significant bit of the basis index";

/// Basis convention applied to the assembled matrix before decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Conjugates each grid slot by the diagonal phase gauge
    /// `diag(exp(i 2 pi j / N))`, matching the sign pattern of the published
    /// decomposition tables.
    Table,
    /// Leaves the assembled operator untouched. Centered grids then yield
    /// real symmetric matrices whose ground states have real amplitudes,
    /// the form a rotation-only ansatz can reach.
    Plain,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Table => "table",
            Basis::Plain => "plain",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Basis::Table),
            "plain" => Ok(Basis::Plain),
            other => Err(Error::UnknownBasis(other.to_string())),
        }
    }
}

/// The model catalog: two harmonic-oscillator calibration cases, four
/// cosmological Hamiltonians, and a single-qubit diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    /// One-dimensional harmonic oscillator `(x^2 + p^2) / 2`.
    #[serde(rename = "oscillator1d")]
    Oscillator1d,
    /// Two independent oscillator copies, one per tensor slot.
    #[serde(rename = "oscillator2d")]
    Oscillator2d,
    /// Anisotropic universe with cosmological constant and radiation:
    /// `-p_a^2 + p_b^2 / (a^2 + eps) + (lambda a^4 - a^2 + gamma) + 8 a^2 b^2`
    /// with scale factor `a` on slot 0 and anisotropy `b` on slot 1.
    #[serde(rename = "bianchi-ix")]
    BianchiIx,
    /// Quadratic-curvature model in light-cone style coordinates:
    /// `-p_x^2/4 + p_y^2/4 - (y^2 - x^2)/4 + x^2 (x - y)^2 / (8 beta_tilde)`.
    #[serde(rename = "higher-derivative")]
    HigherDerivative,
    /// Tree-level dilaton-gravity cosmology:
    /// `-p_z^2/12 + p_f^2/16 + 2 lambda exp(-4 f)` with the log scale factor
    /// `z` on slot 0 and the shifted dilaton `f` on slot 1.
    #[serde(rename = "string-dilaton")]
    StringDilaton,
    /// Five-dimensional reduction with a compact extra dimension:
    /// `lapse / (24 pi^2) * (k (q1 - q2) + p1^2 - p2^2)`.
    #[serde(rename = "kaluza-klein")]
    KaluzaKlein,
    /// Single-qubit `Z`, used to exercise solvers end to end.
    #[serde(rename = "z-test")]
    ZTest,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Oscillator1d,
        ModelKind::Oscillator2d,
        ModelKind::BianchiIx,
        ModelKind::HigherDerivative,
        ModelKind::StringDilaton,
        ModelKind::KaluzaKlein,
        ModelKind::ZTest,
    ];

    /// The four models with published parameter sets and reference energies.
    pub const PUBLISHED: [ModelKind; 4] = [
        ModelKind::BianchiIx,
        ModelKind::HigherDerivative,
        ModelKind::StringDilaton,
        ModelKind::KaluzaKlein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Oscillator1d => "oscillator1d",
            ModelKind::Oscillator2d => "oscillator2d",
            ModelKind::BianchiIx => "bianchi-ix",
            ModelKind::HigherDerivative => "higher-derivative",
            ModelKind::StringDilaton => "string-dilaton",
            ModelKind::KaluzaKlein => "kaluza-klein",
            ModelKind::ZTest => "z-test",
        }
    }

    /// Number of minisuperspace coordinates, each carried by one grid slot.
    pub fn dimensions(self) -> usize {
        match self {
            ModelKind::Oscillator1d => 1,
            ModelKind::ZTest => 0,
            _ => 2,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

/// Physical parameters. Each model reads the subset it needs and ignores the
/// rest; `lapse` and `epsilon` always carry their defaults unless overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelParams {
    /// Cosmological constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Radiation density constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Quadratic-curvature coupling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_tilde: Option<f64>,
    /// Curvature constant `k` of the five-dimensional model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<f64>,
    /// Lapse value, an overall scale on the constraint.
    pub lapse: f64,
    /// Regularizer added to `a^2` before inversion.
    pub epsilon: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            lambda: None,
            gamma: None,
            beta_tilde: None,
            curvature: None,
            lapse: 1.0,
            epsilon: 1e-4,
        }
    }
}

fn require(value: Option<f64>, name: &'static str) -> Result<f64> {
    match value {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::MissingParameter(name)),
    }
}

/// Complete recipe for one model instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// Qubits per minisuperspace coordinate; the grid has `2^q` points.
    pub qubits_per_dim: usize,
    /// Grid spacing; `None` selects [`default_spacing`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    pub offset: f64,
    pub basis: Basis,
    pub prune_threshold: f64,
    pub params: ModelParams,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        Self {
            kind,
            qubits_per_dim: 2,
            spacing: None,
            offset: 0.0,
            basis: Basis::Table,
            prune_threshold: DEFAULT_PRUNE_THRESHOLD,
            params: ModelParams::default(),
        }
    }

    pub fn points_per_dim(&self) -> usize {
        1 << self.qubits_per_dim
    }

    pub fn resolved_spacing(&self) -> f64 {
        self.spacing
            .unwrap_or_else(|| default_spacing(self.points_per_dim()))
    }

    pub fn total_qubits(&self) -> usize {
        if self.kind == ModelKind::ZTest {
            1
        } else {
            self.kind.dimensions() * self.qubits_per_dim
        }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.points_per_dim(), self.resolved_spacing(), self.offset)
    }
}

/// Every convention that influenced a build, echoed into all output files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub model: ModelKind,
    pub dimensions: usize,
    pub points_per_dim: usize,
    pub qubits: usize,
    pub spacing: f64,
    pub offset: f64,
    pub basis: Basis,
    pub qubit_order: String,
    pub epsilon: f64,
    pub lapse: f64,
    pub prune_threshold: f64,
}

/// A model realized as a dense matrix and its Pauli decomposition.
#[derive(Debug, Clone)]
pub struct BuiltModel {
    pub matrix: OperatorMatrix,
    pub hamiltonian: PauliSum,
    pub conventions: Conventions,
}

/// Diagonal operator `f(u_j, v_k)` over the two-slot product grid, with the
/// first argument on slot 0.
pub fn product_diagonal<F: Fn(f64, f64) -> f64>(grid: &Grid, f: F) -> Result<OperatorMatrix> {
    let n = grid.num_points();
    let mut values = Vec::with_capacity(n * n);
    for j in 0..n {
        let u = grid.point(j);
        for k in 0..n {
            let v = f(u, grid.point(k));
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { value: v, point: u });
            }
            values.push(v);
        }
    }
    Ok(OperatorMatrix::diagonal(&values))
}

fn slot_phase(j: usize, n: usize) -> Complex64 {
    if (4 * j).is_multiple_of(n) {
        match (4 * j / n) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
    }
}

/// Table-basis gauge: the product of per-slot phases `exp(i 2 pi j / N)`
/// over the full grid index, slot 0 most significant.
pub fn gauge_phases(points_per_slot: usize, slots: usize) -> Vec<Complex64> {
    let total = points_per_slot.pow(slots as u32);
    (0..total)
        .map(|index| {
            let mut phase = Complex64::new(1.0, 0.0);
            let mut rest = index;
            for _ in 0..slots {
                phase *= slot_phase(rest % points_per_slot, points_per_slot);
                rest /= points_per_slot;
            }
            phase
        })
        .collect()
}

fn momentum_squared(grid: &Grid) -> Result<OperatorMatrix> {
    let p = momentum_operator(grid)?;
    p.matmul(&p)
}

fn oscillator_1d(grid: &Grid) -> Result<OperatorMatrix> {
    let x2 = function_of_position(grid, |x| x * x)?;
    let p2 = momentum_squared(grid)?;
    Ok(x2.add(&p2)?.scale(0.5))
}

fn assemble(spec: &ModelSpec, grid: &Grid) -> Result<OperatorMatrix> {
    let id = OperatorMatrix::identity(grid.num_points());
    match spec.kind {
        ModelKind::Oscillator1d => oscillator_1d(grid),
        ModelKind::Oscillator2d => {
            let h = oscillator_1d(grid)?;
            h.kron(&id).add(&id.kron(&h))
        }
        ModelKind::BianchiIx => {
            let lambda = require(spec.params.lambda, "lambda")?;
            let gamma = require(spec.params.gamma, "gamma")?;
            let eps = spec.params.epsilon;
            let p2 = momentum_squared(grid)?;
            let inverse_a2 = function_of_position(grid, |a| 1.0 / (a * a + eps))?;
            let radial = function_of_position(grid, |a| lambda * a.powi(4) - a * a + gamma)?;
            let anisotropy = product_diagonal(grid, |a, b| 8.0 * a * a * b * b)?;
            p2.kron(&id)
                .scale(-1.0)
                .add(&inverse_a2.kron(&p2))?
                .add(&radial.kron(&id))?
                .add(&anisotropy)
        }
        ModelKind::HigherDerivative => {
            let beta_tilde = require(spec.params.beta_tilde, "beta_tilde")?;
            let p2 = momentum_squared(grid)?;
            let kinetic = p2.kron(&id).scale(-0.25).add(&id.kron(&p2).scale(0.25))?;
            let potential = product_diagonal(grid, |x, y| {
                -0.25 * (y * y - x * x) + x * x / (8.0 * beta_tilde) * (x - y) * (x - y)
            })?;
            kinetic.add(&potential)
        }
        ModelKind::StringDilaton => {
            let lambda = require(spec.params.lambda, "lambda")?;
            let p2 = momentum_squared(grid)?;
            let potential = function_of_position(grid, |f| 2.0 * lambda * (-4.0 * f).exp())?;
            p2.kron(&id)
                .scale(-1.0 / 12.0)
                .add(&id.kron(&p2).scale(1.0 / 16.0))?
                .add(&id.kron(&potential))
        }
        ModelKind::KaluzaKlein => {
            let curvature = require(spec.params.curvature, "curvature")?;
            let p2 = momentum_squared(grid)?;
            let tilt = product_diagonal(grid, |q1, q2| curvature * (q1 - q2))?;
            let inner = tilt.add(&p2.kron(&id))?.add(&id.kron(&p2).scale(-1.0))?;
            Ok(inner.scale(spec.params.lapse / (24.0 * PI * PI)))
        }
        ModelKind::ZTest => unreachable!("handled before grid assembly"),
    }
}

/// Builds the model matrix, applies the basis convention, and decomposes it.
pub fn build(spec: &ModelSpec) -> Result<BuiltModel> {
    let matrix = if spec.kind == ModelKind::ZTest {
        OperatorMatrix::diagonal(&[1.0, -1.0])
    } else {
        let grid = spec.grid()?;
        let raw = assemble(spec, &grid)?.hermitized();
        match spec.basis {
            Basis::Plain => raw,
            Basis::Table => {
                let phases = gauge_phases(spec.points_per_dim(), spec.kind.dimensions());
                raw.conjugate_by_diagonal(&phases)?.hermitized()
            }
        }
    };
    let hamiltonian = decompose(&matrix, spec.prune_threshold)?;
    let conventions = Conventions {
        model: spec.kind,
        dimensions: spec.kind.dimensions(),
        points_per_dim: spec.points_per_dim(),
        qubits: spec.total_qubits(),
        spacing: spec.resolved_spacing(),
        offset: spec.offset,
        basis: spec.basis,
        qubit_order: QUBIT_ORDER.to_string(),
        epsilon: spec.params.epsilon,
        lapse: spec.params.lapse,
        prune_threshold: spec.prune_threshold,
    };
    Ok(BuiltModel {
        matrix,
        hamiltonian,
        conventions,
    })
}

/// Spec preloaded with the published parameter set for the four cosmological
/// models, on the default grid conventions.
pub fn published_instance(kind: ModelKind) -> Result<ModelSpec> {
    let mut spec = ModelSpec::new(kind);
    match kind {
        ModelKind::BianchiIx => {
            spec.params.lambda = Some(2.480000000000011);
            spec.params.gamma = Some(0.99);
        }
        ModelKind::HigherDerivative => spec.params.beta_tilde = Some(0.042808219),
        ModelKind::StringDilaton => spec.params.lambda = Some(0.581),
        ModelKind::KaluzaKlein => spec.params.curvature = Some(1e-6),
        _ => return Err(Error::NoPublishedInstance(kind.name().to_string())),
    }
    Ok(spec)
}

/// Energies quoted alongside the published runs: the variational estimate
/// with its spread, and the exact-diagonalization value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedReference {
    pub vqe_energy: f64,
    pub vqe_std: f64,
    pub exact_eigenvalue: f64,
}

pub fn published_reference(kind: ModelKind) -> Option<PublishedReference> {
    match kind {
        ModelKind::BianchiIx => Some(PublishedReference {
            vqe_energy: 0.4829572576220993,
            vqe_std: 0.12032107873580308,
            exact_eigenvalue: 2.0707928270104423e-5,
        }),
        ModelKind::HigherDerivative => Some(PublishedReference {
            vqe_energy: -0.07876069717108591,
            vqe_std: 1.3971389629283328,
            exact_eigenvalue: -1.6494040350599992,
        }),
        ModelKind::StringDilaton => Some(PublishedReference {
            vqe_energy: 0.10669043206316431,
            vqe_std: 0.02731991298884283,
            exact_eigenvalue: 6.159038648121874e-5,
        }),
        ModelKind::KaluzaKlein => Some(PublishedReference {
            vqe_energy: -0.03330932911207404,
            vqe_std: 0.19977149262935648,
            exact_eigenvalue: -1.5714280000014587,
        }),
        _ => None,
    }
}

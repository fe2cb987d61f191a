//! Uniform one-dimensional grids and the operators living on them.
//!
//! A grid with `N = 2^q` points carries the position operator as a real
//! diagonal matrix and the momentum operator as its conjugation by the
//! discrete Fourier transform, so both share one eigenvalue ladder. Products
//! of one-dimensional operators are lifted to multi-dimensional models with
//! [`embed`].

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::matrix::{OperatorMatrix, UnitaryMatrix};
use crate::{Error, Result};

/// Uniform grid of `num_points` sites with spacing `spacing`.
///
/// Site `j` sits at `(j - N/2 + offset) * spacing`, so the default
/// `offset = 0` centers the grid with one site exactly at the origin and
/// `offset = 0.5` straddles the origin symmetrically.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Grid {
    num_points: usize,
    spacing: f64,
    offset: f64,
}

/// Spacing that makes `spacing^2 = 2*pi / N^2`, the scale used by the
/// published decomposition tables.
pub fn default_spacing(num_points: usize) -> f64 {
    (2.0 * PI).sqrt() / num_points as f64
}

impl Grid {
    pub fn new(num_points: usize, spacing: f64, offset: f64) -> Result<Self> {
        if num_points < 2 || !num_points.is_power_of_two() {
            return Err(Error::InvalidGrid {
                reason: format!("num_points must be a power of two >= 2, got {num_points}"),
            });
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidGrid {
                reason: format!("spacing must be finite and positive, got {spacing}"),
            });
        }
        if !offset.is_finite() {
            return Err(Error::InvalidGrid {
                reason: "offset must be finite".to_string(),
            });
        }
        Ok(Self {
            num_points,
            spacing,
            offset,
        })
    }

    /// Grid with the table spacing [`default_spacing`] and zero offset.
    pub fn with_default_spacing(num_points: usize) -> Result<Self> {
        Self::new(num_points, default_spacing(num_points), 0.0)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Qubits needed to index the grid.
    pub fn num_qubits(&self) -> usize {
        self.num_points.trailing_zeros() as usize
    }

    /// Coordinate of site `j`.
    pub fn point(&self, j: usize) -> f64 {
        (j as f64 - self.num_points as f64 / 2.0 + self.offset) * self.spacing
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.num_points).map(|j| self.point(j)).collect()
    }
}

/// Position operator: the real diagonal of grid coordinates.
pub fn position_operator(grid: &Grid) -> OperatorMatrix {
    OperatorMatrix::diagonal(&grid.points())
}

/// Diagonal operator `f(x)` on the grid. Rejects grid points where `f`
/// evaluates to NaN or infinity.
pub fn function_of_position<F: Fn(f64) -> f64>(grid: &Grid, f: F) -> Result<OperatorMatrix> {
    let mut values = Vec::with_capacity(grid.num_points());
    for j in 0..grid.num_points() {
        let x = grid.point(j);
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteValue { value: v, point: x });
        }
        values.push(v);
    }
    Ok(OperatorMatrix::diagonal(&values))
}

/// Discrete Fourier transform `F[j][k] = exp(i 2 pi j k / N) / sqrt(N)`.
pub fn dft_matrix(num_points: usize) -> Result<UnitaryMatrix> {
    if num_points < 2 || !num_points.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { dim: num_points });
    }
    let n = num_points as f64;
    let norm = 1.0 / n.sqrt();
    let mut m = OperatorMatrix::zeros(num_points);
    for j in 0..num_points {
        for k in 0..num_points {
            // Reduce the exponent index modulo N before multiplying so large
            // grids do not lose phase accuracy.
            let t = ((j * k) % num_points) as f64;
            let angle = 2.0 * PI * t / n;
            m.set(j, k, Complex64::from_polar(norm, angle));
        }
    }
    UnitaryMatrix::new(m)
}

/// Momentum operator `p = F^-1 x F`: the position spectrum transplanted onto
/// the Fourier-conjugate basis. Shares the eigenvalue multiset of
/// [`position_operator`].
pub fn momentum_operator(grid: &Grid) -> Result<OperatorMatrix> {
    let f = dft_matrix(grid.num_points())?;
    let x = position_operator(grid);
    Ok(f.conjugate(&x)?.hermitized())
}

/// Lifts `op` onto tensor slot `slot` of `total_slots` identical factors,
/// with slot 0 as the most significant block of the product index.
pub fn embed(op: &OperatorMatrix, slot: usize, total_slots: usize) -> Result<OperatorMatrix> {
    if slot >= total_slots {
        return Err(Error::QubitOutOfRange {
            index: slot,
            num_qubits: total_slots,
        });
    }
    let d = op.dim();
    let left = OperatorMatrix::identity(d.pow(slot as u32));
    let right = OperatorMatrix::identity(d.pow((total_slots - slot - 1) as u32));
    Ok(left.kron(op).kron(&right))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_grid_centers_one_site_at_origin() {
        let grid = Grid::new(4, 1.0, 0.0).unwrap();
        assert_eq!(grid.points(), vec![-2.0, -1.0, 0.0, 1.0]);
        let straddled = Grid::new(4, 1.0, 0.5).unwrap();
        assert_eq!(straddled.points(), vec![-1.5, -0.5, 0.5, 1.5]);
    }

    #[test]
    fn rejects_non_power_of_two_and_bad_spacing() {
        assert!(Grid::new(3, 1.0, 0.0).is_err());
        assert!(Grid::new(1, 1.0, 0.0).is_err());
        assert!(Grid::new(4, 0.0, 0.0).is_err());
        assert!(Grid::new(4, -1.0, 0.0).is_err());
        assert!(Grid::new(4, f64::NAN, 0.0).is_err());
        assert!(dft_matrix(6).is_err());
    }

    #[test]
    fn dft_two_points_is_the_real_hadamard_kernel() {
        let f = dft_matrix(2).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        let m = f.matrix();
        assert!((m.get(0, 0) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((m.get(0, 1) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((m.get(1, 0) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((m.get(1, 1) - Complex64::new(-s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dft_four_points_has_quarter_phase_entry() {
        let f = dft_matrix(4).unwrap();
        assert!((f.matrix().get(1, 1) - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn two_point_momentum_matches_hand_computed_matrix() {
        let grid = Grid::new(2, 1.0, 0.0).unwrap();
        let p = momentum_operator(&grid).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                assert!(
                    (p.get(j, k) - Complex64::new(-0.5, 0.0)).norm() < 1e-15,
                    "entry ({j},{k}) = {}",
                    p.get(j, k)
                );
            }
        }
    }

    #[test]
    fn momentum_is_hermitian_and_traceless_like_position() {
        let grid = Grid::new(8, 0.7, 0.5).unwrap();
        let p = momentum_operator(&grid).unwrap();
        assert_eq!(p.hermiticity_violation(), 0.0);
        let x = position_operator(&grid);
        assert!((p.trace() - x.trace()).norm() < 1e-12);
    }

    #[test]
    fn squared_momentum_trace_equals_squared_position_trace() {
        let grid = Grid::new(4, 1.0, 0.0).unwrap();
        let p = momentum_operator(&grid).unwrap();
        let x = position_operator(&grid);
        let p2 = p.matmul(&p).unwrap();
        let x2 = x.matmul(&x).unwrap();
        assert!((p2.trace().re - 6.0).abs() < 1e-12);
        assert!((x2.trace().re - 6.0).abs() < 1e-12);
        assert!(p2.trace().im.abs() < 1e-14);
    }

    #[test]
    fn function_of_position_rejects_singular_values() {
        let grid = Grid::new(4, 1.0, 0.0).unwrap();
        let err = function_of_position(&grid, |x| 1.0 / (x * x)).unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { point, .. } if point == 0.0));
        let ok = function_of_position(&grid, |x| 1.0 / (x * x + 1e-4)).unwrap();
        assert!((ok.get(2, 2).re - 1e4).abs() < 1e-9);
    }

    #[test]
    fn embedded_operators_on_distinct_slots_commute() {
        let grid = Grid::new(4, 0.9, 0.0).unwrap();
        let x = position_operator(&grid);
        let p = momentum_operator(&grid).unwrap();
        let a = embed(&x, 0, 2).unwrap();
        let b = embed(&p, 1, 2).unwrap();
        let ab = a.matmul(&b).unwrap();
        let ba = b.matmul(&a).unwrap();
        for (u, v) in ab.data().iter().zip(ba.data()) {
            assert!((u - v).norm() < 1e-14);
        }
    }

    #[test]
    fn embed_matches_manual_kronecker_layout() {
        let grid = Grid::new(2, 1.0, 0.0).unwrap();
        let x = position_operator(&grid);
        let lifted = embed(&x, 1, 2).unwrap();
        assert_eq!(lifted.dim(), 4);
        assert_eq!(lifted.get(0, 0), Complex64::new(-1.0, 0.0));
        assert_eq!(lifted.get(1, 1), Complex64::new(0.0, 0.0));
        assert_eq!(lifted.get(2, 2), Complex64::new(-1.0, 0.0));
    }
}

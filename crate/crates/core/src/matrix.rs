//! Dense complex matrices sized for desk-scale operators (dimension 16 and
//! below in practice). Row-major storage, no external linear algebra.

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance used when validating Hermiticity at construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Tolerance used when validating unitarity at construction.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m.set(j, j, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major entries without any validation.
    pub fn from_data(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix and verifies it is Hermitian within [`HERMITICITY_TOL`].
    pub fn hermitian(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        let m = Self::from_data(dim, data)?;
        let violation = m.hermiticity_violation();
        if violation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                max_violation: violation,
            });
        }
        Ok(m)
    }

    /// Diagonal matrix with real entries.
    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (j, &v) in entries.iter().enumerate() {
            m.set(j, j, Complex64::new(v, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Largest elementwise deviation from `A = A†`.
    pub fn hermiticity_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim {
            for k in j..self.dim {
                let d = (self.get(j, k) - self.get(k, j).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Symmetrized copy `(A + A†) / 2`. Exactly Hermitian in floating point.
    pub fn hermitized(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                let v = (self.get(j, k) + self.get(k, j).conj()) * 0.5;
                out.set(j, k, v);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                out.set(k, j, self.get(j, k).conj());
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for j in 0..n {
            for m in 0..n {
                let a = self.get(j, m);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    let v = out.get(j, k) + a * other.get(m, k);
                    out.set(j, k, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|j| self.get(j, j)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kronecker product `self ⊗ other`; `self` indexes the most significant
    /// block of the result.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim;
        let m = other.dim;
        let mut out = Self::zeros(n * m);
        for j in 0..n {
            for k in 0..n {
                let a = self.get(j, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for p in 0..m {
                    for q in 0..m {
                        out.set(j * m + p, k * m + q, a * other.get(p, q));
                    }
                }
            }
        }
        out
    }

    /// Similarity transform `D† A D` by a diagonal of unit phases.
    pub fn conjugate_by_diagonal(&self, phases: &[Complex64]) -> Result<Self> {
        if phases.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: phases.len(),
            });
        }
        let mut out = Self::zeros(self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                out.set(j, k, phases[j].conj() * self.get(j, k) * phases[k]);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    #[allow(clippy::needless_range_loop)]
    pub fn apply(&self, vec: &[Complex64]) -> Result<Vec<Complex64>> {
        if vec.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: vec.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for j in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..self.dim {
                acc += self.get(j, k) * vec[k];
            }
            out[j] = acc;
        }
        Ok(out)
    }
}

/// Square complex matrix validated to be unitary at construction.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    inner: OperatorMatrix,
}

impl UnitaryMatrix {
    /// Wraps a matrix after checking `U U† = I` within [`UNITARITY_TOL`].
    pub fn new(matrix: OperatorMatrix) -> Result<Self> {
        let product = matrix.matmul(&matrix.adjoint())?;
        let identity = OperatorMatrix::identity(matrix.dim());
        let mut worst = 0.0f64;
        for (a, b) in product.data().iter().zip(identity.data()) {
            worst = worst.max((a - b).norm());
        }
        if worst > UNITARITY_TOL {
            return Err(Error::NotHermitian {
                max_violation: worst,
            });
        }
        Ok(Self { inner: matrix })
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.inner
    }

    /// Similarity transform `U† A U`.
    pub fn conjugate(&self, op: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.inner.adjoint().matmul(op)?.matmul(&self.inner)
    }
}

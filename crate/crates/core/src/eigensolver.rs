//! Dense eigensolver for complex Hermitian matrices.
//!
//! The matrix is reduced to real symmetric tridiagonal form by a sequence of
//! complex Householder reflectors followed by a diagonal phase rescaling,
//! then diagonalized with implicit-shift QL iteration. Unitary transforms are
//! accumulated throughout, so eigenvectors come out orthonormal to machine
//! precision even for degenerate eigenvalues. Intended for the desk-scale
//! matrices this crate produces (dimension 16 and below), though nothing
//! limits it to powers of two.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::matrix::OperatorMatrix;
use crate::{Error, Result};

/// Iteration cap per eigenvalue in the QL sweep.
const MAX_QL_ITERATIONS: usize = 50;

/// Full spectrum of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigResult {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` is the unit-norm eigenvector for `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigResult {
    /// Index of the eigenvalue closest to zero. Exact-magnitude ties resolve
    /// to the smaller (more negative) eigenvalue.
    pub fn nearest_zero_index(&self) -> usize {
        let mut best = 0;
        for (i, &ev) in self.eigenvalues.iter().enumerate() {
            if ev.abs() < self.eigenvalues[best].abs() {
                best = i;
            }
        }
        best
    }
}

/// Diagonalizes a Hermitian matrix.
pub fn eigh(op: &OperatorMatrix) -> Result<EigResult> {
    let violation = op.hermiticity_violation();
    if violation > crate::matrix::HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_violation: violation,
        });
    }
    let n = op.dim();
    if n == 0 {
        return Ok(EigResult {
            eigenvalues: vec![],
            eigenvectors: vec![],
        });
    }
    let a = op.hermitized();
    if n == 1 {
        return Ok(EigResult {
            eigenvalues: vec![a.get(0, 0).re],
            eigenvectors: vec![vec![Complex64::new(1.0, 0.0)]],
        });
    }

    let (mut d, mut e, mut q) = tridiagonalize(a);
    ql_implicit_shift(&mut d, &mut e, &mut q)?;
    sort_and_normalize(&mut d, &mut q);

    let eigenvectors = (0..n)
        .map(|i| (0..n).map(|k| q.get(k, i)).collect())
        .collect();
    Ok(EigResult {
        eigenvalues: d,
        eigenvectors,
    })
}

/// Smallest eigenvalue and its eigenvector.
pub fn min_eigenvalue(op: &OperatorMatrix) -> Result<(f64, Vec<Complex64>)> {
    let res = eigh(op)?;
    Ok((res.eigenvalues[0], res.eigenvectors[0].clone()))
}

/// Eigenvalue of least magnitude and its eigenvector, the reading relevant to
/// constraint equations of the form `H psi = 0`.
pub fn nearest_zero_eigenvalue(op: &OperatorMatrix) -> Result<(f64, Vec<Complex64>)> {
    let res = eigh(op)?;
    let idx = res.nearest_zero_index();
    Ok((res.eigenvalues[idx], res.eigenvectors[idx].clone()))
}

/// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
/// form. Returns the diagonal, the nonnegative subdiagonal, and the unitary
/// `Q` with `A = Q T Q^dagger`.
fn tridiagonalize(mut a: OperatorMatrix) -> (Vec<f64>, Vec<f64>, OperatorMatrix) {
    let n = a.dim();
    let mut q = OperatorMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);

    for k in 0..n.saturating_sub(2) {
        let norm_x: f64 = (k + 1..n)
            .map(|j| a.get(j, k).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let alpha = a.get(k + 1, k);
        let phase = if alpha.norm() > 0.0 {
            alpha / alpha.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };

        // Reflector v zeroes column k below the subdiagonal: v = x + phase*|x|*e1.
        let mut v = vec![zero; n];
        v[k + 1] = alpha + phase * norm_x;
        for j in k + 2..n {
            v[j] = a.get(j, k);
        }
        let vnorm_sqr: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sqr;

        // Hermitian rank-2 update A <- A - v w^dagger - w v^dagger with
        // u = beta A v and w = u - (beta (v^dagger u) / 2) v.
        let mut u = vec![zero; n];
        for j in k..n {
            let mut acc = zero;
            for m in k + 1..n {
                acc += a.get(j, m) * v[m];
            }
            u[j] = acc * beta;
        }
        let vu: Complex64 = v.iter().zip(&u).map(|(vi, ui)| vi.conj() * ui).sum();
        let shift = vu * (beta / 2.0);
        let w: Vec<Complex64> = u.iter().zip(&v).map(|(ui, vi)| ui - shift * vi).collect();
        for j in k..n {
            for m in k..n {
                let val = a.get(j, m) - v[j] * w[m].conj() - w[j] * v[m].conj();
                a.set(j, m, val);
            }
        }

        // The reflector maps the column to a known value; write it exactly.
        let sub = -phase * norm_x;
        a.set(k + 1, k, sub);
        a.set(k, k + 1, sub.conj());
        for j in k + 2..n {
            a.set(j, k, zero);
            a.set(k, j, zero);
        }

        // Accumulate Q <- Q (I - beta v v^dagger).
        for row in 0..n {
            let mut qv = zero;
            for m in k + 1..n {
                qv += q.get(row, m) * v[m];
            }
            let qv = qv * beta;
            for m in k + 1..n {
                let val = q.get(row, m) - qv * v[m].conj();
                q.set(row, m, val);
            }
        }
    }

    // Rotate away the residual phases of the subdiagonal so T is real.
    let mut scale = vec![Complex64::new(1.0, 0.0); n];
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for k in 0..n - 1 {
        let sub = a.get(k + 1, k);
        let mag = sub.norm();
        e[k] = mag;
        scale[k + 1] = if mag > 0.0 {
            scale[k] * (sub / mag)
        } else {
            scale[k]
        };
    }
    for (j, s) in scale.iter().enumerate() {
        d[j] = a.get(j, j).re;
        for row in 0..n {
            let val = q.get(row, j) * s;
            q.set(row, j, val);
        }
    }
    (d, e, q)
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix,
/// rotating the columns of `q` along with it.
fn ql_implicit_shift(d: &mut [f64], e: &mut [f64], q: &mut OperatorMatrix) -> Result<()> {
    let n = d.len();
    let eps = f64::EPSILON;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Look for a negligible subdiagonal element to split the matrix.
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { index: l });
            }

            // Wilkinson-style shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;

            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Negligible rotation; drop the shift and restart.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                for k in 0..q.dim() {
                    let qi1 = q.get(k, i + 1);
                    let qi = q.get(k, i);
                    q.set(k, i + 1, qi * s + qi1 * c);
                    q.set(k, i, qi * c - qi1 * s);
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Sorts eigenpairs ascending and fixes each eigenvector's global phase so
/// its largest-magnitude component is real and positive. Ordering ties break
/// by the ascending index of that component.
fn sort_and_normalize(d: &mut Vec<f64>, q: &mut OperatorMatrix) {
    let n = d.len();
    let mut columns: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|k| q.get(k, i)).collect())
        .collect();

    let anchor = |col: &[Complex64]| -> usize {
        let mut best = 0;
        for (k, v) in col.iter().enumerate() {
            if v.norm() > col[best].norm() + 1e-15 {
                best = k;
            }
        }
        best
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        d[i].partial_cmp(&d[j])
            .unwrap()
            .then_with(|| anchor(&columns[i]).cmp(&anchor(&columns[j])))
    });

    let sorted_d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut sorted_cols: Vec<Vec<Complex64>> = order.iter().map(|&i| columns[i].clone()).collect();

    for col in &mut sorted_cols {
        let a = anchor(col);
        let pivot = col[a];
        let norm: f64 = col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if pivot.norm() > 0.0 && norm > 0.0 {
            let rotation = pivot.conj() / pivot.norm();
            for v in col.iter_mut() {
                *v = *v * rotation / norm;
            }
        }
    }

    *d = sorted_d;
    columns = sorted_cols;
    for (i, col) in columns.iter().enumerate() {
        for (k, &v) in col.iter().enumerate() {
            q.set(k, i, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(dim);
        for j in 0..dim {
            m.set(j, j, c(rng.gen_range(-2.0..2.0), 0.0));
            for k in j + 1..dim {
                let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(j, k, v);
                m.set(k, j, v.conj());
            }
        }
        m
    }

    fn residual(op: &OperatorMatrix, ev: f64, vec: &[Complex64]) -> f64 {
        let hv = op.apply(vec).unwrap();
        hv.iter()
            .zip(vec)
            .map(|(a, b)| (a - b * ev).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn two_by_two_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = rng.gen_range(-2.0..2.0);
            let dd = rng.gen_range(-2.0..2.0);
            let b = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let mut m = OperatorMatrix::zeros(2);
            m.set(0, 0, c(a, 0.0));
            m.set(1, 1, c(dd, 0.0));
            m.set(0, 1, b);
            m.set(1, 0, b.conj());
            let mean = (a + dd) / 2.0;
            let disc = ((a - dd) / 2.0).hypot(b.norm());
            let res = eigh(&m).unwrap();
            assert!((res.eigenvalues[0] - (mean - disc)).abs() < 1e-12);
            assert!((res.eigenvalues[1] - (mean + disc)).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_matrix_returns_sorted_diagonal() {
        let m = OperatorMatrix::diagonal(&[3.0, -1.0, 2.0, 0.5]);
        let res = eigh(&m).unwrap();
        assert_eq!(res.eigenvalues, vec![-1.0, 0.5, 2.0, 3.0]);
        assert!((res.eigenvectors[0][1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_has_unit_eigenvalues() {
        let mut m = OperatorMatrix::zeros(2);
        m.set(0, 1, c(0.0, -1.0));
        m.set(1, 0, c(0.0, 1.0));
        let res = eigh(&m).unwrap();
        assert!((res.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((res.eigenvalues[1] - 1.0).abs() < 1e-14);
        for i in 0..2 {
            assert!(residual(&m, res.eigenvalues[i], &res.eigenvectors[i]) < 1e-14);
        }
    }

    #[test]
    fn random_spectra_satisfy_residual_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for dim in [2usize, 3, 5, 8, 13, 16] {
            let m = random_hermitian(&mut rng, dim);
            let norm = m.frobenius_norm();
            let res = eigh(&m).unwrap();
            for i in 0..dim {
                assert!(
                    residual(&m, res.eigenvalues[i], &res.eigenvectors[i]) < 1e-10 * norm,
                    "residual too large at dim {dim}"
                );
                for j in 0..dim {
                    let dot: Complex64 = res.eigenvectors[i]
                        .iter()
                        .zip(&res.eigenvectors[j])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((dot.norm() - expected).abs() < 1e-10);
                }
            }
            let trace: f64 = res.eigenvalues.iter().sum();
            assert!((trace - m.trace().re).abs() < 1e-8 * (1.0 + norm));
            let sq = m.matmul(&m).unwrap();
            let trace_sq: f64 = res.eigenvalues.iter().map(|v| v * v).sum();
            assert!((trace_sq - sq.trace().re).abs() < 1e-8 * (1.0 + norm * norm));
        }
    }

    #[test]
    fn degenerate_spectrum_still_gives_orthonormal_vectors() {
        let m = OperatorMatrix::identity(6).scale(2.5);
        let res = eigh(&m).unwrap();
        for ev in &res.eigenvalues {
            assert!((ev - 2.5).abs() < 1e-14);
        }
        for i in 0..6 {
            for j in 0..6 {
                let dot: Complex64 = res.eigenvectors[i]
                    .iter()
                    .zip(&res.eigenvectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot.norm() - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nearest_zero_prefers_magnitude_then_sign() {
        let m = OperatorMatrix::diagonal(&[-3.0, 0.1, 2.0]);
        let (ev, _) = nearest_zero_eigenvalue(&m).unwrap();
        assert!((ev - 0.1).abs() < 1e-15);
        let tie = OperatorMatrix::diagonal(&[-1.0, 1.0]);
        let (ev, _) = nearest_zero_eigenvalue(&tie).unwrap();
        assert!((ev + 1.0).abs() < 1e-15);
    }

    #[test]
    fn min_eigenvalue_matches_full_spectrum_head() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let m = random_hermitian(&mut rng, 9);
        let (ev, vec) = min_eigenvalue(&m).unwrap();
        let res = eigh(&m).unwrap();
        assert_eq!(ev, res.eigenvalues[0]);
        assert!(residual(&m, ev, &vec) < 1e-10 * m.frobenius_norm());
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = OperatorMatrix::zeros(2);
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(eigh(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigenvector_phase_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let m = random_hermitian(&mut rng, 7);
        let a = eigh(&m).unwrap();
        let b = eigh(&m).unwrap();
        for (va, vb) in a.eigenvectors.iter().zip(&b.eigenvectors) {
            for (x, y) in va.iter().zip(vb) {
                assert_eq!(x, y);
            }
        }
        for v in &a.eigenvectors {
            let mut best = 0;
            for (k, comp) in v.iter().enumerate() {
                if comp.norm() > v[best].norm() + 1e-15 {
                    best = k;
                }
            }
            assert!(v[best].im.abs() < 1e-12);
            assert!(v[best].re > 0.0);
        }
    }
}

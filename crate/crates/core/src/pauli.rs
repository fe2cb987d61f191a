//! Tensor-product Pauli strings and decomposition of Hermitian matrices into
//! weighted sums of them.
//!
//! A string like `XIZ` reads left to right as qubit 0 to qubit 2, with qubit
//! 0 the most significant bit of the basis index. Every Pauli string is a
//! signed permutation with one nonzero entry per column, so traces against a
//! dense matrix cost `O(2^n)` per string and a full decomposition enumerates
//! all `4^n` strings in lexicographic order `I < X < Y < Z`.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::matrix::OperatorMatrix;
use crate::{Error, Result};

/// Imaginary part above which a decomposition coefficient flags a
/// non-Hermitian input.
pub const COEFF_IMAG_TOL: f64 = 1e-10;

/// Default threshold below which decomposition coefficients are dropped.
pub const DEFAULT_PRUNE_THRESHOLD: f64 = 1e-10;

/// Single-qubit Pauli operator. Declaration order fixes the sort order of
/// decomposition output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(PauliOp::I),
            'X' => Ok(PauliOp::X),
            'Y' => Ok(PauliOp::Y),
            'Z' => Ok(PauliOp::Z),
            other => Err(Error::InvalidPauliLabel(other)),
        }
    }

    fn to_char(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, one per qubit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<PauliOp>);

impl PauliString {
    pub fn new(ops: Vec<PauliOp>) -> Self {
        Self(ops)
    }

    /// All-identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        Self(vec![PauliOp::I; n])
    }

    pub fn num_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn ops(&self) -> &[PauliOp] {
        &self.0
    }

    /// Applies the string to computational basis state `index`, returning the
    /// image basis index and the accumulated phase. Every Pauli string maps a
    /// basis state to exactly one basis state.
    pub fn apply_to_basis(&self, index: usize) -> (usize, Complex64) {
        let n = self.0.len();
        let mut target = index;
        let mut phase = Complex64::new(1.0, 0.0);
        for (q, op) in self.0.iter().enumerate() {
            let bit = n - 1 - q;
            let value = (index >> bit) & 1;
            match op {
                PauliOp::I => {}
                PauliOp::X => target ^= 1 << bit,
                PauliOp::Y => {
                    target ^= 1 << bit;
                    phase *= if value == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                PauliOp::Z => {
                    if value == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        (target, phase)
    }

    /// Dense matrix realization of the string.
    pub fn to_matrix(&self) -> OperatorMatrix {
        let dim = 1usize << self.0.len();
        let mut m = OperatorMatrix::zeros(dim);
        for col in 0..dim {
            let (row, phase) = self.apply_to_basis(col);
            m.set(row, col, phase);
        }
        m
    }

    fn from_code(mut code: usize, n: usize) -> Self {
        let mut ops = vec![PauliOp::I; n];
        for q in (0..n).rev() {
            ops[q] = match code % 4 {
                0 => PauliOp::I,
                1 => PauliOp::X,
                2 => PauliOp::Y,
                _ => PauliOp::Z,
            };
            code /= 4;
        }
        Self(ops)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            write!(f, "{}", op.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(PauliOp::from_char)
            .collect::<Result<_>>()
            .map(Self)
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// One weighted Pauli string. Serializes as `{"coeff": 0.5, "paulis": "XY"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: f64,
    pub paulis: PauliString,
}

/// Real-weighted sum of Pauli strings on a fixed qubit count, kept sorted in
/// lexicographic string order with no duplicate strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Builds a sum, merging duplicate strings and dropping exact zeros.
    pub fn new(num_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        for term in &terms {
            if term.paulis.num_qubits() != num_qubits {
                return Err(Error::QubitMismatch {
                    left: num_qubits,
                    right: term.paulis.num_qubits(),
                });
            }
            if !term.coeff.is_finite() {
                return Err(Error::NonFiniteValue {
                    value: term.coeff,
                    point: f64::NAN,
                });
            }
        }
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.paulis.cmp(&b.paulis));
        let mut merged: Vec<PauliTerm> = Vec::with_capacity(sorted.len());
        for term in sorted {
            match merged.last_mut() {
                Some(last) if last.paulis == term.paulis => last.coeff += term.coeff,
                _ => merged.push(term),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        Ok(Self {
            num_qubits,
            terms: merged,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges two sums over the same register.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.num_qubits, terms)
    }

    /// Scales every coefficient.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| PauliTerm {
                coeff: t.coeff * factor,
                paulis: t.paulis.clone(),
            })
            .collect();
        Self::new(self.num_qubits, terms)
    }

    /// Sum of `coeff^2 * 2^n`, equal to the squared Frobenius norm of the
    /// reconstructed matrix.
    pub fn weight(&self) -> f64 {
        let dim = (1usize << self.num_qubits) as f64;
        self.terms.iter().map(|t| t.coeff * t.coeff * dim).sum()
    }
}

impl Serialize for PauliSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<PauliTerm>::deserialize(deserializer)?;
        let num_qubits = match terms.first() {
            Some(t) => t.paulis.num_qubits(),
            None => return Err(D::Error::custom("empty Pauli sum has no qubit count")),
        };
        PauliSum::new(num_qubits, terms).map_err(D::Error::custom)
    }
}

/// Expands a Hermitian matrix in the Pauli string basis.
///
/// Coefficients are `trace(P * H) / 2^n`. Strings whose coefficient magnitude
/// is at most `prune_threshold` are dropped; a coefficient with imaginary
/// part above [`COEFF_IMAG_TOL`] means the input was not Hermitian.
pub fn decompose(op: &OperatorMatrix, prune_threshold: f64) -> Result<PauliSum> {
    let dim = op.dim();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { dim });
    }
    let n = dim.trailing_zeros() as usize;
    let mut terms = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let string = PauliString::from_code(code, n);
        let mut acc = Complex64::new(0.0, 0.0);
        for col in 0..dim {
            let (row, phase) = string.apply_to_basis(col);
            acc += phase * op.get(col, row);
        }
        let coeff = acc / dim as f64;
        if coeff.im.abs() > COEFF_IMAG_TOL {
            return Err(Error::NotHermitian {
                max_violation: coeff.im.abs(),
            });
        }
        if coeff.re.abs() > prune_threshold {
            terms.push(PauliTerm {
                coeff: coeff.re,
                paulis: string,
            });
        }
    }
    PauliSum::new(n, terms)
}

/// Dense matrix of a Pauli sum. Inverse of [`decompose`] when nothing was
/// pruned.
pub fn reconstruct(sum: &PauliSum) -> OperatorMatrix {
    let dim = 1usize << sum.num_qubits();
    let mut m = OperatorMatrix::zeros(dim);
    for term in sum.terms() {
        for col in 0..dim {
            let (row, phase) = term.paulis.apply_to_basis(col);
            let v = m.get(row, col) + phase * term.coeff;
            m.set(row, col, v);
        }
    }
    m
}

/// Pads every string of `sum` with identities so it acts on tensor slot
/// `slot` of `total_slots` identical registers. Coefficients are unchanged.
pub fn tensor_extend(sum: &PauliSum, slot: usize, total_slots: usize) -> Result<PauliSum> {
    if slot >= total_slots {
        return Err(Error::QubitOutOfRange {
            index: slot,
            num_qubits: total_slots,
        });
    }
    let nq = sum.num_qubits();
    let total_qubits = nq * total_slots;
    let terms = sum
        .terms()
        .iter()
        .map(|t| {
            let mut ops = vec![PauliOp::I; total_qubits];
            for (q, &op) in t.paulis.ops().iter().enumerate() {
                ops[slot * nq + q] = op;
            }
            PauliTerm {
                coeff: t.coeff,
                paulis: PauliString::new(ops),
            }
        })
        .collect();
    PauliSum::new(total_qubits, terms)
}

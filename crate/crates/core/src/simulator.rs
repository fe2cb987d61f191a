//! Statevector simulation of small qubit registers.
//!
//! Basis indices read the register big-endian: qubit 0 is the most
//! significant bit, so `|10>` on two qubits is index 2. Gates update
//! amplitudes in place through bit masks, and expectation values of Pauli
//! sums use the signed-permutation action of each string rather than any
//! dense matrix.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::pauli::PauliSum;
use crate::{Error, Result};

/// Register cap. Amplitude vectors stay comfortably in cache below this.
pub const MAX_QUBITS: usize = 12;

/// Gate set: the rotations and Cliffords the ansatz and tests need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Ry { qubit: usize, theta: f64 },
    Rx { qubit: usize, theta: f64 },
    Rz { qubit: usize, theta: f64 },
    H { qubit: usize },
    X { qubit: usize },
    Y { qubit: usize },
    Z { qubit: usize },
    Cnot { control: usize, target: usize },
}

impl Gate {
    fn validate(&self, num_qubits: usize) -> Result<()> {
        let check = |q: usize| {
            if q >= num_qubits {
                Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                })
            } else {
                Ok(())
            }
        };
        match *self {
            Gate::Ry { qubit, .. }
            | Gate::Rx { qubit, .. }
            | Gate::Rz { qubit, .. }
            | Gate::H { qubit }
            | Gate::X { qubit }
            | Gate::Y { qubit }
            | Gate::Z { qubit } => check(qubit),
            Gate::Cnot { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    return Err(Error::QubitOutOfRange {
                        index: target,
                        num_qubits,
                    });
                }
                Ok(())
            }
        }
    }

    fn qasm_line(&self) -> String {
        match *self {
            Gate::Ry { qubit, theta } => format!("ry({theta}) q[{qubit}];"),
            Gate::Rx { qubit, theta } => format!("rx({theta}) q[{qubit}];"),
            Gate::Rz { qubit, theta } => format!("rz({theta}) q[{qubit}];"),
            Gate::H { qubit } => format!("h q[{qubit}];"),
            Gate::X { qubit } => format!("x q[{qubit}];"),
            Gate::Y { qubit } => format!("y q[{qubit}];"),
            Gate::Z { qubit } => format!("z q[{qubit}];"),
            Gate::Cnot { control, target } => format!("cx q[{control}],q[{target}];"),
        }
    }
}

/// Ordered list of gates on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// OpenQASM 2.0 text for the circuit. Register order matches the
    /// simulator convention, qubit 0 first.
    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        out.push_str(&format!("qreg q[{}];\n", self.num_qubits));
        for gate in &self.gates {
            out.push_str(&gate.qasm_line());
            out.push('\n');
        }
        out
    }
}

/// Complex amplitude vector over the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// `|0...0>` on `num_qubits` qubits.
pub fn zero_state(num_qubits: usize) -> Result<Statevector> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: num_qubits,
            max: MAX_QUBITS,
        });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
    amplitudes[0] = Complex64::new(1.0, 0.0);
    Ok(Statevector {
        num_qubits,
        amplitudes,
    })
}

impl Statevector {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match *gate {
            Gate::Ry { qubit, theta } => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                self.single_qubit(
                    qubit,
                    [
                        Complex64::new(c, 0.0),
                        Complex64::new(-s, 0.0),
                        Complex64::new(s, 0.0),
                        Complex64::new(c, 0.0),
                    ],
                );
            }
            Gate::Rx { qubit, theta } => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                self.single_qubit(
                    qubit,
                    [
                        Complex64::new(c, 0.0),
                        Complex64::new(0.0, -s),
                        Complex64::new(0.0, -s),
                        Complex64::new(c, 0.0),
                    ],
                );
            }
            Gate::Rz { qubit, theta } => {
                self.single_qubit(
                    qubit,
                    [
                        Complex64::from_polar(1.0, -theta / 2.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::from_polar(1.0, theta / 2.0),
                    ],
                );
            }
            Gate::H { qubit } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.single_qubit(
                    qubit,
                    [
                        Complex64::new(s, 0.0),
                        Complex64::new(s, 0.0),
                        Complex64::new(s, 0.0),
                        Complex64::new(-s, 0.0),
                    ],
                );
            }
            Gate::X { qubit } => {
                self.single_qubit(
                    qubit,
                    [
                        Complex64::new(0.0, 0.0),
                        Complex64::new(1.0, 0.0),
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 0.0),
                    ],
                );
            }
            Gate::Y { qubit } => {
                self.single_qubit(
                    qubit,
                    [
                        Complex64::new(0.0, 0.0),
                        Complex64::new(0.0, -1.0),
                        Complex64::new(0.0, 1.0),
                        Complex64::new(0.0, 0.0),
                    ],
                );
            }
            Gate::Z { qubit } => {
                self.single_qubit(
                    qubit,
                    [
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(-1.0, 0.0),
                    ],
                );
            }
            Gate::Cnot { control, target } => {
                let cmask = 1usize << (self.num_qubits - 1 - control);
                let tmask = 1usize << (self.num_qubits - 1 - target);
                for i in 0..self.amplitudes.len() {
                    if i & cmask != 0 && i & tmask == 0 {
                        self.amplitudes.swap(i, i | tmask);
                    }
                }
            }
        }
        Ok(())
    }

    fn single_qubit(&mut self, qubit: usize, m: [Complex64; 4]) {
        let mask = 1usize << (self.num_qubits - 1 - qubit);
        for i in 0..self.amplitudes.len() {
            if i & mask == 0 {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i | mask];
                self.amplitudes[i] = m[0] * a0 + m[1] * a1;
                self.amplitudes[i | mask] = m[2] * a0 + m[3] * a1;
            }
        }
    }
}

/// Runs a circuit from the all-zero state.
pub fn run(circuit: &Circuit) -> Result<Statevector> {
    let mut state = zero_state(circuit.num_qubits())?;
    for gate in circuit.gates() {
        state.apply(gate)?;
    }
    Ok(state)
}

/// Expectation value `<psi|H|psi>` of a Pauli sum. Real for the real-weighted
/// sums this crate produces; the imaginary residue stays at rounding level.
pub fn expectation(state: &Statevector, hamiltonian: &PauliSum) -> Result<f64> {
    if state.num_qubits() != hamiltonian.num_qubits() {
        return Err(Error::QubitMismatch {
            left: state.num_qubits(),
            right: hamiltonian.num_qubits(),
        });
    }
    let amps = state.amplitudes();
    let mut total = Complex64::new(0.0, 0.0);
    for term in hamiltonian.terms() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &amp) in amps.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (j, phase) = term.paulis.apply_to_basis(i);
            acc += amps[j].conj() * phase * amp;
        }
        total += acc * term.coeff;
    }
    debug_assert!(total.im.abs() < 1e-10, "imaginary residue {}", total.im);
    Ok(total.re)
}

/// Draws measurement outcomes in the computational basis. Keys are bitstrings
/// with qubit 0 leftmost; identical seeds give identical counts.
pub fn sample(state: &Statevector, shots: u64, seed: u64) -> BTreeMap<String, u64> {
    let n = state.num_qubits();
    let mut cumulative = Vec::with_capacity(state.amplitudes().len());
    let mut running = 0.0;
    for amp in state.amplitudes() {
        running += amp.norm_sqr();
        cumulative.push(running);
    }
    let total = running;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..shots {
        let u: f64 = rng.gen::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c <= u)
            .min(cumulative.len() - 1);
        let key = format!("{idx:0n$b}", n = n);
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

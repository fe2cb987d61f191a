//! Hardware-efficient Ry ansatz: an initial rotation layer followed by
//! repeated entangler plus rotation blocks. Parameters bind positionally in
//! gate order, one angle per Ry gate.

use serde::{Deserialize, Serialize};

use crate::simulator::{Circuit, Gate, MAX_QUBITS};
use crate::{Error, Result};

/// Entangler wiring for each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    /// CNOT from each qubit to its right neighbor.
    Linear,
    /// CNOT for every ordered pair `i < j`.
    Full,
}

/// Shape of the variational circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub num_qubits: usize,
    pub depth: usize,
    pub entanglement: Entanglement,
}

impl AnsatzSpec {
    /// Depth-3 fully entangled ansatz, the configuration the model runs use.
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            depth: 3,
            entanglement: Entanglement::Full,
        }
    }

    pub fn parameter_count(&self) -> usize {
        self.num_qubits * (self.depth + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TemplateGate {
    Ry { qubit: usize, param_index: usize },
    Cnot { control: usize, target: usize },
}

/// Gate sequence with unbound rotation angles.
#[derive(Debug, Clone)]
pub struct AnsatzTemplate {
    spec: AnsatzSpec,
    gates: Vec<TemplateGate>,
}

/// Lays out the template for a spec.
pub fn build(spec: &AnsatzSpec) -> Result<AnsatzTemplate> {
    if spec.num_qubits == 0 || spec.num_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: spec.num_qubits,
            max: MAX_QUBITS,
        });
    }
    let n = spec.num_qubits;
    let mut gates = Vec::new();
    let mut param_index = 0;
    let mut rotation_layer = |gates: &mut Vec<TemplateGate>| {
        for qubit in 0..n {
            gates.push(TemplateGate::Ry { qubit, param_index });
            param_index += 1;
        }
    };

    rotation_layer(&mut gates);
    for _ in 0..spec.depth {
        match spec.entanglement {
            Entanglement::Linear => {
                for q in 0..n.saturating_sub(1) {
                    gates.push(TemplateGate::Cnot {
                        control: q,
                        target: q + 1,
                    });
                }
            }
            Entanglement::Full => {
                for i in 0..n {
                    for j in i + 1..n {
                        gates.push(TemplateGate::Cnot {
                            control: i,
                            target: j,
                        });
                    }
                }
            }
        }
        rotation_layer(&mut gates);
    }
    Ok(AnsatzTemplate { spec: *spec, gates })
}

impl AnsatzTemplate {
    pub fn spec(&self) -> &AnsatzSpec {
        &self.spec
    }

    pub fn parameter_count(&self) -> usize {
        self.spec.parameter_count()
    }

    /// Substitutes angles into the template, yielding a runnable circuit.
    pub fn bind(&self, theta: &[f64]) -> Result<Circuit> {
        if theta.len() != self.parameter_count() {
            return Err(Error::ParameterCountMismatch {
                expected: self.parameter_count(),
                actual: theta.len(),
            });
        }
        let mut circuit = Circuit::new(self.spec.num_qubits)?;
        for gate in &self.gates {
            match *gate {
                TemplateGate::Ry { qubit, param_index } => circuit.push(Gate::Ry {
                    qubit,
                    theta: theta[param_index],
                })?,
                TemplateGate::Cnot { control, target } => {
                    circuit.push(Gate::Cnot { control, target })?
                }
            }
        }
        Ok(circuit)
    }
}

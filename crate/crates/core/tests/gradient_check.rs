//! The Ry generators obey the parameter-shift rule: the derivative of the
//! energy in any one angle equals half the difference of the energies at
//! quarter-turn shifts. Central finite differences must agree.

use qcosmo::ansatz::{build, AnsatzSpec, Entanglement};
use qcosmo::pauli::{PauliSum, PauliTerm};
use qcosmo::vqe::energy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

#[test]
fn parameter_shift_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let labels = ["IX", "IZ", "XY", "YY", "ZI", "ZZ", "II"];
    let terms: Vec<PauliTerm> = labels
        .iter()
        .map(|label| PauliTerm {
            coeff: rng.gen_range(-1.0..1.0),
            paulis: label.parse().unwrap(),
        })
        .collect();
    let hamiltonian = PauliSum::new(2, terms).unwrap();
    let spec = AnsatzSpec {
        num_qubits: 2,
        depth: 2,
        entanglement: Entanglement::Linear,
    };
    let template = build(&spec).unwrap();

    for _ in 0..5 {
        let theta: Vec<f64> = (0..template.parameter_count())
            .map(|_| rng.gen_range(-3.0..3.0))
            .collect();
        for i in 0..theta.len() {
            let mut probe = theta.clone();
            probe[i] = theta[i] + FRAC_PI_2;
            let plus = energy(&template, &probe, &hamiltonian).unwrap();
            probe[i] = theta[i] - FRAC_PI_2;
            let minus = energy(&template, &probe, &hamiltonian).unwrap();
            let shift = (plus - minus) / 2.0;

            let h = 1e-5;
            probe[i] = theta[i] + h;
            let fwd = energy(&template, &probe, &hamiltonian).unwrap();
            probe[i] = theta[i] - h;
            let bwd = energy(&template, &probe, &hamiltonian).unwrap();
            let difference = (fwd - bwd) / (2.0 * h);

            assert!(
                (shift - difference).abs() < 1e-6,
                "parameter {i}: shift {shift} vs finite difference {difference}"
            );
        }
    }
}

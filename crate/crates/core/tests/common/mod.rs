#![allow(dead_code)]

use minimax_fidelity::quantum::{PauliString, PureState};
use minimax_fidelity::schemes::{pauli_povm, Granularity, MeasurementScheme, StabilizerGroupSpec};

pub fn pauli_scheme(paulis: &[&str], reps: usize, granularity: Granularity) -> MeasurementScheme<f64> {
    let povms = paulis
        .iter()
        .map(|p| pauli_povm(&p.parse::<PauliString>().unwrap(), granularity).unwrap())
        .collect();
    let labels = paulis.iter().map(|p| p.to_string()).collect();
    MeasurementScheme::new(povms, vec![reps; paulis.len()], labels).unwrap()
}

pub fn ghz_generators(n: usize) -> StabilizerGroupSpec {
    let mut gens = vec!["X".repeat(n)];
    for i in 0..n - 1 {
        let mut s = vec!['I'; n];
        s[i] = 'Z';
        s[i + 1] = 'Z';
        gens.push(s.into_iter().collect());
    }
    StabilizerGroupSpec::parse_list(&gens.join(",")).unwrap()
}

pub fn ghz_target(n: usize) -> PureState<f64> {
    minimax_fidelity::quantum::ghz_state(n).unwrap()
}

/// Worst-case half-gap `max (q1 - q2) / 2` over Bernoulli pairs on a
/// `steps x steps` grid with `reps * ln(affinity) >= ln(eps / 2)`.
pub fn bernoulli_grid_risk(reps: f64, epsilon: f64, steps: usize) -> f64 {
    let bound = (epsilon / 2.0).ln();
    let h = 1.0 / (steps - 1) as f64;
    let mut best = 0.0f64;
    for i in 0..steps {
        let q1 = i as f64 * h;
        // the feasible q2 set is an interval; scan upward from 0 until feasible
        for j in 0..=i {
            let q2 = j as f64 * h;
            let aff = (q1 * q2).sqrt() + ((1.0 - q1) * (1.0 - q2)).sqrt();
            if reps * aff.ln() >= bound {
                best = best.max(q1 - q2);
                break;
            }
        }
    }
    best / 2.0
}

pub mod invariants;

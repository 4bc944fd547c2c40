mod common;

use common::invariants as inv;
use minimax_fidelity::quantum::PureState;
use minimax_fidelity::schemes::{pauli_povm, stabilizer_scheme, Granularity, MeasurementScheme, StabilizerMode};
use minimax_fidelity::solver::{solve_saddle, SolverConfig};

#[test]
fn concave_in_states() {
    inv::concavity_in_states().unwrap();
}

#[test]
fn convex_in_phi_and_alpha() {
    inv::convexity_in_phi_alpha().unwrap();
}

#[test]
fn closed_form_inner_minimum() {
    inv::closed_form_inner_minimum().unwrap();
}

#[test]
fn risk_bounds() {
    inv::risk_bounds().unwrap();
}

#[test]
fn more_shots_never_hurt() {
    inv::monotone_in_shots(4).unwrap();
}

#[test]
fn theta_is_increasing() {
    inv::theta_increasing().unwrap();
}

#[test]
fn target_basis_sample_complexity() {
    inv::target_basis_complexity().unwrap();
}

#[test]
fn bernoulli_matches_grid_oracle() {
    let target = PureState::<f64>::basis(1, 2).unwrap();
    let scheme = common::pauli_scheme(&["Z"], 100, Granularity::Sign);
    let sol = solve_saddle(&target.fidelity_observable(), &scheme, &SolverConfig::default()).unwrap();
    let oracle = common::bernoulli_grid_risk(100.0, 0.05, 2001);
    assert!((sol.risk - oracle).abs() <= 0.1 * oracle, "{} vs {oracle}", sol.risk);
}

#[test]
fn insufficient_stabilizer_data() {
    for n in [2usize, 3] {
        let spec = common::ghz_generators(n);
        let mode = StabilizerMode::GeneratorSubset((0..n - 1).collect());
        let scheme = stabilizer_scheme::<f64>(&spec, &mode, 100).unwrap();
        let o = common::ghz_target(n).fidelity_observable();
        let sol = solve_saddle(&o, &scheme, &SolverConfig::default()).unwrap();
        assert!((sol.risk - 0.5).abs() < 1e-3);
    }
}

#[test]
fn f32_solver_agrees_with_f64() {
    let t32 = PureState::<f32>::basis(1, 2).unwrap();
    let z = pauli_povm::<f32>(&"Z".parse().unwrap(), Granularity::Sign).unwrap();
    let scheme = MeasurementScheme::new(vec![z], vec![100], vec!["Z".into()]).unwrap();
    let cfg = SolverConfig {
        gap_tol: 1e-3,
        inner_tol: 1e-6,
        ..SolverConfig::default()
    };
    let sol = solve_saddle(&t32.fidelity_observable(), &scheme, &cfg).unwrap();
    assert!((sol.risk as f64 - 0.1333).abs() < 2e-3, "{}", sol.risk);
}

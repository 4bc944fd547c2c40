use super::*;
use crate::quantum::{cr, PauliString, PureState};
use crate::schemes::{pauli_povm, Granularity};

fn bernoulli(reps: usize) -> (Observable<f64>, MeasurementScheme<f64>) {
    let target = PureState::<f64>::basis(1, 2).unwrap();
    (target.fidelity_observable(), single_setting("Z", reps))
}

fn single_setting(pauli: &str, reps: usize) -> MeasurementScheme<f64> {
    let povm = pauli_povm(&pauli.parse::<PauliString>().unwrap(), Granularity::Sign).unwrap();
    MeasurementScheme::new(vec![povm], vec![reps], vec![pauli.into()]).unwrap()
}

fn basis(i: usize) -> DensityMatrix<f64> {
    PureState::basis(i, 2).unwrap().density()
}

fn plus_minus(sign: f64) -> DensityMatrix<f64> {
    let v = nalgebra::DVector::from_vec(vec![cr(1.0), cr(sign)]);
    PureState::normalized(v).unwrap().density()
}

#[test]
fn theta_values() {
    assert!((theta(0.05).unwrap() - 4.58).abs() < 0.005);
    assert!((theta(0.25 / 64.0).unwrap() - 3.0).abs() < 1e-14);
    assert!(theta(0.25).is_err());
    assert!(theta(0.0).is_err());
}

#[test]
fn phi_value_at_zero_phi() {
    let (o, s) = bernoulli(100);
    let zero = vec![vec![0.0, 0.0]];
    let v = phi_value(&basis(1), &basis(0), &zero, 0.3, &s, &o, 0.05).unwrap();
    assert!((v - (1.0 + 0.6 * 40f64.ln())).abs() < 1e-12);
    let v = phi_value(&basis(1), &basis(1), &zero, 0.3, &s, &o, 0.05).unwrap();
    assert!((v - 0.6 * 40f64.ln()).abs() < 1e-12);
}

#[test]
fn phi_value_matches_scalar_formula() {
    let (o, s) = bernoulli(100);
    let lam = 1e-6;
    for t in [-3.0, 0.0, 0.7, 25.0] {
        let phi = vec![vec![0.0, t]];
        let v = phi_value(&basis(1), &basis(0), &phi, 1.0, &s, &o, 0.05).unwrap();
        let (small, big) = (lam / 2.0, 1.0 - lam / 2.0);
        let want = 1.0
            + 2.0 * 40f64.ln()
            + 100.0 * ((small + (-t as f64).exp() * big).ln() + (big + t.exp() * small).ln());
        assert!((v - want).abs() < 1e-9 * want.abs().max(1.0), "{v} vs {want}");
    }
}

#[test]
fn phi_value_rejects_bad_input() {
    let (o, s) = bernoulli(100);
    let zero = vec![vec![0.0, 0.0]];
    assert!(phi_value(&basis(1), &basis(0), &zero, 0.0, &s, &o, 0.05).is_err());
    assert!(phi_value(&basis(1), &basis(0), &[vec![0.0]], 1.0, &s, &o, 0.05).is_err());
    let big = DensityMatrix::<f64>::maximally_mixed(4);
    assert!(phi_value(&big, &basis(0), &zero, 1.0, &s, &o, 0.05).is_err());
}

#[test]
fn reduced_constraint_examples() {
    let s = single_setting("Z", 1);
    assert!(reduced_constraint(&basis(0), &basis(0), &s).unwrap().abs() < 1e-12);
    let g = reduced_constraint(&basis(0), &basis(1), &s).unwrap();
    let lam: f64 = 1e-6;
    let want = (2.0 * (lam / 2.0 * (1.0 - lam / 2.0)).sqrt()).ln();
    assert!((g - want).abs() < 1e-9 && g < -6.0);
    let bare = Regularization {
        mix_lambda: 0.0,
        prob_floor: 1e-12,
    };
    let g = reduced_constraint_regularized(&basis(0), &basis(1), &s, &bare).unwrap();
    assert!((g - (2.0 * 1e-12f64.sqrt()).ln()).abs() < 1e-9);
    let s7 = single_setting("Z", 7);
    let g = reduced_constraint(&plus_minus(1.0), &plus_minus(-1.0), &s7).unwrap();
    assert!(g.abs() < 1e-12);
}

#[test]
fn config_validation() {
    assert!(SolverConfig::with_epsilon(0.25).validate().is_err());
    assert!(SolverConfig::with_epsilon(0.0).validate().is_err());
    let mut c = SolverConfig::default();
    c.gap_tol = 0.0;
    assert!(c.validate().is_err());
    let mut c = SolverConfig::default();
    c.mix_lambda = 1.0;
    assert!(c.validate().is_err());
    SolverConfig::default().validate().unwrap();
}

#[test]
fn bernoulli_estimator() {
    let (o, scheme) = bernoulli(100);
    let sol = solve_saddle(&o, &scheme, &SolverConfig::with_epsilon(0.05)).unwrap();
    let art = extract_estimator(&sol, &scheme, &o, 0.05).unwrap();
    let a = &art.coefficients[0];
    let weight = (a[1] - a[0]) * 100.0;
    let constant = art.constant + 100.0 * a[0];
    assert!(sol.converged);
    assert!(sol.gap_certificate <= 1e-4);
    assert!((weight - 0.952).abs() < 0.01, "{weight}");
    assert!((constant - 0.024).abs() < 0.01, "{constant}");
    assert!((sol.risk - sol.objective_upper / 2.0).abs() < 1e-15);
    assert!(sol.objective_upper >= sol.objective_lower);
    assert_eq!(sol.diagnostics_csv().lines().count(), sol.diagnostics.len() + 1);
}

#[test]
fn many_shots_remove_bias() {
    let (o, scheme) = bernoulli(1_000_000);
    let sol = solve_saddle(&o, &scheme, &SolverConfig::with_epsilon(0.05)).unwrap();
    let art = extract_estimator(&sol, &scheme, &o, 0.05).unwrap();
    let a = &art.coefficients[0];
    let r = 1e6;
    assert!(((a[1] - a[0]) * r - 1.0).abs() < 0.005);
    assert!((art.constant + r * a[0]).abs() < 0.005);
}

#[test]
fn uninformative_scheme_gives_flat_estimator() {
    let o = PureState::<f64>::basis(0, 2).unwrap().fidelity_observable();
    let scheme = single_setting("X", 100);
    let sol = solve_saddle(&o, &scheme, &SolverConfig::default()).unwrap();
    assert!((sol.risk - 0.5).abs() < 1e-3);
    let art = extract_estimator(&sol, &scheme, &o, 0.05).unwrap();
    assert!(art.coefficients[0].iter().all(|a| a.abs() < 1e-3));
    assert!((art.constant - 0.5).abs() < 1e-3);
}

#[test]
fn equal_states_give_zero_coefficients() {
    let s = single_setting("Z", 10);
    let chi = plus_minus(1.0).mix(&basis(0), 0.3).unwrap();
    let phi = closed_form_phi(&chi, &chi, 0.2, &s, &Regularization::default()).unwrap();
    assert!(phi[0].iter().all(|&v| v.abs() < 1e-15));
}

#[test]
fn certify_gap_examples() {
    let (o, scheme) = bernoulli(100);
    let sol = solve_saddle(&o, &scheme, &SolverConfig::default()).unwrap();
    let gap = certify_gap(&sol, &o, &scheme, 0.05).unwrap();
    assert!(gap <= 1e-4 && gap >= -1e-9, "{gap}");
    let mut bumped = sol.clone();
    bumped.phi[0][1] += 0.1;
    let worse = certify_gap(&bumped, &o, &scheme, 0.05).unwrap();
    assert!(worse > gap);
}

#[test]
fn unconverged_solution_is_rejected_unless_forced() {
    let (o, scheme) = bernoulli(100);
    let config = SolverConfig {
        max_outer_iters: 1,
        max_inner_iters: 2,
        ..SolverConfig::default()
    };
    let sol = solve_saddle(&o, &scheme, &config).unwrap();
    assert!(!sol.converged);
    assert!(matches!(
        extract_estimator(&sol, &scheme, &o, 0.05),
        Err(Error::NotConverged { .. })
    ));
    let art = extract_estimator_forced(&sol, &scheme, &o, 0.05).unwrap();
    assert!(art.risk >= 0.0);
}

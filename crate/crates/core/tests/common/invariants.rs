//! Solver invariant checks shared by the invariant tests and the
//! acceptance run. Each returns a short summary or the first violation.

use minimax_fidelity::quantum::{
    born_distribution, depolarize, random_density_matrix, random_pure_state,
    swap_operator, DensityMatrix, Observable,
};
use minimax_fidelity::schemes::{random_rank1_scheme, target_basis_scheme, Granularity, MeasurementScheme};
use minimax_fidelity::solver::{phi_value, reduced_constraint, solve_saddle, theta, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

const EPS: f64 = 0.05;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn random_observable(dim: usize, seed: u64) -> Observable<f64> {
    let a = random_density_matrix::<f64>(dim, dim, seed).unwrap();
    let b = random_density_matrix::<f64>(dim, 1, seed + 1000).unwrap();
    Observable::new(a.matrix() * nalgebra::Complex::new(2.0, 0.0) - b.matrix()).unwrap()
}

fn random_phi(rng: &mut ChaCha8Rng, scheme: &MeasurementScheme<f64>) -> Vec<Vec<f64>> {
    scheme
        .outcome_counts()
        .iter()
        .map(|&n| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect()
}

pub fn concavity_in_states() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = f64::INFINITY;
    for t in 0..50u64 {
        let scheme = random_rank1_scheme::<f64>(1, 2, 3, 20, t).unwrap();
        let o = random_observable(2, t);
        let c1 = random_density_matrix(2, 1 + (t as usize % 2), 3 * t + 7).unwrap();
        let c1p = random_density_matrix(2, 1, 3 * t + 8).unwrap();
        let c2 = random_density_matrix(2, 2, 3 * t + 9).unwrap();
        let mid = c1.mix(&c1p, 0.5).unwrap();
        let phi = random_phi(&mut rng, &scheme);
        let alpha = rng.random_range(0.05..2.0);
        let f = |x: &DensityMatrix<f64>, y: &DensityMatrix<f64>| {
            phi_value(x, y, &phi, alpha, &scheme, &o, EPS).unwrap()
        };
        let s1 = f(&mid, &c2) - 0.5 * (f(&c1, &c2) + f(&c1p, &c2));
        let s2 = f(&c2, &mid) - 0.5 * (f(&c2, &c1) + f(&c2, &c1p));
        worst = worst.min(s1).min(s2);
        ensure(s1 >= -1e-9 && s2 >= -1e-9, || format!("tuple {t}: midpoint deficit {}", s1.min(s2)))?;
    }
    Ok(format!("50 tuples, min midpoint slack {worst:.2e}"))
}

pub fn convexity_in_phi_alpha() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = f64::INFINITY;
    for t in 0..50u64 {
        let scheme = random_rank1_scheme::<f64>(1, 2, 2, 30, t).unwrap();
        let o = random_observable(2, t + 50);
        let c1 = random_density_matrix(2, 2, t + 100).unwrap();
        let c2 = random_density_matrix(2, 1, t + 200).unwrap();
        let (p, q) = (random_phi(&mut rng, &scheme), random_phi(&mut rng, &scheme));
        let (a, b) = (rng.random_range(0.01..3.0), rng.random_range(0.01..3.0));
        let pm: Vec<Vec<f64>> = p
            .iter()
            .zip(&q)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| 0.5 * (u + v)).collect())
            .collect();
        let f = |phi: &[Vec<f64>], alpha: f64| phi_value(&c1, &c2, phi, alpha, &scheme, &o, EPS).unwrap();
        let slack = 0.5 * (f(&p, a) + f(&q, b)) - f(&pm, 0.5 * (a + b));
        worst = worst.min(slack);
        ensure(slack >= -1e-9, || format!("tuple {t}: midpoint excess {}", -slack))?;
    }
    Ok(format!("50 tuples, min midpoint slack {worst:.2e}"))
}

/// Gradient descent over `phi` with distributions computed independently of
/// the library's closed form.
fn minimize_over_phi(p1: &[Vec<f64>], p2: &[Vec<f64>], reps: &[usize], alpha: f64) -> f64 {
    let mut total = 0.0;
    for ((a, b), &r) in p1.iter().zip(p2).zip(reps) {
        let r = r as f64;
        let sums = |phi: &[f64]| -> (f64, f64) {
            (
                phi.iter().zip(a).map(|(f, p)| (-f / alpha).exp() * p).sum(),
                phi.iter().zip(b).map(|(f, p)| (f / alpha).exp() * p).sum(),
            )
        };
        let mut phi: Vec<f64> = vec![0.0; a.len()];
        let step = alpha / (2.0 * r);
        for _ in 0..2_000_000 {
            let (s1, s2) = sums(&phi);
            let grad: Vec<f64> = phi
                .iter()
                .zip(a.iter().zip(b))
                .map(|(f, (pa, pb))| r * ((f / alpha).exp() * pb / s2 - (-f / alpha).exp() * pa / s1))
                .collect();
            if grad.iter().map(|g| g * g).sum::<f64>().sqrt() < 1e-8 {
                break;
            }
            for (f, g) in phi.iter_mut().zip(&grad) {
                *f -= step * g;
            }
        }
        let (s1, s2) = sums(&phi);
        total += alpha * r * (s1.ln() + s2.ln());
    }
    total
}

pub fn closed_form_inner_minimum() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for t in 0..20u64 {
        let reps = rng.random_range(1..40);
        let scheme = random_rank1_scheme::<f64>(1, 2, 2 + (t as usize % 2), reps, t + 300).unwrap();
        let c1 = random_density_matrix::<f64>(2, 2, t + 500).unwrap();
        let c2 = random_density_matrix::<f64>(2, 2, t + 600).unwrap();
        let alpha = rng.random_range(0.05..1.5);
        let probs = |c: &DensityMatrix<f64>| -> Vec<Vec<f64>> {
            let shrunk = depolarize(c, 1e-6).unwrap();
            scheme.povms().iter().map(|p| born_distribution(p, &shrunk).unwrap()).collect()
        };
        let direct = minimize_over_phi(&probs(&c1), &probs(&c2), scheme.repetitions(), alpha);
        let g = reduced_constraint(&c1, &c2, &scheme).unwrap();
        let err = (direct - 2.0 * alpha * g).abs();
        worst = worst.max(err);
        ensure(err < 1e-5, || format!("problem {t}: direct vs closed form differ by {err:.2e}"))?;
    }
    Ok(format!("20 problems, max deviation {worst:.2e}"))
}

fn solved_risk(o: &Observable<f64>, scheme: &MeasurementScheme<f64>) -> Result<f64, String> {
    let sol = solve_saddle(o, scheme, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let (lo, hi) = o.spectral_range();
    ensure(sol.converged, || format!("gap {:.2e} not certified", sol.gap_certificate))?;
    ensure(sol.risk >= 0.0 && sol.risk <= (hi - lo) / 2.0 + 1e-4, || {
        format!("risk {} outside [0, {}]", sol.risk, (hi - lo) / 2.0)
    })?;
    ensure(sol.objective_upper >= sol.objective_lower, || "bracket inverted".into())?;
    Ok(sol.risk)
}

pub fn risk_bounds() -> Check {
    let mut count = 0;
    for seed in 0..4 {
        let t = random_pure_state::<f64>(1 + seed as usize % 2, seed).unwrap();
        let n = t.dim().trailing_zeros() as usize;
        let scheme = random_rank1_scheme::<f64>(n, 3, t.dim(), 50, seed).unwrap();
        let r = solved_risk(&t.fidelity_observable(), &scheme)?;
        ensure(r <= 0.5 + 1e-4, || format!("fidelity risk {r} above 1/2"))?;
        solved_risk(&random_observable(t.dim(), seed + 9), &scheme)?;
        count += 2;
    }
    let swap = Observable::new(swap_operator(2)).unwrap();
    solved_risk(&swap, &super::pauli_scheme(&["XX", "YY", "ZZ"], 100, Granularity::Sign))?;
    Ok(format!("{} problems within spectral bounds", count + 1))
}

/// Doubling all repetitions never raises the risk beyond `gap_tol`.
pub fn monotone_in_shots(problems: u64) -> Check {
    let cfg = SolverConfig::default();
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..problems {
        let t = random_pure_state::<f64>(1 + seed as usize % 2, seed + 70).unwrap();
        let n = t.dim().trailing_zeros() as usize;
        let scheme = random_rank1_scheme::<f64>(n, 1 + seed as usize % 3, t.dim(), 10 + 5 * seed as usize, seed).unwrap();
        let doubled = scheme.map_repetitions(|r| 2 * r).unwrap();
        let o = t.fidelity_observable();
        let r1 = solve_saddle(&o, &scheme, &cfg).map_err(|e| e.to_string())?.risk;
        let r2 = solve_saddle(&o, &doubled, &cfg).map_err(|e| e.to_string())?.risk;
        worst = worst.max(r2 - r1);
        ensure(r2 <= r1 + cfg.gap_tol, || format!("problem {seed}: {r2} > {r1}"))?;
    }
    Ok(format!("{problems} problems, max increase {worst:.2e}"))
}

pub fn theta_increasing() -> Check {
    let vals: Vec<f64> = (1..=100).map(|i| theta(0.25 * i as f64 / 101.0).unwrap()).collect();
    ensure(vals.windows(2).all(|w| w[1] > w[0]), || "theta not increasing".into())?;
    Ok("100-point grid".into())
}

pub fn target_basis_complexity() -> Check {
    let mut worst = 0.0f64;
    for reps in [50usize, 100, 400] {
        for seed in 0..4u64 {
            let t = random_pure_state::<f64>(1 + seed as usize % 2, seed * 31 + reps as u64).unwrap();
            let scheme = target_basis_scheme(&t, reps).unwrap();
            let risk = solved_risk(&t.fidelity_observable(), &scheme)?;
            let bound = ((2.0 / EPS).ln() / (2.0 * reps as f64)).sqrt() * 1.1;
            worst = worst.max(risk / bound);
            ensure(risk <= bound, || format!("R={reps}: risk {risk} above {bound}"))?;
        }
    }
    Ok(format!("12 targets, max risk/bound {worst:.3}"))
}

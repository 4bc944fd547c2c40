use super::ascent::{maximize, AscentOptions};
use super::problem::{JointObjective, Problem, Regularization, SideObjective};
use super::SolverConfig;
use crate::error::{Error, Result};
use crate::quantum::{cr, hermitian_eigh, identity, projector, ComplexMatrix, DensityMatrix, Observable};
use crate::scalar::Scalar;
use crate::schemes::MeasurementScheme;

/// One outer iteration of the `ln alpha` search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticRow {
    pub iteration: usize,
    pub alpha: f64,
    pub objective_lower: f64,
    pub objective_upper: f64,
    pub gap: f64,
    pub inner_iterations: usize,
}

impl DiagnosticRow {
    pub const CSV_HEADER: &'static str =
        "iteration,alpha,objective_lower,objective_upper,gap,inner_iterations";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{:e},{:e},{:e},{:e},{}",
            self.iteration,
            self.alpha,
            self.objective_lower,
            self.objective_upper,
            self.gap,
            self.inner_iterations
        )
    }
}

#[derive(Debug, Clone)]
pub struct SaddleSolution<T: Scalar> {
    pub chi1: DensityMatrix<T>,
    pub chi2: DensityMatrix<T>,
    pub alpha: T,
    /// One vector per setting, indexed like the POVM effects.
    pub phi: Vec<Vec<T>>,
    /// Half of `objective_upper`.
    pub risk: T,
    pub constant: T,
    pub gap_certificate: T,
    pub objective_upper: T,
    pub objective_lower: T,
    pub converged: bool,
    pub gap_tol: f64,
    pub epsilon: f64,
    pub regularization: Regularization,
    pub diagnostics: Vec<DiagnosticRow>,
}

impl<T: Scalar> SaddleSolution<T> {
    pub fn diagnostics_csv(&self) -> String {
        let mut out = String::from(DiagnosticRow::CSV_HEADER);
        out.push('\n');
        for row in &self.diagnostics {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }
}

struct Probe<T: Scalar> {
    log_alpha: f64,
    alpha: T,
    chi: Vec<ComplexMatrix<T>>,
    h: T,
    phi: Vec<Vec<T>>,
    constant: T,
    upper: T,
    lower: T,
    inner_iterations: usize,
}

struct Engine<'a, T: Scalar> {
    problem: &'a Problem<T>,
    joint_opts: AscentOptions,
    side_opts: AscentOptions,
}

impl<'a, T: Scalar> Engine<'a, T> {
    fn new(problem: &'a Problem<T>, config: &SolverConfig) -> Self {
        let joint_opts = AscentOptions {
            max_iters: config.max_inner_iters,
            fw_tol: config.inner_tol.max(config.gap_tol * 1e-3),
            pg_tol: 1e-7,
            check_every: 10,
        };
        let side_opts = AscentOptions {
            fw_tol: config.inner_tol.max(config.gap_tol * 1e-3),
            ..joint_opts
        };
        Self {
            problem,
            joint_opts,
            side_opts,
        }
    }

    fn probe(&self, log_alpha: f64, start: Vec<ComplexMatrix<T>>) -> Probe<T> {
        let alpha = T::lit(log_alpha.exp());
        let joint = JointObjective {
            problem: self.problem,
            alpha,
        };
        let res = maximize(&joint, start, &self.joint_opts);
        let h = res.value + T::lit(2.0) * alpha * self.problem.log_two_over_eps;
        let (phi, constant, upper) = self.upper_bound(&res.xs, alpha);
        let lower = scaled_lower(self.problem, &res.xs[0], &res.xs[1]);
        Probe {
            log_alpha,
            alpha,
            chi: res.xs,
            h,
            phi,
            constant,
            upper,
            lower,
            inner_iterations: res.iterations,
        }
    }

    /// Closed-form `phi` at the pair, the matching constant, and a certified
    /// upper bound on the saddle value valid for that `(phi, alpha, c)`.
    fn upper_bound(&self, chi: &[ComplexMatrix<T>], alpha: T) -> (Vec<Vec<T>>, T, T) {
        let pr = self.problem;
        let phi = pr.closed_form_phi(&pr.probs(&chi[0]), &pr.probs(&chi[1]), alpha);
        let constant =
            (pr.functional_value(&chi[0]) + pr.functional_value(&chi[1])) * T::lit(0.5);
        let upper = certified_upper(pr, &phi, alpha, constant, chi, &self.side_opts);
        (phi, constant, upper)
    }
}

/// `2 max(c + U2, U1 - c) + 2 alpha ln(2/eps)` with `U1`, `U2` the certified
/// maxima of the two separable halves. Twice the worst-case deviation of
/// the affine estimator `(phi, c)` at confidence `1 - eps`.
fn certified_upper<T: Scalar>(
    pr: &Problem<T>,
    phi: &[Vec<T>],
    alpha: T,
    constant: T,
    start: &[ComplexMatrix<T>],
    opts: &AscentOptions,
) -> T {
    let s1 = SideObjective::new(pr, phi, alpha, true);
    let s2 = SideObjective::new(pr, phi, alpha, false);
    let r1 = maximize(&s1, vec![start[0].clone()], opts);
    let r2 = maximize(&s2, vec![start[1].clone()], opts);
    let u1 = r1.value + r1.fw_gap;
    let u2 = r2.value + r2.fw_gap;
    let two = T::lit(2.0);
    let side = if constant + u2 > u1 - constant {
        constant + u2
    } else {
        u1 - constant
    };
    two * side + two * alpha * pr.log_two_over_eps
}

/// Value of a feasible pair: both states are pulled toward their midpoint
/// until `g >= ln(eps/2)`, which concavity of `g` guarantees is reachable.
fn scaled_lower<T: Scalar>(pr: &Problem<T>, chi1: &ComplexMatrix<T>, chi2: &ComplexMatrix<T>) -> T {
    let diff = pr.functional_value(chi1) - pr.functional_value(chi2);
    let bound = -pr.log_two_over_eps;
    let feasible = |t: T| {
        let mid = (chi1 + chi2) * cr(T::lit(0.5));
        let a = chi1 * cr(T::one() - t) + &mid * cr(t);
        let b = chi2 * cr(T::one() - t) + &mid * cr(t);
        pr.reduced_constraint(&pr.probs(&a), &pr.probs(&b)) >= bound
    };
    let t = if feasible(T::zero()) {
        T::zero()
    } else {
        let (mut lo, mut hi) = (T::zero(), T::one());
        for _ in 0..60 {
            let mid = (lo + hi) * T::lit(0.5);
            if feasible(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let v = diff * (T::one() - t);
    if v > T::zero() {
        v
    } else {
        T::zero()
    }
}

fn initial_pair<T: Scalar>(functional: &ComplexMatrix<T>) -> Vec<ComplexMatrix<T>> {
    let d = functional.nrows();
    let (_, vecs) = hermitian_eigh(functional);
    let mixed = identity::<T>(d) * cr(T::lit(0.1) / T::from_usize_lossy(d));
    let top = projector(&vecs.column(d - 1).into_owned()) * cr(T::lit(0.9)) + &mixed;
    let bottom = projector(&vecs.column(0).into_owned()) * cr(T::lit(0.9)) + &mixed;
    vec![top, bottom]
}

/// Solves the saddle-point program to a certified bracket. A solution whose
/// bracket is wider than `gap_tol` is still returned, with
/// `converged == false`.
pub fn solve_saddle<T: Scalar>(
    functional: &Observable<T>,
    scheme: &MeasurementScheme<T>,
    config: &SolverConfig,
) -> Result<SaddleSolution<T>> {
    config.validate()?;
    let reg = config.regularization();
    let problem = Problem::new(functional, scheme, config.epsilon, &reg)?;
    let engine = Engine::new(&problem, config);
    let init = initial_pair(&problem.functional);

    let mut probes: Vec<Probe<T>> = Vec::new();
    let mut diagnostics = Vec::new();
    let evaluate = |la: f64, probes: &mut Vec<Probe<T>>| -> T {
        let start = probes
            .iter()
            .min_by(|a, b| {
                (a.log_alpha - la)
                    .abs()
                    .partial_cmp(&(b.log_alpha - la).abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|p| p.chi.clone())
            .unwrap_or_else(|| init.clone());
        let p = engine.probe(la, start);
        let h = p.h;
        probes.push(p);
        h
    };

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = config.alpha_log_range;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = evaluate(x1, &mut probes);
    let mut f2 = evaluate(x2, &mut probes);
    let mut iteration = 0;
    while iteration < config.max_outer_iters {
        iteration += 1;
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = evaluate(x1, &mut probes);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = evaluate(x2, &mut probes);
        }
        let (upper, lower) = bracket(&probes);
        let last = probes.last().expect("probe recorded");
        diagnostics.push(DiagnosticRow {
            iteration,
            alpha: last.alpha.as_f64(),
            objective_lower: lower.as_f64(),
            objective_upper: upper.as_f64(),
            gap: (upper - lower).as_f64(),
            inner_iterations: last.inner_iterations,
        });
        if b - a < config.log_alpha_tol {
            break;
        }
    }

    let tol = T::lit(config.gap_tol);
    let best = select(&probes, tol);
    let p = &probes[best];
    let gap = p.upper - p.lower;
    let gap = if gap > T::zero() { gap } else { T::zero() };
    Ok(SaddleSolution {
        chi1: DensityMatrix::from_matrix_unchecked(p.chi[0].clone()),
        chi2: DensityMatrix::from_matrix_unchecked(p.chi[1].clone()),
        alpha: p.alpha,
        phi: p.phi.clone(),
        risk: p.upper * T::lit(0.5),
        constant: p.constant,
        gap_certificate: gap,
        objective_upper: p.upper,
        objective_lower: p.lower,
        converged: gap <= tol,
        gap_tol: config.gap_tol,
        epsilon: config.epsilon,
        regularization: reg,
        diagnostics,
    })
}

fn bracket<T: Scalar>(probes: &[Probe<T>]) -> (T, T) {
    let upper = probes
        .iter()
        .map(|p| p.upper)
        .fold(probes[0].upper, |a, b| if b < a { b } else { a });
    let lower = probes
        .iter()
        .map(|p| p.lower)
        .fold(probes[0].lower, |a, b| if b > a { b } else { a });
    (upper, lower)
}

/// Among probes whose upper bound is within `tol / 4` of the best, the one
/// whose own pair is closest to feasible-optimal.
fn select<T: Scalar>(probes: &[Probe<T>], tol: T) -> usize {
    let (best_upper, _) = bracket(probes);
    let slack = tol * T::lit(0.25);
    let mut pick = 0;
    let mut pick_lower = None;
    for (i, p) in probes.iter().enumerate() {
        if p.upper > best_upper + slack {
            continue;
        }
        if pick_lower.is_none_or(|l| p.lower > l) {
            pick = i;
            pick_lower = Some(p.lower);
        }
    }
    pick
}

/// Recomputes the bracket of a candidate: a fresh certified inner
/// maximization at its `(phi, alpha, constant)` for the upper end and the
/// feasible rescaling of its states for the lower end.
pub fn certify_gap<T: Scalar>(
    solution: &SaddleSolution<T>,
    functional: &Observable<T>,
    scheme: &MeasurementScheme<T>,
    epsilon: f64,
) -> Result<T> {
    let problem = Problem::new(functional, scheme, epsilon, &solution.regularization)?;
    problem.check_dim(solution.chi1.matrix())?;
    problem.check_dim(solution.chi2.matrix())?;
    problem.check_phi(&solution.phi)?;
    if solution.alpha <= T::zero() {
        return Err(Error::InvalidParameter("alpha must be positive".into()));
    }
    let opts = AscentOptions {
        max_iters: 50_000,
        fw_tol: 1e-10,
        pg_tol: 1e-9,
        check_every: 10,
    };
    let chi = [solution.chi1.matrix().clone(), solution.chi2.matrix().clone()];
    let upper = certified_upper(
        &problem,
        &solution.phi,
        solution.alpha,
        solution.constant,
        &chi,
        &opts,
    );
    let lower = scaled_lower(&problem, &chi[0], &chi[1]);
    let gap = upper - lower;
    Ok(if gap > T::zero() { gap } else { T::zero() })
}


//! Accelerated projected gradient ascent over products of density-matrix
//! sets, with a Frank-Wolfe duality gap as the stopping certificate.

use super::spectraplex::{max_linear, project_density};
use crate::quantum::{cr, trace_product_re, ComplexMatrix};
use crate::scalar::Scalar;

pub(crate) trait ConcaveObjective<T: Scalar> {
    fn value(&self, xs: &[ComplexMatrix<T>]) -> T;
    /// Value and gradient (one Hermitian matrix per block) with respect to
    /// the real inner product `Re tr(A B)`.
    fn value_grad(&self, xs: &[ComplexMatrix<T>]) -> (T, Vec<ComplexMatrix<T>>);
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct AscentOptions {
    pub max_iters: usize,
    /// Stop once the Frank-Wolfe gap falls below this.
    pub fw_tol: f64,
    /// Stop once the gradient-mapping norm falls below this.
    pub pg_tol: f64,
    pub check_every: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct AscentResult<T: Scalar> {
    pub xs: Vec<ComplexMatrix<T>>,
    pub value: T,
    /// `value + fw_gap` bounds the maximum from above.
    pub fw_gap: T,
    pub iterations: usize,
}

fn inner<T: Scalar>(a: &[ComplexMatrix<T>], b: &[ComplexMatrix<T>]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + trace_product_re(x, y))
}

fn diff<T: Scalar>(a: &[ComplexMatrix<T>], b: &[ComplexMatrix<T>]) -> Vec<ComplexMatrix<T>> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Frank-Wolfe gap `sum_b lambda_max(G_b) - <G_b, x_b>`; never negative up
/// to rounding.
pub(crate) fn frank_wolfe_gap<T: Scalar>(xs: &[ComplexMatrix<T>], grads: &[ComplexMatrix<T>]) -> T {
    let g = xs
        .iter()
        .zip(grads)
        .fold(T::zero(), |acc, (x, g)| acc + max_linear(g) - trace_product_re(g, x));
    if g < T::zero() {
        T::zero()
    } else {
        g
    }
}

pub(crate) fn maximize<T: Scalar, F: ConcaveObjective<T>>(
    obj: &F,
    start: Vec<ComplexMatrix<T>>,
    opts: &AscentOptions,
) -> AscentResult<T> {
    let mut x: Vec<ComplexMatrix<T>> = start.iter().map(project_density).collect();
    let (mut fx, gx) = obj.value_grad(&x);
    let mut fw = frank_wolfe_gap(&x, &gx);
    if fw.as_f64() <= opts.fw_tol {
        return AscentResult {
            xs: x,
            value: fx,
            fw_gap: fw,
            iterations: 0,
        };
    }
    let mut y = x.clone();
    let (mut fy, mut gy) = (fx, gx);
    let mut momentum = T::one();
    let mut step = T::one();
    let min_step = T::lit(1e-30);
    let two = T::lit(2.0);
    let mut iterations = 0;

    for it in 1..=opts.max_iters {
        iterations = it;
        // backtracking on the quadratic lower model at y
        let (xn, fxn) = loop {
            let cand: Vec<ComplexMatrix<T>> = y
                .iter()
                .zip(&gy)
                .map(|(yb, gb)| project_density(&(yb + gb * cr(step))))
                .collect();
            let fc = obj.value(&cand);
            let d = diff(&cand, &y);
            let model = fy + inner(&gy, &d) - inner(&d, &d) / (two * step);
            if fc.as_f64().is_finite() && fc >= model - T::lit(1e-15) * (T::one() + fy.abs()) {
                break (cand, fc);
            }
            step /= two;
            if step < min_step {
                break (cand, fc);
            }
        };
        let mapping = diff(&xn, &y);
        let mapping_norm = inner(&mapping, &mapping).sqrt() / step;

        if fxn < fx {
            // momentum overshot: restart from x
            if momentum > T::one() {
                momentum = T::one();
                y = x.clone();
                let (v, g) = obj.value_grad(&y);
                fy = v;
                gy = g;
                continue;
            }
            // plain gradient step failed to ascend: at numerical optimum
            let (_, g) = obj.value_grad(&x);
            fw = frank_wolfe_gap(&x, &g);
            break;
        }

        let x_prev = std::mem::replace(&mut x, xn);
        fx = fxn;
        let next = (T::one() + (T::one() + T::lit(4.0) * momentum * momentum).sqrt()) / two;
        let beta = (momentum - T::one()) / next;
        momentum = next;
        y = x
            .iter()
            .zip(&x_prev)
            .map(|(a, b)| project_density(&(a + (a - b) * cr(beta))))
            .collect();
        let (v, g) = obj.value_grad(&y);
        fy = v;
        gy = g;
        step *= two;

        let small_mapping = mapping_norm.as_f64() < opts.pg_tol;
        if it % opts.check_every == 0 || small_mapping || it == opts.max_iters {
            let (_, g) = obj.value_grad(&x);
            fw = frank_wolfe_gap(&x, &g);
            if fw.as_f64() <= opts.fw_tol {
                break;
            }
            if small_mapping && momentum > T::lit(1e6) {
                break;
            }
        }
    }
    AscentResult {
        xs: x,
        value: fx,
        fw_gap: fw,
        iterations,
    }
}

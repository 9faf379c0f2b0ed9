//! Meta-model features: ordinary-least-squares fits of four regression
//! models on the sample and summaries of their coefficients and fit quality.

use ndarray::{Array1, Array2, ArrayView2};

use crate::linalg::least_squares;
use crate::util::mean;
use crate::{cst, Real, Result};

/// Columns of one regression design matrix, leading intercept included.
enum Model {
    Linear,
    LinearInteractions,
    Quadratic,
    QuadraticInteractions,
}

impl Model {
    fn column_count(&self, d: usize) -> usize {
        let pairs = d * (d - 1) / 2;
        1 + match self {
            Model::Linear => d,
            Model::LinearInteractions => d + pairs,
            Model::Quadratic => 2 * d,
            Model::QuadraticInteractions => 2 * d + pairs,
        }
    }

    fn build<T: Real>(&self, x: &ArrayView2<T>) -> Array2<T> {
        let (m, d) = x.dim();
        let mut a = Array2::zeros((m, self.column_count(d)));
        for i in 0..m {
            let mut c = 0;
            a[(i, c)] = T::one();
            c += 1;
            for j in 0..d {
                a[(i, c)] = x[(i, j)];
                c += 1;
            }
            if matches!(self, Model::Quadratic | Model::QuadraticInteractions) {
                for j in 0..d {
                    a[(i, c)] = x[(i, j)] * x[(i, j)];
                    c += 1;
                }
            }
            if matches!(self, Model::LinearInteractions | Model::QuadraticInteractions) {
                for j in 0..d {
                    for k in j + 1..d {
                        a[(i, c)] = x[(i, j)] * x[(i, k)];
                        c += 1;
                    }
                }
            }
        }
        a
    }
}

struct Fit<T> {
    beta: Array1<T>,
    adj_r2: Option<T>,
}

fn fit_model<T: Real>(model: &Model, x: &ArrayView2<T>, y: &[T], ss_tot: T) -> Result<Fit<T>> {
    let a = model.build(x);
    let m = a.nrows();
    let p = a.ncols() - 1; // predictors, intercept not counted
    let yv = ndarray::ArrayView1::from(y);
    let beta = least_squares(&a.view(), &yv)?;
    let fitted = a.dot(&beta);
    let ss_res: T = y
        .iter()
        .zip(fitted.iter())
        .map(|(&yi, &fi)| (yi - fi) * (yi - fi))
        .sum();
    let adj_r2 = if m > p + 1 {
        let r2 = T::one() - ss_res / ss_tot;
        let ratio = cst::<T>((m - 1) as f64) / cst::<T>((m - p - 1) as f64);
        Some(T::one() - (T::one() - r2) * ratio)
    } else {
        None
    };
    Ok(Fit { beta, adj_r2 })
}

/// The nine ela_meta features. `None` everywhere when `y` is constant.
pub(super) fn ela_meta_impl<T: Real>(x: &ArrayView2<T>, y: &[T]) -> Result<[Option<T>; 9]> {
    let d = x.ncols();
    let ybar = mean(y);
    let ss_tot: T = y.iter().map(|&v| (v - ybar) * (v - ybar)).sum();
    if ss_tot == T::zero() {
        return Ok([None; 9]);
    }

    let lin = fit_model(&Model::Linear, x, y, ss_tot)?;
    let lin_int = fit_model(&Model::LinearInteractions, x, y, ss_tot)?;
    let quad = fit_model(&Model::Quadratic, x, y, ss_tot)?;
    let quad_int = fit_model(&Model::QuadraticInteractions, x, y, ss_tot)?;

    let abs_range = |beta: &Array1<T>, from: usize, to: usize| {
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for k in from..to {
            let a = beta[k].abs();
            lo = lo.min(a);
            hi = hi.max(a);
        }
        (lo, hi)
    };

    let (coef_min, coef_max) = abs_range(&lin.beta, 1, 1 + d);
    let max_by_min = if coef_min > T::zero() {
        Some(coef_max / coef_min)
    } else {
        None
    };
    // Quadratic-term coefficients sit right after the linear block.
    let (quad_min, quad_max) = abs_range(&quad.beta, 1 + d, 1 + 2 * d);
    let cond = if quad_min > T::zero() {
        Some(quad_max / quad_min)
    } else {
        None
    };

    Ok([
        lin.adj_r2,
        Some(lin.beta[0]),
        Some(coef_min),
        Some(coef_max),
        max_by_min,
        lin_int.adj_r2,
        quad.adj_r2,
        cond,
        quad_int.adj_r2,
    ])
}

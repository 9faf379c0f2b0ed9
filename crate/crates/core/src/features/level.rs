//! Level-set features: cross-validated misclassification rates of linear
//! and quadratic discriminant analysis separating below-quantile from
//! above-quantile points.

use ndarray::{Array1, Array2, ArrayView2};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::{cho_log_det, cho_solve, cholesky, forward_solve};
use crate::util::{quantile_sorted, sorted};
use crate::{cst, Real};

/// The label quantiles, in evaluation order.
pub const LEVEL_QUANTILES: [f64; 3] = [0.10, 0.25, 0.50];
const FOLDS: usize = 10;
/// Base ridge applied to near-singular class covariances, relative to
/// trace/d.
const RIDGE_SCALE: f64 = 1e-8;

/// mmce_lda, mmce_qda, lda_qda for each quantile; a quantile whose folds
/// cannot be fitted yields missing entries for its three features.
pub(super) fn ela_level_impl<T: Real>(
    x: &ArrayView2<T>,
    y: &[T],
    rng: &mut impl Rng,
) -> [Option<T>; 9] {
    let mut out = [None; 9];
    let sorted_y = sorted(y);
    for (qi, &q) in LEVEL_QUANTILES.iter().enumerate() {
        let threshold = quantile_sorted(&sorted_y, q);
        let labels: Vec<bool> = y.iter().map(|&v| v <= threshold).collect();
        let folds = stratified_folds(&labels, FOLDS, rng);
        if let Some((lda, qda)) = cross_validate(x, &labels, &folds) {
            out[3 * qi] = Some(lda);
            out[3 * qi + 1] = Some(qda);
            out[3 * qi + 2] = if qda > T::zero() { Some(lda / qda) } else { None };
        }
    }
    out
}

/// Stratified fold assignment: indices of each class are shuffled and dealt
/// round-robin, so fold class proportions match the sample's.
fn stratified_folds(labels: &[bool], folds: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut assignment = vec![0usize; labels.len()];
    for class in [true, false] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(rng);
        for (pos, i) in idx.into_iter().enumerate() {
            assignment[i] = pos % folds;
        }
    }
    assignment
}

struct ClassStats<T> {
    mean: Array1<T>,
    scatter: Array2<T>,
    count: usize,
}

fn class_stats<T: Real>(x: &ArrayView2<T>, rows: &[usize]) -> ClassStats<T> {
    let d = x.ncols();
    let mut mean = Array1::<T>::zeros(d);
    for &i in rows {
        for j in 0..d {
            mean[j] += x[(i, j)];
        }
    }
    let n = cst::<T>(rows.len() as f64);
    mean.mapv_inplace(|v| v / n);
    let mut scatter = Array2::<T>::zeros((d, d));
    let mut diff = vec![T::zero(); d];
    for &i in rows {
        for j in 0..d {
            diff[j] = x[(i, j)] - mean[j];
        }
        for a in 0..d {
            for b in a..d {
                let v = diff[a] * diff[b];
                scatter[(a, b)] += v;
                if a != b {
                    scatter[(b, a)] += v;
                }
            }
        }
    }
    ClassStats {
        mean,
        scatter,
        count: rows.len(),
    }
}

/// Cholesky with an escalating ridge on the diagonal; gives up after a few
/// decades so degenerate folds surface as missing features instead of
/// hanging or panicking.
fn chol_with_ridge<T: Real>(cov: &Array2<T>) -> Option<Array2<T>> {
    if let Some(l) = cholesky(&cov.view()) {
        return Some(l);
    }
    let d = cov.nrows();
    let trace: T = (0..d).map(|i| cov[(i, i)]).sum();
    if !(trace > T::zero()) {
        return None;
    }
    let mut ridge = cst::<T>(RIDGE_SCALE) * trace / cst::<T>(d as f64);
    for _ in 0..8 {
        let mut work = cov.clone();
        for i in 0..d {
            work[(i, i)] += ridge;
        }
        if let Some(l) = cholesky(&work.view()) {
            return Some(l);
        }
        ridge = ridge * cst::<T>(10.0);
    }
    None
}

/// Mean misclassification error over the folds for LDA and QDA, or `None`
/// when any fold is degenerate (a class with fewer than two training
/// points or an unfactorable covariance).
fn cross_validate<T: Real>(
    x: &ArrayView2<T>,
    labels: &[bool],
    folds: &[usize],
) -> Option<(T, T)> {
    let d = x.ncols();
    let n_folds = folds.iter().copied().max()? + 1;
    let mut lda_err = T::zero();
    let mut qda_err = T::zero();
    let mut scored_folds = 0usize;

    let mut z = vec![T::zero(); d];
    for fold in 0..n_folds {
        let train_pos: Vec<usize> = (0..labels.len())
            .filter(|&i| folds[i] != fold && labels[i])
            .collect();
        let train_neg: Vec<usize> = (0..labels.len())
            .filter(|&i| folds[i] != fold && !labels[i])
            .collect();
        let test: Vec<usize> = (0..labels.len()).filter(|&i| folds[i] == fold).collect();
        if test.is_empty() {
            continue;
        }
        if train_pos.len() < 2 || train_neg.len() < 2 {
            return None;
        }

        let pos = class_stats(x, &train_pos);
        let neg = class_stats(x, &train_neg);
        let n_train = cst::<T>((pos.count + neg.count) as f64);
        let log_prior_ratio =
            (cst::<T>(pos.count as f64) / n_train).ln() - (cst::<T>(neg.count as f64) / n_train).ln();

        // LDA: pooled within-class covariance.
        let denom = cst::<T>((pos.count + neg.count - 2) as f64);
        let pooled = (&pos.scatter + &neg.scatter) / denom;
        let l_pooled = chol_with_ridge(&pooled)?;
        let a_pos = cho_solve(&l_pooled, &pos.mean.view());
        let a_neg = cho_solve(&l_pooled, &neg.mean.view());
        let offset = cst::<T>(0.5) * (pos.mean.dot(&a_pos) - neg.mean.dot(&a_neg));

        // QDA: per-class covariance.
        let cov_pos = &pos.scatter / cst::<T>((pos.count - 1) as f64);
        let cov_neg = &neg.scatter / cst::<T>((neg.count - 1) as f64);
        let l_pos = chol_with_ridge(&cov_pos)?;
        let l_neg = chol_with_ridge(&cov_neg)?;
        let logdet_pos = cho_log_det(&l_pos);
        let logdet_neg = cho_log_det(&l_neg);

        let mut lda_wrong = 0usize;
        let mut qda_wrong = 0usize;
        let half = cst::<T>(0.5);
        let mut xi = vec![T::zero(); d];
        for &i in &test {
            for j in 0..d {
                xi[j] = x[(i, j)];
            }
            let xv = ndarray::ArrayView1::from(&xi[..]);

            let lda_score = xv.dot(&a_pos) - xv.dot(&a_neg) - offset + log_prior_ratio;
            let lda_pred = lda_score > T::zero();
            if lda_pred != labels[i] {
                lda_wrong += 1;
            }

            let mut centered = vec![T::zero(); d];
            for j in 0..d {
                centered[j] = xi[j] - pos.mean[j];
            }
            forward_solve(&l_pos, &centered, &mut z);
            let maha_pos: T = z.iter().map(|&v| v * v).sum();
            for j in 0..d {
                centered[j] = xi[j] - neg.mean[j];
            }
            forward_solve(&l_neg, &centered, &mut z);
            let maha_neg: T = z.iter().map(|&v| v * v).sum();
            let qda_score =
                half * (logdet_neg - logdet_pos) + half * (maha_neg - maha_pos) + log_prior_ratio;
            let qda_pred = qda_score > T::zero();
            if qda_pred != labels[i] {
                qda_wrong += 1;
            }
        }
        let test_n = cst::<T>(test.len() as f64);
        lda_err += cst::<T>(lda_wrong as f64) / test_n;
        qda_err += cst::<T>(qda_wrong as f64) / test_n;
        scored_folds += 1;
    }
    if scored_folds == 0 {
        return None;
    }
    let k = cst::<T>(scored_folds as f64);
    Some((lda_err / k, qda_err / k))
}

//! Dispersion features: pairwise-distance statistics of elite subsets
//! (points below a low objective quantile) relative to the full sample.

use super::DistanceMatrix;
use crate::util::{median, quantile_sorted, sorted};
use crate::{cst, Real};

/// Elite quantiles, in registry order.
pub const DISP_QUANTILES: [f64; 4] = [0.02, 0.05, 0.10, 0.25];

/// ratio_mean_* (4), ratio_median_* (4), diff_mean_* (4), diff_median_* (4).
pub(super) fn disp_impl<T: Real>(dist: &DistanceMatrix<T>, y: &[T]) -> [Option<T>; 16] {
    let m = y.len();
    let mut out = [None; 16];
    if m < 2 {
        return out;
    }

    let mut all_pairs: Vec<T> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            all_pairs.push(dist.get(i, j));
        }
    }
    let mean_all = all_pairs.iter().copied().sum::<T>() / cst::<T>(all_pairs.len() as f64);
    let median_all = median(&all_pairs);
    if mean_all <= T::zero() {
        return out;
    }

    let sorted_y = sorted(y);
    for (qi, &q) in DISP_QUANTILES.iter().enumerate() {
        let threshold = quantile_sorted(&sorted_y, q);
        let subset: Vec<usize> = (0..m).filter(|&i| y[i] <= threshold).collect();
        if subset.len() < 2 {
            continue;
        }
        let mut pairs: Vec<T> = Vec::with_capacity(subset.len() * (subset.len() - 1) / 2);
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                pairs.push(dist.get(i, j));
            }
        }
        let mean_s = pairs.iter().copied().sum::<T>() / cst::<T>(pairs.len() as f64);
        let median_s = median(&pairs);

        out[qi] = Some(mean_s / mean_all);
        out[4 + qi] = if median_all > T::zero() {
            Some(median_s / median_all)
        } else {
            None
        };
        out[8 + qi] = Some(mean_s - mean_all);
        out[12 + qi] = Some(median_s - median_all);
    }
    out
}

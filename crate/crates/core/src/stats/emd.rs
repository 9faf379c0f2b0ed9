//! 1-Wasserstein (earth mover's) distance between empirical distributions
//! on the line, by integrating the ECDF difference between breakpoints.

use crate::util::sorted;
use crate::{cst, Error, Real, Result};

/// W1 distance between the empirical distributions of `a` and `b`. For
/// equal sizes this equals the mean absolute difference of the sorted
/// samples.
pub fn wasserstein_1d<T: Real>(a: &[T], b: &[T]) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("wasserstein_1d: empty sample"));
    }
    let sa = sorted(a);
    let sb = sorted(b);
    let n = cst::<T>(sa.len() as f64);
    let m = cst::<T>(sb.len() as f64);

    let mut merged: Vec<T> = Vec::with_capacity(sa.len() + sb.len());
    merged.extend_from_slice(&sa);
    merged.extend_from_slice(&sb);
    merged.sort_unstable_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));

    let mut i = 0usize;
    let mut j = 0usize;
    let mut acc = T::zero();
    for w in merged.windows(2) {
        let v = w[0];
        while i < sa.len() && sa[i] <= v {
            i += 1;
        }
        while j < sb.len() && sb[j] <= v {
            j += 1;
        }
        let fa = cst::<T>(i as f64) / n;
        let fb = cst::<T>(j as f64) / m;
        acc += (fa - fb).abs() * (w[1] - w[0]);
    }
    Ok(acc)
}

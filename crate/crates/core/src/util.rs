//! Descriptive-statistics helpers shared by the feature and stats modules.

use crate::{cst, Real};

pub fn mean<T: Real>(xs: &[T]) -> T {
    xs.iter().copied().sum::<T>() / cst::<T>(xs.len() as f64)
}

/// Sample variance with the given delta degrees of freedom.
pub fn variance<T: Real>(xs: &[T], ddof: usize) -> Option<T> {
    if xs.len() <= ddof {
        return None;
    }
    let m = mean(xs);
    let ss: T = xs.iter().map(|&x| (x - m) * (x - m)).sum();
    Some(ss / cst::<T>((xs.len() - ddof) as f64))
}

pub fn sd<T: Real>(xs: &[T], ddof: usize) -> Option<T> {
    variance(xs, ddof).map(|v| v.sqrt())
}

/// Pearson correlation; `None` when either side has zero variance or fewer
/// than two observations.
pub fn pearson<T: Real>(a: &[T], b: &[T]) -> Option<T> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let ma = mean(a);
    let mb = mean(b);
    let mut sab = T::zero();
    let mut saa = T::zero();
    let mut sbb = T::zero();
    for (&x, &y) in a.iter().zip(b.iter()) {
        let dx = x - ma;
        let dy = y - mb;
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == T::zero() || sbb == T::zero() {
        return None;
    }
    Some(sab / (saa.sqrt() * sbb.sqrt()))
}

/// Sort a copy of the values ascending (values must be free of NaN).
pub fn sorted<T: Real>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("NaN in sort"));
    v
}

/// Linear-interpolation quantile on pre-sorted data (R type 7).
pub fn quantile_sorted<T: Real>(sorted: &[T], p: f64) -> T {
    assert!(!sorted.is_empty());
    assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = p * (n - 1) as f64;
    let lo = h.floor() as usize;
    let gamma = h - lo as f64;
    if gamma == 0.0 || lo + 1 >= n {
        sorted[lo.min(n - 1)]
    } else {
        sorted[lo] + cst::<T>(gamma) * (sorted[lo + 1] - sorted[lo])
    }
}

/// Median; averages the two central order statistics for even counts.
pub fn median<T: Real>(xs: &[T]) -> T {
    let v = sorted(xs);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / cst::<T>(2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn quantile_matches_linear_interpolation() {
        let v = vec![1.0f64, 2.0, 3.0, 4.0];
        assert_abs_diff_eq!(quantile_sorted(&v, 0.0), 1.0);
        assert_abs_diff_eq!(quantile_sorted(&v, 1.0), 4.0);
        assert_abs_diff_eq!(quantile_sorted(&v, 0.5), 2.5);
        assert_abs_diff_eq!(quantile_sorted(&v, 0.25), 1.75);
    }

    #[test]
    fn median_even_odd() {
        assert_abs_diff_eq!(median(&[3.0f64, 1.0, 2.0]), 2.0);
        assert_abs_diff_eq!(median(&[4.0f64, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn pearson_perfect_and_degenerate() {
        let a = vec![1.0f64, 2.0, 3.0];
        let b = vec![2.0f64, 4.0, 6.0];
        assert_abs_diff_eq!(pearson(&a, &b).unwrap(), 1.0, epsilon = 1e-12);
        let c = vec![5.0f64, 5.0, 5.0];
        assert!(pearson(&a, &c).is_none());
    }

    #[test]
    fn variance_ddof() {
        let xs = vec![1.0f64, 2.0, 3.0];
        assert_abs_diff_eq!(variance(&xs, 1).unwrap(), 1.0);
        assert_abs_diff_eq!(variance(&xs, 0).unwrap(), 2.0 / 3.0);
        assert!(variance(&xs[..1], 1).is_none());
    }
}

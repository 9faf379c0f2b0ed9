//! Objective-value distribution features: moment-based skewness and excess
//! kurtosis plus the number of modes of a kernel density estimate.

use crate::util::{quantile_sorted, sd, sorted};
use crate::{cst, Real};

/// Width of the KDE evaluation grid.
const GRID_SIZE: usize = 512;
/// A mode counts as a peak when the probability mass between its flanking
/// minima exceeds this threshold.
const MODE_MASS_THRESHOLD: f64 = 0.01;

/// skewness, kurtosis, number_of_peaks; all missing for constant `y`.
pub(super) fn ela_distr_impl<T: Real>(y: &[T]) -> [Option<T>; 3] {
    if y.len() < 4 {
        return [None; 3];
    }
    let n = cst::<T>(y.len() as f64);
    let mean = y.iter().copied().sum::<T>() / n;
    let mut m2 = T::zero();
    let mut m3 = T::zero();
    let mut m4 = T::zero();
    for &v in y {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 = m2 / n;
    m3 = m3 / n;
    m4 = m4 / n;
    if m2 == T::zero() {
        return [None; 3];
    }

    // Bias-uncorrected sample moments (type-1 estimators).
    let skewness = m3 / m2.powf(cst(1.5));
    let kurtosis = m4 / (m2 * m2) - cst::<T>(3.0);
    let peaks = number_of_peaks(y).map(|p| cst::<T>(p as f64));

    [Some(skewness), Some(kurtosis), peaks]
}

/// Count the modes of a Gaussian KDE of `y` (Silverman's rule-of-thumb
/// bandwidth, 512-point grid spanning [min - 3h, max + 3h]) whose mass
/// between flanking minima exceeds 1%.
fn number_of_peaks<T: Real>(y: &[T]) -> Option<usize> {
    let n = y.len();
    let sorted_y = sorted(y);
    let iqr = quantile_sorted(&sorted_y, 0.75) - quantile_sorted(&sorted_y, 0.25);
    let s = sd(y, 1)?;
    // Silverman: 0.9 min(sd, IQR/1.34) n^{-1/5}, falling back to sd when
    // the IQR collapses.
    let mut spread = s.min(iqr / cst(1.34));
    if spread <= T::zero() {
        spread = s;
    }
    if spread <= T::zero() {
        return None;
    }
    let h = cst::<T>(0.9) * spread * cst::<T>((n as f64).powf(-0.2));

    let three = cst::<T>(3.0);
    let lo = sorted_y[0] - three * h;
    let hi = sorted_y[n - 1] + three * h;
    let step = (hi - lo) / cst::<T>((GRID_SIZE - 1) as f64);

    let norm = T::one() / (cst::<T>((2.0 * std::f64::consts::PI).sqrt()) * h * cst::<T>(n as f64));
    let half = cst::<T>(0.5);
    let mut density = Vec::with_capacity(GRID_SIZE);
    let mut grid = Vec::with_capacity(GRID_SIZE);
    for k in 0..GRID_SIZE {
        let g = lo + step * cst::<T>(k as f64);
        let mut acc = T::zero();
        for &v in y {
            let t = (g - v) / h;
            acc += (-half * t * t).exp();
        }
        grid.push(g);
        density.push(acc * norm);
    }

    // Segment the grid at local minima of the density; each segment holds
    // one mode. Plateaus inherit the preceding slope sign.
    let mut boundaries = vec![0usize];
    let mut last_sign = 0i8;
    for k in 0..GRID_SIZE - 1 {
        let diff = density[k + 1] - density[k];
        let sign = if diff > T::zero() {
            1
        } else if diff < T::zero() {
            -1
        } else {
            last_sign
        };
        if last_sign == -1 && sign == 1 {
            boundaries.push(k);
        }
        if sign != 0 {
            last_sign = sign;
        }
    }
    boundaries.push(GRID_SIZE - 1);

    let mut peaks = 0usize;
    for w in boundaries.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let avg = density[a..=b].iter().copied().sum::<T>() / cst::<T>((b - a + 1) as f64);
        let mass = avg * (grid[b] - grid[a]);
        if mass > cst(MODE_MASS_THRESHOLD) {
            peaks += 1;
        }
    }
    Some(peaks.max(1))
}

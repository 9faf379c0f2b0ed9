//! Deterministic 2-D projection of normalized feature vectors: principal
//! components fitted on the original (identity) instances only, then
//! applied to every row.

use ndarray::Array2;

use crate::features::FEATURE_COUNT;
use crate::linalg::eigh;
use crate::{cst, Error, Real, Result};

/// A fitted projection: the features used, their fit-set means (also the
/// imputation values for missing entries) and the two principal axes.
#[derive(Clone, Debug)]
pub struct Projection<T> {
    pub feature_ids: Vec<usize>,
    pub mean: Vec<T>,
    pub axes: [Vec<T>; 2],
}

/// Fit the projection on the given rows (the original instances of every
/// problem). Features missing in every fit row are dropped; features
/// missing in some rows are imputed with the fit-set mean.
pub fn fit_projection<T: Real>(fit_rows: &[&[Option<T>; FEATURE_COUNT]]) -> Result<Projection<T>> {
    let n = fit_rows.len();
    if n < 2 {
        return Err(Error::invalid("projection needs at least 2 fit rows"));
    }

    let mut feature_ids = Vec::new();
    let mut mean = Vec::new();
    for f in 0..FEATURE_COUNT {
        let present: Vec<T> = fit_rows.iter().filter_map(|r| r[f]).collect();
        if !present.is_empty() {
            feature_ids.push(f);
            mean.push(present.iter().copied().sum::<T>() / cst::<T>(present.len() as f64));
        }
    }
    let k = feature_ids.len();
    if k == 0 {
        return Err(Error::invalid("projection has no usable features"));
    }

    // Centered fit matrix; imputed entries center to zero.
    let mut z = Array2::<T>::zeros((n, k));
    for (i, row) in fit_rows.iter().enumerate() {
        for (c, (&f, &mu)) in feature_ids.iter().zip(mean.iter()).enumerate() {
            z[(i, c)] = row[f].map_or(T::zero(), |v| v - mu);
        }
    }
    let cov = z.t().dot(&z) / cst::<T>((n - 1) as f64);
    let (_, vectors) = eigh(&cov.view())?;

    let mut axes: [Vec<T>; 2] = [vec![T::zero(); k], vec![T::zero(); k]];
    for (a, axis) in axes.iter_mut().enumerate() {
        if a >= k {
            // A single usable feature leaves the second axis at zero.
            continue;
        }
        for c in 0..k {
            axis[c] = vectors[(c, a)];
        }
        // Deterministic sign: the entry of largest magnitude is positive.
        let mut pivot = 0usize;
        for c in 1..k {
            if axis[c].abs() > axis[pivot].abs() {
                pivot = c;
            }
        }
        if axis[pivot] < T::zero() {
            for v in axis.iter_mut() {
                *v = -*v;
            }
        }
    }

    Ok(Projection {
        feature_ids,
        mean,
        axes,
    })
}

impl<T: Real> Projection<T> {
    /// Project one (normalized) feature row to 2-D coordinates.
    pub fn project(&self, row: &[Option<T>; FEATURE_COUNT]) -> (T, T) {
        let mut u = T::zero();
        let mut v = T::zero();
        for (c, (&f, &mu)) in self.feature_ids.iter().zip(self.mean.iter()).enumerate() {
            let centered = row[f].map_or(T::zero(), |x| x - mu);
            u += self.axes[0][c] * centered;
            v += self.axes[1][c] * centered;
        }
        (u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(values: &[(usize, f64)]) -> [Option<f64>; FEATURE_COUNT] {
        let mut out = [None; FEATURE_COUNT];
        for &(i, v) in values {
            out[i] = Some(v);
        }
        out
    }

    #[test]
    fn identical_fit_rows_project_to_one_point() {
        let r = row(&[(0, 0.5), (1, 0.25)]);
        let rows: Vec<&[Option<f64>; FEATURE_COUNT]> = vec![&r, &r, &r];
        let p = fit_projection(&rows).unwrap();
        let coords: Vec<(f64, f64)> = rows.iter().map(|r| p.project(r)).collect();
        for (u, v) in coords {
            assert!((u - 0.0).abs() < 1e-12);
            assert!((v - 0.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fit_rows_are_centered() {
        let r1 = row(&[(0, 0.0), (1, 1.0), (2, 0.2)]);
        let r2 = row(&[(0, 1.0), (1, 0.0), (2, 0.8)]);
        let r3 = row(&[(0, 0.5), (1, 0.5), (2, 0.5)]);
        let rows: Vec<&[Option<f64>; FEATURE_COUNT]> = vec![&r1, &r2, &r3];
        let p = fit_projection(&rows).unwrap();
        let coords: Vec<(f64, f64)> = rows.iter().map(|r| p.project(r)).collect();
        let mu: f64 = coords.iter().map(|c| c.0).sum::<f64>() / 3.0;
        let mv: f64 = coords.iter().map(|c| c.1).sum::<f64>() / 3.0;
        assert!(mu.abs() < 1e-12);
        assert!(mv.abs() < 1e-12);
    }

    #[test]
    fn projection_is_deterministic() {
        let r1 = row(&[(0, 0.1), (1, 0.9)]);
        let r2 = row(&[(0, 0.7), (1, 0.3)]);
        let rows: Vec<&[Option<f64>; FEATURE_COUNT]> = vec![&r1, &r2];
        let p1 = fit_projection(&rows).unwrap();
        let p2 = fit_projection(&rows).unwrap();
        let probe = row(&[(0, 0.4), (1, 0.6)]);
        assert_eq!(p1.project(&probe), p2.project(&probe));
        assert_eq!(p1.axes[0], p2.axes[0]);
    }

    #[test]
    fn first_axis_follows_the_spread() {
        // Feature 0 varies, feature 1 constant: PC1 aligns with feature 0.
        let r1 = row(&[(0, 0.0), (1, 0.5)]);
        let r2 = row(&[(0, 1.0), (1, 0.5)]);
        let rows: Vec<&[Option<f64>; FEATURE_COUNT]> = vec![&r1, &r2];
        let p = fit_projection(&rows).unwrap();
        assert!(p.axes[0][0].abs() > 0.999);
        let (u1, _) = p.project(&r1);
        let (u2, _) = p.project(&r2);
        assert!((u2 - u1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_rows_is_an_error() {
        let r = row(&[(0, 0.5)]);
        let rows: Vec<&[Option<f64>; FEATURE_COUNT]> = vec![&r];
        assert!(fit_projection(&rows).is_err());
    }
}

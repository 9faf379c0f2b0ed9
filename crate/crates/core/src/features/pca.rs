//! Principal-component features: explained-variance summaries of the
//! design points alone (`cov_x`, `cor_x`) and of the points extended by the
//! objective column (`cov_init`, `cor_init`).

use ndarray::{Array2, ArrayView2};

use crate::linalg::eigh;
use crate::util::mean;
use crate::{cst, Real};

const EXPLAINED_PROPORTION: f64 = 0.9;

/// expl_var.{cov_x, cor_x, cov_init, cor_init} followed by
/// expl_var_PC1.{cov_x, cor_x, cov_init, cor_init}.
pub(super) fn pca_impl<T: Real>(x: &ArrayView2<T>, y: &[T]) -> [Option<T>; 8] {
    let (m, d) = x.dim();
    let mut out = [None; 8];
    if m < 2 {
        return out;
    }

    let mut init = Array2::zeros((m, d + 1));
    for i in 0..m {
        for j in 0..d {
            init[(i, j)] = x[(i, j)];
        }
        init[(i, d)] = y[i];
    }

    let x_owned = x.to_owned();
    let variants: [(usize, usize, &Array2<T>, bool); 4] = [
        (0, 4, &x_owned, false), // cov_x
        (1, 5, &x_owned, true),  // cor_x
        (2, 6, &init, false),    // cov_init
        (3, 7, &init, true),     // cor_init
    ];
    for (ev_slot, pc1_slot, data, correlation) in variants {
        if let Some(values) = second_moment_eigenvalues(data, correlation) {
            let total: T = values.iter().copied().sum();
            if total > T::zero() {
                let target = cst::<T>(EXPLAINED_PROPORTION) * total;
                let mut cum = T::zero();
                let mut needed = values.len();
                for (k, &v) in values.iter().enumerate() {
                    cum += v;
                    if cum >= target {
                        needed = k + 1;
                        break;
                    }
                }
                out[ev_slot] = Some(cst::<T>(needed as f64) / cst::<T>(values.len() as f64));
                out[pc1_slot] = Some(values[0] / total);
            }
        }
    }
    out
}

/// Eigenvalues (descending, clamped at zero) of the covariance or
/// correlation matrix of the columns; `None` when a correlation column has
/// zero variance.
fn second_moment_eigenvalues<T: Real>(data: &Array2<T>, correlation: bool) -> Option<Vec<T>> {
    let (m, k) = data.dim();
    if m < 2 {
        return None;
    }
    let denom = cst::<T>((m - 1) as f64);

    let mut centered = data.clone();
    for j in 0..k {
        let col_mean = mean(centered.column(j).as_slice().unwrap_or(
            // Column views of owned arrays are strided; fall back to a copy.
            &centered.column(j).to_vec(),
        ));
        centered.column_mut(j).mapv_inplace(|v| v - col_mean);
    }
    let mut cov = centered.t().dot(&centered) / denom;

    if correlation {
        let mut sds = vec![T::zero(); k];
        for j in 0..k {
            let v = cov[(j, j)];
            if v <= T::zero() {
                return None;
            }
            sds[j] = v.sqrt();
        }
        for a in 0..k {
            for b in 0..k {
                cov[(a, b)] = cov[(a, b)] / (sds[a] * sds[b]);
            }
        }
    }

    let (values, _) = eigh(&cov.view()).ok()?;
    Some(values.iter().map(|&v| v.max(T::zero())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn rank_one_design_needs_one_component() {
        // Points on a line embedded in 10-D.
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let dir: Vec<f64> = (0..10).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x = Array2::from_shape_fn((100, 10), |(i, j)| (i as f64 - 50.0) * dir[j]);
        let y: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let f = pca_impl(&x.view(), &y);
        assert_abs_diff_eq!(f[0].unwrap(), 0.1, epsilon = 1e-12); // 1 of 10
        assert!(f[4].unwrap() >= 0.999);
    }

    #[test]
    fn isotropic_box_sample_needs_nine_of_ten() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let x = Array2::from_shape_fn((1000, 10), |_| rng.random_range(-100.0..100.0));
        let y: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        let f = pca_impl(&x.view(), &y);
        assert_abs_diff_eq!(f[0].unwrap(), 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1].unwrap(), 0.9, epsilon = 1e-12);
    }

    #[test]
    fn constant_objective_kills_cor_init_only() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let x = Array2::from_shape_fn((50, 4), |_| rng.random_range(-1.0..1.0));
        let y = vec![7.0f64; 50];
        let f = pca_impl(&x.view(), &y);
        assert!(f[0].is_some() && f[1].is_some() && f[2].is_some());
        assert!(f[3].is_none()); // cor_init undefined
        assert!(f[7].is_none());
    }

    #[test]
    fn dominant_objective_column_drives_cov_init() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let x = Array2::from_shape_fn((200, 3), |_| rng.random_range(-1.0..1.0));
        let y: Vec<f64> = (0..200).map(|_| rng.random_range(-1e4..1e4)).collect();
        let f = pca_impl(&x.view(), &y);
        // y variance dwarfs the design variance: one component suffices.
        assert_abs_diff_eq!(f[2].unwrap(), 0.25, epsilon = 1e-12); // 1 of 4
        assert!(f[6].unwrap() > 0.999);
    }
}

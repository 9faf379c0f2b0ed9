//! Nearest-better clustering features: statistics comparing each point's
//! nearest-neighbour distance with its distance to the nearest point of
//! strictly better (smaller) objective value.

use super::DistanceMatrix;
use crate::util::{mean, pearson, sd};
use crate::Real;

/// sd_ratio, mean_ratio, cor, coeff_var, nb_fitness.cor.
///
/// Points without a strictly better point (the sample best, including ties)
/// have no nearest-better distance; they are excluded from the distance
/// statistics but still take part in the indegree count.
pub(super) fn nbc_impl<T: Real>(dist: &DistanceMatrix<T>, y: &[T]) -> [Option<T>; 5] {
    let m = y.len();
    if m < 3 {
        return [None; 5];
    }

    let mut nn = vec![T::infinity(); m];
    let mut nb: Vec<Option<(T, usize)>> = vec![None; m];
    for i in 0..m {
        let mut best_nn = T::infinity();
        let mut best_nb: Option<(T, usize)> = None;
        for j in 0..m {
            if i == j {
                continue;
            }
            let d = dist.get(i, j);
            if d < best_nn {
                best_nn = d;
            }
            if y[j] < y[i] {
                let better = match best_nb {
                    None => true,
                    Some((cur, cur_j)) => d < cur || (d == cur && j < cur_j),
                };
                if better {
                    best_nb = Some((d, j));
                }
            }
        }
        nn[i] = best_nn;
        nb[i] = best_nb;
    }

    let usable: Vec<usize> = (0..m).filter(|&i| nb[i].is_some()).collect();
    let nnv: Vec<T> = usable.iter().map(|&i| nn[i]).collect();
    let nbv: Vec<T> = usable.iter().map(|&i| nb[i].unwrap().0).collect();

    let mut indegree = vec![T::zero(); m];
    for i in 0..m {
        if let Some((_, j)) = nb[i] {
            indegree[j] += T::one();
        }
    }

    let sd_ratio = match (sd(&nnv, 1), sd(&nbv, 1)) {
        (Some(a), Some(b)) if b > T::zero() => Some(a / b),
        _ => None,
    };
    let mean_ratio = if !nbv.is_empty() {
        let mb = mean(&nbv);
        if mb > T::zero() {
            Some(mean(&nnv) / mb)
        } else {
            None
        }
    } else {
        None
    };
    let cor = pearson(&nnv, &nbv);

    let coeff_var = if nnv.len() >= 2 {
        let ratios: Vec<T> = nnv
            .iter()
            .zip(nbv.iter())
            .filter(|(_, &b)| b > T::zero())
            .map(|(&a, &b)| a / b)
            .collect();
        if ratios.len() >= 2 {
            let mr = mean(&ratios);
            sd(&ratios, 1).and_then(|s| if mr != T::zero() { Some(s / mr) } else { None })
        } else {
            None
        }
    } else {
        None
    };

    let fitness_cor = pearson(&indegree, y);

    [sd_ratio, mean_ratio, cor, coeff_var, fitness_cor]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::Array2;

    fn dist_1d(points: &[f64]) -> DistanceMatrix<f64> {
        let m = Array2::from_shape_fn((points.len(), 1), |(i, _)| points[i]);
        DistanceMatrix::from_points(&m.view())
    }

    #[test]
    fn equally_spaced_chain() {
        // Points 1..10 on a line with y = x: all nn and nb distances are 1
        // once the best point is excluded.
        let pts: Vec<f64> = (1..=10).map(|v| v as f64).collect();
        let dist = dist_1d(&pts);
        let y = pts.clone();
        let f = nbc_impl(&dist, &y);
        assert_abs_diff_eq!(f[1].unwrap(), 1.0, epsilon = 1e-12); // mean_ratio
        assert!(f[0].is_none()); // zero sd on both sides
        assert!(f[2].is_none()); // constant vectors have no correlation
        assert_abs_diff_eq!(f[3].unwrap(), 0.0, epsilon = 1e-12); // cv of constant ratios
        // Indegree is 1 for all but the worst point; correlates negatively
        // with y.
        assert!(f[4].unwrap() < 0.0);
    }

    #[test]
    fn tiny_samples_are_degenerate() {
        let pts = vec![0.0, 1.0];
        let dist = dist_1d(&pts);
        let f = nbc_impl(&dist, &[1.0, 2.0]);
        assert!(f.iter().all(|v| v.is_none()));
    }

    #[test]
    fn funnel_separates_nn_from_nb() {
        // Two clusters far apart; the right cluster is uniformly worse, so
        // its nearest-better distances cross the gap.
        let pts = vec![0.0, 0.1, 0.2, 10.0, 10.1, 10.2];
        let dist = dist_1d(&pts);
        let y = vec![0.0, 1.0, 2.0, 10.0, 11.0, 12.0];
        let f = nbc_impl(&dist, &y);
        // nearest-better of point 3 (y=10) is point 2 at distance 9.8.
        assert!(f[1].unwrap() < 1.0); // nn distances much smaller than nb
        assert!(f[3].unwrap() > 0.5); // ratios vary a lot
    }

    #[test]
    fn constant_objective_has_no_better_points() {
        let pts = vec![0.0, 1.0, 2.0, 3.0];
        let dist = dist_1d(&pts);
        let f = nbc_impl(&dist, &[5.0, 5.0, 5.0, 5.0]);
        assert!(f.iter().all(|v| v.is_none()));
    }
}

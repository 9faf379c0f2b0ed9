//! Information-content features of the slope symbol sequence along a
//! nearest-neighbour tour through the sample.
//!
//! The tour starts at design row 0 and repeatedly visits the nearest
//! unvisited point. Slopes between consecutive tour points are symbolised
//! as -1/0/1 against a threshold epsilon; the entropy of consecutive symbol
//! pairs and the length of the zero-free collapsed sequence summarise how
//! informative the landscape is at each scale.

use super::DistanceMatrix;
use crate::{cst, Real};

/// Number of positive epsilon grid points (log-spaced in [1e-5, 1e15]);
/// epsilon = 0 is prepended.
pub const EPSILON_GRID_SIZE: usize = 1000;
/// Settling sensitivity threshold for `eps_s`.
const SETTLING_THRESHOLD: f64 = 0.05;

/// h_max, eps_s, eps_max, eps_ratio, m0.
pub(super) fn ic_impl<T: Real>(dist: &DistanceMatrix<T>, y: &[T]) -> [Option<T>; 5] {
    let m = y.len();
    if m < 3 {
        return [None; 5];
    }

    let tour = nearest_neighbor_tour(dist);

    // Slopes along the tour; zero-length steps are skipped.
    let mut slopes: Vec<T> = Vec::with_capacity(m - 1);
    for w in tour.windows(2) {
        let step = dist.get(w[0], w[1]);
        if step > T::zero() {
            slopes.push((y[w[1]] - y[w[0]]) / step);
        }
    }
    if slopes.len() < 2 {
        return [Some(T::zero()), None, None, None, Some(T::zero())];
    }

    let nominal = cst::<T>((m - 1) as f64);
    let mut h_values: Vec<T> = Vec::with_capacity(EPSILON_GRID_SIZE + 1);
    let mut m_values: Vec<T> = Vec::with_capacity(EPSILON_GRID_SIZE + 1);
    let mut grid: Vec<f64> = Vec::with_capacity(EPSILON_GRID_SIZE + 1);
    grid.push(0.0);
    let lo = -5.0;
    let hi = 15.0;
    for k in 0..EPSILON_GRID_SIZE {
        let exp = lo + (hi - lo) * k as f64 / (EPSILON_GRID_SIZE - 1) as f64;
        grid.push(10f64.powf(exp));
    }

    let mut symbols: Vec<i8> = vec![0; slopes.len()];
    for &eps_f in &grid {
        let eps = cst::<T>(eps_f);
        for (s, &delta) in symbols.iter_mut().zip(slopes.iter()) {
            *s = if delta > eps {
                1
            } else if delta < -eps {
                -1
            } else {
                0
            };
        }
        h_values.push(pair_entropy(&symbols));
        m_values.push(partial_information(&symbols, nominal));
    }

    let zero = T::zero();
    let mut h_max = zero;
    let mut h_max_idx = 0usize;
    for (k, &h) in h_values.iter().enumerate() {
        if h > h_max {
            h_max = h;
            h_max_idx = k;
        }
    }
    let m0 = m_values[0];

    // A flat-zero entropy curve (constant or perfectly monotone samples)
    // has nothing to settle; the scale features are undefined then.
    let eps_s = if h_max > zero {
        grid.iter()
            .zip(h_values.iter())
            .skip(1) // log10 needs a positive epsilon
            .find(|(_, &h)| h < cst(SETTLING_THRESHOLD))
            .map(|(&e, _)| cst::<T>(e.log10()))
    } else {
        None
    };

    let eps_max = if h_max > zero {
        Some(cst::<T>(grid[h_max_idx]))
    } else {
        None
    };

    let eps_ratio = if m0 > zero {
        let half_m0 = cst::<T>(0.5) * m0;
        grid.iter()
            .zip(m_values.iter())
            .skip(1)
            .filter(|(_, &mv)| mv > half_m0)
            .map(|(&e, _)| e)
            .last()
            .map(|e| cst::<T>(e.log10()))
    } else {
        None
    };

    [Some(h_max), eps_s, eps_max, eps_ratio, Some(m0)]
}

/// Visit order of the greedy nearest-neighbour tour from row 0; distance
/// ties resolve to the lowest index.
fn nearest_neighbor_tour<T: Real>(dist: &DistanceMatrix<T>) -> Vec<usize> {
    let m = dist.len();
    let mut tour = Vec::with_capacity(m);
    let mut visited = vec![false; m];
    let mut current = 0usize;
    visited[0] = true;
    tour.push(0);
    for _ in 1..m {
        let mut best = usize::MAX;
        let mut best_d = T::infinity();
        for j in 0..m {
            if !visited[j] {
                let d = dist.get(current, j);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
        }
        visited[best] = true;
        tour.push(best);
        current = best;
    }
    tour
}

/// Entropy (log base 6) of consecutive unequal symbol pairs.
fn pair_entropy<T: Real>(symbols: &[i8]) -> T {
    if symbols.len() < 2 {
        return T::zero();
    }
    let mut counts = [[0usize; 3]; 3];
    for w in symbols.windows(2) {
        counts[(w[0] + 1) as usize][(w[1] + 1) as usize] += 1;
    }
    let total = cst::<T>((symbols.len() - 1) as f64);
    let ln6 = cst::<T>(6f64.ln());
    let mut h = T::zero();
    for a in 0..3 {
        for b in 0..3 {
            if a != b && counts[a][b] > 0 {
                let p = cst::<T>(counts[a][b] as f64) / total;
                h = h - p * (p.ln() / ln6);
            }
        }
    }
    h
}

/// Length of the symbol sequence after removing zeros and collapsing
/// consecutive repeats, normalised by the nominal slope count.
fn partial_information<T: Real>(symbols: &[i8], nominal: T) -> T {
    let mut len = 0usize;
    let mut prev = 0i8;
    for &s in symbols {
        if s != 0 && s != prev {
            len += 1;
            prev = s;
        }
    }
    cst::<T>(len as f64) / nominal
}

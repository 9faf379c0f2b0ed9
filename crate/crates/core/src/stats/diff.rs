//! Relative difference of per-feature means between rotated instances and
//! the original problem: `diff = |(mean_0 - mean_i) / mean_0| * 100`.

use crate::features::FEATURE_COUNT;
use crate::util::mean;
use crate::{cst, Real};

/// Per-(rotation, feature) relative differences in percent. A cell is
/// undefined when the original mean is zero or either mean has no data.
#[derive(Clone, Debug)]
pub struct DiffMatrix<T> {
    /// Level labels of the rotated instances, in input order.
    pub rotations: Vec<i64>,
    /// `cells[rotation][feature]`
    pub cells: Vec<Vec<Option<T>>>,
}

impl<T: Real> DiffMatrix<T> {
    /// Largest defined diff of one feature across all rotations.
    pub fn max_for_feature(&self, feature: usize) -> Option<T> {
        self.cells
            .iter()
            .filter_map(|row| row[feature])
            .fold(None, |acc, v| Some(acc.map_or(v, |a: T| a.max(v))))
    }
}

/// Mean of the present values per feature column.
pub fn feature_means<T: Real>(columns: &[Vec<Option<T>>]) -> [Option<T>; FEATURE_COUNT] {
    let mut out = [None; FEATURE_COUNT];
    for (i, col) in columns.iter().enumerate().take(FEATURE_COUNT) {
        let present: Vec<T> = col.iter().flatten().copied().collect();
        if !present.is_empty() {
            out[i] = Some(mean(&present));
        }
    }
    out
}

/// Apply the relative-difference measure cellwise.
pub fn rotation_diff<T: Real>(
    original_means: &[Option<T>; FEATURE_COUNT],
    rotated_means: &[(i64, [Option<T>; FEATURE_COUNT])],
) -> DiffMatrix<T> {
    let hundred = cst::<T>(100.0);
    let mut rotations = Vec::with_capacity(rotated_means.len());
    let mut cells = Vec::with_capacity(rotated_means.len());
    for (level, means) in rotated_means {
        rotations.push(*level);
        let row: Vec<Option<T>> = (0..FEATURE_COUNT)
            .map(|f| match (original_means[f], means[f]) {
                (Some(m0), Some(mi)) if m0 != T::zero() => {
                    Some(((m0 - mi) / m0).abs() * hundred)
                }
                _ => None,
            })
            .collect();
        cells.push(row);
    }
    DiffMatrix { rotations, cells }
}

/// Features whose diff reaches `threshold_pct` for at least one rotation in
/// at least one of the given matrices (one matrix per problem).
pub fn diff_filter<T: Real>(matrices: &[&DiffMatrix<T>], threshold_pct: T) -> Vec<usize> {
    (0..FEATURE_COUNT)
        .filter(|&f| {
            matrices
                .iter()
                .any(|m| m.max_for_feature(f).is_some_and(|v| v >= threshold_pct))
        })
        .collect()
}

//! Feature tables and global min-max normalization.

use crate::features::{FeatureVector, FEATURE_COUNT};
use crate::problems::ProblemId;
use crate::Real;

/// All feature vectors of an experiment, in canonical row order
/// (problem, instance, repetition).
#[derive(Clone, Debug, Default)]
pub struct FeatureTable<T: Real> {
    rows: Vec<FeatureVector<T>>,
}

impl<T: Real> FeatureTable<T> {
    pub fn new() -> Self {
        FeatureTable { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<FeatureVector<T>>) -> Self {
        FeatureTable { rows }
    }

    pub fn push(&mut self, row: FeatureVector<T>) {
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[FeatureVector<T>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Present values of one feature for one (problem, instance).
    pub fn feature_column(
        &self,
        problem: ProblemId,
        instance_index: usize,
        feature: usize,
    ) -> Vec<T> {
        self.rows
            .iter()
            .filter(|r| {
                r.descriptor.problem == problem && r.descriptor.instance_index == instance_index
            })
            .filter_map(|r| r.get(feature))
            .collect()
    }

    /// Rows belonging to one (problem, instance).
    pub fn instance_rows(
        &self,
        problem: ProblemId,
        instance_index: usize,
    ) -> Vec<&FeatureVector<T>> {
        self.rows
            .iter()
            .filter(|r| {
                r.descriptor.problem == problem && r.descriptor.instance_index == instance_index
            })
            .collect()
    }
}

/// Per-feature min-max ranges over every observation in an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Scaler<T> {
    pub ranges: [Option<(T, T)>; FEATURE_COUNT],
}

impl<T: Real> Scaler<T> {
    /// Fit the global ranges of every feature.
    pub fn fit(table: &FeatureTable<T>) -> Self {
        let mut ranges: [Option<(T, T)>; FEATURE_COUNT] = [None; FEATURE_COUNT];
        for row in table.rows() {
            for (i, v) in row.values().iter().enumerate() {
                if let Some(x) = v {
                    ranges[i] = Some(match ranges[i] {
                        None => (*x, *x),
                        Some((lo, hi)) => (lo.min(*x), hi.max(*x)),
                    });
                }
            }
        }
        Scaler { ranges }
    }

    /// Scale one value to [0, 1]; constant features map to 0.
    pub fn transform_value(&self, feature: usize, value: T) -> T {
        match self.ranges[feature] {
            Some((lo, hi)) if hi > lo => (value - lo) / (hi - lo),
            _ => T::zero(),
        }
    }

    /// Scale every present value of a table; missing entries stay missing.
    pub fn transform(&self, table: &FeatureTable<T>) -> FeatureTable<T> {
        let rows = table
            .rows()
            .iter()
            .map(|row| {
                let mut values = *row.values();
                for (i, v) in values.iter_mut().enumerate() {
                    if let Some(x) = v {
                        *v = Some(self.transform_value(i, *x));
                    }
                }
                FeatureVector::new(
                    values,
                    std::sync::Arc::clone(&row.descriptor),
                    row.repetition,
                    row.feature_seed,
                )
            })
            .collect();
        FeatureTable::from_rows(rows)
    }
}

/// Global min-max normalization: fit a scaler on the table and apply it.
pub fn normalize<T: Real>(table: &FeatureTable<T>) -> (FeatureTable<T>, Scaler<T>) {
    let scaler = Scaler::fit(table);
    (scaler.transform(table), scaler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureVector;
    use crate::transforms::InstanceDescriptor;
    use std::sync::Arc;

    fn vector_with(values: &[(usize, f64)], rep: usize) -> FeatureVector<f64> {
        let mut v = [None; FEATURE_COUNT];
        for &(i, x) in values {
            v[i] = Some(x);
        }
        let desc = Arc::new(InstanceDescriptor::<f64>::original(
            ProblemId::Zakharov,
            2,
            0,
        ));
        FeatureVector::new(v, desc, rep, 0)
    }

    #[test]
    fn min_max_scaling() {
        let table = FeatureTable::from_rows(vec![
            vector_with(&[(0, 2.0), (1, 7.0)], 0),
            vector_with(&[(0, 4.0), (1, 7.0)], 1),
            vector_with(&[(0, 6.0), (1, 7.0)], 2),
        ]);
        let (normalized, scaler) = normalize(&table);
        let col: Vec<f64> = normalized
            .rows()
            .iter()
            .map(|r| r.get(0).unwrap())
            .collect();
        assert_eq!(col, vec![0.0, 0.5, 1.0]);
        // Constant feature maps to 0.
        assert!(normalized.rows().iter().all(|r| r.get(1) == Some(0.0)));
        // Missing stays missing.
        assert!(normalized.rows()[0].get(2).is_none());
        // Replay is bit-identical.
        let replayed = scaler.transform(&table);
        for (a, b) in replayed.rows().iter().zip(normalized.rows().iter()) {
            assert_eq!(a.values(), b.values());
        }
    }

    #[test]
    fn ranges_span_every_row() {
        let table = FeatureTable::from_rows(vec![
            vector_with(&[(3, -5.0)], 0),
            vector_with(&[(3, 15.0)], 1),
        ]);
        let scaler = Scaler::fit(&table);
        assert_eq!(scaler.ranges[3], Some((-5.0, 15.0)));
        assert_eq!(scaler.ranges[4], None);
        assert_eq!(scaler.transform_value(3, 5.0), 0.5);
    }
}

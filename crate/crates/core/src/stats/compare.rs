//! Per-instance comparison of feature distributions against the original
//! problem, and the aggregations built on top: rejection curves per
//! transformation level and the per-feature sensitivity matrix.

use std::collections::BTreeMap;

use super::emd::wasserstein_1d;
use super::ks::{ks_2samp, KsOutcome, KS_MIN_SAMPLES};
use super::table::FeatureTable;
use crate::features::FEATURE_COUNT;
use crate::problems::ProblemId;
use crate::transforms::TransformKind;
use crate::{cst, Error, Real, Result};

/// The repetition-indexed feature values of one instance, raw and
/// normalized side by side.
#[derive(Clone, Debug)]
pub struct InstanceFeatures<T: Real> {
    pub problem: ProblemId,
    pub instance_index: usize,
    pub kind: TransformKind,
    pub level: i64,
    /// `raw[feature][repetition]`
    pub raw: Vec<Vec<Option<T>>>,
    /// `normalized[feature][repetition]`
    pub normalized: Vec<Vec<Option<T>>>,
}

impl<T: Real> InstanceFeatures<T> {
    /// Collect one instance's columns from the raw and normalized tables.
    pub fn from_tables(
        raw: &FeatureTable<T>,
        normalized: &FeatureTable<T>,
        problem: ProblemId,
        instance_index: usize,
    ) -> Result<Self> {
        let rows = raw.instance_rows(problem, instance_index);
        if rows.is_empty() {
            return Err(Error::invalid(format!(
                "no feature rows for problem {} instance {instance_index}",
                problem.id()
            )));
        }
        let norm_rows = normalized.instance_rows(problem, instance_index);
        if norm_rows.len() != rows.len() {
            return Err(Error::invalid(
                "raw and normalized tables disagree on repetition count",
            ));
        }
        let kind = rows[0].descriptor.kind();
        let level = rows[0].descriptor.spec.level;
        let mut raw_cols = vec![Vec::with_capacity(rows.len()); FEATURE_COUNT];
        let mut norm_cols = vec![Vec::with_capacity(rows.len()); FEATURE_COUNT];
        for row in &rows {
            for (i, v) in row.values().iter().enumerate() {
                raw_cols[i].push(*v);
            }
        }
        for row in &norm_rows {
            for (i, v) in row.values().iter().enumerate() {
                norm_cols[i].push(*v);
            }
        }
        Ok(InstanceFeatures {
            problem,
            instance_index,
            kind,
            level,
            raw: raw_cols,
            normalized: norm_cols,
        })
    }
}

/// One feature's comparison row.
#[derive(Clone, Debug)]
pub struct FeatureComparison<T> {
    pub feature: usize,
    pub ks: KsOutcome<T>,
    pub emd: Option<T>,
}

/// Comparison of one transformed instance against the original: a KS test
/// per feature on raw values and an EMD per feature on normalized values.
#[derive(Clone, Debug)]
pub struct ComparisonReport<T: Real> {
    pub problem: ProblemId,
    pub instance_index: usize,
    pub kind: TransformKind,
    pub level: i64,
    pub rows: Vec<FeatureComparison<T>>,
    pub n_rejected: usize,
    pub mean_emd: Option<T>,
}

impl<T: Real> ComparisonReport<T> {
    /// Recompute the aggregates from the rows (used after deserialization).
    pub fn from_rows(
        problem: ProblemId,
        instance_index: usize,
        kind: TransformKind,
        level: i64,
        rows: Vec<FeatureComparison<T>>,
    ) -> Self {
        let n_rejected = rows.iter().filter(|r| r.ks.rejected()).count();
        let with_emd: Vec<T> = rows.iter().filter_map(|r| r.emd).collect();
        let mean_emd = if with_emd.is_empty() {
            None
        } else {
            Some(with_emd.iter().copied().sum::<T>() / cst::<T>(with_emd.len() as f64))
        };
        ComparisonReport {
            problem,
            instance_index,
            kind,
            level,
            rows,
            n_rejected,
            mean_emd,
        }
    }

    pub fn rejected_features(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.ks.rejected())
            .map(|r| r.feature)
            .collect()
    }
}

/// Compare a transformed instance to the original of the same problem.
///
/// Missing repetitions are dropped per side; a feature with fewer than
/// [`KS_MIN_SAMPLES`] present values on either side is reported as
/// insufficient data and excluded from both aggregates.
pub fn compare<T: Real>(
    orig: &InstanceFeatures<T>,
    trans: &InstanceFeatures<T>,
    alpha: T,
) -> Result<ComparisonReport<T>> {
    if orig.problem != trans.problem {
        return Err(Error::invalid("comparison across different problems"));
    }
    if orig.raw.len() != FEATURE_COUNT || trans.raw.len() != FEATURE_COUNT {
        return Err(Error::invalid("feature registry mismatch"));
    }

    let mut rows = Vec::with_capacity(FEATURE_COUNT);
    for feature in 0..FEATURE_COUNT {
        let a_raw: Vec<T> = orig.raw[feature].iter().flatten().copied().collect();
        let b_raw: Vec<T> = trans.raw[feature].iter().flatten().copied().collect();
        if a_raw.len() < KS_MIN_SAMPLES || b_raw.len() < KS_MIN_SAMPLES {
            rows.push(FeatureComparison {
                feature,
                ks: KsOutcome::InsufficientData {
                    n_a: a_raw.len(),
                    n_b: b_raw.len(),
                },
                emd: None,
            });
            continue;
        }
        let ks = ks_2samp(&a_raw, &b_raw, alpha)?;
        let a_norm: Vec<T> = orig.normalized[feature].iter().flatten().copied().collect();
        let b_norm: Vec<T> = trans.normalized[feature].iter().flatten().copied().collect();
        let emd = Some(wasserstein_1d(&a_norm, &b_norm)?);
        rows.push(FeatureComparison { feature, ks, emd });
    }
    Ok(ComparisonReport::from_rows(
        trans.problem,
        trans.instance_index,
        trans.kind,
        trans.level,
        rows,
    ))
}

/// One aggregated point of a rejection curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint<T> {
    pub level: i64,
    pub mean_rejected: T,
    pub mean_emd: Option<T>,
}

/// Mean rejections and EMD per transformation level, levels ascending.
pub fn rejection_curve<T: Real>(reports: &[&ComparisonReport<T>]) -> Result<Vec<CurvePoint<T>>> {
    if reports.is_empty() {
        return Err(Error::invalid("rejection_curve: no reports"));
    }
    let mut groups: BTreeMap<i64, Vec<&ComparisonReport<T>>> = BTreeMap::new();
    for r in reports {
        groups.entry(r.level).or_default().push(r);
    }
    Ok(groups
        .into_iter()
        .map(|(level, group)| {
            let n = cst::<T>(group.len() as f64);
            let mean_rejected =
                group.iter().map(|r| cst::<T>(r.n_rejected as f64)).sum::<T>() / n;
            let emds: Vec<T> = group.iter().filter_map(|r| r.mean_emd).collect();
            let mean_emd = if emds.is_empty() {
                None
            } else {
                Some(emds.iter().copied().sum::<T>() / cst::<T>(emds.len() as f64))
            };
            CurvePoint {
                level,
                mean_rejected,
                mean_emd,
            }
        })
        .collect())
}

/// Fraction of transformed instances whose feature distribution differs
/// significantly, per (problem, transform kind, feature).
#[derive(Clone, Debug, Default)]
pub struct SensitivityMatrix<T> {
    /// (problem id, kind, feature) -> fraction in [0, 1].
    pub cells: BTreeMap<(u32, TransformKind, usize), T>,
}

/// Aggregate all comparison reports of an experiment into the sensitivity
/// matrix. Insufficient-data rows count in neither numerator nor
/// denominator.
pub fn sensitivity<T: Real>(reports: &[ComparisonReport<T>]) -> SensitivityMatrix<T> {
    let mut tally: BTreeMap<(u32, TransformKind, usize), (usize, usize)> = BTreeMap::new();
    for report in reports {
        for row in &report.rows {
            if let KsOutcome::Tested(r) = &row.ks {
                let cell = tally
                    .entry((report.problem.id(), report.kind, row.feature))
                    .or_insert((0, 0));
                cell.1 += 1;
                if r.reject {
                    cell.0 += 1;
                }
            }
        }
    }
    SensitivityMatrix {
        cells: tally
            .into_iter()
            .map(|(key, (rejected, total))| {
                (key, cst::<T>(rejected as f64) / cst::<T>(total as f64))
            })
            .collect(),
    }
}

//! Statistical comparison machinery: the two-sample Kolmogorov-Smirnov
//! test, the 1-D earth mover's distance, global min-max normalization of
//! feature tables, per-instance comparison reports, rejection curves, the
//! sensitivity matrix, the rotation difference measure and a PCA-based 2-D
//! projection.

mod compare;
mod diff;
mod emd;
mod ks;
mod project;
mod table;

pub use compare::{
    compare, rejection_curve, sensitivity, ComparisonReport, CurvePoint, FeatureComparison,
    InstanceFeatures, SensitivityMatrix,
};
pub use diff::{diff_filter, feature_means, rotation_diff, DiffMatrix};
pub use emd::wasserstein_1d;
pub use ks::{kolmogorov_sf, ks_2samp, KsOutcome, KsResult, KS_MIN_SAMPLES};
pub use project::{fit_projection, Projection};
pub use table::{normalize, FeatureTable, Scaler};

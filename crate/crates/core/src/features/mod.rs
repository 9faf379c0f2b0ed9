//! The 55 exploratory-landscape-analysis features, computed from one
//! evaluated sample.
//!
//! Seven groups are implemented from scratch:
//!
//! | group     | count | contents                                         |
//! |-----------|-------|--------------------------------------------------|
//! | ela_meta  | 9     | linear/quadratic model fits                      |
//! | ela_distr | 3     | skewness, kurtosis, KDE peak count               |
//! | ela_level | 9     | LDA/QDA misclassification at 3 quantiles         |
//! | nbc       | 5     | nearest-better clustering statistics             |
//! | disp      | 16    | dispersion of elite subsets at 4 quantiles       |
//! | ic        | 5     | information content of the slope symbol sequence |
//! | pca       | 8     | explained-variance summaries of X and [X|y]      |
//!
//! Values that a degenerate input makes undefined are recorded as explicitly
//! missing, never dropped and never NaN. The only stochastic ingredient is
//! the fold assignment of `ela_level`, driven by a caller-provided seed.

use std::sync::Arc;

use ndarray::{Array2, ArrayView1, ArrayView2};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::sampling::EvaluatedSample;
use crate::transforms::InstanceDescriptor;
use crate::{Error, Real, Result};

mod disp;
mod distr;
mod ic;
mod level;
mod meta;
mod nbc;
mod pca;

pub use disp::DISP_QUANTILES;
pub use ic::EPSILON_GRID_SIZE;
pub use level::LEVEL_QUANTILES;

/// Total number of features in the registry.
pub const FEATURE_COUNT: usize = 55;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FeatureGroup {
    ElaMeta,
    ElaDistr,
    ElaLevel,
    Nbc,
    Disp,
    Ic,
    Pca,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 7] = [
        FeatureGroup::ElaMeta,
        FeatureGroup::ElaDistr,
        FeatureGroup::ElaLevel,
        FeatureGroup::Nbc,
        FeatureGroup::Disp,
        FeatureGroup::Ic,
        FeatureGroup::Pca,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureGroup::ElaMeta => "ela_meta",
            FeatureGroup::ElaDistr => "ela_distr",
            FeatureGroup::ElaLevel => "ela_level",
            FeatureGroup::Nbc => "nbc",
            FeatureGroup::Disp => "disp",
            FeatureGroup::Ic => "ic",
            FeatureGroup::Pca => "pca",
        }
    }

    /// Slice of the registry covered by this group.
    pub fn range(self) -> std::ops::Range<usize> {
        match self {
            FeatureGroup::ElaMeta => 0..9,
            FeatureGroup::ElaDistr => 9..12,
            FeatureGroup::ElaLevel => 12..21,
            FeatureGroup::Nbc => 21..26,
            FeatureGroup::Disp => 26..42,
            FeatureGroup::Ic => 42..47,
            FeatureGroup::Pca => 47..55,
        }
    }
}

/// One registry entry: the group and the canonical dotted feature name.
#[derive(Clone, Copy, Debug)]
pub struct FeatureDef {
    pub group: FeatureGroup,
    pub name: &'static str,
}

macro_rules! feat {
    ($group:ident, $name:literal) => {
        FeatureDef {
            group: FeatureGroup::$group,
            name: $name,
        }
    };
}

/// The fixed feature registry; order is stable across runs and releases.
pub static REGISTRY: [FeatureDef; FEATURE_COUNT] = [
    feat!(ElaMeta, "ela_meta.lin_simple.adj_r2"),
    feat!(ElaMeta, "ela_meta.lin_simple.intercept"),
    feat!(ElaMeta, "ela_meta.lin_simple.coef.min"),
    feat!(ElaMeta, "ela_meta.lin_simple.coef.max"),
    feat!(ElaMeta, "ela_meta.lin_simple.coef.max_by_min"),
    feat!(ElaMeta, "ela_meta.lin_w_interact.adj_r2"),
    feat!(ElaMeta, "ela_meta.quad_simple.adj_r2"),
    feat!(ElaMeta, "ela_meta.quad_simple.cond"),
    feat!(ElaMeta, "ela_meta.quad_w_interact.adj_r2"),
    feat!(ElaDistr, "ela_distr.skewness"),
    feat!(ElaDistr, "ela_distr.kurtosis"),
    feat!(ElaDistr, "ela_distr.number_of_peaks"),
    feat!(ElaLevel, "ela_level.mmce_lda_10"),
    feat!(ElaLevel, "ela_level.mmce_qda_10"),
    feat!(ElaLevel, "ela_level.lda_qda_10"),
    feat!(ElaLevel, "ela_level.mmce_lda_25"),
    feat!(ElaLevel, "ela_level.mmce_qda_25"),
    feat!(ElaLevel, "ela_level.lda_qda_25"),
    feat!(ElaLevel, "ela_level.mmce_lda_50"),
    feat!(ElaLevel, "ela_level.mmce_qda_50"),
    feat!(ElaLevel, "ela_level.lda_qda_50"),
    feat!(Nbc, "nbc.nn_nb.sd_ratio"),
    feat!(Nbc, "nbc.nn_nb.mean_ratio"),
    feat!(Nbc, "nbc.nn_nb.cor"),
    feat!(Nbc, "nbc.dist_ratio.coeff_var"),
    feat!(Nbc, "nbc.nb_fitness.cor"),
    feat!(Disp, "disp.ratio_mean_02"),
    feat!(Disp, "disp.ratio_mean_05"),
    feat!(Disp, "disp.ratio_mean_10"),
    feat!(Disp, "disp.ratio_mean_25"),
    feat!(Disp, "disp.ratio_median_02"),
    feat!(Disp, "disp.ratio_median_05"),
    feat!(Disp, "disp.ratio_median_10"),
    feat!(Disp, "disp.ratio_median_25"),
    feat!(Disp, "disp.diff_mean_02"),
    feat!(Disp, "disp.diff_mean_05"),
    feat!(Disp, "disp.diff_mean_10"),
    feat!(Disp, "disp.diff_mean_25"),
    feat!(Disp, "disp.diff_median_02"),
    feat!(Disp, "disp.diff_median_05"),
    feat!(Disp, "disp.diff_median_10"),
    feat!(Disp, "disp.diff_median_25"),
    feat!(Ic, "ic.h_max"),
    feat!(Ic, "ic.eps_s"),
    feat!(Ic, "ic.eps_max"),
    feat!(Ic, "ic.eps_ratio"),
    feat!(Ic, "ic.m0"),
    feat!(Pca, "pca.expl_var.cov_x"),
    feat!(Pca, "pca.expl_var.cor_x"),
    feat!(Pca, "pca.expl_var.cov_init"),
    feat!(Pca, "pca.expl_var.cor_init"),
    feat!(Pca, "pca.expl_var_PC1.cov_x"),
    feat!(Pca, "pca.expl_var_PC1.cor_x"),
    feat!(Pca, "pca.expl_var_PC1.cov_init"),
    feat!(Pca, "pca.expl_var_PC1.cor_init"),
];

/// Registry index of a feature name.
pub fn feature_index(name: &str) -> Option<usize> {
    REGISTRY.iter().position(|f| f.name == name)
}

/// The four pca features that depend on the design points only.
pub const X_ONLY_PCA: [&str; 4] = [
    "pca.expl_var.cov_x",
    "pca.expl_var.cor_x",
    "pca.expl_var_PC1.cov_x",
    "pca.expl_var_PC1.cor_x",
];

/// The 55 feature values of one evaluated sample, in registry order, with
/// the provenance needed to place them in the experiment.
#[derive(Clone, Debug)]
pub struct FeatureVector<T: Real> {
    values: [Option<T>; FEATURE_COUNT],
    pub descriptor: Arc<InstanceDescriptor<T>>,
    pub repetition: usize,
    pub feature_seed: u64,
}

impl<T: Real> FeatureVector<T> {
    pub fn new(
        values: [Option<T>; FEATURE_COUNT],
        descriptor: Arc<InstanceDescriptor<T>>,
        repetition: usize,
        feature_seed: u64,
    ) -> Self {
        // Present values are finite by contract; enforce it here so the
        // statistics downstream never see NaN or infinity.
        let mut clean = values;
        for v in clean.iter_mut() {
            if let Some(x) = v {
                if !x.is_finite() {
                    *v = None;
                }
            }
        }
        FeatureVector {
            values: clean,
            descriptor,
            repetition,
            feature_seed,
        }
    }

    pub fn get(&self, index: usize) -> Option<T> {
        self.values[index]
    }

    pub fn by_name(&self, name: &str) -> Option<T> {
        feature_index(name).and_then(|i| self.values[i])
    }

    pub fn values(&self) -> &[Option<T>; FEATURE_COUNT] {
        &self.values
    }

    pub fn missing_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    pub fn iter_named(&self) -> impl Iterator<Item = (&'static str, Option<T>)> + '_ {
        REGISTRY
            .iter()
            .zip(self.values.iter())
            .map(|(def, v)| (def.name, *v))
    }
}

/// Pairwise Euclidean distance matrix of the design points, computed once
/// per sample and shared by the distance-based groups.
pub(crate) struct DistanceMatrix<T> {
    data: Array2<T>,
}

impl<T: Real> DistanceMatrix<T> {
    pub fn from_points(points: &ArrayView2<T>) -> Self {
        let m = points.nrows();
        let mut data = Array2::zeros((m, m));
        for i in 0..m {
            for j in i + 1..m {
                let mut acc = T::zero();
                for k in 0..points.ncols() {
                    let d = points[(i, k)] - points[(j, k)];
                    acc += d * d;
                }
                let dist = acc.sqrt();
                data[(i, j)] = dist;
                data[(j, i)] = dist;
            }
        }
        DistanceMatrix { data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[(i, j)]
    }

    pub fn len(&self) -> usize {
        self.data.nrows()
    }
}

fn check_shape<T: Real>(points: &ArrayView2<T>, values: &ArrayView1<T>) -> Result<()> {
    if points.nrows() == 0 || points.ncols() == 0 {
        return Err(Error::invalid("empty sample"));
    }
    if points.nrows() != values.len() {
        return Err(Error::invalid(format!(
            "sample has {} points but {} objective values",
            points.nrows(),
            values.len()
        )));
    }
    Ok(())
}

/// Compute all 55 features from raw (points, values) data. This is the
/// entry point used for fixture cross-checks; [`compute_all`] wraps it for
/// evaluated samples.
pub fn compute_feature_values<T: Real>(
    points: &ArrayView2<T>,
    values: &ArrayView1<T>,
    feature_seed: u64,
) -> Result<[Option<T>; FEATURE_COUNT]> {
    check_shape(points, values)?;
    let y = values
        .as_slice()
        .map(|s| s.to_vec())
        .unwrap_or_else(|| values.to_vec());

    let dist = DistanceMatrix::from_points(points);
    let mut rng = ChaCha12Rng::seed_from_u64(feature_seed);

    let mut out = [None; FEATURE_COUNT];
    let put = |out: &mut [Option<T>; FEATURE_COUNT], group: FeatureGroup, vals: &[Option<T>]| {
        let range = group.range();
        debug_assert_eq!(range.len(), vals.len());
        out[range].copy_from_slice(vals);
    };

    put(&mut out, FeatureGroup::ElaMeta, &meta::ela_meta_impl(points, &y)?);
    put(&mut out, FeatureGroup::ElaDistr, &distr::ela_distr_impl(&y));
    put(
        &mut out,
        FeatureGroup::ElaLevel,
        &level::ela_level_impl(points, &y, &mut rng),
    );
    put(&mut out, FeatureGroup::Nbc, &nbc::nbc_impl(&dist, &y));
    put(&mut out, FeatureGroup::Disp, &disp::disp_impl(&dist, &y));
    put(&mut out, FeatureGroup::Ic, &ic::ic_impl(&dist, &y));
    put(&mut out, FeatureGroup::Pca, &pca::pca_impl(points, &y));

    for v in out.iter_mut() {
        if let Some(x) = v {
            if !x.is_finite() {
                *v = None;
            }
        }
    }
    Ok(out)
}

/// Compute the full feature vector of an evaluated sample. Deterministic
/// given `(sample, feature_seed)`; group-level degeneracies surface as
/// missing entries, never as an error.
pub fn compute_all<T: Real>(
    sample: &EvaluatedSample<T>,
    feature_seed: u64,
) -> Result<FeatureVector<T>> {
    let values = compute_feature_values(
        &sample.design.points.view(),
        &sample.values.view(),
        feature_seed,
    )?;
    Ok(FeatureVector::new(
        values,
        Arc::clone(&sample.descriptor),
        sample.repetition,
        feature_seed,
    ))
}

/// Per-group entry points mirroring the public operation set.
pub fn ela_meta<T: Real>(s: &EvaluatedSample<T>) -> Result<[Option<T>; 9]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    meta::ela_meta_impl(&s.design.points.view(), s.values.as_slice().unwrap())
}

pub fn ela_distr<T: Real>(s: &EvaluatedSample<T>) -> Result<[Option<T>; 3]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    Ok(distr::ela_distr_impl(s.values.as_slice().unwrap()))
}

pub fn ela_level<T: Real>(s: &EvaluatedSample<T>, rng: &mut impl rand::Rng) -> Result<[Option<T>; 9]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    Ok(level::ela_level_impl(
        &s.design.points.view(),
        s.values.as_slice().unwrap(),
        rng,
    ))
}

pub fn nbc<T: Real>(s: &EvaluatedSample<T>) -> Result<[Option<T>; 5]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    let dist = DistanceMatrix::from_points(&s.design.points.view());
    Ok(nbc::nbc_impl(&dist, s.values.as_slice().unwrap()))
}

pub fn disp<T: Real>(s: &EvaluatedSample<T>) -> Result<[Option<T>; 16]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    let dist = DistanceMatrix::from_points(&s.design.points.view());
    Ok(disp::disp_impl(&dist, s.values.as_slice().unwrap()))
}

pub fn ic<T: Real>(s: &EvaluatedSample<T>) -> Result<[Option<T>; 5]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    let dist = DistanceMatrix::from_points(&s.design.points.view());
    Ok(ic::ic_impl(&dist, s.values.as_slice().unwrap()))
}

pub fn pca<T: Real>(s: &EvaluatedSample<T>) -> Result<[Option<T>; 8]> {
    check_shape(&s.design.points.view(), &s.values.view())?;
    Ok(pca::pca_impl(
        &s.design.points.view(),
        s.values.as_slice().unwrap(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;
    use crate::sampling::{evaluate_design, Bounds, Design};
    use crate::transforms::InstanceDescriptor;

    #[test]
    fn registry_is_consistent() {
        assert_eq!(REGISTRY.len(), 55);
        let counts: Vec<usize> = FeatureGroup::ALL.iter().map(|g| g.range().len()).collect();
        assert_eq!(counts, vec![9, 3, 9, 5, 16, 5, 8]);
        // Ranges tile 0..55 in order and names agree with their group.
        let mut next = 0;
        for g in FeatureGroup::ALL {
            let r = g.range();
            assert_eq!(r.start, next);
            next = r.end;
            for i in r {
                assert_eq!(REGISTRY[i].group, g);
                assert!(REGISTRY[i].name.starts_with(g.as_str()));
            }
        }
        assert_eq!(next, 55);
        // Names are unique.
        for (i, def) in REGISTRY.iter().enumerate() {
            assert_eq!(feature_index(def.name), Some(i));
        }
        assert_eq!(feature_index("ela_meta.lin_simple.intercept"), Some(1));
    }

    fn rastrigin_sample(seed: u64) -> EvaluatedSample<f64> {
        let design = Arc::new(Design::generate(300, 5, Bounds::standard(), seed).unwrap());
        let desc = Arc::new(InstanceDescriptor::<f64>::original(
            ProblemId::Rastrigin,
            5,
            0,
        ));
        evaluate_design(&desc, &design, 0).unwrap()
    }

    #[test]
    fn compute_all_yields_55_entries_and_is_deterministic() {
        let sample = rastrigin_sample(21);
        let a = compute_all(&sample, 77).unwrap();
        let b = compute_all(&sample, 77).unwrap();
        assert_eq!(a.values().len(), 55);
        for (x, y) in a.values().iter().zip(b.values().iter()) {
            match (x, y) {
                (Some(u), Some(v)) => assert_eq!(u.to_bits(), v.to_bits()),
                (None, None) => {}
                _ => panic!("determinism violated"),
            }
        }
        // A healthy sample has every feature present.
        assert_eq!(a.missing_count(), 0);
    }

    #[test]
    fn constant_objective_degenerates_gracefully() {
        let design = Arc::new(Design::generate(200, 4, Bounds::standard(), 3).unwrap());
        let desc = Arc::new(InstanceDescriptor::<f64>::original(
            ProblemId::Rastrigin,
            4,
            0,
        ));
        let mut sample = evaluate_design(&desc, &design, 0).unwrap();
        sample.values.fill(7.0);
        let fv = compute_all(&sample, 5).unwrap();
        // ela_meta (9), ela_distr (3) and ela_level (9) are all missing.
        for g in [
            FeatureGroup::ElaMeta,
            FeatureGroup::ElaDistr,
            FeatureGroup::ElaLevel,
        ] {
            for i in g.range() {
                assert!(fv.get(i).is_none(), "{} should be missing", REGISTRY[i].name);
            }
        }
        assert!(fv.missing_count() >= 21);
        // The X-only pca features are still present.
        for name in X_ONLY_PCA {
            assert!(fv.by_name(name).is_some(), "{name} should be present");
        }
    }

    #[test]
    fn feature_vector_sanitizes_non_finite_values() {
        let sample = rastrigin_sample(4);
        let mut values = [None; FEATURE_COUNT];
        values[0] = Some(f64::INFINITY);
        values[1] = Some(1.0);
        let fv = FeatureVector::new(values, Arc::clone(&sample.descriptor), 0, 0);
        assert!(fv.get(0).is_none());
        assert_eq!(fv.get(1), Some(1.0));
    }

    #[test]
    fn generic_over_f32() {
        let design = Arc::new(Design::<f32>::generate(120, 3, Bounds::standard(), 2).unwrap());
        let desc = Arc::new(InstanceDescriptor::<f32>::original(
            ProblemId::Rastrigin,
            3,
            0,
        ));
        let sample = evaluate_design(&desc, &design, 0).unwrap();
        let fv = compute_all(&sample, 1).unwrap();
        assert_eq!(fv.values().len(), 55);
        assert!(fv.by_name("ela_meta.lin_simple.adj_r2").is_some());
    }
}

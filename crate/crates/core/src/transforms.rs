//! Transformed problem instances: search-space translation, scaling and
//! rotation, objective translation and scaling, plus the enumeration of the
//! full instance set of an experiment.
//!
//! An instance is evaluated as
//!
//! * identity           `g(x) = f(x)`
//! * search translation `g(x) = f(x + t)`
//! * search scaling     `g(x) = f(k_x * x)`
//! * search rotation    `g(x) = f(R * x)`
//! * objective offset   `g(x) = f(x) + d_y`
//! * objective scaling  `g(x) = k_y * f(x)`
//!
//! Sampling always happens in the fixed box; the transformed argument may
//! leave it, which is intentional.

use ndarray::{Array1, Array2, ArrayView1};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::linalg::{determinant, qr_square};
use crate::problems::{self, ProblemId};
use crate::seeding;
use crate::{cst, Error, Real, Result};

/// The transformation families.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TransformKind {
    Identity,
    XTranslation,
    XScaling,
    XRotation,
    YTranslation,
    YScaling,
}

impl TransformKind {
    pub const ALL: [TransformKind; 6] = [
        TransformKind::Identity,
        TransformKind::XTranslation,
        TransformKind::XScaling,
        TransformKind::XRotation,
        TransformKind::YTranslation,
        TransformKind::YScaling,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TransformKind::Identity => "identity",
            TransformKind::XTranslation => "x_translation",
            TransformKind::XScaling => "x_scaling",
            TransformKind::XRotation => "x_rotation",
            TransformKind::YTranslation => "y_translation",
            TransformKind::YScaling => "y_scaling",
        }
    }

    pub fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown transform kind `{s}`")))
    }

    pub(crate) fn code(self) -> u64 {
        match self {
            TransformKind::Identity => 0,
            TransformKind::XTranslation => 1,
            TransformKind::XScaling => 2,
            TransformKind::XRotation => 3,
            TransformKind::YTranslation => 4,
            TransformKind::YScaling => 5,
        }
    }
}

/// One concrete transformation with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform<T: Real> {
    Identity,
    XTranslation { offset: Array1<T> },
    XScaling { factor: T },
    XRotation { matrix: Array2<T> },
    YTranslation { offset: T },
    YScaling { factor: T },
}

impl<T: Real> Transform<T> {
    pub fn kind(&self) -> TransformKind {
        match self {
            Transform::Identity => TransformKind::Identity,
            Transform::XTranslation { .. } => TransformKind::XTranslation,
            Transform::XScaling { .. } => TransformKind::XScaling,
            Transform::XRotation { .. } => TransformKind::XRotation,
            Transform::YTranslation { .. } => TransformKind::YTranslation,
            Transform::YScaling { .. } => TransformKind::YScaling,
        }
    }
}

/// A transformation plus the grid parameter that generated it (translation
/// limit, scaling exponent, rotation index or objective offset).
#[derive(Clone, Debug, PartialEq)]
pub struct TransformSpec<T: Real> {
    pub transform: Transform<T>,
    pub level: i64,
}

impl<T: Real> TransformSpec<T> {
    pub fn identity() -> Self {
        TransformSpec {
            transform: Transform::Identity,
            level: 0,
        }
    }

    pub fn kind(&self) -> TransformKind {
        self.transform.kind()
    }

    /// Structural checks: orthogonality and determinant of rotation
    /// matrices, offsets within the generating limit. Tolerances assume
    /// `f64` precision.
    pub fn validate(&self, dimension: usize) -> Result<()> {
        match &self.transform {
            Transform::Identity => Ok(()),
            Transform::XTranslation { offset } => {
                if offset.len() != dimension {
                    return Err(Error::invalid("translation offset has wrong length"));
                }
                let limit = cst::<T>(self.level as f64);
                if offset.iter().any(|v| v.abs() > limit) {
                    return Err(Error::invalid("translation offset exceeds its limit"));
                }
                Ok(())
            }
            Transform::XScaling { factor } | Transform::YScaling { factor } => {
                if *factor <= T::zero() || !factor.is_finite() {
                    return Err(Error::invalid("scaling factor must be positive and finite"));
                }
                Ok(())
            }
            Transform::XRotation { matrix } => {
                if matrix.nrows() != dimension || matrix.ncols() != dimension {
                    return Err(Error::invalid("rotation matrix has wrong shape"));
                }
                let rtr = matrix.t().dot(matrix);
                let mut max_dev = T::zero();
                for i in 0..dimension {
                    for j in 0..dimension {
                        let expect = if i == j { T::one() } else { T::zero() };
                        max_dev = max_dev.max((rtr[(i, j)] - expect).abs());
                    }
                }
                if max_dev > cst::<T>(1e-10) {
                    return Err(Error::invalid("rotation matrix is not orthogonal"));
                }
                let det = determinant(&matrix.view())?;
                if (det - T::one()).abs() > cst::<T>(1e-8) {
                    return Err(Error::invalid("rotation matrix determinant is not +1"));
                }
                Ok(())
            }
            Transform::YTranslation { offset } => {
                if !offset.is_finite() {
                    return Err(Error::invalid("objective offset must be finite"));
                }
                Ok(())
            }
        }
    }
}

/// A base problem together with one transformation; the unit of the study.
///
/// `seed` records the stream that drew the random parameters, making the
/// descriptor replayable on its own.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceDescriptor<T: Real> {
    pub problem: ProblemId,
    pub dimension: usize,
    pub instance_index: usize,
    pub spec: TransformSpec<T>,
    pub seed: u64,
}

impl<T: Real> InstanceDescriptor<T> {
    pub fn original(problem: ProblemId, dimension: usize, seed: u64) -> Self {
        InstanceDescriptor {
            problem,
            dimension,
            instance_index: 0,
            spec: TransformSpec::identity(),
            seed,
        }
    }

    pub fn kind(&self) -> TransformKind {
        self.spec.kind()
    }

    /// Evaluate the transformed problem at `x`.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        let mut scratch = vec![T::zero(); self.dimension];
        self.evaluate_with_scratch(x, &mut scratch)
    }

    /// Evaluation path that reuses a caller-provided buffer for the
    /// transformed point.
    pub fn evaluate_with_scratch(&self, x: &[T], scratch: &mut [T]) -> Result<T> {
        if x.len() != self.dimension {
            return Err(Error::invalid(format!(
                "dimension mismatch: instance is {}-dimensional, point has {}",
                self.dimension,
                x.len()
            )));
        }
        match &self.spec.transform {
            Transform::Identity => problems::evaluate(self.problem, self.dimension, x),
            Transform::XTranslation { offset } => {
                for (s, (&xi, &ti)) in scratch.iter_mut().zip(x.iter().zip(offset.iter())) {
                    *s = xi + ti;
                }
                problems::evaluate(self.problem, self.dimension, scratch)
            }
            Transform::XScaling { factor } => {
                for (s, &xi) in scratch.iter_mut().zip(x.iter()) {
                    *s = *factor * xi;
                }
                problems::evaluate(self.problem, self.dimension, scratch)
            }
            Transform::XRotation { matrix } => {
                let xv = ArrayView1::from(x);
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = matrix.row(i).dot(&xv);
                }
                problems::evaluate(self.problem, self.dimension, scratch)
            }
            Transform::YTranslation { offset } => {
                Ok(problems::evaluate(self.problem, self.dimension, x)? + *offset)
            }
            Transform::YScaling { factor } => {
                Ok(*factor * problems::evaluate(self.problem, self.dimension, x)?)
            }
        }
    }
}

/// Evaluate a transformed instance at a single point.
pub fn instance_evaluate<T: Real>(desc: &InstanceDescriptor<T>, x: &[T]) -> Result<T> {
    desc.evaluate(x)
}

/// Haar-distributed random rotation matrix (`R^T R = I`, `det R = +1`):
/// a Gaussian matrix is QR-factorized, the factor signs are fixed so the
/// R diagonal is positive, and one column is flipped if the determinant
/// came out negative.
pub fn random_orthogonal<T: Real>(d: usize, rng: &mut impl Rng) -> Result<Array2<T>> {
    if d == 0 {
        return Err(Error::invalid("rotation dimension must be positive"));
    }
    // Draws happen in f64 so the stream is identical for every scalar type.
    let normal = StandardNormal;
    let gaussian: Array2<T> =
        Array2::from_shape_fn((d, d), |_| cst(<StandardNormal as Distribution<f64>>::sample(&normal, rng)));
    let (mut q, r) = qr_square(&gaussian.view())?;
    for j in 0..d {
        if r[(j, j)] < T::zero() {
            for i in 0..d {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    let det = determinant(&q.view())?;
    if det < T::zero() {
        for i in 0..d {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    Ok(q)
}

/// Translation offset with each component uniform on `[-limit, limit]`.
pub fn sample_translation<T: Real>(d: usize, limit: f64, rng: &mut impl Rng) -> Result<Array1<T>> {
    if !(limit >= 0.0) {
        return Err(Error::invalid("translation limit must be non-negative"));
    }
    if limit == 0.0 {
        return Ok(Array1::zeros(d));
    }
    let dist = Uniform::new_inclusive(-limit, limit)
        .map_err(|e| Error::invalid(format!("translation limit: {e}")))?;
    Ok(Array1::from_iter((0..d).map(|_| cst(dist.sample(rng)))))
}

/// Parameter grids from which the instance set of one problem is built.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceGrid {
    pub dimension: usize,
    /// Translation limits d_x; each limit gets `vectors_per_limit` offsets.
    pub translation_limits: Vec<u32>,
    pub vectors_per_limit: usize,
    /// Search-space scaling exponents e, k_x = 2^e.
    pub scaling_exponents: Vec<i32>,
    /// Number of random rotation matrices.
    pub rotations: usize,
    /// Objective translation offsets d_y.
    pub objective_offsets: Vec<u32>,
    /// Objective scaling exponents e, k_y = 2^e.
    pub objective_exponents: Vec<i32>,
}

impl Default for InstanceGrid {
    /// The full experiment grids: 267 instances per problem.
    fn default() -> Self {
        InstanceGrid {
            dimension: 10,
            translation_limits: (1..=20).map(|i| i * 5).collect(),
            vectors_per_limit: 10,
            scaling_exponents: (-6..=6).collect(),
            rotations: 30,
            objective_offsets: (1..=10).map(|i| i * 100).collect(),
            objective_exponents: (-6..=6).collect(),
        }
    }
}

impl InstanceGrid {
    /// Total number of descriptors `enumerate_instances` will produce.
    pub fn instance_count(&self) -> usize {
        1 + self.translation_limits.len() * self.vectors_per_limit
            + self.rotations
            + self.scaling_exponents.len()
            + self.objective_offsets.len()
            + self.objective_exponents.len()
    }
}

/// Enumerate the full instance set of one problem in a fixed deterministic
/// order: original, translations (limits in grid order), rotations,
/// search scalings, objective translations, objective scalings.
///
/// Every random parameter is drawn from a stream seeded per instance, so
/// any single descriptor can be regenerated independently.
pub fn enumerate_instances<T: Real>(
    problem: ProblemId,
    grid: &InstanceGrid,
    base_seed: u64,
) -> Result<Vec<InstanceDescriptor<T>>> {
    let d = grid.dimension;
    if d < problem.min_dimension() {
        return Err(Error::invalid(format!(
            "{} requires dimension >= {}",
            problem.name(),
            problem.min_dimension()
        )));
    }
    if grid.instance_count() == 1 {
        return Err(Error::invalid(
            "all transformation grids are empty; nothing to enumerate",
        ));
    }

    let pid = problem.id() as u64;
    let seed_for = |kind: TransformKind, index: usize| {
        seeding::transform_seed(base_seed, pid, kind.code(), index as u64)
    };

    let mut out: Vec<InstanceDescriptor<T>> = Vec::with_capacity(grid.instance_count());
    out.push(InstanceDescriptor::original(
        problem,
        d,
        seed_for(TransformKind::Identity, 0),
    ));

    for &limit in &grid.translation_limits {
        for _ in 0..grid.vectors_per_limit {
            let index = out.len();
            let seed = seed_for(TransformKind::XTranslation, index);
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let offset = sample_translation(d, limit as f64, &mut rng)?;
            out.push(InstanceDescriptor {
                problem,
                dimension: d,
                instance_index: index,
                spec: TransformSpec {
                    transform: Transform::XTranslation { offset },
                    level: limit as i64,
                },
                seed,
            });
        }
    }

    for r in 0..grid.rotations {
        let index = out.len();
        let seed = seed_for(TransformKind::XRotation, index);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let matrix = random_orthogonal(d, &mut rng)?;
        out.push(InstanceDescriptor {
            problem,
            dimension: d,
            instance_index: index,
            spec: TransformSpec {
                transform: Transform::XRotation { matrix },
                level: (r + 1) as i64,
            },
            seed,
        });
    }

    for &e in &grid.scaling_exponents {
        let index = out.len();
        out.push(InstanceDescriptor {
            problem,
            dimension: d,
            instance_index: index,
            spec: TransformSpec {
                transform: Transform::XScaling {
                    factor: cst(2f64.powi(e)),
                },
                level: e as i64,
            },
            seed: seed_for(TransformKind::XScaling, index),
        });
    }

    for &dy in &grid.objective_offsets {
        let index = out.len();
        out.push(InstanceDescriptor {
            problem,
            dimension: d,
            instance_index: index,
            spec: TransformSpec {
                transform: Transform::YTranslation {
                    offset: cst(dy as f64),
                },
                level: dy as i64,
            },
            seed: seed_for(TransformKind::YTranslation, index),
        });
    }

    for &e in &grid.objective_exponents {
        let index = out.len();
        out.push(InstanceDescriptor {
            problem,
            dimension: d,
            instance_index: index,
            spec: TransformSpec {
                transform: Transform::YScaling {
                    factor: cst(2f64.powi(e)),
                },
                level: e as i64,
            },
            seed: seed_for(TransformKind::YScaling, index),
        });
    }

    debug_assert_eq!(out.len(), grid.instance_count());
    Ok(out)
}

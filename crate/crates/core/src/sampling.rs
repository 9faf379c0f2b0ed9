//! Latin hypercube designs in the box domain and their evaluation under a
//! problem instance.
//!
//! Designs are a pure function of their seed; with the default seeding
//! scheme (see [`crate::seeding::design_seed`]) the design of repetition `r`
//! is shared by every instance of every problem, which keeps the sample
//! distribution static across instances.

use std::sync::Arc;

use ndarray::{Array1, Array2};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::transforms::InstanceDescriptor;
use crate::{cst, Error, Real, Result};

/// The per-coordinate sampling interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds<T: Real> {
    pub lower: T,
    pub upper: T,
}

impl<T: Real> Bounds<T> {
    pub fn new(lower: T, upper: T) -> Result<Self> {
        if !(lower < upper) {
            return Err(Error::invalid("bounds must satisfy lower < upper"));
        }
        Ok(Bounds { lower, upper })
    }

    /// The canonical box `[-100, 100]`.
    pub fn standard() -> Self {
        Bounds {
            lower: cst(crate::problems::LOWER_BOUND),
            upper: cst(crate::problems::UPPER_BOUND),
        }
    }

    pub fn width(&self) -> T {
        self.upper - self.lower
    }

    pub fn contains(&self, v: T) -> bool {
        v >= self.lower && v <= self.upper
    }
}

/// An m x d Latin hypercube design: in every dimension, each of the m
/// equal-width strata holds exactly one point.
#[derive(Clone, Debug)]
pub struct Design<T: Real> {
    pub points: Array2<T>,
    pub bounds: Bounds<T>,
    pub seed: u64,
}

impl<T: Real> Design<T> {
    /// Generate a design from a seed (classic jittered LHS).
    pub fn generate(m: usize, d: usize, bounds: Bounds<T>, seed: u64) -> Result<Self> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let points = lhs(m, d, bounds, &mut rng)?;
        Ok(Design {
            points,
            bounds,
            seed,
        })
    }

    pub fn len(&self) -> usize {
        self.points.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.points.nrows() == 0
    }

    pub fn dimension(&self) -> usize {
        self.points.ncols()
    }
}

/// Classic randomized Latin hypercube sample: per dimension an independent
/// uniform permutation of the strata, jittered uniformly inside each cell.
pub fn lhs<T: Real>(
    m: usize,
    d: usize,
    bounds: Bounds<T>,
    rng: &mut impl Rng,
) -> Result<Array2<T>> {
    if m == 0 || d == 0 {
        return Err(Error::invalid("lhs requires m >= 1 and d >= 1"));
    }
    let mut points = Array2::zeros((m, d));
    let mut strata: Vec<usize> = (0..m).collect();
    let width = bounds.width();
    for j in 0..d {
        strata.shuffle(rng);
        for i in 0..m {
            let u: f64 = rng.random();
            let t = (strata[i] as f64 + u) / m as f64;
            points[(i, j)] = bounds.lower + width * cst(t);
        }
    }
    Ok(points)
}

/// A design with the objective values of one instance, for one repetition.
#[derive(Clone, Debug)]
pub struct EvaluatedSample<T: Real> {
    pub design: Arc<Design<T>>,
    pub values: Array1<T>,
    pub descriptor: Arc<InstanceDescriptor<T>>,
    pub repetition: usize,
}

impl<T: Real> EvaluatedSample<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.design.dimension()
    }
}

/// Evaluate every design point under the instance. Fails if any value comes
/// out non-finite, naming the offending row.
pub fn evaluate_design<T: Real>(
    descriptor: &Arc<InstanceDescriptor<T>>,
    design: &Arc<Design<T>>,
    repetition: usize,
) -> Result<EvaluatedSample<T>> {
    if design.dimension() != descriptor.dimension {
        return Err(Error::invalid(format!(
            "design dimension {} does not match instance dimension {}",
            design.dimension(),
            descriptor.dimension
        )));
    }
    let m = design.len();
    let mut values = Array1::zeros(m);
    let mut scratch = vec![T::zero(); descriptor.dimension];
    for i in 0..m {
        let row = design.points.row(i);
        let x = row.as_slice().expect("design rows are contiguous");
        let y = descriptor.evaluate_with_scratch(x, &mut scratch)?;
        if !y.is_finite() {
            return Err(Error::NonFinite {
                row: i,
                detail: format!(
                    "instance {} of problem {} produced {y}",
                    descriptor.instance_index,
                    descriptor.problem.name()
                ),
            });
        }
        values[i] = y;
    }
    Ok(EvaluatedSample {
        design: Arc::clone(design),
        values,
        descriptor: Arc::clone(descriptor),
        repetition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;
    use crate::transforms::{Transform, TransformSpec};

    fn unit_bounds() -> Bounds<f64> {
        Bounds::new(0.0, 1.0).unwrap()
    }

    fn stratum_counts(design: &Design<f64>) -> Vec<Vec<usize>> {
        let m = design.len();
        let w = design.bounds.width();
        (0..design.dimension())
            .map(|j| {
                let mut counts = vec![0usize; m];
                for i in 0..m {
                    let t = (design.points[(i, j)] - design.bounds.lower) / w;
                    let k = ((t * m as f64).floor() as usize).min(m - 1);
                    counts[k] += 1;
                }
                counts
            })
            .collect()
    }

    #[test]
    fn lhs_two_point_example() {
        let design = Design::generate(2, 1, unit_bounds(), 7).unwrap();
        let mut v: Vec<f64> = design.points.column(0).to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(v[0] >= 0.0 && v[0] < 0.5);
        assert!(v[1] >= 0.5 && v[1] <= 1.0);
    }

    #[test]
    fn lhs_marginal_property() {
        let design = Design::generate(1000, 10, Bounds::standard(), 42).unwrap();
        for counts in stratum_counts(&design) {
            assert!(counts.iter().all(|&c| c == 1));
        }
        for &v in design.points.iter() {
            assert!(design.bounds.contains(v));
        }
    }

    #[test]
    fn lhs_is_deterministic_per_seed() {
        let a = Design::<f64>::generate(50, 3, Bounds::standard(), 9).unwrap();
        let b = Design::<f64>::generate(50, 3, Bounds::standard(), 9).unwrap();
        assert_eq!(a.points, b.points);
        let c = Design::<f64>::generate(50, 3, Bounds::standard(), 10).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn lhs_rejects_degenerate_shapes() {
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert!(lhs::<f64>(0, 3, Bounds::standard(), &mut rng).is_err());
        assert!(lhs::<f64>(3, 0, Bounds::standard(), &mut rng).is_err());
    }

    #[test]
    fn evaluate_design_matches_pointwise_evaluation() {
        let design = Arc::new(Design::generate(100, 10, Bounds::standard(), 3).unwrap());
        let identity = Arc::new(InstanceDescriptor::<f64>::original(
            ProblemId::Rastrigin,
            10,
            0,
        ));
        let sample = evaluate_design(&identity, &design, 0).unwrap();
        assert_eq!(sample.len(), 100);
        for i in 0..design.len() {
            let x: Vec<f64> = design.points.row(i).to_vec();
            let direct = crate::problems::evaluate(ProblemId::Rastrigin, 10, &x).unwrap();
            assert_eq!(sample.values[i].to_bits(), direct.to_bits());
        }
    }

    #[test]
    fn y_scaling_doubles_values_exactly() {
        let design = Arc::new(Design::generate(64, 10, Bounds::standard(), 5).unwrap());
        let identity = Arc::new(InstanceDescriptor::<f64>::original(
            ProblemId::Rastrigin,
            10,
            0,
        ));
        let scaled = Arc::new(InstanceDescriptor {
            problem: ProblemId::Rastrigin,
            dimension: 10,
            instance_index: 1,
            spec: TransformSpec {
                transform: Transform::YScaling { factor: 2.0 },
                level: 1,
            },
            seed: 0,
        });
        let a = evaluate_design(&identity, &design, 0).unwrap();
        let b = evaluate_design(&scaled, &design, 0).unwrap();
        for (x, y) in a.values.iter().zip(b.values.iter()) {
            assert_eq!(y.to_bits(), (x * 2.0).to_bits());
        }
    }

    #[test]
    fn evaluate_design_checks_dimension() {
        let design = Arc::new(Design::<f64>::generate(10, 3, Bounds::standard(), 1).unwrap());
        let identity = Arc::new(InstanceDescriptor::<f64>::original(
            ProblemId::Rastrigin,
            10,
            0,
        ));
        assert!(evaluate_design(&identity, &design, 0).is_err());
    }

    #[test]
    fn monotone_objective_transforms_keep_argmin() {
        let design = Arc::new(Design::generate(200, 10, Bounds::standard(), 8).unwrap());
        let identity = Arc::new(InstanceDescriptor::<f64>::original(ProblemId::Levy, 10, 0));
        let base = evaluate_design(&identity, &design, 0).unwrap();
        let argmin = |v: &Array1<f64>| {
            v.iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0
        };
        for spec in [
            TransformSpec {
                transform: Transform::YScaling { factor: 0.125 },
                level: -3,
            },
            TransformSpec {
                transform: Transform::YTranslation { offset: 500.0 },
                level: 500,
            },
        ] {
            let desc = Arc::new(InstanceDescriptor {
                problem: ProblemId::Levy,
                dimension: 10,
                instance_index: 1,
                spec,
                seed: 0,
            });
            let transformed = evaluate_design(&desc, &design, 0).unwrap();
            assert_eq!(argmin(&base.values), argmin(&transformed.values));
        }
    }
}

//! The five base benchmark functions, defined as pure deterministic
//! functions on all of `R^d` with the canonical box domain `[-100, 100]^d`.
//!
//! The raw textbook formulas are used: no per-function shift or rotation
//! data, no domain shrink factors and no objective offsets are applied.
//! Points outside the box are legal inputs, since search-space scaling and
//! rotation push evaluation points past the bounds.

use crate::{cst, Error, Real, Result};

/// Lower bound of the box domain, identical in every coordinate.
pub const LOWER_BOUND: f64 = -100.0;
/// Upper bound of the box domain, identical in every coordinate.
pub const UPPER_BOUND: f64 = 100.0;

/// Identifier of one of the five base problems.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ProblemId {
    Zakharov,
    Rosenbrock,
    SchafferF7,
    Rastrigin,
    Levy,
}

impl ProblemId {
    pub const ALL: [ProblemId; 5] = [
        ProblemId::Zakharov,
        ProblemId::Rosenbrock,
        ProblemId::SchafferF7,
        ProblemId::Rastrigin,
        ProblemId::Levy,
    ];

    /// Numeric id in `1..=5`.
    pub fn id(self) -> u32 {
        match self {
            ProblemId::Zakharov => 1,
            ProblemId::Rosenbrock => 2,
            ProblemId::SchafferF7 => 3,
            ProblemId::Rastrigin => 4,
            ProblemId::Levy => 5,
        }
    }

    pub fn from_id(id: u32) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.id() == id)
            .ok_or_else(|| Error::invalid(format!("unknown problem id {id}, expected 1..=5")))
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Zakharov => "Zakharov",
            ProblemId::Rosenbrock => "Rosenbrock",
            ProblemId::SchafferF7 => "Schaffer F7",
            ProblemId::Rastrigin => "Rastrigin",
            ProblemId::Levy => "Levy",
        }
    }

    /// Smallest dimension the formula is defined for.
    pub fn min_dimension(self) -> usize {
        match self {
            // s_i couples consecutive coordinates and the sum is averaged
            // over d-1 terms.
            ProblemId::SchafferF7 => 2,
            _ => 1,
        }
    }

    /// Raw function value; assumes `x` already validated.
    fn raw<T: Real>(self, x: &[T]) -> T {
        match self {
            ProblemId::Zakharov => zakharov(x),
            ProblemId::Rosenbrock => rosenbrock(x),
            ProblemId::SchafferF7 => schaffer_f7(x),
            ProblemId::Rastrigin => rastrigin(x),
            ProblemId::Levy => levy(x),
        }
    }

    /// Location and value of the global optimum of the raw formula.
    pub fn optimum<T: Real>(self, dimension: usize) -> (Vec<T>, T) {
        let loc = match self {
            ProblemId::Zakharov | ProblemId::SchafferF7 | ProblemId::Rastrigin => {
                vec![T::zero(); dimension]
            }
            ProblemId::Rosenbrock | ProblemId::Levy => vec![T::one(); dimension],
        };
        (loc, T::zero())
    }
}

/// Metadata row describing one base problem.
#[derive(Clone, Copy, Debug)]
pub struct ProblemInfo {
    pub id: u32,
    pub name: &'static str,
    pub lower: f64,
    pub upper: f64,
}

/// The five base problems, ids 1..=5 in order.
pub fn list_problems() -> Vec<ProblemInfo> {
    ProblemId::ALL
        .iter()
        .map(|p| ProblemInfo {
            id: p.id(),
            name: p.name(),
            lower: LOWER_BOUND,
            upper: UPPER_BOUND,
        })
        .collect()
}

/// A base problem at a fixed dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchmarkProblem {
    pub id: ProblemId,
    pub dimension: usize,
}

impl BenchmarkProblem {
    pub fn new(id: ProblemId, dimension: usize) -> Result<Self> {
        if dimension < id.min_dimension() {
            return Err(Error::invalid(format!(
                "{} requires dimension >= {}, got {dimension}",
                id.name(),
                id.min_dimension()
            )));
        }
        Ok(BenchmarkProblem { id, dimension })
    }

    pub fn evaluate<T: Real>(&self, x: &[T]) -> Result<T> {
        evaluate(self.id, self.dimension, x)
    }

    pub fn optimum<T: Real>(&self) -> (Vec<T>, T) {
        self.id.optimum(self.dimension)
    }

    pub fn bounds<T: Real>(&self) -> (T, T) {
        (cst(LOWER_BOUND), cst(UPPER_BOUND))
    }
}

/// Evaluate a base problem at `x`. The point may lie outside the box.
pub fn evaluate<T: Real>(problem: ProblemId, dimension: usize, x: &[T]) -> Result<T> {
    if dimension < problem.min_dimension() {
        return Err(Error::invalid(format!(
            "{} requires dimension >= {}, got {dimension}",
            problem.name(),
            problem.min_dimension()
        )));
    }
    if x.len() != dimension {
        return Err(Error::invalid(format!(
            "dimension mismatch: expected {dimension}, point has {}",
            x.len()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite component in input point"));
    }
    Ok(problem.raw(x))
}

/// Optimum location and value of the raw formula.
pub fn optimum<T: Real>(problem: ProblemId, dimension: usize) -> Result<(Vec<T>, T)> {
    if dimension < problem.min_dimension() {
        return Err(Error::invalid(format!(
            "{} requires dimension >= {}, got {dimension}",
            problem.name(),
            problem.min_dimension()
        )));
    }
    Ok(problem.optimum(dimension))
}

fn zakharov<T: Real>(x: &[T]) -> T {
    let half = cst::<T>(0.5);
    let mut s1 = T::zero();
    let mut s2 = T::zero();
    for (i, &xi) in x.iter().enumerate() {
        s1 += xi * xi;
        s2 += half * cst::<T>((i + 1) as f64) * xi;
    }
    s1 + s2 * s2 + s2 * s2 * s2 * s2
}

fn rosenbrock<T: Real>(x: &[T]) -> T {
    let hundred = cst::<T>(100.0);
    let mut total = T::zero();
    for w in x.windows(2) {
        let a = w[1] - w[0] * w[0];
        let b = w[0] - T::one();
        total += hundred * a * a + b * b;
    }
    total
}

fn schaffer_f7<T: Real>(x: &[T]) -> T {
    let fifty = cst::<T>(50.0);
    let fifth = cst::<T>(0.2);
    let mut total = T::zero();
    for w in x.windows(2) {
        let s = (w[0] * w[0] + w[1] * w[1]).sqrt();
        let sq = s.sqrt();
        let sin_term = (fifty * s.powf(fifth)).sin();
        total += sq + sq * sin_term * sin_term;
    }
    let avg = total / cst::<T>((x.len() - 1) as f64);
    avg * avg
}

fn rastrigin<T: Real>(x: &[T]) -> T {
    let ten = cst::<T>(10.0);
    let two_pi = cst::<T>(std::f64::consts::TAU);
    x.iter()
        .map(|&xi| xi * xi - ten * (two_pi * xi).cos() + ten)
        .sum()
}

fn levy<T: Real>(x: &[T]) -> T {
    let pi = cst::<T>(std::f64::consts::PI);
    let quarter = cst::<T>(0.25);
    let ten = cst::<T>(10.0);
    let two = cst::<T>(2.0);
    let w = |xi: T| T::one() + (xi - T::one()) * quarter;

    let w0 = w(x[0]);
    let first = (pi * w0).sin().powi(2);

    let mut middle = T::zero();
    for &xi in &x[..x.len() - 1] {
        let wi = w(xi);
        let s = (pi * wi + T::one()).sin();
        middle += (wi - T::one()).powi(2) * (T::one() + ten * s * s);
    }

    let wd = w(x[x.len() - 1]);
    let s = (two * pi * wd).sin();
    let last = (wd - T::one()).powi(2) * (T::one() + s * s);

    first + middle + last
}

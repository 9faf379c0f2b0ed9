//! Core library for studying how spatial and objective-value transformations
//! change the measurable landscape characteristics of continuous benchmark
//! problems.
//!
//! The crate is organised along the stages of that study:
//!
//! * [`problems`] — the five base benchmark functions on `[-100, 100]^d`.
//! * [`transforms`] — translation / scaling / rotation of the search space,
//!   translation / scaling of the objective value, and the enumeration of
//!   transformed problem instances.
//! * [`sampling`] — Latin hypercube designs and their evaluation under an
//!   instance.
//! * [`features`] — the 55 exploratory-landscape-analysis features computed
//!   from one evaluated sample.
//! * [`stats`] — two-sample Kolmogorov-Smirnov test, 1-D earth mover's
//!   distance, min-max normalization, per-instance comparisons, sensitivity
//!   aggregation and a PCA-based 2-D projection.
//!
//! All numerical kernels are generic over the scalar type through [`Real`];
//! `f64` is the type the experiment pipeline uses and the aliases at the
//! crate root refer to.

use std::fmt::{Debug, Display};

use ndarray::ScalarOperand;
use num_traits::{Float, FromPrimitive, NumAssign};

pub mod features;
pub mod linalg;
pub mod problems;
pub mod sampling;
pub mod seeding;
pub mod stats;
pub mod transforms;
pub(crate) mod util;

/// Scalar type the numerical code is generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + NumAssign
    + ScalarOperand
    + std::iter::Sum
    + Default
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + NumAssign
        + ScalarOperand
        + std::iter::Sum
        + Default
        + Display
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Conversion shorthand for constants; exact for `f64`, rounded for `f32`.
#[inline]
pub(crate) fn cst<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("float constant conversion")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite objective value at sample row {row} ({detail})")]
    NonFinite { row: usize, detail: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// `f64` instantiations used by the experiment pipeline.
pub type Design64 = sampling::Design<f64>;
pub type EvaluatedSample64 = sampling::EvaluatedSample<f64>;
pub type InstanceDescriptor64 = transforms::InstanceDescriptor<f64>;
pub type FeatureVector64 = features::FeatureVector<f64>;
pub type FeatureTable64 = stats::FeatureTable<f64>;
pub type ComparisonReport64 = stats::ComparisonReport<f64>;

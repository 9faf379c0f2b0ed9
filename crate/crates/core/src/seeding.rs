//! Deterministic derivation of every random stream used in a run.
//!
//! Each consumer of randomness (a design, a transform specification, the
//! level-set fold assignment) gets its own 64-bit seed mixed from the run's
//! base seed and the coordinates that identify the consumer. Streams are
//! therefore independent of execution order and of each other.

const INIT: u64 = 0x243F_6A88_85A3_08D3; // pi fractional bits
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

// Tags keep streams for different purposes disjoint even when the
// remaining words coincide.
const TAG_DESIGN: u64 = 0xD51;
const TAG_TRANSFORM: u64 = 0x7A5;
const TAG_FEATURE: u64 = 0xFEA;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Order-sensitive mix of a word sequence into one seed.
pub fn mix(words: &[u64]) -> u64 {
    let mut h = INIT;
    for &w in words {
        h = splitmix64(h ^ splitmix64(w));
    }
    h
}

/// Seed of the Latin hypercube design for one repetition.
///
/// Depends on the base seed and the repetition only, so all instances and
/// problems of equal dimension share the same designs.
pub fn design_seed(base_seed: u64, repetition: u64) -> u64 {
    mix(&[TAG_DESIGN, base_seed, repetition])
}

/// Seed of a per-instance design, used when design sharing is disabled.
pub fn fresh_design_seed(base_seed: u64, problem: u64, instance: u64, repetition: u64) -> u64 {
    mix(&[TAG_DESIGN, base_seed, problem, instance, repetition])
}

/// Seed of the stream that draws one transform specification.
pub fn transform_seed(base_seed: u64, problem: u64, kind: u64, instance: u64) -> u64 {
    mix(&[TAG_TRANSFORM, base_seed, problem, kind, instance])
}

/// Seed consumed by the stochastic parts of the feature computation.
pub fn feature_seed(base_seed: u64, problem: u64, instance: u64, repetition: u64) -> u64 {
    mix(&[TAG_FEATURE, base_seed, problem, instance, repetition])
}

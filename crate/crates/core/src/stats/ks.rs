//! Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.

use crate::util::sorted;
use crate::{cst, Error, Real, Result};

/// Minimum per-side sample size for a meaningful test; below it the
/// comparison is reported as insufficient data rather than tested.
pub const KS_MIN_SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsResult<T> {
    pub statistic: T,
    pub p_value: T,
    pub reject: bool,
    pub n_a: usize,
    pub n_b: usize,
    pub alpha: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KsOutcome<T> {
    Tested(KsResult<T>),
    InsufficientData { n_a: usize, n_b: usize },
}

impl<T: Real> KsOutcome<T> {
    pub fn rejected(&self) -> bool {
        matches!(self, KsOutcome::Tested(r) if r.reject)
    }

    pub fn tested(&self) -> Option<&KsResult<T>> {
        match self {
            KsOutcome::Tested(r) => Some(r),
            KsOutcome::InsufficientData { .. } => None,
        }
    }
}

/// Exact two-sample KS statistic (sup of the ECDF difference, computed by a
/// sorted merge) with the asymptotic Kolmogorov p-value at significance
/// `alpha`.
pub fn ks_2samp<T: Real>(a: &[T], b: &[T], alpha: T) -> Result<KsOutcome<T>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("ks_2samp: empty sample"));
    }
    if a.len() < KS_MIN_SAMPLES || b.len() < KS_MIN_SAMPLES {
        return Ok(KsOutcome::InsufficientData {
            n_a: a.len(),
            n_b: b.len(),
        });
    }
    let sa = sorted(a);
    let sb = sorted(b);
    let n = sa.len();
    let m = sb.len();

    let mut i = 0usize;
    let mut j = 0usize;
    let mut d = T::zero();
    while i < n && j < m {
        let v = sa[i].min(sb[j]);
        while i < n && sa[i] <= v {
            i += 1;
        }
        while j < m && sb[j] <= v {
            j += 1;
        }
        let fa = cst::<T>(i as f64) / cst::<T>(n as f64);
        let fb = cst::<T>(j as f64) / cst::<T>(m as f64);
        let diff = (fa - fb).abs();
        if diff > d {
            d = diff;
        }
    }

    let nm = cst::<T>(n as f64) * cst::<T>(m as f64) / cst::<T>((n + m) as f64);
    let lambda = d * nm.sqrt();
    let p = kolmogorov_sf(lambda);
    Ok(KsOutcome::Tested(KsResult {
        statistic: d,
        p_value: p,
        reject: p < alpha,
        n_a: n,
        n_b: m,
        alpha,
    }))
}

/// Survival function of the Kolmogorov distribution,
/// `P(K > lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)`,
/// truncated once terms drop below 1e-12 and clamped to [0, 1].
pub fn kolmogorov_sf<T: Real>(lambda: T) -> T {
    if lambda <= cst(1e-8) {
        return T::one();
    }
    let two = cst::<T>(2.0);
    let neg_two_l2 = -two * lambda * lambda;
    let mut sum = T::zero();
    let mut sign = T::one();
    for k in 1..=100_000u32 {
        let k2 = cst::<T>((k as f64) * (k as f64));
        let term = (neg_two_l2 * k2).exp();
        sum += sign * term;
        if term < cst(1e-12) {
            break;
        }
        sign = -sign;
    }
    (two * sum).max(T::zero()).min(T::one())
}

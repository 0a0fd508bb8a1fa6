//! The pointwise-convergence metric on permutations of ℕ.
//!
//! `ρ(σ, τ)` is `0` for equal permutations, `1` when `σ(0) ≠ τ(0)`, and
//! `2^−j` when `j` is the first index where they disagree.
//! `d(σ, τ) = max(ρ(σ, τ), ρ(σ⁻¹, τ⁻¹))`. Extensional equality cannot be
//! observed from oracles, so a finite scan that finds no disagreement only
//! certifies an upper bound.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::Permutation;

/// `0` or `2^−j`, stored by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dyadic {
    Zero,
    /// `2^−j`; `NegPow(0)` is 1.
    NegPow(u64),
}

impl Dyadic {
    pub const ONE: Dyadic = Dyadic::NegPow(0);
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dyadic::Zero, Dyadic::Zero) => Ordering::Equal,
            (Dyadic::Zero, _) => Ordering::Less,
            (_, Dyadic::Zero) => Ordering::Greater,
            (Dyadic::NegPow(a), Dyadic::NegPow(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders `0`, `1`, `1/2^j` in decimal for `j < 64`, else `2^-j`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Dyadic::Zero => f.write_str("0"),
            Dyadic::NegPow(0) => f.write_str("1"),
            Dyadic::NegPow(j) if j < 64 => write!(f, "1/{}", 1u64 << j),
            Dyadic::NegPow(j) => write!(f, "2^-{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    /// The permutations agreed through the scan; the true value is at most
    /// the reported one.
    UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricValue {
    pub value: Dyadic,
    pub certainty: Certainty,
}

impl MetricValue {
    pub fn exact(value: Dyadic) -> Self {
        MetricValue {
            value,
            certainty: Certainty::Exact,
        }
    }

    pub fn upper_bound(value: Dyadic) -> Self {
        MetricValue {
            value,
            certainty: Certainty::UpperBound,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.certainty == Certainty::Exact
    }

    /// Whether the true value is certainly `≤ bound`.
    pub fn certifies_at_most(&self, bound: Dyadic) -> bool {
        self.value <= bound
    }

    fn max(self, other: MetricValue) -> MetricValue {
        let (hi, lo) = if self.value >= other.value {
            (self, other)
        } else {
            (other, self)
        };
        // An exact maximum stays exact: the other side is at most its bound.
        if hi.is_exact() && (lo.is_exact() || lo.value <= hi.value) {
            MetricValue::exact(hi.value)
        } else {
            MetricValue::upper_bound(hi.value)
        }
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.certainty, self.value) {
            (Certainty::Exact, v) => write!(f, "{v} (exact)"),
            (Certainty::UpperBound, Dyadic::NegPow(j)) => write!(f, "<= 2^-{j} (agreement bound)"),
            (Certainty::UpperBound, Dyadic::Zero) => f.write_str("0 (agreement bound)"),
        }
    }
}

/// `ρ(σ, τ)`, scanning indices `0..=max_depth`.
pub fn rho(sigma: &Permutation, tau: &Permutation, max_depth: u64) -> Result<MetricValue> {
    if sigma.same_provenance(tau) {
        return Ok(MetricValue::exact(Dyadic::Zero));
    }
    for j in 0..=max_depth {
        if sigma.apply(j)? != tau.apply(j)? {
            return Ok(MetricValue::exact(Dyadic::NegPow(j)));
        }
    }
    Ok(MetricValue::upper_bound(Dyadic::NegPow(max_depth + 1)))
}

/// `d(σ, τ) = max(ρ(σ, τ), ρ(σ⁻¹, τ⁻¹))`.
pub fn dist(sigma: &Permutation, tau: &Permutation, max_depth: u64) -> Result<MetricValue> {
    if !sigma.has_inverse() || !tau.has_inverse() {
        return Err(Error::NoInverse);
    }
    let forward = rho(sigma, tau, max_depth)?;
    let backward = rho(&sigma.inverse()?, &tau.inverse()?, max_depth)?;
    Ok(forward.max(backward))
}

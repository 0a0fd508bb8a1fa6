//! Rearrangements `σ_A`: the pointwise limit of adjacent transpositions taken
//! at the elements of `A` in increasing order.
//!
//! Two evaluators live here. [`brute_sigma_seq`] and [`brute_sigma_set`]
//! literally swap entries of a one-line array and serve as the oracle.
//! [`Rearrangement`] answers single points lazily from the run structure of
//! `A`: a maximal run `[m, n] ⊆ A` acts as the consecutive cycle
//! `m → m+1 → … → n+1 → m`, and runs are separated by at least one non-member,
//! so the cycles have disjoint supports.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::sets::NatSet;

pub const DEFAULT_FUEL: u64 = 1 << 20;

/// `σ_A` bound to its base set.
#[derive(Clone, Debug)]
pub struct Rearrangement {
    base: NatSet,
    fuel: u64,
}

impl Rearrangement {
    pub fn new(base: NatSet) -> Self {
        Rearrangement {
            base,
            fuel: DEFAULT_FUEL,
        }
    }

    /// Caps upward scans at `fuel` steps.
    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn base(&self) -> &NatSet {
        &self.base
    }

    pub fn fuel(&self) -> u64 {
        self.fuel
    }

    /// Whether the base is declared a tail set, in which case `σ_A` is not onto.
    pub fn is_declared_tail(&self) -> bool {
        self.base.tail_start().is_some()
    }

    /// `σ_A(x)`.
    pub fn apply(&self, x: u64) -> u64 {
        let a = &self.base;
        if a.contains(x) {
            return x + 1;
        }
        if x == 0 || !a.contains(x - 1) {
            return x;
        }
        let mut m = x - 1;
        while m > 0 && a.contains(m - 1) {
            m -= 1;
        }
        m
    }

    /// `σ_A⁻¹(y)`.
    ///
    /// Fails with [`Error::NotOnto`] when `y` starts a run that reaches the
    /// declared tail of the base, and with [`Error::FuelExhausted`] when the
    /// run end is not found within the fuel.
    pub fn apply_inverse(&self, y: u64) -> Result<u64> {
        let a = &self.base;
        if y >= 1 && a.contains(y - 1) {
            return Ok(y - 1);
        }
        if !a.contains(y) {
            return Ok(y);
        }
        let tail = a.tail_start();
        let mut n = y;
        let mut steps = 0u64;
        loop {
            if tail.is_some_and(|t| n >= t) {
                return Err(Error::NotOnto { point: y });
            }
            if !a.contains(n + 1) {
                return Ok(n + 1);
            }
            steps += 1;
            if steps > self.fuel {
                return Err(Error::FuelExhausted {
                    point: y,
                    fuel: self.fuel,
                });
            }
            n += 1;
        }
    }
}

/// One-line array of `σ_(a_0, …, a_k)` on `0..len`: starting from the
/// identity, swap entries `a_i` and `a_i + 1` for each `a_i` in order.
pub fn brute_sigma_seq(seq: &[u64], len: usize) -> Result<Vec<u64>> {
    let mut seen = HashSet::with_capacity(seq.len());
    for &a in seq {
        if !seen.insert(a) {
            return Err(Error::RepeatedEntry(a));
        }
    }
    if let Some(&max) = seq.iter().max() {
        if max + 2 > len as u64 {
            return Err(Error::BoundTooSmall {
                needed: max + 2,
                bound: len as u64,
            });
        }
    }
    let mut line: Vec<u64> = (0..len as u64).collect();
    for &a in seq {
        line.swap(a as usize, a as usize + 1);
    }
    Ok(line)
}

/// The first `len` values of `σ_A`, by brute force.
///
/// Swaps are applied for `A ∩ [0, len − 1]` on an array of `len + 1` entries.
/// Later elements of `A` are all `≥ len` and never touch indices below `len`,
/// so every returned entry is already the limit value.
pub fn brute_sigma_set(a: &NatSet, len: usize) -> Vec<u64> {
    if len == 0 {
        return Vec::new();
    }
    let seq = a.elements_upto(len as u64 - 1);
    let mut line = brute_sigma_seq(&seq, len + 1).expect("elements are distinct and in range");
    line.truncate(len);
    line
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunEnd {
    Resolved(u64),
    /// The run reaches the scan bound; its end is unknown.
    Unresolved { bound: u64 },
}

/// A maximal block of consecutive members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub start: u64,
    pub end: RunEnd,
}

impl Run {
    pub fn resolved(start: u64, end: u64) -> Self {
        Run {
            start,
            end: RunEnd::Resolved(end),
        }
    }
}

/// Maximal runs of `A ∩ [0, bound]`; a run containing `bound` is unresolved.
pub fn runs(a: &NatSet, bound: u64) -> Vec<Run> {
    let mut out = Vec::new();
    let mut start: Option<u64> = None;
    for n in 0..=bound {
        match (a.contains(n), start) {
            (true, None) => start = Some(n),
            (false, Some(m)) => {
                out.push(Run::resolved(m, n - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(m) = start {
        out.push(Run {
            start: m,
            end: RunEnd::Unresolved { bound },
        });
    }
    out
}

/// The consecutive cycle `(start start+1 … end)`: `k ↦ k+1` for
/// `start ≤ k < end` and `end ↦ start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConsecutiveCycle {
    pub start: u64,
    pub end: u64,
}

impl ConsecutiveCycle {
    pub fn apply(&self, x: u64) -> u64 {
        if x < self.start || x > self.end {
            x
        } else if x == self.end {
            self.start
        } else {
            x + 1
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        (self.start..=self.end).contains(&x)
    }
}

impl fmt::Display for ConsecutiveCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for k in self.start..=self.end {
            if k > self.start {
                f.write_str(" ")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// `σ_A` on `[0, bound]` as increasing, support-disjoint consecutive cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<ConsecutiveCycle>,
    /// Start of a run that reaches the bound.
    pub unresolved: Option<u64>,
    pub bound: u64,
}

impl CycleDecomposition {
    /// Applies the cycles. Points inside the unresolved run are not covered.
    pub fn apply(&self, x: u64) -> Option<u64> {
        if self.unresolved.is_some_and(|m| x >= m) {
            return None;
        }
        let i = self.cycles.partition_point(|c| c.end < x);
        Some(match self.cycles.get(i) {
            Some(c) if c.contains(x) => c.apply(x),
            _ => x,
        })
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() && self.unresolved.is_none() {
            return f.write_str("()");
        }
        for c in &self.cycles {
            write!(f, "{c}")?;
        }
        if let Some(m) = self.unresolved {
            if !self.cycles.is_empty() {
                f.write_str(" ")?;
            }
            write!(f, "[unresolved run from {m} past {}]", self.bound)?;
        }
        Ok(())
    }
}

pub fn cycle_decomposition(a: &NatSet, bound: u64) -> CycleDecomposition {
    let mut cycles = Vec::new();
    let mut unresolved = None;
    for run in runs(a, bound) {
        match run.end {
            RunEnd::Resolved(n) => cycles.push(ConsecutiveCycle {
                start: run.start,
                end: n + 1,
            }),
            RunEnd::Unresolved { .. } => unresolved = Some(run.start),
        }
    }
    CycleDecomposition {
        cycles,
        unresolved,
        bound,
    }
}

/// Smallest index `M` such that the ordered elements `a_M, a_{M+1}, …` within
/// `[0, bound]` pairwise differ by more than 1.
///
/// Returns `None` when `bound − 1` and `bound` are both members, i.e. adjacent
/// pairs persist up to the bound and no verdict can be given.
pub fn is_eventually_commutative(a: &NatSet, bound: u64) -> Option<usize> {
    if bound >= 1 && a.contains(bound - 1) && a.contains(bound) {
        return None;
    }
    let elements = a.elements_upto(bound);
    let last_adjacent = elements.windows(2).rposition(|w| w[1] - w[0] == 1);
    Some(last_adjacent.map_or(0, |i| i + 1))
}

/// Certificate that `σ_A ≠ σ_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InjectivityWitness {
    /// Index of the first mismatch between the ordered elements.
    pub index: usize,
    /// The smaller of the two mismatched elements.
    pub point: u64,
    pub sigma_a: u64,
    pub sigma_b: u64,
}

/// Locates the first ordered-element mismatch `a_m ≠ b_m` and evaluates both
/// rearrangements at `min(a_m, b_m)`: the set owning that point sends it to
/// `point + 1`, the other sends it to at most `point`.
pub fn injectivity_witness(a: &NatSet, b: &NatSet, bound: u64) -> Result<InjectivityWitness> {
    let ea = a.elements_upto(bound);
    let eb = b.elements_upto(bound);
    let index = ea
        .iter()
        .zip(&eb)
        .position(|(x, y)| x != y)
        .unwrap_or(ea.len().min(eb.len()));
    let point = match (ea.get(index), eb.get(index)) {
        (Some(&x), Some(&y)) => x.min(y),
        (Some(&x), None) | (None, Some(&x)) => x,
        (None, None) => return Err(Error::NoDifference { bound }),
    };
    Ok(InjectivityWitness {
        index,
        point,
        sigma_a: Rearrangement::new(a.clone()).apply(point),
        sigma_b: Rearrangement::new(b.clone()).apply(point),
    })
}

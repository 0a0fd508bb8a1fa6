use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of ℕ that moves finitely many points.
///
/// Only moved points are stored; everything else is fixed. Serializes as
/// `{"map": {"i": σ(i), …}}` over the support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct FinitaryPermutation {
    forward: BTreeMap<u64, u64>,
    backward: BTreeMap<u64, u64>,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    map: BTreeMap<u64, u64>,
}

impl TryFrom<MapRepr> for FinitaryPermutation {
    type Error = Error;

    fn try_from(repr: MapRepr) -> Result<Self> {
        FinitaryPermutation::from_map(repr.map)
    }
}

impl From<FinitaryPermutation> for MapRepr {
    fn from(p: FinitaryPermutation) -> Self {
        MapRepr { map: p.forward }
    }
}

impl FinitaryPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds from a map that must be a bijection of its key set.
    pub fn from_map(map: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for (x, y) in map {
            if forward.insert(x, y).is_some() || backward.insert(y, x).is_some() {
                return Err(Error::NotABijection);
            }
        }
        if !forward.keys().eq(backward.keys()) {
            return Err(Error::NotABijection);
        }
        forward.retain(|x, y| x != y);
        backward.retain(|x, y| x != y);
        Ok(FinitaryPermutation { forward, backward })
    }

    /// `σ_(k)`: swaps `k` and `k + 1`.
    pub fn adjacent(k: u64) -> Self {
        Self::swap(k, k + 1)
    }

    /// The transposition `(i j)` written down directly.
    pub fn swap(i: u64, j: u64) -> Self {
        if i == j {
            return Self::identity();
        }
        Self::from_map([(i, j), (j, i)]).expect("a swap is a bijection")
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.forward.get(&x).copied().unwrap_or(x)
    }

    pub fn apply_inverse(&self, y: u64) -> u64 {
        self.backward.get(&y).copied().unwrap_or(y)
    }

    /// `self ∘ f`: apply `f`, then `self`.
    pub fn compose(&self, f: &FinitaryPermutation) -> FinitaryPermutation {
        let domain: BTreeSet<u64> = self.forward.keys().chain(f.forward.keys()).copied().collect();
        Self::from_map(domain.into_iter().map(|x| (x, self.apply(f.apply(x)))))
            .expect("composition of bijections is a bijection")
    }

    pub fn inverse(&self) -> FinitaryPermutation {
        FinitaryPermutation {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.forward.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_empty()
    }

    /// Moved points with their images, ascending.
    pub fn moved(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.forward.iter().map(|(&x, &y)| (x, y))
    }

    /// Disjoint cycles, each listed from its least element.
    pub fn cycles(&self) -> Vec<Vec<u64>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.forward.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = self.apply(start);
            while x != start {
                seen.insert(x);
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Transpositions `t_1, …, t_r` with `self = t_1 ∘ t_2 ∘ … ∘ t_r`.
    ///
    /// A cycle `(c_0 c_1 … c_k)` is emitted as `(c_0 c_k) ∘ … ∘ (c_0 c_1)`.
    pub fn transpositions(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for cycle in self.cycles() {
            let c0 = cycle[0];
            out.extend(cycle[1..].iter().rev().map(|&c| (c0, c)));
        }
        out
    }
}

impl fmt::Display for FinitaryPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(u64::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// `σ_(k)` as a finitary permutation.
pub fn adjacent_transposition(k: u64) -> FinitaryPermutation {
    FinitaryPermutation::adjacent(k)
}

/// Adjacent indices of the chain
/// `σ_(j−1) ∘ … ∘ σ_(i+1) ∘ σ_(i) ∘ σ_(i+1) ∘ … ∘ σ_(j−1)`, left to right.
pub fn transposition_chain(i: u64, j: u64) -> Result<Vec<u64>> {
    if i >= j {
        return Err(Error::BadOrder { i, j });
    }
    let down = (i..j).rev();
    let up = (i + 1)..j;
    Ok(down.chain(up).collect())
}

/// `(i j)` assembled from adjacent transpositions.
pub fn transposition(i: u64, j: u64) -> Result<FinitaryPermutation> {
    let chain = transposition_chain(i, j)?;
    let product = chain
        .iter()
        .fold(FinitaryPermutation::identity(), |acc, &k| acc.compose(&FinitaryPermutation::adjacent(k)));
    debug_assert_eq!(product, FinitaryPermutation::swap(i, j));
    Ok(product)
}

/// Extends a partial injection to a finite bijection on `dom ∪ ran`.
///
/// Points that still need an image are matched in ascending order with
/// points that still need a preimage.
pub(crate) fn close_partial(pairs: &BTreeMap<u64, u64>) -> Result<FinitaryPermutation> {
    let domain: BTreeSet<u64> = pairs.keys().copied().collect();
    let range: BTreeSet<u64> = pairs.values().copied().collect();
    if range.len() != domain.len() {
        return Err(Error::NotABijection);
    }
    let needs_image = range.difference(&domain);
    let needs_preimage = domain.difference(&range);
    let mut map = pairs.clone();
    map.extend(needs_image.copied().zip(needs_preimage.copied()));
    FinitaryPermutation::from_map(map)
}

/// A finitary permutation sending `a[i] ↦ b[i]`.
pub fn transitive_witness(a: &[u64], b: &[u64]) -> Result<FinitaryPermutation> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut pairs = BTreeMap::new();
    let mut targets = BTreeSet::new();
    for (&x, &y) in a.iter().zip(b) {
        if pairs.insert(x, y).is_some() {
            return Err(Error::DuplicateEntries(x));
        }
        if !targets.insert(y) {
            return Err(Error::DuplicateEntries(y));
        }
    }
    close_partial(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_line(p: &FinitaryPermutation, n: u64) -> Vec<u64> {
        (0..n).map(|x| p.apply(x)).collect()
    }

    #[test]
    fn adjacent_examples() {
        let s = adjacent_transposition(3);
        assert_eq!(s.apply(3), 4);
        assert_eq!(s.apply(4), 3);
        assert_eq!(s.apply(5), 5);
        assert!(s.compose(&s).is_identity());
        assert_eq!(s.inverse(), s);
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(one_line(&transposition(1, 4).unwrap(), 6), vec![0, 4, 2, 3, 1, 5]);
        assert_eq!(transposition(0, 1).unwrap(), adjacent_transposition(0));
        assert_eq!(transposition(2, 5).unwrap().apply(3), 3);
        assert!(matches!(transposition(4, 4), Err(Error::BadOrder { i: 4, j: 4 })));
        assert!(matches!(transposition(5, 2), Err(Error::BadOrder { .. })));
        assert_eq!(transposition_chain(1, 4).unwrap(), vec![3, 2, 1, 2, 3]);
    }

    #[test]
    fn support_is_exact() {
        assert_eq!(adjacent_transposition(3).support(), BTreeSet::from([3, 4]));
        assert!(FinitaryPermutation::identity().support().is_empty());
        assert_eq!(transposition(2, 9).unwrap().support(), BTreeSet::from([2, 9]));
    }

    #[test]
    fn from_map_validates() {
        assert!(matches!(
            FinitaryPermutation::from_map([(0, 1), (1, 1)]),
            Err(Error::NotABijection)
        ));
        assert!(matches!(
            FinitaryPermutation::from_map([(0, 1)]),
            Err(Error::NotABijection)
        ));
        let fixed = FinitaryPermutation::from_map([(3, 3), (4, 4)]).unwrap();
        assert!(fixed.is_identity());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(transitive_witness(&[0, 1], &[1, 0]).unwrap(), transposition(0, 1).unwrap());
        assert_eq!(transitive_witness(&[1, 4], &[4, 1]).unwrap(), transposition(1, 4).unwrap());
        let w = transitive_witness(&[0, 1, 2], &[5, 6, 7]).unwrap();
        assert_eq!((w.apply(0), w.apply(1), w.apply(2)), (5, 6, 7));
        assert_eq!((w.apply(5), w.apply(6), w.apply(7)), (0, 1, 2));
        assert!(matches!(
            transitive_witness(&[0, 0], &[1, 2]),
            Err(Error::DuplicateEntries(0))
        ));
        assert!(matches!(
            transitive_witness(&[0, 1], &[2, 2]),
            Err(Error::DuplicateEntries(2))
        ));
        assert!(matches!(
            transitive_witness(&[0], &[1, 2]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn cycles_and_transpositions() {
        let p = FinitaryPermutation::from_map([(0, 3), (3, 5), (5, 0), (7, 8), (8, 7)]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 3, 5], vec![7, 8]]);
        assert_eq!(p.to_string(), "(0 3 5)(7 8)");
        assert_eq!(p.transpositions(), vec![(0, 5), (0, 3), (7, 8)]);
        let rebuilt = p
            .transpositions()
            .into_iter()
            .fold(FinitaryPermutation::identity(), |acc, (i, j)| acc.compose(&FinitaryPermutation::swap(i, j)));
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn json_shape() {
        let p = transposition(1, 4).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"map":{"1":4,"4":1}}"#);
        let back: FinitaryPermutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<FinitaryPermutation>(r#"{"map":{"1":4}}"#).is_err());
    }
}

//! Lazily evaluated permutations of ℕ.
//!
//! A [`Permutation`] is an expression tree over identity, adjacent
//! transpositions, finitary permutations and rearrangements, closed under
//! composition and inversion. Points are evaluated on demand; inverses are
//! derived from the tree, never searched for.

mod finitary;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rearrange::Rearrangement;
use crate::sets::NatSet;

pub use finitary::{
    adjacent_transposition, transitive_witness, transposition, transposition_chain,
    FinitaryPermutation,
};

#[derive(Clone)]
pub struct Permutation {
    node: Arc<Node>,
}

enum Node {
    Identity,
    Adjacent(u64),
    Finitary(FinitaryPermutation),
    Rearrangement(Rearrangement),
    /// `g ∘ f`
    Compose(Permutation, Permutation),
    Inverse(Permutation),
}

impl Permutation {
    fn from_node(node: Node) -> Self {
        Permutation {
            node: Arc::new(node),
        }
    }

    pub fn identity() -> Self {
        Self::from_node(Node::Identity)
    }

    pub fn adjacent(k: u64) -> Self {
        Self::from_node(Node::Adjacent(k))
    }

    pub fn finitary(p: FinitaryPermutation) -> Self {
        Self::from_node(Node::Finitary(p))
    }

    pub fn rearrangement(r: Rearrangement) -> Self {
        Self::from_node(Node::Rearrangement(r))
    }

    /// `σ_A` with default fuel.
    pub fn sigma(a: &NatSet) -> Self {
        Self::rearrangement(Rearrangement::new(a.clone()))
    }

    /// Whether an inverse oracle exists. Rearrangements over declared tail
    /// sets are not onto and have none.
    pub fn has_inverse(&self) -> bool {
        match &*self.node {
            Node::Identity | Node::Adjacent(_) | Node::Finitary(_) | Node::Inverse(_) => true,
            Node::Rearrangement(r) => !r.is_declared_tail(),
            Node::Compose(g, f) => g.has_inverse() && f.has_inverse(),
        }
    }

    pub fn apply(&self, x: u64) -> Result<u64> {
        match &*self.node {
            Node::Identity => Ok(x),
            Node::Adjacent(k) => Ok(swap_adjacent(*k, x)),
            Node::Finitary(p) => Ok(p.apply(x)),
            Node::Rearrangement(r) => Ok(r.apply(x)),
            Node::Compose(g, f) => g.apply(f.apply(x)?),
            Node::Inverse(p) => p.apply_inverse(x),
        }
    }

    pub fn apply_inverse(&self, y: u64) -> Result<u64> {
        match &*self.node {
            Node::Identity => Ok(y),
            Node::Adjacent(k) => Ok(swap_adjacent(*k, y)),
            Node::Finitary(p) => Ok(p.apply_inverse(y)),
            Node::Rearrangement(r) => {
                if r.is_declared_tail() {
                    return Err(Error::NoInverse);
                }
                r.apply_inverse(y)
            }
            Node::Compose(g, f) => f.apply_inverse(g.apply_inverse(y)?),
            Node::Inverse(p) => p.apply(y),
        }
    }

    /// `self ∘ f`: apply `f`, then `self`.
    pub fn compose(&self, f: &Permutation) -> Permutation {
        Self::from_node(Node::Compose(self.clone(), f.clone()))
    }

    pub fn inverse(&self) -> Result<Permutation> {
        if !self.has_inverse() {
            return Err(Error::NoInverse);
        }
        Ok(match &*self.node {
            Node::Identity | Node::Adjacent(_) => self.clone(),
            Node::Finitary(p) => Self::finitary(p.inverse()),
            Node::Inverse(p) => p.clone(),
            _ => Self::from_node(Node::Inverse(self.clone())),
        })
    }

    /// Structural equality of the expression trees. Distinct trees may still
    /// denote the same permutation; that is never decided here.
    pub fn same_provenance(&self, other: &Permutation) -> bool {
        if Arc::ptr_eq(&self.node, &other.node) {
            return true;
        }
        match (&*self.node, &*other.node) {
            (Node::Identity, Node::Identity) => true,
            (Node::Adjacent(a), Node::Adjacent(b)) => a == b,
            (Node::Finitary(a), Node::Finitary(b)) => a == b,
            (Node::Rearrangement(a), Node::Rearrangement(b)) => a.base().same_set(b.base()),
            (Node::Compose(g1, f1), Node::Compose(g2, f2)) => {
                g1.same_provenance(g2) && f1.same_provenance(f2)
            }
            (Node::Inverse(a), Node::Inverse(b)) => a.same_provenance(b),
            _ => false,
        }
    }

    /// `{n ≤ bound : σ(n) ≠ n}`; exact regardless of bound for finitary nodes.
    pub fn support(&self, bound: u64) -> Result<BTreeSet<u64>> {
        match &*self.node {
            Node::Identity => Ok(BTreeSet::new()),
            Node::Finitary(p) => Ok(p.support()),
            Node::Adjacent(k) => Ok(BTreeSet::from([*k, k + 1])),
            _ => {
                let mut out = BTreeSet::new();
                for n in 0..=bound {
                    if self.apply(n)? != n {
                        out.insert(n);
                    }
                }
                Ok(out)
            }
        }
    }

    /// `[σ(0), …, σ(n − 1)]`.
    pub fn one_line(&self, n: u64) -> Result<Vec<u64>> {
        (0..n).map(|x| self.apply(x)).collect()
    }
}

fn swap_adjacent(k: u64, x: u64) -> u64 {
    if x == k {
        k + 1
    } else if x == k + 1 {
        k
    } else {
        x
    }
}

impl From<FinitaryPermutation> for Permutation {
    fn from(p: FinitaryPermutation) -> Self {
        Permutation::finitary(p)
    }
}

impl From<Rearrangement> for Permutation {
    fn from(r: Rearrangement) -> Self {
        Permutation::rearrangement(r)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Identity => f.write_str("identity"),
            Node::Adjacent(k) => write!(f, "adjacent:{k}"),
            Node::Finitary(p) => write!(f, "finitary{p}"),
            Node::Rearrangement(r) => write!(f, "rearrange:{}", r.base()),
            Node::Compose(g, h) => write!(f, "compose({g},{h})"),
            Node::Inverse(p) => write!(f, "inverse({p})"),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// `σ(k) = τ(k)` for all `k ≤ n`.
pub fn equal_on_prefix(sigma: &Permutation, tau: &Permutation, n: u64) -> Result<bool> {
    for k in 0..=n {
        if sigma.apply(k)? != tau.apply(k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finitary `π` with `π(k) = τ(k)` and `π⁻¹(k) = τ⁻¹(k)` for all `k ≤ n`.
///
/// The partial bijection on `[0, n] ∪ τ⁻¹([0, n])` is closed up by matching
/// leftover points in ascending order.
pub fn finitary_approximation(tau: &Permutation, n: u64) -> Result<FinitaryPermutation> {
    if !tau.has_inverse() {
        return Err(Error::NoInverse);
    }
    let mut pairs = BTreeMap::new();
    for k in 0..=n {
        pairs.insert(k, tau.apply(k)?);
        let pre = tau.apply_inverse(k)?;
        pairs.insert(pre, k);
    }
    finitary::close_partial(&pairs)
}

//! Subsets of ℕ backed by total, pure membership oracles.
//!
//! A [`NatSet`] is identified with its characteristic sequence: bit `k` is 1
//! iff `k` is a member. Every set carries a [`KnownBound`] describing what is
//! known about its members beyond some index; the rearrangement code relies on
//! `FullFrom` to prove that a point has no preimage.

mod machine;
mod spec;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_rational::Ratio;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::Permutation;

pub use machine::{tm_tail_membership, Symbol, TailMachine, TmRun};
pub use spec::parse_set_spec;

/// Indices below this are memoized for derived sets.
const MEMO_LIMIT: u64 = 1 << 20;

/// What is declared about membership from some index on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownBound {
    Unknown,
    /// No member is `>= b`.
    EmptyFrom(u64),
    /// Every `n >= b` is a member.
    FullFrom(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Complement,
    SymmetricDifference,
    Union,
    Minus,
    Above(u64),
    Below(u64),
    Image,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SetKind {
    Finite,
    PeriodicEven,
    PeriodicOdd,
    Tail(u64),
    Prng { seed: u64, p: f64 },
    File(PathBuf),
    Oracle,
    Derived(SetOp),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjustMode {
    Union,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `{a in A : a > r}`
    Above,
    /// `{a in A : a <= r}`
    Below,
}

type MembershipFn = dyn Fn(u64) -> bool + Send + Sync;

enum Repr {
    Finite(BTreeSet<u64>),
    Even,
    Odd,
    Tail(u64),
    Prng { seed: u64, p: f64 },
    Bits { path: PathBuf, bits: Vec<bool> },
    Oracle(Arc<MembershipFn>),
    Derived(Derived),
}

enum Derived {
    Complement(NatSet),
    Xor(NatSet, NatSet),
    Union(NatSet, BTreeSet<u64>),
    Minus(NatSet, BTreeSet<u64>),
    Above(NatSet, u64),
    Below(NatSet, u64),
    Image(Permutation, NatSet),
}

struct Inner {
    repr: Repr,
    bound: KnownBound,
    label: Option<String>,
    // 0 = unknown, 1 = absent, 2 = present
    memo: Mutex<Vec<u8>>,
}

/// An immutable subset of ℕ. Cloning is cheap and shares the oracle.
#[derive(Clone)]
pub struct NatSet {
    inner: Arc<Inner>,
}

impl NatSet {
    fn build(repr: Repr, bound: KnownBound, label: Option<String>) -> Self {
        NatSet {
            inner: Arc::new(Inner {
                repr,
                bound,
                label,
                memo: Mutex::new(Vec::new()),
            }),
        }
    }

    pub fn empty() -> Self {
        NatSet::finite(std::iter::empty())
    }

    /// ℕ itself, i.e. the tail set starting at 0.
    pub fn all() -> Self {
        NatSet::tail(0)
    }

    pub fn even() -> Self {
        NatSet::build(Repr::Even, KnownBound::Unknown, Some("even".into()))
    }

    pub fn odd() -> Self {
        NatSet::build(Repr::Odd, KnownBound::Unknown, Some("odd".into()))
    }

    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Self {
        let elements: BTreeSet<u64> = elements.into_iter().collect();
        let bound = KnownBound::EmptyFrom(elements.last().map_or(0, |m| m + 1));
        let label = if elements.is_empty() {
            "empty".to_string()
        } else {
            format!("finite:{}", join(&elements))
        };
        NatSet::build(Repr::Finite(elements), bound, Some(label))
    }

    /// `{n : n >= start}`.
    pub fn tail(start: u64) -> Self {
        let label = if start == 0 {
            "all".to_string()
        } else {
            format!("tail:{start}")
        };
        NatSet::build(Repr::Tail(start), KnownBound::FullFrom(start), Some(label))
    }

    /// Each `n` is a member independently with probability `p`, decided by
    /// the ChaCha8 stream seeded from `seed` (word `2n`), so any prefix is
    /// reproducible and membership is random-access.
    pub fn prng(seed: u64, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument("probability must lie in [0, 1]"));
        }
        Ok(NatSet::build(
            Repr::Prng { seed, p },
            KnownBound::Unknown,
            Some(format!("prng:seed={seed},p={p}")),
        ))
    }

    /// Loads an ASCII `0`/`1` bitstream, index 0 first. An optional trailing
    /// newline is accepted; the set is empty beyond end-of-file.
    pub fn from_bitstream_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let body = text
            .strip_suffix("\r\n")
            .or_else(|| text.strip_suffix('\n'))
            .unwrap_or(&text);
        let bits = body
            .bytes()
            .enumerate()
            .map(|(i, b)| match b {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(Error::parse(i, format!("unexpected byte {b:#04x} in bitstream"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let len = bits.len() as u64;
        // File contents can change under the same path, so the set carries
        // no label and only compares equal to itself.
        Ok(NatSet::build(
            Repr::Bits {
                path: path.to_path_buf(),
                bits,
            },
            KnownBound::EmptyFrom(len),
            None,
        ))
    }

    /// Wraps an arbitrary membership function. The function must be pure.
    pub fn from_fn(f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        NatSet::build(Repr::Oracle(Arc::new(f)), KnownBound::Unknown, None)
    }

    pub fn kind(&self) -> SetKind {
        match &self.inner.repr {
            Repr::Finite(_) => SetKind::Finite,
            Repr::Even => SetKind::PeriodicEven,
            Repr::Odd => SetKind::PeriodicOdd,
            Repr::Tail(n) => SetKind::Tail(*n),
            Repr::Prng { seed, p } => SetKind::Prng {
                seed: *seed,
                p: *p,
            },
            Repr::Bits { path, .. } => SetKind::File(path.clone()),
            Repr::Oracle(_) => SetKind::Oracle,
            Repr::Derived(d) => SetKind::Derived(d.op()),
        }
    }

    pub fn known_bound(&self) -> KnownBound {
        self.inner.bound
    }

    /// Index from which every natural is declared a member, if any.
    pub fn tail_start(&self) -> Option<u64> {
        match self.inner.bound {
            KnownBound::FullFrom(n) => Some(n),
            _ => None,
        }
    }

    /// Canonical description, present when the set is fully determined by it.
    pub fn label(&self) -> Option<&str> {
        self.inner.label.as_deref()
    }

    /// Sets backed by the same oracle, or with identical canonical labels.
    pub fn same_set(&self, other: &NatSet) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || matches!((self.label(), other.label()), (Some(a), Some(b)) if a == b)
    }

    /// Membership of `n`.
    ///
    /// Panics only for image sets whose permutation inverse fails to settle;
    /// use [`NatSet::try_contains`] to observe that case.
    pub fn contains(&self, n: u64) -> bool {
        match self.try_contains(n) {
            Ok(b) => b,
            Err(e) => panic!("membership of {n} could not be decided: {e}"),
        }
    }

    pub fn try_contains(&self, n: u64) -> Result<bool> {
        match self.inner.bound {
            KnownBound::EmptyFrom(b) if n >= b => return Ok(false),
            KnownBound::FullFrom(b) if n >= b => return Ok(true),
            _ => {}
        }
        Ok(match &self.inner.repr {
            Repr::Finite(s) => s.contains(&n),
            Repr::Even => n.is_multiple_of(2),
            Repr::Odd => n % 2 == 1,
            Repr::Tail(start) => n >= *start,
            Repr::Prng { seed, p } => prng_bit(*seed, n, *p),
            Repr::Bits { bits, .. } => bits.get(n as usize).copied().unwrap_or(false),
            Repr::Oracle(f) => f(n),
            Repr::Derived(d) => return self.derived_contains(d, n),
        })
    }

    fn derived_contains(&self, d: &Derived, n: u64) -> Result<bool> {
        if n < MEMO_LIMIT {
            let memo = self.inner.memo.lock().unwrap();
            match memo.get(n as usize) {
                Some(1) => return Ok(false),
                Some(2) => return Ok(true),
                _ => {}
            }
        }
        let value = d.eval(n)?;
        if n < MEMO_LIMIT {
            let mut memo = self.inner.memo.lock().unwrap();
            if memo.len() <= n as usize {
                memo.resize(n as usize + 1, 0);
            }
            memo[n as usize] = if value { 2 } else { 1 };
        }
        Ok(value)
    }

    /// Characteristic bits for `0..n`.
    pub fn char_prefix(&self, n: u64) -> Vec<bool> {
        (0..n).map(|i| self.contains(i)).collect()
    }

    pub fn try_char_prefix(&self, n: u64) -> Result<Vec<bool>> {
        (0..n).map(|i| self.try_contains(i)).collect()
    }

    /// Members in `[0, bound]`, ascending.
    pub fn elements_upto(&self, bound: u64) -> Vec<u64> {
        match self.inner.bound {
            KnownBound::EmptyFrom(b) => (0..b.min(bound.saturating_add(1)))
                .filter(|&i| self.contains(i))
                .collect(),
            _ => (0..=bound).filter(|&i| self.contains(i)).collect(),
        }
    }

    pub fn complement(&self) -> NatSet {
        let bound = match self.inner.bound {
            KnownBound::Unknown => KnownBound::Unknown,
            KnownBound::EmptyFrom(b) => KnownBound::FullFrom(b),
            KnownBound::FullFrom(b) => KnownBound::EmptyFrom(b),
        };
        let label = self.label().map(|l| format!("not({l})"));
        NatSet::build(Repr::Derived(Derived::Complement(self.clone())), bound, label)
    }

    /// Pointwise XOR of characteristic sequences.
    pub fn symmetric_difference(&self, other: &NatSet) -> NatSet {
        use KnownBound::*;
        let bound = match (self.inner.bound, other.inner.bound) {
            (EmptyFrom(a), EmptyFrom(b)) | (FullFrom(a), FullFrom(b)) => EmptyFrom(a.max(b)),
            (EmptyFrom(a), FullFrom(b)) | (FullFrom(a), EmptyFrom(b)) => FullFrom(a.max(b)),
            _ => Unknown,
        };
        let label = match (self.label(), other.label()) {
            (Some(a), Some(b)) => Some(format!("xor({a},{b})")),
            _ => None,
        };
        NatSet::build(
            Repr::Derived(Derived::Xor(self.clone(), other.clone())),
            bound,
            label,
        )
    }

    /// `A ∪ R` or `A − R` for an explicit finite `R`.
    pub fn finite_adjust(&self, r: &BTreeSet<u64>, mode: AdjustMode) -> NatSet {
        use KnownBound::*;
        let past_r = r.last().map_or(0, |m| m + 1);
        let bound = match (mode, self.inner.bound) {
            (_, Unknown) => Unknown,
            (AdjustMode::Union, EmptyFrom(b)) => EmptyFrom(b.max(past_r)),
            (AdjustMode::Union, FullFrom(b)) => FullFrom(b),
            (AdjustMode::Minus, EmptyFrom(b)) => EmptyFrom(b),
            (AdjustMode::Minus, FullFrom(b)) => FullFrom(b.max(past_r)),
        };
        let (derived, op) = match mode {
            AdjustMode::Union => (Derived::Union(self.clone(), r.clone()), "union"),
            AdjustMode::Minus => (Derived::Minus(self.clone(), r.clone()), "minus"),
        };
        let label = self
            .label()
            .map(|l| format!("{op}({l},{{{}}})", join(r)));
        NatSet::build(Repr::Derived(derived), bound, label)
    }

    /// `A_{>r}` or `A_{≤r}`.
    pub fn restrict(&self, r: u64, side: Side) -> NatSet {
        use KnownBound::*;
        match side {
            Side::Above => {
                let bound = match self.inner.bound {
                    Unknown => Unknown,
                    EmptyFrom(b) => EmptyFrom(b),
                    FullFrom(b) => FullFrom(b.max(r + 1)),
                };
                let label = self.label().map(|l| format!("above({l},{r})"));
                NatSet::build(Repr::Derived(Derived::Above(self.clone(), r)), bound, label)
            }
            Side::Below => {
                let cut = match self.inner.bound {
                    EmptyFrom(b) => b.min(r + 1),
                    _ => r + 1,
                };
                let label = self.label().map(|l| format!("below({l},{r})"));
                NatSet::build(
                    Repr::Derived(Derived::Below(self.clone(), r)),
                    EmptyFrom(cut),
                    label,
                )
            }
        }
    }

    /// `σ(A)`, with membership `n ∈ σ(A) ⇔ σ⁻¹(n) ∈ A`.
    pub fn image_under(&self, sigma: &Permutation) -> Result<NatSet> {
        if !sigma.has_inverse() {
            return Err(Error::NoInverse);
        }
        let label = self.label().map(|l| format!("image({sigma},{l})"));
        Ok(NatSet::build(
            Repr::Derived(Derived::Image(sigma.clone(), self.clone())),
            KnownBound::Unknown,
            label,
        ))
    }

    /// Fraction of `0..n` that are members, as an exact reduced rational.
    pub fn density(&self, n: u64) -> Result<Ratio<u64>> {
        if n == 0 {
            return Err(Error::InvalidArgument("density needs a prefix length >= 1"));
        }
        let mut count = 0u64;
        for i in 0..n {
            if self.try_contains(i)? {
                count += 1;
            }
        }
        Ok(Ratio::new(count, n))
    }
}

impl Derived {
    fn op(&self) -> SetOp {
        match self {
            Derived::Complement(_) => SetOp::Complement,
            Derived::Xor(..) => SetOp::SymmetricDifference,
            Derived::Union(..) => SetOp::Union,
            Derived::Minus(..) => SetOp::Minus,
            Derived::Above(_, r) => SetOp::Above(*r),
            Derived::Below(_, r) => SetOp::Below(*r),
            Derived::Image(..) => SetOp::Image,
        }
    }

    fn eval(&self, n: u64) -> Result<bool> {
        Ok(match self {
            Derived::Complement(a) => !a.try_contains(n)?,
            Derived::Xor(a, b) => a.try_contains(n)? ^ b.try_contains(n)?,
            Derived::Union(a, r) => r.contains(&n) || a.try_contains(n)?,
            Derived::Minus(a, r) => !r.contains(&n) && a.try_contains(n)?,
            Derived::Above(a, r) => n > *r && a.try_contains(n)?,
            Derived::Below(a, r) => n <= *r && a.try_contains(n)?,
            Derived::Image(sigma, a) => a.try_contains(sigma.apply_inverse(n)?)?,
        })
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NatSet")
            .field("kind", &self.kind())
            .field("bound", &self.inner.bound)
            .field("label", &self.inner.label)
            .finish()
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.inner.label, &self.inner.repr) {
            (Some(l), _) => f.write_str(l),
            (None, Repr::Bits { path, .. }) => write!(f, "file:{}", path.display()),
            (None, _) => write!(f, "set@{:p}", Arc::as_ptr(&self.inner)),
        }
    }
}

fn prng_bit(seed: u64, n: u64, p: f64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(u128::from(n) * 2);
    let x = rng.next_u64() >> 11;
    (x as f64) * (1.0 / (1u64 << 53) as f64) < p
}

fn join(elements: &BTreeSet<u64>) -> String {
    elements
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders bits as ASCII `0`/`1`, index 0 first.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

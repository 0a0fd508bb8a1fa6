//! Points of `[0, 1)` as binary expansions, and the rotation `x ↦ (x + β) mod 1`.
//!
//! Digit `i` of a [`BinarySeq`] carries weight `2^−(i+1)`. Addition is done
//! digitwise as `f_i = a_i ⊕ b_i ⊕ c_i`, where the carry `c_i` into position
//! `i` is decided by the first position `j > i` with `a_j + b_j ≠ 1`. When the
//! sums stay at 1 for longer than the fuel allows, the carry is reported as
//! unresolved instead of guessed.

mod golden;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use golden::golden_beta;

/// Extra digits per orbit step kept beyond the requested precision.
pub const ORBIT_GUARD: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqKind {
    /// Listed digits followed by zeros.
    ConstantPrefix,
    Rational { num: u64, den: u64 },
    Golden,
    Prng { seed: u64 },
    DerivedSum,
}

enum Source {
    Prefix(Vec<u8>),
    Rational { num: u64, den: u64 },
    Golden(Mutex<Vec<u8>>),
    Prng { seed: u64 },
    Sum {
        a: BinarySeq,
        b: BinarySeq,
        fuel: usize,
        state: Mutex<SumState>,
    },
}

#[derive(Default)]
struct SumState {
    digits: Vec<u8>,
    // Last resolving position and the carry it produces.
    resolution: Option<(usize, u8)>,
}

/// A digit oracle for a point of `[0, 1)`. Cloning shares the oracle.
#[derive(Clone)]
pub struct BinarySeq {
    source: Arc<Source>,
}

impl BinarySeq {
    fn from_source(source: Source) -> Self {
        BinarySeq {
            source: Arc::new(source),
        }
    }

    pub fn zero() -> Self {
        Self::from_digits(Vec::new())
    }

    /// The given digits, then zeros.
    pub fn from_digits(digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d <= 1));
        Self::from_source(Source::Prefix(digits))
    }

    /// `num / den`, by long division.
    pub fn rational(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(Error::InvalidArgument("rational point must satisfy 0 <= num < den"));
        }
        Ok(Self::from_source(Source::Rational { num, den }))
    }

    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        Self::from_source(Source::Golden(Mutex::new(Vec::new())))
    }

    /// Uniform digits from the ChaCha8 stream seeded with `seed`.
    pub fn prng(seed: u64) -> Self {
        Self::from_source(Source::Prng { seed })
    }

    /// `(a + b) mod 1`, evaluated lazily with memoized digits.
    pub fn sum(a: &BinarySeq, b: &BinarySeq, fuel: usize) -> Self {
        Self::from_source(Source::Sum {
            a: a.clone(),
            b: b.clone(),
            fuel,
            state: Mutex::new(SumState::default()),
        })
    }

    pub fn kind(&self) -> SeqKind {
        match &*self.source {
            Source::Prefix(_) => SeqKind::ConstantPrefix,
            Source::Rational { num, den } => SeqKind::Rational {
                num: *num,
                den: *den,
            },
            Source::Golden(_) => SeqKind::Golden,
            Source::Prng { seed } => SeqKind::Prng { seed: *seed },
            Source::Sum { .. } => SeqKind::DerivedSum,
        }
    }

    pub fn digit(&self, i: usize) -> Result<u8> {
        match &*self.source {
            Source::Prefix(d) => Ok(d.get(i).copied().unwrap_or(0)),
            Source::Rational { num, den } => Ok(rational_digit(*num, *den, i)),
            Source::Golden(cache) => {
                let mut cache = cache.lock().unwrap();
                if i >= cache.len() {
                    *cache = golden_beta((i + 1).max(2 * cache.len()).max(256));
                }
                Ok(cache[i])
            }
            Source::Prng { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_word_pos(i as u128);
                Ok((rng.next_u32() & 1) as u8)
            }
            Source::Sum { a, b, fuel, state } => {
                let mut state = state.lock().unwrap();
                while state.digits.len() <= i {
                    let p = state.digits.len();
                    let carry = match state.resolution {
                        Some((r, c)) if r > p => c,
                        _ => {
                            let (r, c) = resolve_carry(a, b, p, *fuel)?;
                            state.resolution = Some((r, c));
                            c
                        }
                    };
                    let d = a.digit(p)? ^ b.digit(p)? ^ carry;
                    state.digits.push(d);
                }
                Ok(state.digits[i])
            }
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Vec<u8>> {
        (0..n).map(|i| self.digit(i)).collect()
    }
}

impl fmt::Debug for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySeq({:?})", self.kind())
    }
}

fn rational_digit(num: u64, den: u64, i: usize) -> u8 {
    // remainder of num·2^i mod den, then one more doubling
    let den = u128::from(den);
    let mut pow = 1u128;
    let mut base = 2u128 % den;
    let mut e = i;
    while e > 0 {
        if e & 1 == 1 {
            pow = pow * base % den;
        }
        base = base * base % den;
        e >>= 1;
    }
    let r = u128::from(num) * pow % den;
    u8::from(2 * r >= den)
}

/// First `j ∈ (i, i + fuel]` with `a_j + b_j ≠ 1`, and the carry it sends left.
fn resolve_carry(a: &BinarySeq, b: &BinarySeq, i: usize, fuel: usize) -> Result<(usize, u8)> {
    for j in i + 1..=i + fuel {
        match a.digit(j)? + b.digit(j)? {
            0 => return Ok((j, 0)),
            2 => return Ok((j, 1)),
            _ => {}
        }
    }
    Err(Error::Unresolved {
        position: i,
        iteration: None,
    })
}

/// Carries `c_0..c_{n−1}` of `a + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarryVerdict {
    pub bits: Vec<u8>,
    /// Digit positions at or beyond `n` that had to be read.
    pub lookahead_used: usize,
}

pub fn carry_bits(a: &BinarySeq, b: &BinarySeq, n: usize, fuel: usize) -> Result<CarryVerdict> {
    let mut bits = Vec::with_capacity(n);
    let mut resolution: Option<(usize, u8)> = None;
    let mut furthest = 0usize;
    for i in 0..n {
        let c = match resolution {
            Some((r, c)) if r > i => c,
            _ => {
                let (r, c) = resolve_carry(a, b, i, fuel)?;
                resolution = Some((r, c));
                furthest = furthest.max(r + 1);
                c
            }
        };
        bits.push(c);
    }
    Ok(CarryVerdict {
        bits,
        lookahead_used: furthest.saturating_sub(n),
    })
}

/// First `n` digits of `(a + β) mod 1`; the carry out of digit 0 is dropped.
pub fn add_mod1(a: &BinarySeq, beta: &BinarySeq, n: usize, fuel: usize) -> Result<Vec<u8>> {
    let carries = carry_bits(a, beta, n, fuel)?;
    (0..n)
        .map(|i| Ok(a.digit(i)? ^ beta.digit(i)? ^ carries.bits[i]))
        .collect()
}

/// Rewrites a trailing run of 1s (read as repeating forever) into the
/// terminating expansion of the same point: `…0111…` becomes `…1000…`.
pub fn normalize_tail(digits: &[u8]) -> Result<Vec<u8>> {
    let ones = digits.iter().rev().take_while(|&&d| d == 1).count();
    if ones == 0 {
        return Ok(digits.to_vec());
    }
    if ones == digits.len() {
        return Err(Error::AllOnes);
    }
    let first_one = digits.len() - ones;
    let mut out = digits.to_vec();
    out[first_one - 1] = 1;
    out[first_one..].fill(0);
    Ok(out)
}

#[derive(Clone, Copy)]
enum Limit {
    /// The window ran out; a wider one may help.
    Window,
    /// A carry chain outran the fuel.
    Fuel { position: usize, iteration: usize },
}

/// Adds two digit windows of equal length. Returns the digits whose carries
/// are settled within the window, and why the rest are not.
fn add_window(a: &[u8], b: &[u8], fuel: usize, iteration: usize, inherited: Limit) -> (Vec<u8>, Limit) {
    let len = a.len();
    let mut carry = vec![0u8; len];
    let mut next_resolution: Option<usize> = None;
    let mut valid = len;
    let mut limit = inherited;
    for i in (0..len).rev() {
        match next_resolution {
            Some(r) if r - i <= fuel => carry[i] = (a[r] + b[r]) / 2,
            Some(_) => {
                valid = i;
                limit = Limit::Fuel {
                    position: i,
                    iteration,
                };
            }
            None => {
                valid = i;
                limit = if len - 1 - i >= fuel {
                    Limit::Fuel {
                        position: i,
                        iteration,
                    }
                } else {
                    inherited
                };
            }
        }
        if a[i] + b[i] != 1 {
            next_resolution = Some(i);
        }
    }
    let digits = (0..valid).map(|i| a[i] ^ b[i] ^ carry[i]).collect();
    (digits, limit)
}

/// `p_0, p_1 = f(p_0), …, p_{count−1}` under `f(x) = (x + β) mod 1`, each as
/// an `n`-digit prefix.
///
/// Works on finite windows of `n + count·ORBIT_GUARD` digits, widening the
/// window when carries near its end are needed.
pub fn orbit(
    p0: &BinarySeq,
    beta: &BinarySeq,
    count: usize,
    n: usize,
    fuel: usize,
) -> Result<Vec<Vec<u8>>> {
    let mut window = n + count * ORBIT_GUARD;
    loop {
        if let Some(points) = orbit_in_window(p0, beta, count, n, fuel, window)? {
            return Ok(points);
        }
        window *= 2;
    }
}

fn orbit_in_window(
    p0: &BinarySeq,
    beta: &BinarySeq,
    count: usize,
    n: usize,
    fuel: usize,
    window: usize,
) -> Result<Option<Vec<Vec<u8>>>> {
    if count == 0 {
        return Ok(Some(Vec::new()));
    }
    let b = beta.prefix(window)?;
    let mut current = p0.prefix(window)?;
    let mut limit = Limit::Window;
    let mut points = Vec::with_capacity(count);
    points.push(current[..n].to_vec());
    for k in 1..count {
        let (next, next_limit) = add_window(&current, &b[..current.len()], fuel, k, limit);
        if next.len() < n {
            return match next_limit {
                Limit::Window => Ok(None),
                Limit::Fuel {
                    position,
                    iteration,
                } => Err(Error::Unresolved {
                    position,
                    iteration: Some(iteration),
                }),
            };
        }
        points.push(next[..n].to_vec());
        current = next;
        limit = next_limit;
    }
    Ok(Some(points))
}

/// `max_k |count_k / N − 1/bins|` over the bins `[k/bins, (k+1)/bins)`.
///
/// Bins are read off the leading digits, so each point needs at least
/// `⌈log2 bins⌉` of them; with more than 64 digits only the first 64 are used.
pub fn equidistribution_stat(points: &[Vec<u8>], bins: u64) -> Result<Ratio<u64>> {
    if bins == 0 {
        return Err(Error::InvalidArgument("need at least one bin"));
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument("need at least one point"));
    }
    let needed = (64 - (bins - 1).leading_zeros()) as usize;
    let mut counts = vec![0u64; bins as usize];
    for p in points {
        if p.len() < needed {
            return Err(Error::TooFewDigits {
                needed,
                got: p.len(),
            });
        }
        let used = p.len().min(64);
        let value = p[..used]
            .iter()
            .fold(0u128, |acc, &d| (acc << 1) | u128::from(d));
        let bin = (value * u128::from(bins)) >> used;
        counts[bin as usize] += 1;
    }
    let total = points.len() as u64;
    let worst = counts
        .iter()
        .map(|&c| (c * bins).abs_diff(total))
        .max()
        .expect("at least one bin");
    Ok(Ratio::new(worst, total * bins))
}

/// Parses ASCII `0`/`1` digits.
pub fn parse_digits(text: &str) -> Result<Vec<u8>> {
    text.bytes()
        .enumerate()
        .map(|(i, b)| match b {
            b'0' => Ok(0),
            b'1' => Ok(1),
            _ => Err(Error::parse(i, "expected 0 or 1")),
        })
        .collect()
}

pub fn digits_to_string(digits: &[u8]) -> String {
    digits.iter().map(|&d| char::from(b'0' + d)).collect()
}

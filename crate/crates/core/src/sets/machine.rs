use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::{AdjustMode, NatSet};

/// Tape alphabet of [`TailMachine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Blank,
    One,
    Zero,
}

/// Outcome of running a [`TailMachine`] on a unary input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmRun {
    /// Bit written in the halting square.
    pub output: u8,
    pub steps: u64,
    /// Index `k` of the halting state `q_k`.
    pub final_state: u64,
    pub head: usize,
    pub tape: Vec<Symbol>,
}

/// A machine deciding the tail set `finite_part ∪ [boundary, ∞)`.
///
/// States are `q_0..=q_M` with `M = boundary`. Reading a 1 in `q_k` (`k < M`)
/// moves right into `q_{k+1}`; `q_M` keeps moving right over 1s. On the first
/// blank, `q_k` writes 1 iff `k` is in the finite part, and `q_M` always
/// writes 1, then halts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailMachine {
    boundary: u64,
    finite_part: BTreeSet<u64>,
}

impl TailMachine {
    pub fn new(boundary: u64, finite_part: impl IntoIterator<Item = u64>) -> Result<Self> {
        let finite_part: BTreeSet<u64> = finite_part.into_iter().collect();
        if finite_part.last().is_some_and(|&m| m >= boundary) {
            return Err(Error::InvalidArgument(
                "finite part must lie below the machine boundary",
            ));
        }
        Ok(TailMachine {
            boundary,
            finite_part,
        })
    }

    pub fn boundary(&self) -> u64 {
        self.boundary
    }

    pub fn finite_part(&self) -> &BTreeSet<u64> {
        &self.finite_part
    }

    /// Runs the machine on `k` consecutive 1s followed by a blank.
    pub fn run(&self, k: u64) -> TmRun {
        let mut tape = vec![Symbol::One; k as usize];
        tape.push(Symbol::Blank);
        let mut head = 0usize;
        let mut state = 0u64;
        let mut steps = 0u64;
        loop {
            steps += 1;
            match tape[head] {
                Symbol::One => {
                    head += 1;
                    if state < self.boundary {
                        state += 1;
                    }
                }
                Symbol::Blank | Symbol::Zero => {
                    let accept = state == self.boundary || self.finite_part.contains(&state);
                    tape[head] = if accept { Symbol::One } else { Symbol::Zero };
                    return TmRun {
                        output: u8::from(accept),
                        steps,
                        final_state: state,
                        head,
                        tape,
                    };
                }
            }
        }
    }

    /// The decided set as a [`NatSet`], declared full from the boundary.
    pub fn to_set(&self) -> NatSet {
        NatSet::tail(self.boundary).finite_adjust(&self.finite_part, AdjustMode::Union)
    }
}

/// Simulates `machine` on unary input `k` and returns the written bit.
pub fn tm_tail_membership(machine: &TailMachine, k: u64) -> u8 {
    machine.run(k).output
}

//! Rearrangement permutations of the natural numbers.
//!
//! For `A ⊆ ℕ`, the permutation `σ_A` is the limit of the partial products of
//! adjacent transpositions `σ_(a)` taken over the elements of `A` in
//! increasing order. Sets are membership oracles ([`NatSet`]), permutations
//! are composable evaluators ([`Permutation`]), and distances between them
//! are reported together with how much of them was actually observed.

pub mod error;
pub mod group;
pub mod metric;
pub mod rearrange;
pub mod rotation;
pub mod sets;

pub use error::{Error, Result};
pub use group::{
    adjacent_transposition, equal_on_prefix, finitary_approximation, transitive_witness,
    transposition, transposition_chain, FinitaryPermutation, Permutation,
};
pub use metric::{dist, rho, Certainty, Dyadic, MetricValue};
pub use rearrange::{
    brute_sigma_seq, brute_sigma_set, cycle_decomposition, injectivity_witness,
    is_eventually_commutative, runs, ConsecutiveCycle, CycleDecomposition, InjectivityWitness,
    Rearrangement, Run, RunEnd, DEFAULT_FUEL,
};
pub use rotation::{
    add_mod1, carry_bits, equidistribution_stat, golden_beta, normalize_tail, orbit, BinarySeq,
    CarryVerdict, SeqKind,
};
pub use sets::{
    parse_set_spec, tm_tail_membership, AdjustMode, KnownBound, NatSet, SetKind, SetOp, Side,
    TailMachine,
};

//! Shared fixtures for the benchmarks.

use natperm::sets::NatSet;
use natperm::Permutation;

/// Sets with long, short and absent runs, each paired with a label.
pub fn sample_sets() -> Vec<(&'static str, NatSet)> {
    vec![
        ("even", NatSet::even()),
        ("prng-0.5", NatSet::prng(7, 0.5).expect("valid probability")),
        ("prng-0.9", NatSet::prng(7, 0.9).expect("valid probability")),
        ("finite-block", NatSet::finite(100..600)),
    ]
}

/// A composition of `depth` rearrangements over the sample sets.
pub fn composed(depth: usize) -> Permutation {
    let sets = sample_sets();
    (0..depth).fold(Permutation::identity(), |acc, i| {
        acc.compose(&Permutation::sigma(&sets[i % sets.len()].1))
    })
}

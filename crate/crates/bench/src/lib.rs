//! Fixtures shared by the benchmarks under `benches/`.

use hmset::search::{enumerate_maximal_p_families, SearchOptions};
use hmset::{Multiplicity, Params, SetFamily};

/// Parameter sets the benchmarks sweep over.
pub fn theorem_params() -> Vec<Params> {
    [
        (5, 4, Multiplicity::Unbounded),
        (6, 4, Multiplicity::Bounded(2)),
        (6, 4, Multiplicity::Bounded(3)),
    ]
    .into_iter()
    .map(|(n, k, m)| Params::new(n, k, m).expect("valid parameters"))
    .collect()
}

/// Every maximal family on `[n]`, relabeled so that canonical-form work is
/// not handed already-canonical input.
pub fn scrambled_maximal(n: usize) -> Vec<SetFamily> {
    let shift = hmset::Permutation::from_zero_based((0..n).map(|i| (i + 1) % n).collect())
        .expect("rotation is a permutation");
    enumerate_maximal_p_families(n, false, &SearchOptions::default())
        .expect("n is within the enumeration cap")
        .iter()
        .map(|f| f.apply(&shift))
        .collect()
}

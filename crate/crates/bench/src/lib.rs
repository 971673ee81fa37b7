//! Instances shared by the benchmarks.

use nfam_core::{balanced_partition, IntSeq, Params};

/// `(r, a, d)` centers spanning single- and multi-layer candidate families.
pub fn candidate_params() -> Vec<(&'static str, Params)> {
    let mk = |r: usize, a: IntSeq, d: u32| Params::from_center(r, a, d).unwrap();
    vec![
        ("r2_n4_d2", mk(2, balanced_partition(4, 3), 2)),
        ("r3_n5_d3", mk(3, balanced_partition(5, 4), 3)),
        ("r4_n6_d4", mk(4, balanced_partition(6, 2), 4)),
        ("r3_n3_d4", mk(3, IntSeq::from([2, 1, 1]), 4)),
    ]
}

/// `(n, r, s)` instances for the exact search.
pub const SEARCH_INSTANCES: &[(usize, usize, u64)] = &[(3, 2, 6), (4, 2, 4), (4, 3, 5), (5, 2, 3)];

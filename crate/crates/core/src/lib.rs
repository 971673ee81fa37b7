//! Exact computation over r-wise s-union families of integer sequences.
//!
//! A family `A ⊂ ℕⁿ` is *r-wise s-union* when the componentwise maximum of
//! any `r` of its members has weight at most `s`. This crate builds the
//! layered candidate families `K(r, n, a, d)`, enumerates the lattice points
//! of the matching polytope, counts both in closed form, verifies arbitrary
//! families, and runs an exact branch-and-bound search for the largest
//! r-wise s-union family at small `n` and `s`.
//!
//! Modules, bottom-up:
//!
//! * [`seqcore`]: sequences, families, antichains and the order primitives.
//! * [`construct`]: spheres, balanced partitions and the candidate family.
//! * [`polytope`]: membership and lattice enumeration for the polytope.
//! * [`census`]: elementary symmetric polynomials and closed-form sizes.
//! * [`verify`]: down-set, union-property and profile checks.
//! * [`extremal`]: exact maximum search and the comparison against the
//!   best balanced candidate.

pub mod census;
pub mod construct;
mod error;
pub mod extremal;
pub mod io;
pub mod polytope;
pub mod seqcore;
pub mod verify;

pub use census::{
    best_balanced_size, closed_form_k_size, elementary_symmetric, reference_size,
    BalancedCandidate, BalancedOptimum, SizeBreakdown,
};
pub use construct::{balanced_partition, build_k, reference_family, sphere, Params};
pub use error::{Error, ProfileError, Result};
pub use extremal::{check_conjecture, max_family_search, SearchOptions, SearchReport};
pub use io::FamilyFile;
pub use polytope::{contains, enumerate_l, PolytopeSpec};
pub use seqcore::{
    downset_of, join, leq, maximal_elements, setminus, weight, Antichain, Family, IntSeq,
};
pub use verify::{
    derive_profile, is_downset, is_r_wise_s_union, subset_max, union_violation, Profile,
    UnionViolation,
};

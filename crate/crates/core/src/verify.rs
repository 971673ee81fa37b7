//! Property checks on arbitrary families: down-set closure, the r-wise
//! s-union property, and the profile `(m, d, a, P₁…Pₙ)` derived from a
//! family's coordinate maxima.

use itertools::Itertools;

use crate::construct::Params;
use crate::error::{Error, ProfileError, Result};
use crate::polytope::PolytopeSpec;
use crate::seqcore::{join, maximal_elements, Family, IntSeq};

/// Closed under `≺`. Checking single-step decrements suffices.
pub fn is_downset(family: &Family) -> bool {
    family.iter().all(|x| {
        let mut y = x.clone().into_entries();
        (0..y.len()).all(|i| {
            if y[i] == 0 {
                return true;
            }
            y[i] -= 1;
            let below = IntSeq::new(y.clone());
            y[i] += 1;
            family.contains(&below)
        })
    })
}

/// An r-multiset of members whose join is too heavy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionViolation {
    pub members: Vec<IntSeq>,
    pub join: IntSeq,
    pub weight: u64,
}

/// First r-multiset (in canonical order) of maximal members whose join
/// weighs more than `s`.
///
/// Join and weight are monotone under `≺`, so only maximal members matter,
/// and join is idempotent, so multisets stand in for r-tuples.
pub fn union_violation(family: &Family, r: usize, s: u64) -> Option<UnionViolation> {
    if family.is_empty() || r == 0 {
        return None;
    }
    let maximal = maximal_elements(family).expect("family is nonempty");
    maximal
        .members()
        .iter()
        .combinations_with_replacement(r)
        .find_map(|pick| {
            let members: Vec<IntSeq> = pick.into_iter().cloned().collect();
            let joined = join(&members).expect("members share a dimension");
            let weight = joined.weight();
            (weight > s).then_some(UnionViolation {
                members,
                join: joined,
                weight,
            })
        })
}

pub fn is_r_wise_s_union(family: &Family, r: usize, s: u64) -> bool {
    union_violation(family, r, s).is_none()
}

/// Coordinate maxima `m`, `d = (|m| − s)/(n − r)`, `a = m − d·𝟏` and the
/// corner points `Pᵢ = a + d·eᵢ` of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub r: usize,
    pub s: u64,
    pub m: IntSeq,
    pub d: u32,
    pub a: IntSeq,
    pub p: Vec<IntSeq>,
    /// Every `Pᵢ` is a member of the source family.
    pub assumption_holds: bool,
}

impl Profile {
    /// The polytope with the profile's `a` and `d`.
    pub fn polytope_spec(&self) -> Result<PolytopeSpec> {
        Ok(Params::new(self.r, self.s, self.a.clone(), self.d)?.into())
    }
}

pub fn derive_profile(family: &Family, r: usize, s: u64) -> Result<Profile, ProfileError> {
    if family.is_empty() {
        return Err(ProfileError::EmptyFamily);
    }
    let n = family.dim();
    if n <= r {
        return Err(ProfileError::DivisorNotPositive { n, r });
    }
    let mut m = vec![0u32; n];
    for x in family {
        for (mi, &xi) in m.iter_mut().zip(x.entries()) {
            *mi = (*mi).max(xi);
        }
    }
    let m = IntSeq::new(m);
    let divisor = (n - r) as i64;
    let excess = m.weight() as i64 - s as i64;
    if excess.rem_euclid(divisor) != 0 {
        return Err(ProfileError::NotDivisible {
            excess,
            divisor: divisor as u64,
        });
    }
    let d = excess / divisor;
    if d < 0 {
        return Err(ProfileError::NegativeD { d });
    }
    if let Some((index, &mi)) = m
        .entries()
        .iter()
        .enumerate()
        .find(|&(_, &mi)| i64::from(mi) < d)
    {
        return Err(ProfileError::NegativeEntry {
            index,
            value: i64::from(mi) - d,
        });
    }
    let d = d as u32;
    let a = IntSeq::new(m.entries().iter().map(|&mi| mi - d).collect());
    let p: Vec<IntSeq> = (0..n)
        .map(|i| {
            let mut v = a.clone().into_entries();
            v[i] += d;
            IntSeq::new(v)
        })
        .collect();
    let assumption_holds = p.iter().all(|pi| family.contains(pi));
    Ok(Profile {
        r,
        s,
        m,
        d,
        a,
        p,
        assumption_holds,
    })
}

/// `m_I = max{ Σ_{i∈I} xᵢ : x ∈ A }`, with `I` given as 0-based indices.
pub fn subset_max(family: &Family, index_set: &[usize]) -> Result<u64> {
    if index_set.is_empty() {
        return Err(Error::InvalidParams("index set must be nonempty".into()));
    }
    let n = family.dim();
    if let Some(&bad) = index_set.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let idx: Vec<usize> = index_set.iter().copied().sorted().dedup().collect();
    Ok(family
        .iter()
        .map(|x| idx.iter().map(|&i| u64::from(x[i])).sum::<u64>())
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_k;
    use proptest::prelude::*;

    fn s(v: &[u32]) -> IntSeq {
        IntSeq::new(v.to_vec())
    }

    fn fam(dim: usize, vs: &[&[u32]]) -> Family {
        Family::from_members(dim, vs.iter().map(|v| s(v))).unwrap()
    }

    fn example_k() -> Family {
        build_k(&Params::new(2, 3, s(&[1, 0, 0]), 1).unwrap())
    }

    #[test]
    fn downset_examples() {
        assert!(is_downset(&fam(2, &[&[0, 0], &[1, 0]])));
        assert!(!is_downset(&fam(2, &[&[1, 0]])));
        assert!(is_downset(&Family::empty(3)));
        assert!(is_downset(&example_k()));
        assert!(!is_downset(&fam(2, &[&[0, 0], &[1, 0], &[1, 1]])));
    }

    #[test]
    fn union_examples() {
        assert!(is_r_wise_s_union(&example_k(), 2, 3));
        assert!(!is_r_wise_s_union(&example_k(), 2, 2));

        let v = union_violation(&fam(2, &[&[2, 0], &[0, 2]]), 2, 3).unwrap();
        assert_eq!(v.join, s(&[2, 2]));
        assert_eq!(v.weight, 4);
        assert_eq!(v.members, vec![s(&[0, 2]), s(&[2, 0])]);

        let single = fam(3, &[&[1, 2, 0]]);
        for r in 1..5 {
            assert!(is_r_wise_s_union(&single, r, 3));
            assert!(!is_r_wise_s_union(&single, r, 2));
        }
        assert!(is_r_wise_s_union(&Family::empty(2), 2, 0));
    }

    #[test]
    fn profile_of_candidate_family() {
        let k = example_k();
        let prof = derive_profile(&k, 2, 3).unwrap();
        assert_eq!(prof.m, s(&[2, 1, 1]));
        assert_eq!(prof.d, 1);
        assert_eq!(prof.a, s(&[1, 0, 0]));
        assert_eq!(prof.p, vec![s(&[2, 0, 0]), s(&[1, 1, 0]), s(&[1, 0, 1])]);
        assert!(prof.assumption_holds);
        assert_eq!(prof.polytope_spec().unwrap().params.s(), 3);
    }

    #[test]
    fn profile_failure_modes() {
        let zero = fam(3, &[&[0, 0, 0]]);
        assert_eq!(
            derive_profile(&zero, 2, 1),
            Err(ProfileError::NegativeD { d: -1 })
        );
        assert_eq!(
            derive_profile(&zero, 3, 1),
            Err(ProfileError::DivisorNotPositive { n: 3, r: 3 })
        );
        let f = fam(4, &[&[0, 0, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(
            derive_profile(&f, 2, 0),
            Err(ProfileError::NotDivisible {
                excess: 1,
                divisor: 2
            })
        );
        // m = (3,0,0), |m| - s = 2, d = 2, a₂ = -2
        let f = fam(3, &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[3, 0, 0]]);
        assert_eq!(
            derive_profile(&f, 2, 1),
            Err(ProfileError::NegativeEntry {
                index: 1,
                value: -2
            })
        );
        assert_eq!(
            derive_profile(&Family::empty(3), 2, 1),
            Err(ProfileError::EmptyFamily)
        );
    }

    #[test]
    fn subset_max_examples() {
        let k = example_k();
        assert_eq!(subset_max(&k, &[0]).unwrap(), 2);
        // every member of this K weighs at most 2
        assert_eq!(subset_max(&k, &[0, 1, 2]).unwrap(), 2);
        assert_eq!(subset_max(&k, &[0, 1]).unwrap(), 2);
        let zero = fam(3, &[&[0, 0, 0]]);
        assert_eq!(subset_max(&zero, &[1, 2]).unwrap(), 0);
        assert!(subset_max(&k, &[]).is_err());
        assert!(subset_max(&k, &[3]).is_err());
    }

    fn small_family() -> impl Strategy<Value = Family> {
        (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(0u32..3, n), 1..6).prop_map(move |vs| {
                Family::from_members(n, vs.into_iter().map(IntSeq::new)).unwrap()
            })
        })
    }

    /// Every r-tuple of members, no reduction to maximal elements.
    fn union_by_tuples(family: &Family, r: usize, s: u64) -> bool {
        let members: Vec<&IntSeq> = family.iter().collect();
        (0..r)
            .map(|_| members.iter())
            .multi_cartesian_product()
            .all(|tuple| {
                join(&tuple.into_iter().map(|x| (*x).clone()).collect::<Vec<_>>())
                    .unwrap()
                    .weight()
                    <= s
            })
    }

    proptest! {
        #[test]
        fn multiset_check_agrees_with_tuple_check(
            f in small_family(), r in 1usize..4, s_ in 0u64..=4
        ) {
            prop_assert_eq!(is_r_wise_s_union(&f, r, s_), union_by_tuples(&f, r, s_));
        }

        #[test]
        fn down_closure_keeps_union_property(f in small_family(), r in 1usize..4, s_ in 0u64..=6) {
            prop_assert_eq!(is_r_wise_s_union(&f, r, s_), is_r_wise_s_union(&f.down_closure(), r, s_));
            prop_assert!(is_downset(&f.down_closure()));
        }
    }
}

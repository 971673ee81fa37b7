//! Sequences in ℕⁿ, finite families of them, and the order primitives.
//!
//! All set-valued results are kept in lexicographic order of their entry
//! lists, so output is byte-stable across runs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sequence of `n` non-negative integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntSeq(Vec<u32>);

impl IntSeq {
    pub fn new(entries: Vec<u32>) -> Self {
        IntSeq(entries)
    }

    /// The all-zero sequence `𝟎`.
    pub fn zeros(n: usize) -> Self {
        IntSeq(vec![0; n])
    }

    /// The all-one sequence `𝟏`.
    pub fn ones(n: usize) -> Self {
        IntSeq(vec![1; n])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut v = vec![0; n];
        v[i] = 1;
        Ok(IntSeq(v))
    }

    /// `ẽ_p`: ones in the first `p` coordinates, zeros elsewhere.
    pub fn prefix_ones(n: usize, p: usize) -> Result<Self> {
        if p > n {
            return Err(Error::IndexOutOfRange {
                index: p,
                len: n + 1,
            });
        }
        let mut v = vec![0; n];
        v[..p].iter_mut().for_each(|x| *x = 1);
        Ok(IntSeq(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// `self + c·𝟏`.
    pub fn shifted(&self, c: u32) -> Self {
        IntSeq(self.0.iter().map(|&x| x + c).collect())
    }

    /// Componentwise `≺`, without a dimension check.
    pub(crate) fn precedes(&self, other: &IntSeq) -> bool {
        self.0.iter().zip(&other.0).all(|(x, y)| x <= y)
    }

    /// Coordinates rearranged so that entry `i` of the result is entry
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        IntSeq(perm.iter().map(|&j| self.0[j]).collect())
    }

    fn check_dim(&self, other: &IntSeq) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl From<Vec<u32>> for IntSeq {
    fn from(v: Vec<u32>) -> Self {
        IntSeq(v)
    }
}

impl<const N: usize> From<[u32; N]> for IntSeq {
    fn from(v: [u32; N]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl std::ops::Index<usize> for IntSeq {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Debug for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn weight(x: &IntSeq) -> u64 {
    x.weight()
}

/// Componentwise maximum of a nonempty list of sequences.
pub fn join(xs: &[IntSeq]) -> Result<IntSeq> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyInput)?;
    let mut out = first.clone();
    for x in rest {
        out.check_dim(x)?;
        for (o, &v) in out.0.iter_mut().zip(&x.0) {
            *o = (*o).max(v);
        }
    }
    Ok(out)
}

/// `|x ∨ y|` without materialising the join. Dimensions must agree.
pub(crate) fn join_weight(x: &[u32], y: &[u32]) -> u64 {
    x.iter().zip(y).map(|(&a, &b)| u64::from(a.max(b))).sum()
}

pub fn leq(x: &IntSeq, y: &IntSeq) -> Result<bool> {
    x.check_dim(y)?;
    Ok(x.precedes(y))
}

/// Truncated difference `(a∖b)ᵢ = max(aᵢ − bᵢ, 0)`.
pub fn setminus(a: &IntSeq, b: &IntSeq) -> Result<IntSeq> {
    a.check_dim(b)?;
    Ok(IntSeq(
        a.0.iter()
            .zip(&b.0)
            .map(|(&x, &y)| x.saturating_sub(y))
            .collect(),
    ))
}

/// A finite set of sequences sharing one dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    dim: usize,
    members: BTreeSet<IntSeq>,
}

impl Family {
    pub fn empty(dim: usize) -> Self {
        Family {
            dim,
            members: BTreeSet::new(),
        }
    }

    /// Collects members, merging duplicates.
    pub fn from_members<I>(dim: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = IntSeq>,
    {
        let mut fam = Family::empty(dim);
        for m in members {
            fam.insert(m)?;
        }
        Ok(fam)
    }

    pub fn insert(&mut self, x: IntSeq) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(self.members.insert(x))
    }

    pub fn contains(&self, x: &IntSeq) -> bool {
        self.members.contains(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = &IntSeq> + '_ {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &Family) -> bool {
        self.dim == other.dim && self.members.is_subset(&other.members)
    }

    /// Applies the same coordinate rearrangement to every member.
    pub fn permuted(&self, perm: &[usize]) -> Family {
        Family {
            dim: self.dim,
            members: self.members.iter().map(|x| x.permuted(perm)).collect(),
        }
    }

    /// Smallest down-set containing this family.
    pub fn down_closure(&self) -> Family {
        down_closure_of(self.dim, self.members.iter())
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a IntSeq;
    type IntoIter = std::collections::btree_set::Iter<'a, IntSeq>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// A set of pairwise `≺`-incomparable sequences, sorted canonically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Antichain {
    dim: usize,
    members: Vec<IntSeq>,
}

impl Antichain {
    pub fn new(dim: usize, members: Vec<IntSeq>) -> Result<Self> {
        for m in &members {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
        }
        let mut members = members;
        members.sort();
        members.dedup();
        for (i, x) in members.iter().enumerate() {
            for y in &members[i + 1..] {
                if x.precedes(y) || y.precedes(x) {
                    return Err(Error::NotAnAntichain(x.to_string(), y.to_string()));
                }
            }
        }
        Ok(Antichain { dim, members })
    }

    /// Caller guarantees the members are pairwise incomparable.
    pub(crate) fn from_sorted_unchecked(dim: usize, mut members: Vec<IntSeq>) -> Self {
        members.sort();
        Antichain { dim, members }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[IntSeq] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn permuted(&self, perm: &[usize]) -> Antichain {
        let members = self.members.iter().map(|x| x.permuted(perm)).collect();
        Antichain::from_sorted_unchecked(self.dim, members)
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// Members of `family` that are maximal under `≺`.
pub fn maximal_elements(family: &Family) -> Result<Antichain> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let members: Vec<&IntSeq> = family.iter().collect();
    let maximal = members
        .iter()
        .filter(|&&x| !members.iter().any(|&y| y != x && x.precedes(y)))
        .map(|&x| x.clone())
        .collect();
    Ok(Antichain::from_sorted_unchecked(family.dim(), maximal))
}

/// `D(gens)`: every sequence lying below some generator.
pub fn downset_of(gens: &Antichain) -> Family {
    down_closure_of(gens.dim(), gens.members().iter())
}

pub(crate) fn down_closure_of<'a, I>(dim: usize, gens: I) -> Family
where
    I: IntoIterator<Item = &'a IntSeq>,
{
    let mut members = BTreeSet::new();
    for g in gens {
        for_each_below(g.entries(), |c| {
            members.insert(IntSeq(c.to_vec()));
        });
    }
    Family { dim, members }
}

/// Visits every `c ≺ g` (the box `∏[0, gᵢ]`) in lexicographic order.
pub(crate) fn for_each_below<F: FnMut(&[u32])>(g: &[u32], mut f: F) {
    let mut cur = vec![0u32; g.len()];
    loop {
        f(&cur);
        // odometer increment, last coordinate fastest
        let mut i = g.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < g[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// All weak compositions of `total` into `parts` non-negative parts, in
/// lexicographically descending order.
pub fn weak_compositions(total: u32, parts: usize) -> WeakCompositions {
    let next = match parts {
        0 if total == 0 => Some(Vec::new()),
        0 => None,
        _ => {
            let mut v = vec![0; parts];
            v[0] = total;
            Some(v)
        }
    };
    WeakCompositions { next }
}

pub struct WeakCompositions {
    next: Option<Vec<u32>>,
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.next.take()?;
        let n = cur.len();
        // rightmost non-last position holding something
        if let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] > 0) {
            let mut succ = cur.clone();
            let tail: u32 = succ[i + 1..].iter().sum();
            succ[i] -= 1;
            succ[i + 1..].iter_mut().for_each(|x| *x = 0);
            succ[i + 1] = tail + 1;
            self.next = Some(succ);
        }
        Some(cur)
    }
}

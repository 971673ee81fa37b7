//! Exact counting: elementary symmetric polynomials, the closed-form size of
//! `K(r, n, a, d)`, and the size of the reference family `D(U(ẽ_p, d))`.
//!
//! Everything is computed in arbitrary precision.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::construct::{balanced_partition, Params};
use crate::error::{Error, Result};
use crate::seqcore::IntSeq;

/// `C(m, k)`, zero whenever `m < k`, `k < 0` or `m < 0`.
pub fn binomial(m: i64, k: i64) -> BigUint {
    if k < 0 || m < k {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((m - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// `[σ₀(a), σ₁(a), …, σₙ(a)]`, the coefficients of `∏(1 + aᵢ t)`.
pub fn elementary_symmetric_all(a: &IntSeq) -> Vec<BigUint> {
    let n = a.dim();
    let mut coeffs = vec![BigUint::zero(); n + 1];
    coeffs[0] = BigUint::one();
    for (step, &ai) in a.entries().iter().enumerate() {
        let ai = BigUint::from(ai);
        for k in (1..=step + 1).rev() {
            let add = &coeffs[k - 1] * &ai;
            coeffs[k] += add;
        }
    }
    coeffs
}

/// `σ_k(a)`.
pub fn elementary_symmetric(a: &IntSeq, k: usize) -> Result<BigUint> {
    if k > a.dim() {
        return Err(Error::DegreeOutOfRange { k, n: a.dim() });
    }
    Ok(elementary_symmetric_all(a).swap_remove(k))
}

/// The closed-form size of `K`, split by layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeBreakdown {
    /// Size of the base layer `D(U(a, d))`.
    pub base_term: BigUint,
    /// New points contributed by layers `i = 1..=⌊d/u⌋`.
    pub layer_terms: Vec<BigUint>,
    pub total: BigUint,
}

pub fn closed_form_k_size(params: &Params) -> SizeBreakdown {
    let n = params.n() as i64;
    let u = params.u() as i64;
    let d = i64::from(params.d());

    let sigma = elementary_symmetric_all(params.a());
    let base_term = (0..=n).fold(BigUint::zero(), |acc, j| {
        acc + binomial(d + j, j) * &sigma[(n - j) as usize]
    });

    let layer_terms: Vec<BigUint> = (1..=i64::from(params.layers()))
        .map(|i| {
            let sigma = elementary_symmetric_all(&params.a().shifted(i as u32));
            let radius = d - u * i;
            (u + 1..=n).fold(BigUint::zero(), |acc, j| {
                // j > u, so the first binomial dominates the second
                let count = binomial(radius + j, j) - binomial(radius + u, j);
                acc + count * &sigma[(n - j) as usize]
            })
        })
        .collect();

    let total = layer_terms.iter().fold(base_term.clone(), |acc, t| acc + t);
    SizeBreakdown {
        base_term,
        layer_terms,
        total,
    }
}

/// `|D(U(ẽ_p, d))| = Σ_{j=0}^{p} C(p, j)·C(n − j + d, d)`.
pub fn reference_size(n: usize, p: usize, d: u32) -> Result<BigUint> {
    if p > n {
        return Err(Error::InvalidParams(format!("p = {p} exceeds n = {n}")));
    }
    let (n, p, d) = (n as i64, p as i64, i64::from(d));
    Ok((0..=p).fold(BigUint::zero(), |acc, j| {
        acc + binomial(p, j) * binomial(n - j + d, d)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedCandidate {
    pub d: u32,
    pub a: IntSeq,
    pub size: BigUint,
}

/// Every `K(r, n, balanced a, d)` for `0 ≤ d ≤ ⌊s/r⌋`, and the maximisers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedOptimum {
    pub size: BigUint,
    /// All maximising `d`, ascending.
    pub optima: Vec<BalancedCandidate>,
    /// One entry per `d`, ascending.
    pub candidates: Vec<BalancedCandidate>,
}

pub fn best_balanced_size(n: usize, r: usize, s: u64) -> Result<BalancedOptimum> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
    }
    if n < r {
        return Err(Error::InvalidParams(format!(
            "n = {n} must be at least r = {r}"
        )));
    }
    let max_d = u32::try_from(s / r as u64)
        .map_err(|_| Error::InvalidParams(format!("s = {s} too large")))?;
    let mut candidates = Vec::with_capacity(max_d as usize + 1);
    for d in 0..=max_d {
        let a = balanced_partition(n, s - r as u64 * u64::from(d));
        let params = Params::new(r, s, a.clone(), d)?;
        let size = closed_form_k_size(&params).total;
        candidates.push(BalancedCandidate { d, a, size });
    }
    let size = candidates
        .iter()
        .map(|c| c.size.clone())
        .max()
        .expect("d = 0 is always a candidate");
    let optima = candidates
        .iter()
        .filter(|c| c.size == size)
        .cloned()
        .collect();
    Ok(BalancedOptimum {
        size,
        optima,
        candidates,
    })
}

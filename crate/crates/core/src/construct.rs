//! Spheres, balanced partitions and the layered candidate family
//! `K(r, n, a, d) = ⋃ᵢ D(U(a + i·𝟏, d − u·i))` with `u = n − r + 1`.

use crate::error::{Error, Result};
use crate::seqcore::{down_closure_of, weak_compositions, Family, IntSeq};

/// One problem instance `(r, n, s, d, a)`; `u = n − r + 1` is derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    r: usize,
    s: u64,
    d: u32,
    a: IntSeq,
}

impl Params {
    /// Validates `r ≥ 2`, `n ≥ r` and `|a| = s − r·d`.
    pub fn new(r: usize, s: u64, a: IntSeq, d: u32) -> Result<Self> {
        let n = a.dim();
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
        }
        if n < r {
            return Err(Error::InvalidParams(format!(
                "n = {n} must be at least r = {r}"
            )));
        }
        let rd = r as u64 * u64::from(d);
        if s < rd || a.weight() != s - rd {
            return Err(Error::InvalidParams(format!(
                "|a| = {} but s - r*d = {s} - {rd}",
                a.weight()
            )));
        }
        Ok(Params { r, s, d, a })
    }

    /// Instance whose `s` is implied by the center: `s = |a| + r·d`.
    pub fn from_center(r: usize, a: IntSeq, d: u32) -> Result<Self> {
        let s = a.weight() + r as u64 * u64::from(d);
        Params::new(r, s, a, d)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> &IntSeq {
        &self.a
    }

    pub fn u(&self) -> usize {
        self.n() - self.r + 1
    }

    /// Number of layers beyond the base one, `⌊d/u⌋`.
    pub fn layers(&self) -> u32 {
        self.d / self.u() as u32
    }
}

/// `U(a, d) = { a + ε : |ε| = d }`.
pub fn sphere(a: &IntSeq, d: u32) -> Family {
    let n = a.dim();
    let members = weak_compositions(d, n)
        .map(|eps| IntSeq::new(a.entries().iter().zip(eps).map(|(&x, e)| x + e).collect()));
    Family::from_members(n, members).expect("sphere members share the center's dimension")
}

/// The candidate family `K(r, n, a, d)`.
pub fn build_k(params: &Params) -> Family {
    let u = params.u() as u32;
    let mut gens = Vec::new();
    for i in 0..=params.layers() {
        let layer = sphere(&params.a().shifted(i), params.d() - u * i);
        gens.extend(layer.iter().cloned());
    }
    down_closure_of(params.n(), gens.iter())
}

/// Entries as equal as possible, summing to `total`, sorted descending.
pub fn balanced_partition(n: usize, total: u64) -> IntSeq {
    if n == 0 {
        return IntSeq::new(Vec::new());
    }
    let q = (total / n as u64) as u32;
    let rem = (total % n as u64) as usize;
    IntSeq::new((0..n).map(|i| if i < rem { q + 1 } else { q }).collect())
}

/// `D(U(ẽ_p, d))` with `s = d·r + p`, `0 ≤ p < r`.
pub fn reference_family(r: usize, s: u64, n: usize) -> Result<Family> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
    }
    let d = u32::try_from(s / r as u64)
        .map_err(|_| Error::InvalidParams(format!("s = {s} too large")))?;
    let p = (s % r as u64) as usize;
    if n < p {
        return Err(Error::InvalidParams(format!(
            "n = {n} is smaller than p = s mod r = {p}"
        )));
    }
    let center = IntSeq::prefix_ones(n, p)?;
    let shell = sphere(&center, d);
    Ok(down_closure_of(n, shell.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::downset_of;

    fn s(v: &[u32]) -> IntSeq {
        IntSeq::new(v.to_vec())
    }

    fn fam(dim: usize, vs: &[&[u32]]) -> Family {
        Family::from_members(dim, vs.iter().map(|v| s(v))).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(
            sphere(&IntSeq::zeros(3), 1),
            fam(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        let a = s(&[3, 1, 4]);
        assert_eq!(sphere(&a, 0), fam(3, &[&[3, 1, 4]]));
        assert_eq!(sphere(&s(&[1, 0]), 2), fam(2, &[&[3, 0], &[2, 1], &[1, 2]]));
    }

    #[test]
    fn sphere_size_is_a_binomial() {
        for n in 1..5usize {
            for d in 0..5u32 {
                let a = IntSeq::new((0..n as u32).collect());
                let expected = binom(u64::from(d) + n as u64 - 1, n as u64 - 1);
                assert_eq!(sphere(&a, d).len() as u64, expected, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn build_k_examples() {
        let p = Params::new(2, 3, s(&[1, 0, 0]), 1).unwrap();
        assert_eq!(
            build_k(&p),
            fam(
                3,
                &[
                    &[0, 0, 0],
                    &[1, 0, 0],
                    &[2, 0, 0],
                    &[0, 1, 0],
                    &[1, 1, 0],
                    &[0, 0, 1],
                    &[1, 0, 1]
                ]
            )
        );

        // u = 1, two layers: {𝟎, eᵢ} ∪ D((1,1,1))
        let p = Params::new(3, 3, IntSeq::zeros(3), 1).unwrap();
        assert_eq!(p.layers(), 1);
        let k = build_k(&p);
        assert_eq!(k.len(), 8);
        assert_eq!(
            k,
            downset_of(&crate::Antichain::new(3, vec![s(&[1, 1, 1])]).unwrap())
        );

        let a = s(&[2, 0, 1, 3]);
        let p = Params::from_center(2, a.clone(), 0).unwrap();
        assert_eq!(build_k(&p).len(), 3 * 4 * 2);
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(2, 4, s(&[1, 0, 0]), 1).is_err());
        assert!(Params::new(3, 3, s(&[1, 0]), 1).is_err());
        assert!(Params::new(1, 3, s(&[1, 0]), 1).is_err());
        assert!(Params::new(2, 1, s(&[1, 0]), 1).is_err());
        let p = Params::new(2, 7, s(&[1, 1, 1]), 2).unwrap();
        assert_eq!((p.n(), p.u(), p.layers()), (3, 2, 1));
    }

    #[test]
    fn balanced_partition_examples() {
        assert_eq!(balanced_partition(3, 4), s(&[2, 1, 1]));
        assert_eq!(balanced_partition(3, 0), s(&[0, 0, 0]));
        assert_eq!(balanced_partition(4, 2), s(&[1, 1, 0, 0]));
        for n in 1..6 {
            for t in 0..12u64 {
                let b = balanced_partition(n, t);
                assert_eq!(b.weight(), t);
                let (lo, hi) = (b.entries()[n - 1], b.entries()[0]);
                assert!(hi - lo <= 1);
                assert!(b.entries().windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn reference_family_examples() {
        let f = reference_family(2, 3, 3).unwrap();
        assert_eq!(f, build_k(&Params::new(2, 3, s(&[1, 0, 0]), 1).unwrap()));
        assert_eq!(f.len(), 7);

        let f = reference_family(2, 2, 4).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.contains(&IntSeq::zeros(4)));

        let f = reference_family(3, 3, 3).unwrap();
        assert_eq!(f, fam(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));

        assert!(reference_family(3, 2, 1).is_err());
    }

    // D(U(ẽ_p, d)) coincides with K(r, n, ẽ_p, d) exactly when K has a
    // single layer, i.e. d < n − r + 1.
    #[test]
    fn reference_family_is_single_layer_k() {
        for r in 2..4usize {
            for n in r..r + 4 {
                for s_ in 0..8u64 {
                    let d = (s_ / r as u64) as u32;
                    let p = (s_ % r as u64) as usize;
                    let params = Params::new(r, s_, IntSeq::prefix_ones(n, p).unwrap(), d).unwrap();
                    let k = build_k(&params);
                    let reference = reference_family(r, s_, n).unwrap();
                    if params.layers() == 0 {
                        assert_eq!(reference, k, "r={r} n={n} s={s_}");
                    } else {
                        assert!(reference.is_subset(&k));
                    }
                }
            }
        }
    }
}

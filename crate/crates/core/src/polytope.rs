//! The polytope cut out by `xᵢ ≥ 0` and `Σ_{i∈I} xᵢ ≤ Σ_{i∈I} aᵢ + d` for
//! every index set `1 ≤ |I| ≤ n − r + 1`, and its integer points `L`.

use crate::construct::Params;
use crate::error::{Error, Result};
use crate::seqcore::{for_each_below, Family, IntSeq};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolytopeSpec {
    pub params: Params,
}

impl PolytopeSpec {
    pub fn new(params: Params) -> Self {
        PolytopeSpec { params }
    }
}

impl From<Params> for PolytopeSpec {
    fn from(params: Params) -> Self {
        PolytopeSpec { params }
    }
}

/// Membership test.
///
/// For each size `k ≤ u` the binding index set is the one collecting the
/// `k` largest excesses `xᵢ − aᵢ`, so it is enough to check the sorted
/// prefix sums of those excesses against `d`.
pub fn contains(x: &IntSeq, spec: &PolytopeSpec) -> Result<bool> {
    let a = spec.params.a();
    if x.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: x.dim(),
        });
    }
    Ok(contains_entries(
        x.entries(),
        a.entries(),
        spec.params.u(),
        spec.params.d(),
    ))
}

fn contains_entries(x: &[u32], a: &[u32], u: usize, d: u32) -> bool {
    let mut excess: Vec<i64> = x
        .iter()
        .zip(a)
        .map(|(&xi, &ai)| i64::from(xi) - i64::from(ai))
        .collect();
    excess.sort_unstable_by(|p, q| q.cmp(p));
    let mut acc = 0i64;
    for &e in excess.iter().take(u) {
        acc += e;
        if acc > i64::from(d) {
            return false;
        }
    }
    true
}

/// `L(r, n, a, d)`, scanned over the box `∏[0, aᵢ + d]` implied by the
/// single-coordinate inequalities.
pub fn enumerate_l(spec: &PolytopeSpec) -> Family {
    let p = &spec.params;
    let (u, d) = (p.u(), p.d());
    let bounds: Vec<u32> = p.a().entries().iter().map(|&ai| ai + d).collect();
    let mut out = Family::empty(p.n());
    for_each_below(&bounds, |x| {
        if contains_entries(x, p.a().entries(), u, d) {
            out.insert(IntSeq::new(x.to_vec()))
                .expect("box points have dimension n");
        }
    });
    out
}

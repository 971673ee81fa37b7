//! Branch-and-bound against a no-pruning enumeration of every down-set of
//! the bounded universe, on instances with at most 20 candidate vectors.

use std::collections::BTreeSet;

use nfam_core::extremal::{optimum_family, universe_size};
use nfam_core::{max_family_search, Family, IntSeq, SearchOptions};
use num_bigint::BigUint;

fn points(n: usize, s: u32) -> Vec<Vec<u32>> {
    // plain odometer over [0, s]^n, filtered by weight
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if cur.iter().sum::<u32>() <= s {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < s {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

fn union_ok(members: &[&Vec<u32>], r: usize, s: u32) -> bool {
    let k = members.len();
    let mut idx = vec![0usize; r];
    loop {
        let n = members[0].len();
        let w: u32 = (0..n)
            .map(|c| idx.iter().map(|&i| members[i][c]).max().unwrap())
            .sum();
        if w > s {
            return false;
        }
        let mut pos = r;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            if idx[pos] + 1 < k {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// (maximum size, every optimal down-set)
fn exhaustive(n: usize, r: usize, s: u32) -> (usize, BTreeSet<Vec<Vec<u32>>>) {
    let pts = points(n, s);
    let m = pts.len();
    assert!(m <= 20);
    // bitmask of the one-step-lower neighbours of each point
    let lower: Vec<u32> = pts
        .iter()
        .map(|p| {
            let mut mask = 0u32;
            for c in 0..n {
                if p[c] > 0 {
                    let mut q = p.clone();
                    q[c] -= 1;
                    mask |= 1 << pts.iter().position(|x| *x == q).unwrap();
                }
            }
            mask
        })
        .collect();
    let mut best = 0;
    let mut optima = BTreeSet::new();
    for set in 1u32..(1u32 << m) {
        let closed = (0..m).all(|i| set & (1 << i) == 0 || lower[i] & !set == 0);
        if !closed {
            continue;
        }
        let size = set.count_ones() as usize;
        if size < best {
            continue;
        }
        let members: Vec<&Vec<u32>> = (0..m)
            .filter(|i| set & (1 << i) != 0)
            .map(|i| &pts[i])
            .collect();
        if !union_ok(&members, r, s) {
            continue;
        }
        if size > best {
            best = size;
            optima.clear();
        }
        let mut fam: Vec<Vec<u32>> = members.into_iter().cloned().collect();
        fam.sort();
        optima.insert(fam);
    }
    (best, optima)
}

fn as_rows(f: &Family) -> Vec<Vec<u32>> {
    f.iter().map(|x: &IntSeq| x.entries().to_vec()).collect()
}

#[test]
fn branch_and_bound_matches_exhaustive_enumeration() {
    let mut checked = 0;
    for n in 1..=5usize {
        for s in 0..=6u32 {
            if universe_size(n, u64::from(s)) > BigUint::from(20u32) {
                continue;
            }
            for r in 2..=4usize {
                let (best, optima) = exhaustive(n, r, s);
                let opts = SearchOptions {
                    all_optima: true,
                    ..SearchOptions::default()
                };
                let rep = max_family_search(n, r, u64::from(s), &opts).unwrap();
                assert_eq!(rep.search_max, best, "n={n} r={r} s={s}");
                let found: BTreeSet<_> = rep
                    .optima
                    .iter()
                    .map(|o| as_rows(&optimum_family(o)))
                    .collect();
                assert_eq!(
                    found.len(),
                    rep.optima.len(),
                    "duplicate optima n={n} r={r} s={s}"
                );
                assert_eq!(found, optima, "n={n} r={r} s={s}");

                let single =
                    max_family_search(n, r, u64::from(s), &SearchOptions::default()).unwrap();
                assert_eq!(single.search_max, best);
                assert!(optima.contains(&as_rows(&optimum_family(&single.optima[0]))));
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "only {checked} instances");
}

//! Exact maximum-size search for r-wise s-union families, and comparison of
//! the optimum against the best balanced candidate family.
//!
//! The search runs over down-sets only: down-closing an r-wise s-union
//! family keeps it r-wise s-union, because joins only see the maximal
//! members. A down-set is fixed by its antichain of maximal elements, and
//! every member of a feasible family has weight at most `s`, so the
//! candidates are the finitely many `x` with `|x| ≤ s`.
//!
//! Candidates are ordered by descending weight, then lexicographically.
//! Walking that order, each candidate is either already below a chosen
//! generator (covered), incompatible with the chosen generators (dead), or
//! free, and a free candidate is either taken as a new generator or
//! excluded for good. Since nothing later in the order can dominate an
//! earlier candidate, every branch is a distinct down-set, and the final
//! family can only contain covered or still-free candidates. That count is
//! the pruning bound.
//!
//! The top-level branches (which candidate is the first generator) are
//! shared out to worker threads. Workers publish their best size through a
//! shared monotone bound that is only ever used for strict pruning, so the
//! reported maximum, witness and optimum set do not depend on scheduling.

use std::collections::HashMap;
use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use itertools::Itertools;
use num_bigint::BigUint;

use crate::census::{best_balanced_size, binomial, BalancedOptimum};
use crate::construct::{build_k, Params};
use crate::error::{Error, Result};
use crate::seqcore::{
    downset_of, for_each_below, join_weight, maximal_elements, weak_compositions, Antichain,
    Family, IntSeq,
};

pub const DEFAULT_MAX_UNIVERSE: u64 = 10_000;
pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Collect every optimal down-set instead of a single witness.
    pub all_optima: bool,
    /// Cap on the number of candidates `C(s + n, n)`.
    pub max_universe: u64,
    /// Cap on the number of generators of a branch.
    pub max_depth: usize,
    /// Worker threads; 1 runs the sequential reference path.
    pub threads: usize,
    /// Only branch on first generators with non-decreasing entries. Valid
    /// for the maximum size, so refused together with `all_optima`.
    pub symmetry_breaking: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            all_optima: false,
            max_universe: DEFAULT_MAX_UNIVERSE,
            max_depth: DEFAULT_MAX_DEPTH,
            threads: 1,
            symmetry_breaking: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub r: usize,
    pub s: u64,
    pub universe_size: usize,
    pub search_max: usize,
    /// Generators of optimal down-sets, canonically sorted. A single
    /// witness unless `all_optima` was requested.
    pub optima: Vec<Antichain>,
    pub all_optima: bool,
    /// Best balanced candidate; absent when `n < r`.
    pub conjectured: Option<BalancedOptimum>,
    /// `search_max` equals the conjectured size.
    pub matches: Option<bool>,
    /// Every optimum is a maximising `K(r, n, balanced a, d)` up to a
    /// coordinate permutation. Needs `all_optima`.
    pub uniqueness: Option<bool>,
    /// Every optimum equals `K(r, n, a, d)` for some arrangement `a` of the
    /// maximising balanced partition, compared without permuting.
    pub uniqueness_strict: Option<bool>,
}

impl SearchReport {
    /// The optimum beats or differs from the balanced candidates.
    pub fn is_counterexample(&self) -> bool {
        self.matches == Some(false)
            || self.uniqueness == Some(false)
            || self.uniqueness_strict == Some(false)
    }

    pub fn conjectured_size(&self) -> Option<&BigUint> {
        self.conjectured.as_ref().map(|c| &c.size)
    }
}

/// `C(s + n, n)`, the number of `x ∈ ℕⁿ` with `|x| ≤ s`.
pub fn universe_size(n: usize, s: u64) -> BigUint {
    binomial(s as i64 + n as i64, n as i64)
}

struct Universe {
    points: Vec<Vec<u32>>,
    /// Indices of every point below point `i`, itself included. All of them
    /// are `≥ i` in the search order.
    below: Vec<Vec<u32>>,
}

impl Universe {
    fn build(n: usize, s: u32) -> Self {
        let mut points = Vec::new();
        for w in (0..=s).rev() {
            let mut layer: Vec<Vec<u32>> = weak_compositions(w, n).collect();
            layer.sort();
            points.extend(layer);
        }
        let index: HashMap<&[u32], u32> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i as u32))
            .collect();
        let below = points
            .iter()
            .map(|p| {
                let mut idx = Vec::new();
                for_each_below(p, |c| idx.push(index[c]));
                idx
            })
            .collect();
        Universe { points, below }
    }

    fn len(&self) -> usize {
        self.points.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Free,
    Covered,
    Dead,
}

struct Shared {
    best: AtomicUsize,
    abort: AtomicBool,
    next_task: AtomicUsize,
}

struct TaskResult {
    task: usize,
    best: usize,
    optima: Vec<Vec<u32>>,
}

struct Worker<'a> {
    uni: &'a Universe,
    shared: &'a Shared,
    r: usize,
    s: u64,
    all_optima: bool,
    max_depth: usize,
    marks: Vec<Mark>,
    trail: Vec<u32>,
    covered: usize,
    chosen: Vec<u32>,
    /// `levels[k]` holds joins of `k + 1` distinct generators, `k < r − 1`.
    levels: Vec<Vec<Vec<u32>>>,
    best: usize,
    optima: Vec<Vec<u32>>,
}

impl<'a> Worker<'a> {
    fn new(uni: &'a Universe, shared: &'a Shared, r: usize, s: u64, opts: &SearchOptions) -> Self {
        Worker {
            uni,
            shared,
            r,
            s,
            all_optima: opts.all_optima,
            max_depth: opts.max_depth,
            marks: vec![Mark::Free; uni.len()],
            trail: Vec::new(),
            covered: 0,
            chosen: Vec::new(),
            levels: vec![Vec::new(); r - 1],
            best: 0,
            optima: Vec::new(),
        }
    }

    /// Branches whose first generator is candidate `first`.
    fn run_task(&mut self, first: usize) -> Option<TaskResult> {
        self.best = 0;
        self.optima.clear();
        let free_ahead = self.uni.len() - first;
        if self.prunable(free_ahead) {
            return None;
        }
        self.branch(first, free_ahead);
        (self.best > 0).then(|| TaskResult {
            task: first,
            best: self.best,
            optima: std::mem::take(&mut self.optima),
        })
    }

    fn prunable(&self, bound: usize) -> bool {
        let shared = self.shared.best.load(Ordering::Relaxed);
        if self.all_optima {
            bound < self.best.max(shared)
        } else {
            bound <= self.best || bound < shared
        }
    }

    /// Takes free candidate `i` as a generator, explores, and restores.
    fn branch(&mut self, i: usize, free_ahead: usize) {
        if self.chosen.len() >= self.max_depth {
            self.shared.abort.store(true, Ordering::Relaxed);
            return;
        }
        let trail_mark = self.trail.len();
        let level_marks: Vec<usize> = self.levels.iter().map(Vec::len).collect();
        let removed = self.include(i);
        self.explore(i + 1, free_ahead - removed);
        self.undo(trail_mark, &level_marks);
    }

    fn explore(&mut self, start: usize, mut free_ahead: usize) {
        if self.shared.abort.load(Ordering::Relaxed) {
            return;
        }
        self.visit();
        for i in start..self.uni.len() {
            if self.marks[i] != Mark::Free {
                continue;
            }
            if self.prunable(self.covered + free_ahead) {
                break;
            }
            self.branch(i, free_ahead);
            if self.shared.abort.load(Ordering::Relaxed) {
                return;
            }
            // excluded from here on
            free_ahead -= 1;
        }
    }

    fn visit(&mut self) {
        let size = self.covered;
        if size > self.best {
            self.best = size;
            self.optima.clear();
            self.optima.push(self.chosen.clone());
            self.shared.best.fetch_max(size, Ordering::Relaxed);
        } else if size == self.best && self.all_optima {
            self.optima.push(self.chosen.clone());
        }
    }

    /// Returns how many free candidates became covered or dead.
    fn include(&mut self, i: usize) -> usize {
        let uni = self.uni;
        let x = &uni.points[i];
        let mut removed = 0;
        for &j in &uni.below[i] {
            let j = j as usize;
            if self.marks[j] == Mark::Free {
                self.marks[j] = Mark::Covered;
                self.trail.push(j as u32);
                removed += 1;
            }
        }
        self.covered += removed;

        // joins that involve x together with at most r − 2 older generators
        let mut fresh: Vec<(usize, Vec<u32>)> = vec![(0, x.clone())];
        for k in 0..self.r.saturating_sub(2) {
            for other in &self.levels[k] {
                let joined = x.iter().zip(other).map(|(&p, &q)| p.max(q)).collect();
                fresh.push((k + 1, joined));
            }
        }

        for z in i + 1..uni.len() {
            if self.marks[z] != Mark::Free {
                continue;
            }
            let pz = &uni.points[z];
            if fresh.iter().any(|(_, j)| join_weight(pz, j) > self.s) {
                self.marks[z] = Mark::Dead;
                self.trail.push(z as u32);
                removed += 1;
            }
        }

        for (level, j) in fresh {
            self.levels[level].push(j);
        }
        self.chosen.push(i as u32);
        removed
    }

    fn undo(&mut self, trail_mark: usize, level_marks: &[usize]) {
        for j in self.trail.drain(trail_mark..) {
            if self.marks[j as usize] == Mark::Covered {
                self.covered -= 1;
            }
            self.marks[j as usize] = Mark::Free;
        }
        for (level, &len) in self.levels.iter_mut().zip(level_marks) {
            level.truncate(len);
        }
        self.chosen.pop();
    }
}

fn is_non_decreasing(p: &[u32]) -> bool {
    p.windows(2).all(|w| w[0] <= w[1])
}

/// Exact maximum size of an r-wise s-union family in `ℕⁿ`.
pub fn max_family_search(n: usize, r: usize, s: u64, opts: &SearchOptions) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
    }
    if opts.threads == 0 {
        return Err(Error::InvalidParams("threads must be positive".into()));
    }
    if opts.symmetry_breaking && opts.all_optima {
        return Err(Error::InvalidParams(
            "symmetry breaking cannot be combined with collecting all optima".into(),
        ));
    }
    let size = universe_size(n, s);
    if size > BigUint::from(opts.max_universe) {
        return Err(Error::UniverseTooLarge {
            size: size.to_string(),
            cap: opts.max_universe,
        });
    }
    // the universe holds at least s + 1 points, so s fits comfortably
    let uni = Universe::build(n, s as u32);

    let tasks: Vec<usize> = (0..uni.len())
        .filter(|&i| !opts.symmetry_breaking || is_non_decreasing(&uni.points[i]))
        .collect();
    let shared = Shared {
        best: AtomicUsize::new(0),
        abort: AtomicBool::new(false),
        next_task: AtomicUsize::new(0),
    };

    let work = |shared: &Shared| {
        let mut worker = Worker::new(&uni, shared, r, s, opts);
        let mut out = Vec::new();
        loop {
            let t = shared.next_task.fetch_add(1, Ordering::Relaxed);
            if t >= tasks.len() || shared.abort.load(Ordering::Relaxed) {
                break;
            }
            out.extend(worker.run_task(tasks[t]));
        }
        out
    };

    let mut results: Vec<TaskResult> = if opts.threads == 1 {
        work(&shared)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..opts.threads)
                .map(|_| scope.spawn(|| work(&shared)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    if shared.abort.load(Ordering::Relaxed) {
        return Err(Error::DepthExceeded {
            cap: opts.max_depth,
        });
    }

    results.sort_by_key(|t| t.task);
    let search_max = results.iter().map(|t| t.best).max().unwrap_or(0);
    let to_antichain = |gens: &Vec<u32>| {
        let members = gens
            .iter()
            .map(|&g| IntSeq::new(uni.points[g as usize].clone()))
            .collect();
        Antichain::from_sorted_unchecked(n, members)
    };
    let mut optima: Vec<Antichain> = if opts.all_optima {
        results
            .iter()
            .filter(|t| t.best == search_max)
            .flat_map(|t| t.optima.iter().map(to_antichain))
            .collect()
    } else {
        results
            .iter()
            .find(|t| t.best == search_max)
            .map(|t| to_antichain(&t.optima[0]))
            .into_iter()
            .collect()
    };
    optima.sort();

    let mut report = SearchReport {
        n,
        r,
        s,
        universe_size: uni.len(),
        search_max,
        optima,
        all_optima: opts.all_optima,
        conjectured: None,
        matches: None,
        uniqueness: None,
        uniqueness_strict: None,
    };
    if n >= r {
        let conjectured = best_balanced_size(n, r, s)?;
        report.matches = Some(BigUint::from(search_max) == conjectured.size);
        if opts.all_optima {
            let (loose, strict) = uniqueness_verdicts(&report.optima, r, s, &conjectured)?;
            report.uniqueness = Some(loose);
            report.uniqueness_strict = Some(strict);
        }
        report.conjectured = Some(conjectured);
    }
    Ok(report)
}

/// Runs the exhaustive search with every optimum collected and compares it
/// against the best balanced candidate families.
pub fn check_conjecture(n: usize, r: usize, s: u64, opts: &SearchOptions) -> Result<SearchReport> {
    if n < r {
        return Err(Error::InvalidParams(format!(
            "n = {n} must be at least r = {r} for the candidate family to exist"
        )));
    }
    let opts = SearchOptions {
        all_optima: true,
        symmetry_breaking: false,
        ..opts.clone()
    };
    max_family_search(n, r, s, &opts)
}

/// Generators of `K(r, n, a, d)`.
fn k_generators(r: usize, s: u64, a: IntSeq, d: u32) -> Result<Antichain> {
    let k = build_k(&Params::new(r, s, a, d)?);
    maximal_elements(&k)
}

fn uniqueness_verdicts(
    optima: &[Antichain],
    r: usize,
    s: u64,
    conjectured: &BalancedOptimum,
) -> Result<(bool, bool)> {
    let n = conjectured.candidates[0].a.dim();
    let mut canonical = Vec::new();
    let mut arranged = HashSet::new();
    for cand in &conjectured.optima {
        canonical.push(k_generators(r, s, cand.a.clone(), cand.d)?);
        for arrangement in cand.a.entries().iter().copied().permutations(n).unique() {
            arranged.insert(k_generators(r, s, IntSeq::new(arrangement), cand.d)?);
        }
    }
    let loose = optima
        .iter()
        .all(|opt| canonical.iter().any(|k| equal_up_to_permutation(opt, k)));
    let strict = optima.iter().all(|opt| arranged.contains(opt));
    Ok((loose, strict))
}

/// Some rearrangement of coordinates maps `y` onto `x`.
pub fn equal_up_to_permutation(x: &Antichain, y: &Antichain) -> bool {
    if x.dim() != y.dim() || x.len() != y.len() {
        return false;
    }
    (0..x.dim())
        .permutations(x.dim())
        .any(|perm| &y.permuted(&perm) == x)
}

/// The down-set generated by an optimum.
pub fn optimum_family(optimum: &Antichain) -> Family {
    downset_of(optimum)
}

//! Generator for maximal intersecting families of `P`.
//!
//! A maximal intersecting family `F` holds exactly one set of every
//! complementary pair and is an up-set. Splitting on the last element `n`,
//! `F` is determined by `G = {B ∈ F : n ∉ B}`, which is an intersecting up-set
//! of non-empty subsets of `[n - 1]`; conversely every such `G` extends
//! uniquely by putting `C ∪ {n}` in `F` exactly when `[n - 1] - C ∉ G`. The
//! generator walks the subsets of `[n - 1]` from the largest down, deciding
//! membership in `G`: a set may enter only if all its one-element supersets
//! are already in and its complement is not. Excluding is always allowed, so
//! every leaf of the walk is a distinct maximal family.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::universe::SetFamily;
use crate::{Error, Result};

/// Default largest `n` the enumeration accepts.
pub const DEFAULT_CAP: usize = 7;
/// The walk keeps `G` in a 128-bit word, so `n - 1 <= 7`.
pub const HARD_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    pub cap: usize,
    pub allow_large: bool,
    /// Run the verifiers outside `k >= 4, m >= 2`; `n >= k + q` is still
    /// required because the bound is undefined without it.
    pub unchecked: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            cap: DEFAULT_CAP,
            allow_large: false,
            unchecked: false,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            workers,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::Params(format!("enumeration needs n >= 2, got {n}")));
        }
        if n > HARD_MAX_N {
            return Err(Error::Guard(format!(
                "enumeration supports n <= {HARD_MAX_N}"
            )));
        }
        if n > self.cap && !self.allow_large {
            return Err(Error::Guard(format!(
                "n = {n} exceeds the enumeration cap {}; pass the override to proceed",
                self.cap
            )));
        }
        if self.workers == 0 {
            return Err(Error::Params("at least one worker is required".into()));
        }
        Ok(())
    }

    pub(crate) fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .expect("thread pool construction");
        pool.install(job)
    }
}

/// One isomorphism class: its canonical representative and the number of
/// labeled families in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: SetFamily,
    pub orbit_size: u64,
}

struct Walk {
    n: usize,
    full: u32,
    order: Vec<u32>,
}

#[derive(Clone, Copy)]
struct Node {
    g: u128,
    depth: usize,
}

impl Walk {
    fn new(n: usize) -> Self {
        let t = n - 1;
        let full = (1u32 << t) - 1;
        let mut order: Vec<u32> = (1..=full).collect();
        order.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
        Walk { n, full, order }
    }

    fn can_include(&self, g: u128, s: u32) -> bool {
        if g >> (self.full ^ s) & 1 == 1 {
            return false;
        }
        let mut missing = self.full ^ s;
        while missing != 0 {
            let bit = missing & missing.wrapping_neg();
            missing ^= bit;
            if g >> (s | bit) & 1 == 0 {
                return false;
            }
        }
        true
    }

    /// Expands nodes breadth-first until there are enough independent
    /// subtrees to spread over workers; order is deterministic.
    fn frontier(&self, target: usize) -> Vec<Node> {
        let mut layer = vec![Node { g: 0, depth: 0 }];
        while layer.len() < target && layer.iter().any(|node| node.depth < self.order.len()) {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for node in layer {
                if node.depth == self.order.len() {
                    next.push(node);
                    continue;
                }
                let s = self.order[node.depth];
                next.push(Node {
                    g: node.g,
                    depth: node.depth + 1,
                });
                if self.can_include(node.g, s) {
                    next.push(Node {
                        g: node.g | 1 << s,
                        depth: node.depth + 1,
                    });
                }
            }
            layer = next;
        }
        layer
    }

    fn leaves(&self, node: Node, visit: &mut impl FnMut(u128)) {
        if node.depth == self.order.len() {
            visit(node.g);
            return;
        }
        let s = self.order[node.depth];
        self.leaves(
            Node {
                g: node.g,
                depth: node.depth + 1,
            },
            visit,
        );
        if self.can_include(node.g, s) {
            self.leaves(
                Node {
                    g: node.g | 1 << s,
                    depth: node.depth + 1,
                },
                visit,
            );
        }
    }

    /// The family on `[n]` determined by `G`.
    fn family(&self, g: u128) -> SetFamily {
        let top = 1usize << (self.n - 1);
        let mut words = vec![0u64; (1usize << self.n).div_ceil(64)];
        let mut set = |mask: usize| words[mask / 64] |= 1 << (mask % 64);
        for c in 0..=self.full {
            if g >> c & 1 == 1 {
                set(c as usize);
            }
            if c != self.full && g >> (self.full ^ c) & 1 == 0 {
                set(c as usize | top);
            }
        }
        SetFamily::from_words(self.n, words)
    }
}

fn frontier_target(workers: usize) -> usize {
    (workers * 64).max(64)
}

/// Visits every maximal intersecting family of `P` on `[n]`; each worker
/// folds its subtrees with `fold`, and the per-subtree results come back in
/// a fixed order regardless of scheduling.
pub(crate) fn fold_maximal<T: Send>(
    n: usize,
    opts: &SearchOptions,
    fold: impl Fn(&mut T, SetFamily) + Sync,
    init: impl Fn() -> T + Sync,
) -> Result<Vec<T>> {
    opts.check(n)?;
    let walk = Walk::new(n);
    let frontier = walk.frontier(frontier_target(opts.workers));
    Ok(opts.run(|| {
        frontier
            .par_iter()
            .map(|&node| {
                let mut acc = init();
                walk.leaves(node, &mut |g| fold(&mut acc, walk.family(g)));
                acc
            })
            .collect()
    }))
}

/// Every maximal intersecting family of `P` on `[n]`, in generator order, or
/// with `up_to_iso` one canonical representative per isomorphism class in
/// increasing canonical order.
pub fn enumerate_maximal_p_families(
    n: usize,
    up_to_iso: bool,
    opts: &SearchOptions,
) -> Result<Vec<SetFamily>> {
    if up_to_iso {
        return Ok(maximal_iso_classes(n, opts)?
            .into_iter()
            .map(|c| c.representative)
            .collect());
    }
    let parts = fold_maximal(n, opts, |acc: &mut Vec<SetFamily>, f| acc.push(f), Vec::new)?;
    Ok(parts.into_iter().flatten().collect())
}

/// Number of maximal intersecting families of `P` on `[n]`.
pub fn count_maximal_p_families(n: usize, opts: &SearchOptions) -> Result<u64> {
    let parts = fold_maximal(n, opts, |acc: &mut u64, _| *acc += 1, || 0)?;
    Ok(parts.into_iter().sum())
}

/// Isomorphism classes of maximal intersecting families of `P` on `[n]`,
/// sorted by canonical representative.
pub fn maximal_iso_classes(n: usize, opts: &SearchOptions) -> Result<Vec<IsoClass>> {
    let parts = fold_maximal(
        n,
        opts,
        |acc: &mut BTreeMap<SetFamily, u64>, f| {
            *acc.entry(f.canonical_form()).or_insert(0) += 1;
        },
        BTreeMap::new,
    )?;
    let mut merged: BTreeMap<SetFamily, u64> = BTreeMap::new();
    for part in parts {
        for (rep, count) in part {
            *merged.entry(rep).or_insert(0) += count;
        }
    }
    Ok(merged
        .into_iter()
        .map(|(representative, orbit_size)| IsoClass {
            representative,
            orbit_size,
        })
        .collect())
}

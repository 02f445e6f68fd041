//! Paths that are monotone for a 0/1 objective, and their generic lifts.
//!
//! For the objective that sums the coordinates in a set `S`, a monotone path
//! is a sequence of supports whose overlap with `S` grows by one at each
//! step: swaps `a_i -> b_i` with `a_i` outside `S` and `b_i` inside. Up to
//! relabeling it suffices to take `S` as the suffix `[n-s+1..n]`, which also
//! makes every swap increasing. Such a path lifts to a full monotone path
//! for the generic objective by sandwiching the swap block between a prefix
//! (walking the bottom support up to the first base) and a suffix (walking
//! the last base up to the top support), with block-internal orders chosen
//! so that the lifted path always satisfies the pairwise step criterion.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypersimplex::{MonotonePath, Support};

/// A monotone path for the 0/1 objective summing the suffix `[n-s+1..n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ESPath {
    n: usize,
    k: usize,
    s: usize,
    bases: Vec<Support>,
    swaps: Vec<(usize, usize)>,
}

impl ESPath {
    /// Builds the path from its first base and its swap sequence.
    ///
    /// The first base must meet the suffix in the minimal possible number
    /// of elements `max(0, k - (n - s))`; each swap must move one element
    /// from outside the suffix to inside it. There is always at least one
    /// swap, and the swap count is forced to `min(k, s) - max(0, k-(n-s))`.
    pub fn new(
        n: usize,
        k: usize,
        s: usize,
        first: Support,
        swaps: Vec<(usize, usize)>,
    ) -> Result<Self> {
        Support::minimum(n, k)?;
        if s < 1 || s > n - 1 {
            return Err(Error::InvalidParameter(format!(
                "the suffix size must satisfy 1 <= s <= n-1, got s = {s}, n = {n}"
            )));
        }
        if first.n() != n || first.k() != k {
            return Err(Error::InvalidStepSequence(format!(
                "first base {first} does not live on parameters ({n}, {k})"
            )));
        }
        let in_suffix = |e: usize| e > n - s;
        let start_overlap = k.saturating_sub(n - s);
        let overlap = first.elems().iter().filter(|&&e| in_suffix(e)).count();
        if overlap != start_overlap {
            return Err(Error::InvalidStepSequence(format!(
                "first base {first} meets the suffix in {overlap} elements, \
                 the minimum is {start_overlap}"
            )));
        }
        let expected = k.min(s) - start_overlap;
        if swaps.len() != expected {
            return Err(Error::InvalidStepSequence(format!(
                "expected {expected} swaps from {first}, got {}",
                swaps.len()
            )));
        }
        let mut bases = vec![first];
        for &(a, b) in &swaps {
            if in_suffix(a) || !in_suffix(b) {
                return Err(Error::InvalidStepSequence(format!(
                    "swap {a}->{b} must leave the suffix complement and enter \
                     the suffix [{}..{n}]",
                    n - s + 1
                )));
            }
            let next = bases.last().expect("bases is non-empty").swap(a, b)?;
            bases.push(next);
        }
        // Leaving elements never re-enter and entered elements never leave,
        // so the swap endpoints are pairwise distinct.
        debug_assert!(swaps.iter().map(|&(a, _)| a).all_unique());
        debug_assert!(swaps.iter().map(|&(_, b)| b).all_unique());
        Ok(ESPath {
            n,
            k,
            s,
            bases,
            swaps,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Size of the suffix set `S = [n-s+1..n]`.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn bases(&self) -> &[Support] {
        &self.bases
    }

    pub fn swaps(&self) -> &[(usize, usize)] {
        &self.swaps
    }
}

/// Enumerates every path for the suffix objective of size `s`, ordered by
/// first base (support-lex) and then by swap sequence (lex on `(a, b)`).
pub fn enumerate_es_paths(n: usize, k: usize, s: usize) -> Result<Vec<ESPath>> {
    Support::minimum(n, k)?;
    if s < 1 || s > n - 1 {
        return Err(Error::InvalidParameter(format!(
            "the suffix size must satisfy 1 <= s <= n-1, got s = {s}, n = {n}"
        )));
    }
    let start_overlap = k.saturating_sub(n - s);
    let low: Vec<usize> = (1..=n - s).collect();
    let high: Vec<usize> = (n - s + 1..=n).collect();
    let mut out = Vec::new();
    for low_part in low.iter().copied().combinations(k - start_overlap) {
        for high_part in high.iter().copied().combinations(start_overlap) {
            let elems = low_part.iter().chain(&high_part).copied().collect();
            let first = Support::new(n, elems)?;
            let mut stack = vec![(first.clone(), Vec::new())];
            while let Some((base, swaps)) = stack.pop() {
                if swaps.len() == k.min(s) - start_overlap {
                    out.push(ESPath::new(n, k, s, first.clone(), swaps)?);
                    continue;
                }
                let leavers: Vec<usize> = base
                    .elems()
                    .iter()
                    .copied()
                    .filter(|&e| e <= n - s)
                    .collect();
                let entrants: Vec<usize> = (n - s + 1..=n).filter(|&e| !base.contains(e)).collect();
                // Depth-first with a stack: push in reverse so swaps pop in
                // ascending (a, b) order.
                for &a in leavers.iter().rev() {
                    for &b in entrants.iter().rev() {
                        let mut longer = swaps.clone();
                        longer.push((a, b));
                        stack.push((base.swap(a, b)?, longer));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Lifts the path to a monotone path for the generic objective.
///
/// The lift keeps the bases as a contiguous sub-path. The prefix walks
/// `{1..k}` to the first base: targets that later leave via a swap are
/// inserted in decreasing swap order, preceded by the surviving targets
/// (top-window ones ascending, the rest descending). The suffix walks the
/// last base to `{n-k+1..n}`: swap entrants below the window leave first in
/// decreasing swap order, then the below-window survivors of the first base
/// (outside `{1..k}` ascending, then inside ascending), while the missing
/// window elements enter in ascending order. These orders make every step
/// pair satisfy the criterion.
pub fn lift(path: &ESPath) -> MonotonePath {
    let (n, k) = (path.n, path.k);
    let window_lo = n - k + 1;
    let first = &path.bases[0];
    let last = path.bases.last().expect("bases is non-empty");
    let swap_index = |e: usize, side: fn(&(usize, usize)) -> usize| {
        path.swaps.iter().position(|sw| side(sw) == e)
    };

    let prefix_sources: Vec<usize> = (1..=k).filter(|&e| !first.contains(e)).collect();
    let mut window_stayers = Vec::new();
    let mut low_stayers = Vec::new();
    let mut leavers = Vec::new();
    for &e in first.elems().iter().filter(|&&e| e > k) {
        match swap_index(e, |sw| sw.0) {
            Some(i) => leavers.push((i, e)),
            None if e >= window_lo => window_stayers.push(e),
            None => low_stayers.push(e),
        }
    }
    leavers.sort_unstable_by(|a, b| b.cmp(a));
    low_stayers.sort_unstable_by(|a, b| b.cmp(a));
    let prefix_targets: Vec<usize> = window_stayers
        .into_iter()
        .chain(low_stayers)
        .chain(leavers.into_iter().map(|(_, e)| e))
        .collect();

    let mut entrant_sources = Vec::new();
    let mut outside_sources = Vec::new();
    let mut inside_sources = Vec::new();
    for &e in last.elems().iter().filter(|&&e| e < window_lo) {
        match swap_index(e, |sw| sw.1) {
            Some(i) => entrant_sources.push((i, e)),
            None if e > k => outside_sources.push(e),
            None => inside_sources.push(e),
        }
    }
    entrant_sources.sort_unstable_by(|a, b| b.cmp(a));
    outside_sources.sort_unstable();
    inside_sources.sort_unstable();
    let suffix_sources: Vec<usize> = entrant_sources
        .into_iter()
        .map(|(_, e)| e)
        .chain(outside_sources)
        .chain(inside_sources)
        .collect();
    let suffix_targets: Vec<usize> = (window_lo..=n).filter(|&e| !last.contains(e)).collect();
    debug_assert_eq!(prefix_sources.len(), prefix_targets.len());
    debug_assert_eq!(suffix_sources.len(), suffix_targets.len());

    let mut supports = vec![Support::minimum(n, k).expect("parameters were validated")];
    let tail = |supports: &Vec<Support>| supports.last().expect("non-empty").clone();
    for (&x, &t) in prefix_sources.iter().zip(&prefix_targets) {
        supports.push(tail(&supports).swap(x, t).expect("prefix swaps apply"));
    }
    debug_assert_eq!(&tail(&supports), first);
    for &(a, b) in &path.swaps {
        supports.push(tail(&supports).swap(a, b).expect("base swaps apply"));
    }
    debug_assert_eq!(&tail(&supports), last);
    for (&u, &y) in suffix_sources.iter().zip(&suffix_targets) {
        supports.push(tail(&supports).swap(u, y).expect("suffix swaps apply"));
    }
    MonotonePath::new(n, k, supports).expect("the lift is a monotone path")
}

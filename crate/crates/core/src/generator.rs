//! Inductive generation of coherent lattice walks for `k = 2`.
//!
//! A two-dimensional walk is *coherent* when every ordered pair of its steps
//! `(i -> j over a)` before `(x -> y over z)` with `x < j` satisfies `j = z`
//! or `x = a`. Coherent walks on parameter `n + 1` restrict to coherent
//! walks on parameter `n`, and each coherent walk on `n` is recovered by a
//! fixed surgery on its step sequence. The surgery depends only on how the
//! walk ends, which is captured by [`EndingType`]: three children for an
//! [`EndingType::TypeI`] ending, four for [`EndingType::TypeII`], five for
//! [`EndingType::TypeIII`]. Iterating the surgeries from the filtered base
//! level yields every coherent walk exactly once.

use crate::error::{Error, Result};
use crate::hypersimplex::{enumerate_monotone_paths, Direction, EnhancedStep, MonotonePath};
use crate::lattice::{lattice_path_of, LatticePath};

/// One lattice step: the moving coordinate goes `x -> y` while the other
/// coordinate holds `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    x: usize,
    y: usize,
    z: usize,
}

/// How a coherent walk of size `n` ends, together with the data its
/// extension surgeries need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndingType {
    /// The last step is `(x -> n over n-1)`.
    TypeI { x: usize },
    /// The walk ends with `(x -> n over y_1)` followed by the chain
    /// `(y_1 -> y_2 over n), ..., (y_{m-1} -> y_m over n)` with `m >= 3`
    /// and `y_m = n - 1`. `ys` holds `y_1 < ... < y_m`.
    TypeII { x: usize, ys: Vec<usize> },
    /// The walk ends with `(x -> n over y)` followed by `(y -> n-1 over n)`
    /// with `y < n - 1`.
    TypeIII { x: usize, y: usize },
}

fn steps_of(walk: &LatticePath) -> Vec<Step> {
    let points = walk.points();
    let mut steps = Vec::with_capacity(points.len().saturating_sub(1));
    for pair in points.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let moved = (0..from.len())
            .find(|&p| from[p] != to[p])
            .expect("consecutive lattice points differ in one coordinate");
        steps.push(Step {
            x: from[moved],
            y: to[moved],
            z: from[1 - moved],
        });
    }
    steps
}

/// Decides coherence of a two-dimensional lattice walk by scanning all
/// ordered step pairs.
pub fn is_coherent_lattice_path(walk: &LatticePath) -> Result<bool> {
    if walk.k() != 2 {
        return Err(Error::Unsupported(format!(
            "coherence of lattice walks is defined for k = 2, got k = {}",
            walk.k()
        )));
    }
    let steps = steps_of(walk);
    for (i, earlier) in steps.iter().enumerate() {
        for later in &steps[i + 1..] {
            if later.x < earlier.y && earlier.y != later.z && later.x != earlier.z {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Classifies the ending of a coherent walk of size `n >= 4`.
///
/// The trailing maximal run of steps holding `n` determines the tag: no run
/// means the walk ends by entering `n` over `n - 1` (TypeI), a run of one
/// step means a single `(y -> n-1 over n)` ending (TypeIII), and a longer
/// run is the TypeII chain. Size 3 is excluded: the ending taxonomy needs
/// the four values `x < n - 1 < n` plus a chain entry to be distinguishable,
/// and the generation base case handles sizes 3 and 4 by enumeration.
pub fn classify(walk: &LatticePath) -> Result<EndingType> {
    let n = walk.n();
    if walk.k() != 2 {
        return Err(Error::Unsupported(format!(
            "ending types are defined for k = 2, got k = {}",
            walk.k()
        )));
    }
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "ending types are defined for size >= 4, got size {n}"
        )));
    }
    let steps = steps_of(walk);
    let run = steps.iter().rev().take_while(|s| s.z == n).count();
    let fail = |reason: &str| {
        Err(Error::ClassificationError(format!(
            "walk {walk} has no ending type: {reason}"
        )))
    };
    if run == 0 {
        let last = match steps.last() {
            Some(&s) => s,
            None => return fail("the walk has no steps"),
        };
        if last.y != n || last.z != n - 1 {
            return fail("the last step neither enters n over n-1 nor holds n");
        }
        return Ok(EndingType::TypeI { x: last.x });
    }
    if run == steps.len() {
        return fail("every step holds n, but n is not in the start point");
    }
    let entry = steps[steps.len() - run - 1];
    let chain = &steps[steps.len() - run..];
    if entry.y != n || entry.z != chain[0].x {
        return fail("the step entering n does not hold the chain start");
    }
    if chain.last().map(|s| s.y) != Some(n - 1) {
        return fail("the run holding n does not end at n-1");
    }
    if run == 1 {
        let y = chain[0].x;
        if entry.x >= n || y >= n - 1 {
            return fail("a one-step ending needs x < n and y < n-1");
        }
        return Ok(EndingType::TypeIII { x: entry.x, y });
    }
    if entry.x >= n - 1 {
        return fail("a chain ending needs x < n-1");
    }
    let mut ys = Vec::with_capacity(run + 1);
    ys.push(chain[0].x);
    for step in chain {
        if step.x != *ys.last().expect("ys is non-empty") {
            return fail("the run holding n is not a single chain");
        }
        ys.push(step.y);
    }
    Ok(EndingType::TypeII { x: entry.x, ys })
}

fn walk_from_steps(n: usize, steps: &[Step]) -> Result<LatticePath> {
    let enhanced: Vec<EnhancedStep> = steps
        .iter()
        .map(|s| EnhancedStep::new(s.x, s.y, vec![s.z]))
        .collect();
    Ok(lattice_path_of(&MonotonePath::from_steps(n, 2, &enhanced)?))
}

/// Builds all coherent walks of size `n + 1` that restrict to `walk`.
///
/// Each child is assembled literally from the step-set surgery of its case
/// and re-validated as a walk before emission.
pub fn extend(walk: &LatticePath) -> Result<Vec<LatticePath>> {
    let n = walk.n();
    let ending = classify(walk)?;
    let steps = steps_of(walk);
    let last = steps.len() - 1;
    let step = |x, y, z| Step { x, y, z };
    // The children lists below are the twelve case surgeries: each entry
    // rewrites the tail of the step sequence and appends the steps that
    // reach the new top supports {n, n+1}.
    let children: Vec<Vec<Step>> = match ending {
        EndingType::TypeI { x } => vec![
            [&steps[..], &[step(n - 1, n + 1, n)]].concat(),
            [&steps[..], &[step(n, n + 1, n - 1), step(n - 1, n, n + 1)]].concat(),
            [
                &steps[..last],
                &[step(x, n + 1, n - 1), step(n - 1, n, n + 1)],
            ]
            .concat(),
        ],
        EndingType::TypeII { x, ys } => {
            let m = ys.len();
            let trunk = &steps[..steps.len() - m];
            let mut lifted_full = vec![step(x, n + 1, ys[0])];
            for p in 0..m - 1 {
                lifted_full.push(step(ys[p], ys[p + 1], n + 1));
            }
            let mut lifted_short = lifted_full.clone();
            lifted_short.pop();
            lifted_full.push(step(n - 1, n, n + 1));
            lifted_short.push(step(ys[m - 2], n, n + 1));
            vec![
                [&steps[..], &[step(n - 1, n + 1, n)]].concat(),
                [&steps[..last], &[step(ys[m - 2], n + 1, n)]].concat(),
                [trunk, &lifted_full].concat(),
                [trunk, &lifted_short].concat(),
            ]
        }
        EndingType::TypeIII { x, y } => vec![
            [&steps[..], &[step(n - 1, n + 1, n)]].concat(),
            [&steps[..last], &[step(y, n + 1, n)]].concat(),
            [&steps[..last], &[step(n, n + 1, y), step(y, n, n + 1)]].concat(),
            [
                &steps[..last - 1],
                &[
                    step(x, n + 1, y),
                    step(y, n - 1, n + 1),
                    step(n - 1, n, n + 1),
                ],
            ]
            .concat(),
            [&steps[..last - 1], &[step(x, n + 1, y), step(y, n, n + 1)]].concat(),
        ],
    };
    children
        .iter()
        .map(|child| walk_from_steps(n + 1, child))
        .collect()
}

/// Produces every coherent walk of size `n`, in a deterministic order.
///
/// Sizes 3 and 4 are filtered from the full enumeration; larger sizes are
/// the unions of [`extend`] over the previous level. Children of distinct
/// parents are distinct because restriction inverts every surgery, so no
/// deduplication is needed.
pub fn generate_coherent(n: usize) -> Result<Vec<LatticePath>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "coherent walks need n >= 3, got n = {n}"
        )));
    }
    let base = n.min(4);
    let c = Direction::standard(base)?;
    let mut level = Vec::new();
    for path in enumerate_monotone_paths(base, 2, &c)? {
        let walk = lattice_path_of(&path);
        if is_coherent_lattice_path(&walk)? {
            level.push(walk);
        }
    }
    for _ in base..n {
        let mut next = Vec::with_capacity(level.len() * 4);
        for parent in &level {
            next.append(&mut extend(parent)?);
        }
        level = next;
    }
    Ok(level)
}

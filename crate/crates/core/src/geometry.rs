//! Embedding monotone paths into the objective hyperplane.
//!
//! Each monotone path maps to the weighted sum of its edge midpoints, the
//! weight of an edge being its objective gain divided by the total gain.
//! The convex hull of the embedded points over all monotone paths has the
//! coherent paths as its extreme points, so an exact convexity test on the
//! embeddings is a second, geometry-flavored oracle for coherence. Extreme
//! points are detected by exact-rational feasibility: a point is extreme
//! iff it is not a convex combination of the other embedded points.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coherence::is_coherent_lp;
use crate::error::{Error, Result};
use crate::hypersimplex::{for_each_monotone_path, Direction, MonotonePath, Support};
use crate::lp::{is_feasible, Constraint};
use crate::rational::{rat, Rational};

/// An embedded path: exact coordinates plus the path it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedPoint {
    pub coords: Vec<Rational>,
    pub source: MonotonePath,
}

/// Maps a monotone path to the weighted sum of its edge midpoints.
///
/// The weights telescope to one, so the result lies in the hyperplane where
/// the coordinates sum to `k`.
pub fn psi_embed(path: &MonotonePath, c: &Direction) -> Result<EmbeddedPoint> {
    if path.n() != c.n() {
        return Err(Error::InvalidParameter(format!(
            "path on n = {} embedded along a direction on n = {}",
            path.n(),
            c.n()
        )));
    }
    let n = path.n();
    let bottom = Support::minimum(n, path.k())?;
    let top = Support::maximum(n, path.k())?;
    let span = top.weight(c)? - bottom.weight(c)?;
    let mut coords = vec![Rational::zero(); n];
    for pair in path.supports().windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let weight = (to.weight(c)? - from.weight(c)?) / (rat(2) * &span);
        for support in [from, to] {
            for &e in support.elems() {
                coords[e - 1] += &weight;
            }
        }
    }
    debug_assert_eq!(
        coords.iter().sum::<Rational>(),
        rat(path.k() as i64),
        "embedded coordinates of {path} must sum to k"
    );
    Ok(EmbeddedPoint {
        coords,
        source: path.clone(),
    })
}

/// Decides whether `point` is an extreme point of the cloud.
///
/// Entries at the same coordinates as `point` count as the same geometric
/// point, so duplicates never hide extremeness. The test asks for a convex
/// combination of the remaining locations hitting `point` exactly.
pub fn is_extreme(point: &EmbeddedPoint, cloud: &[EmbeddedPoint]) -> Result<bool> {
    let others: Vec<&EmbeddedPoint> = cloud.iter().filter(|q| q.coords != point.coords).collect();
    if others.is_empty() {
        return Ok(true);
    }
    let n = point.coords.len();
    let mut rows = Vec::with_capacity(n + 1);
    for e in 0..n {
        let coeffs = others.iter().map(|q| q.coords[e].clone()).collect();
        rows.push(Constraint::eq(coeffs, point.coords[e].clone()));
    }
    rows.push(Constraint::eq(vec![rat(1); others.len()], rat(1)));
    Ok(!is_feasible(others.len(), rows)?)
}

/// Embeds every monotone path and flags the extreme ones, in enumeration
/// order.
///
/// Every path's extremeness is cross-checked against the coherence verdict
/// of the capture-cone program; any mismatch is an error, since the two
/// oracles decide the same property through unrelated computations.
pub fn embedding_table(
    n: usize,
    k: usize,
    c: &Direction,
    max_paths: u64,
) -> Result<Vec<(MonotonePath, EmbeddedPoint, bool)>> {
    let mut paths = Vec::new();
    let mut overflow = false;
    for_each_monotone_path(n, k, c, &mut |supports: &[Support]| {
        if paths.len() as u64 == max_paths {
            overflow = true;
            return std::ops::ControlFlow::Break(());
        }
        paths.push(MonotonePath::new(n, k, supports.to_vec()).expect("enumerated paths are valid"));
        std::ops::ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::ResourceLimit(format!(
            "more than {max_paths} monotone paths on ({n}, {k})"
        )));
    }
    let embedded: Vec<EmbeddedPoint> = paths
        .iter()
        .map(|p| psi_embed(p, c))
        .collect::<Result<_>>()?;
    // One location can carry several paths; test each location once.
    let mut locations: BTreeMap<&[Rational], Vec<usize>> = BTreeMap::new();
    for (i, point) in embedded.iter().enumerate() {
        locations.entry(&point.coords).or_default().push(i);
    }
    let mut extreme = vec![false; embedded.len()];
    for indices in locations.values() {
        let verdict = is_extreme(&embedded[indices[0]], &embedded)?;
        for &i in indices {
            extreme[i] = verdict;
        }
    }
    for (i, path) in paths.iter().enumerate() {
        let coherent = is_coherent_lp(path, c)?;
        if coherent != extreme[i] {
            return Err(Error::OracleDisagreement(format!(
                "path {path}: extreme = {}, coherent = {coherent}",
                extreme[i]
            )));
        }
    }
    Ok(paths
        .into_iter()
        .zip(embedded)
        .zip(extreme)
        .map(|((p, e), x)| (p, e, x))
        .collect())
}

/// The extreme rows of [`embedding_table`]: one `(path, point)` pair per
/// vertex of the monotone path polytope, in enumeration order.
pub fn mpp_vertices(
    n: usize,
    k: usize,
    c: &Direction,
    max_paths: u64,
) -> Result<Vec<(MonotonePath, EmbeddedPoint)>> {
    Ok(embedding_table(n, k, c, max_paths)?
        .into_iter()
        .filter(|(_, _, extreme)| *extreme)
        .map(|(path, point, _)| (path, point))
        .collect())
}

//! Monotone paths as lattice walks.
//!
//! Reading each vertex of a monotone path as a tuple rather than a set gives
//! a walk in `{1, ..., n}^k` that starts at `(k, k-1, ..., 1)`, changes one
//! coordinate per step, only increases the changed coordinate, and never
//! lands on a diagonal (two equal coordinates). The assignment is a
//! bijection: the coordinate that held the leaving element takes the
//! entering one. This module provides the walk type, both directions of the
//! bijection, the restriction map that prunes a walk on parameter `n + 1`
//! down to parameter `n` when `k = 2`, and a streaming census of all walks.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypersimplex::{for_each_monotone_path, Direction, MonotonePath, Support};

/// A diagonal-avoiding lattice walk equivalent to a monotone path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    n: usize,
    k: usize,
    points: Vec<Vec<usize>>,
}

impl LatticePath {
    pub fn new(n: usize, k: usize, points: Vec<Vec<usize>>) -> Result<Self> {
        // Parameter validation matches the vertex supports of the simplex.
        Support::minimum(n, k)?;
        if points.is_empty() {
            return Err(Error::InvalidLatticePath(
                "a lattice path has at least one point".into(),
            ));
        }
        for point in &points {
            if point.len() != k {
                return Err(Error::InvalidLatticePath(format!(
                    "point ({}) has {} coordinates, expected {k}",
                    join(point),
                    point.len()
                )));
            }
            for &v in point {
                if v < 1 || v > n {
                    return Err(Error::InvalidLatticePath(format!(
                        "coordinate {v} of ({}) is outside 1..={n}",
                        join(point)
                    )));
                }
            }
            let mut sorted = point.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k {
                return Err(Error::InvalidLatticePath(format!(
                    "point ({}) touches a diagonal",
                    join(point)
                )));
            }
        }
        let start: Vec<usize> = (1..=k).rev().collect();
        if points[0] != start {
            return Err(Error::InvalidLatticePath(format!(
                "must start at ({}), found ({})",
                join(&start),
                join(&points[0])
            )));
        }
        let mut top: Vec<usize> = points[points.len() - 1].clone();
        top.sort_unstable();
        let expected_top: Vec<usize> = (n - k + 1..=n).collect();
        if top != expected_top {
            return Err(Error::InvalidLatticePath(format!(
                "must end on the top {k} values, found ({})",
                join(&points[points.len() - 1])
            )));
        }
        for pair in points.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let moved: Vec<usize> = (0..k).filter(|&i| a[i] != b[i]).collect();
            if moved.len() != 1 {
                return Err(Error::InvalidLatticePath(format!(
                    "({}) -> ({}) must change exactly one coordinate",
                    join(a),
                    join(b)
                )));
            }
            let i = moved[0];
            if b[i] <= a[i] {
                return Err(Error::InvalidLatticePath(format!(
                    "({}) -> ({}) must increase the moving coordinate",
                    join(a),
                    join(b)
                )));
            }
        }
        Ok(LatticePath { n, k, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }
}

fn join(point: &[usize]) -> String {
    point
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({})", join(p))?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct LatticePathRepr {
    n: usize,
    k: usize,
    points: Vec<Vec<usize>>,
}

impl Serialize for LatticePath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LatticePathRepr {
            n: self.n,
            k: self.k,
            points: self.points.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = LatticePathRepr::deserialize(deserializer)?;
        LatticePath::new(repr.n, repr.k, repr.points).map_err(serde::de::Error::custom)
    }
}

/// The lattice walk of a monotone path: start at `(k, k-1, ..., 1)` and let
/// each step overwrite the coordinate holding the leaving element with the
/// entering one.
pub fn lattice_path_of(path: &MonotonePath) -> LatticePath {
    let k = path.k();
    let mut current: Vec<usize> = (1..=k).rev().collect();
    let mut points = vec![current.clone()];
    for step in path.enhanced_steps() {
        let idx = current
            .iter()
            .position(|&v| v == step.x)
            .expect("the leaving element is held by some coordinate");
        current[idx] = step.y;
        points.push(current.clone());
    }
    LatticePath {
        n: path.n(),
        k,
        points,
    }
}

/// Inverse of [`lattice_path_of`]: forget coordinate positions.
pub fn path_of_lattice(lattice: &LatticePath) -> MonotonePath {
    let supports: Vec<Support> = lattice
        .points
        .iter()
        .map(|p| Support::new(lattice.n, p.clone()).expect("validated point"))
        .collect();
    MonotonePath::new(lattice.n, lattice.k, supports)
        .expect("a valid lattice walk is a valid monotone path")
}

/// Restriction of a `k = 2` walk from parameter `n` to `n - 1`: cap every
/// coordinate at `n - 1`, repair the final point (which the cap sends onto
/// the diagonal) by keeping the capped coordinate where the previous point
/// already holds it, and collapse the consecutive duplicates the cap left
/// behind.
pub fn restrict(lattice: &LatticePath) -> Result<LatticePath> {
    if lattice.k != 2 {
        return Err(Error::Unsupported(format!(
            "restriction is defined for k = 2, not k = {}",
            lattice.k
        )));
    }
    if lattice.n < 4 {
        return Err(Error::InvalidParameter(format!(
            "restriction needs n >= 4 so the result stays a hypersimplex, got n = {}",
            lattice.n
        )));
    }
    let m = lattice.n - 1;
    let mut points: Vec<Vec<usize>> = lattice
        .points
        .iter()
        .map(|p| p.iter().map(|&v| v.min(m)).collect())
        .collect();

    let r = points.len();
    debug_assert_eq!(points[r - 1], vec![m, m], "the cap folds the top vertex");
    let penultimate = points[r - 2].clone();
    debug_assert_eq!(
        penultimate.iter().filter(|&&v| v == m).count(),
        1,
        "exactly one coordinate of the point before last reaches the cap"
    );
    points[r - 1] = if penultimate[0] == m {
        vec![m, m - 1]
    } else {
        vec![m - 1, m]
    };

    points.dedup();
    Ok(LatticePath::new(m, 2, points).expect("restriction of a valid walk is a valid walk"))
}

/// Totals from streaming every walk of the given parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeCensus {
    pub total: u64,
    /// For `k = 2` only: how many walks finish by moving a coordinate to
    /// `n`, versus finishing by moving one to `n - 1`.
    pub tail_split: Option<(u64, u64)>,
}

/// Counts every diagonal-avoiding walk for `(n, k)` by streaming the
/// canonical enumeration; stops with [`Error::ResourceLimit`] beyond
/// `max_paths` walks.
pub fn count_all_da_paths(n: usize, k: usize, max_paths: u64) -> Result<LatticeCensus> {
    let c = Direction::standard(n)?;
    Support::minimum(n, k)?;
    let mut total = 0u64;
    let mut into_top = 0u64;
    let mut into_second = 0u64;
    let mut exhausted = false;
    for_each_monotone_path(n, k, &c, &mut |supports| {
        if total == max_paths {
            exhausted = true;
            return ControlFlow::Break(());
        }
        total += 1;
        if k == 2 {
            let penultimate = &supports[supports.len() - 2];
            if penultimate.contains(n - 1) {
                into_top += 1;
            } else {
                debug_assert!(penultimate.contains(n));
                into_second += 1;
            }
        }
        ControlFlow::Continue(())
    })?;
    if exhausted {
        return Err(Error::ResourceLimit(format!(
            "census budget of {max_paths} walks exhausted on ({n}, {k})"
        )));
    }
    let tail_split = (k == 2).then_some((into_top, into_second));
    Ok(LatticeCensus { total, tail_split })
}

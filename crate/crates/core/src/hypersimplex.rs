//! Vertices, edges, and monotone paths of the hypersimplex.
//!
//! The hypersimplex with parameters `(n, k)` is the convex hull of all 0/1
//! vectors of length `n` with exactly `k` ones; a vertex is identified with
//! its [`Support`], the k-subset of `1..=n` where the ones sit. Two vertices
//! span an edge exactly when their supports differ by a single swap `x -> y`.
//! Directions are normalized so that `c_1 < c_2 < ... < c_n`; an edge
//! traversed from `x` to `y` then gains weight exactly when `x < y`.
//!
//! A [`MonotonePath`] walks from the minimal vertex `{1..k}` to the maximal
//! vertex `{n-k+1..n}` along weight-increasing edges. Enumeration order is
//! canonical: depth-first, children ordered lexicographically by their
//! `(x, y)` swap.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// A generic linear functional with strictly increasing rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction {
    values: Vec<Rational>,
}

impl Direction {
    /// The standard direction `c = (1, 2, ..., n)`.
    pub fn standard(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "direction needs n >= 2, got n={n}"
            )));
        }
        Ok(Direction {
            values: (1..=n as i64).map(rat).collect(),
        })
    }

    /// Normalizes arbitrary pairwise-distinct values into a direction.
    ///
    /// Returns the sorted direction together with the 1-based source position
    /// of each sorted entry: `sorted[i] = values[source[i] - 1]`. Callers that
    /// relabel vertices must apply the same permutation to supports.
    pub fn from_values(values: Vec<Rational>) -> Result<(Self, Vec<usize>)> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "direction needs n >= 2, got n={}",
                values.len()
            )));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].cmp(&values[b]));
        for pair in order.windows(2) {
            if values[pair[0]] == values[pair[1]] {
                return Err(Error::InvalidParameter(format!(
                    "direction entries must be pairwise distinct; positions {} and {} coincide",
                    pair[0] + 1,
                    pair[1] + 1
                )));
            }
        }
        let sorted = order.iter().map(|&i| values[i].clone()).collect();
        let source = order.iter().map(|&i| i + 1).collect();
        Ok((Direction { values: sorted }, source))
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// The value `c_i`, 1-based.
    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// A vertex of the hypersimplex: a sorted k-subset of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support {
    n: usize,
    elems: Vec<usize>,
}

impl Support {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if elems.first().is_some_and(|&e| e == 0) || elems.last().is_some_and(|&e| e > n) {
            return Err(Error::InvalidSupport(format!(
                "elements must lie in 1..={n}, got {elems:?}"
            )));
        }
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSupport(format!(
                "elements must be distinct, got {elems:?}"
            )));
        }
        Ok(Support { n, elems })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Sum of the direction values over the support.
    pub fn weight(&self, c: &Direction) -> Result<Rational> {
        if c.n() != self.n {
            return Err(Error::InvalidParameter(format!(
                "direction has n={}, support has n={}",
                c.n(),
                self.n
            )));
        }
        Ok(self.elems.iter().map(|&i| c.value(i)).sum())
    }

    /// The support obtained by swapping member `x` for non-member `y`.
    pub fn swap(&self, x: usize, y: usize) -> Result<Self> {
        if !self.contains(x) || self.contains(y) {
            return Err(Error::InvalidSupport(format!(
                "swap {x}->{y} does not apply to {self}"
            )));
        }
        let elems = self
            .elems
            .iter()
            .copied()
            .filter(|&e| e != x)
            .chain(std::iter::once(y))
            .collect();
        Support::new(self.n, elems)
    }

    /// The minimal vertex `{1..k}`.
    pub fn minimum(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Support::new(n, (1..=k).collect())
    }

    /// The maximal vertex `{n-k+1..n}`.
    pub fn maximum(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Support::new(n, (n - k + 1..=n).collect())
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "hypersimplex parameters need n >= 2 and 1 <= k <= n-1, got n={n} k={k}"
        )));
    }
    Ok(())
}

/// One edge step of a path: index `x` leaves, `y` enters, `z` is the common
/// support shared by both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EnhancedStep {
    pub x: usize,
    pub y: usize,
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
}

impl EnhancedStep {
    pub fn new(x: usize, y: usize, mut z: Vec<usize>) -> Self {
        z.sort_unstable();
        EnhancedStep { x, y, z }
    }
}

impl fmt::Display for EnhancedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}->{} over {{", self.x, self.y)?;
        for (i, e) in self.z.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}})")
    }
}

/// A monotone path from the minimal to the maximal vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotonePath {
    n: usize,
    k: usize,
    supports: Vec<Support>,
}

impl MonotonePath {
    /// Validates a full vertex sequence.
    pub fn new(n: usize, k: usize, supports: Vec<Support>) -> Result<Self> {
        check_params(n, k)?;
        if supports.len() < 2 {
            return Err(Error::InvalidStepSequence(
                "a monotone path joins two distinct extreme vertices".into(),
            ));
        }
        if supports[0] != Support::minimum(n, k)? {
            return Err(Error::InvalidStepSequence(format!(
                "path must start at the minimal vertex, got {}",
                supports[0]
            )));
        }
        if supports[supports.len() - 1] != Support::maximum(n, k)? {
            return Err(Error::InvalidStepSequence(format!(
                "path must end at the maximal vertex, got {}",
                supports[supports.len() - 1]
            )));
        }
        for s in &supports {
            if s.n() != n || s.k() != k {
                return Err(Error::InvalidStepSequence(format!(
                    "support {s} does not belong to parameters n={n} k={k}"
                )));
            }
        }
        for pair in supports.windows(2) {
            step_between(&pair[0], &pair[1])?;
        }
        Ok(MonotonePath { n, k, supports })
    }

    /// Rebuilds a path from its step sequence starting at the minimal vertex.
    pub fn from_steps(n: usize, k: usize, steps: &[EnhancedStep]) -> Result<Self> {
        if n < 2 || k == 0 || k > n {
            return Err(Error::InvalidStepSequence(format!(
                "parameters n={n} k={k} admit no monotone path"
            )));
        }
        if k == n {
            return Err(Error::InvalidStepSequence(
                "endpoint mismatch: with k = n the minimal and maximal vertices coincide".into(),
            ));
        }
        let mut current = Support::minimum(n, k)?;
        let mut supports = vec![current.clone()];
        for step in steps {
            if step.x >= step.y {
                return Err(Error::InvalidStepSequence(format!(
                    "step {step} is not weight-increasing"
                )));
            }
            let next = current.swap(step.x, step.y).map_err(|_| {
                Error::InvalidStepSequence(format!("step {step} does not apply at {current}"))
            })?;
            let common: Vec<usize> = current
                .elems()
                .iter()
                .copied()
                .filter(|&e| e != step.x)
                .collect();
            if common != step.z {
                return Err(Error::InvalidStepSequence(format!(
                    "step {step} declares common support {:?} but the path is at {current}",
                    step.z
                )));
            }
            supports.push(next.clone());
            current = next;
        }
        if current != Support::maximum(n, k)? {
            return Err(Error::InvalidStepSequence(format!(
                "endpoint mismatch: path stops at {current}"
            )));
        }
        MonotonePath::new(n, k, supports)
    }

    fn from_validated(n: usize, k: usize, supports: Vec<Support>) -> Self {
        debug_assert!(MonotonePath::new(n, k, supports.clone()).is_ok());
        MonotonePath { n, k, supports }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vertices on the path. Path length is always counted in
    /// vertices, never in edges.
    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    /// The step sequence `(x_i -> y_i over Z_i)` along the path.
    pub fn enhanced_steps(&self) -> Vec<EnhancedStep> {
        self.supports
            .windows(2)
            .map(|pair| step_between(&pair[0], &pair[1]).expect("validated path"))
            .collect()
    }
}

impl fmt::Display for MonotonePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.supports.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct MonotonePathRepr {
    n: usize,
    k: usize,
    supports: Vec<Vec<usize>>,
}

impl Serialize for MonotonePath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MonotonePathRepr {
            n: self.n,
            k: self.k,
            supports: self.supports.iter().map(|s| s.elems().to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonotonePath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MonotonePathRepr::deserialize(deserializer)?;
        let supports = repr
            .supports
            .into_iter()
            .map(|elems| Support::new(repr.n, elems))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MonotonePath::new(repr.n, repr.k, supports).map_err(serde::de::Error::custom)
    }
}

/// The step joining two adjacent supports, or an error if they are not
/// adjacent along a weight-increasing edge.
pub fn step_between(from: &Support, to: &Support) -> Result<EnhancedStep> {
    let leaving: Vec<usize> = from
        .elems()
        .iter()
        .copied()
        .filter(|&e| !to.contains(e))
        .collect();
    let entering: Vec<usize> = to
        .elems()
        .iter()
        .copied()
        .filter(|&e| !from.contains(e))
        .collect();
    if leaving.len() != 1 || entering.len() != 1 {
        return Err(Error::InvalidStepSequence(format!(
            "{from} and {to} are not adjacent"
        )));
    }
    let (x, y) = (leaving[0], entering[0]);
    if x >= y {
        return Err(Error::InvalidStepSequence(format!(
            "edge {from} -> {to} decreases weight"
        )));
    }
    let z = from.elems().iter().copied().filter(|&e| e != x).collect();
    Ok(EnhancedStep::new(x, y, z))
}

/// All weight-increasing neighbors of `s`, sorted lexicographically.
pub fn improving_neighbors(s: &Support, c: &Direction) -> Result<Vec<Support>> {
    if c.n() != s.n() {
        return Err(Error::InvalidParameter(format!(
            "direction has n={}, support has n={}",
            c.n(),
            s.n()
        )));
    }
    let mut out = Vec::new();
    for &x in s.elems() {
        for y in x + 1..=s.n() {
            if !s.contains(y) {
                out.push(s.swap(x, y)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Walks every monotone path in canonical order, visiting each vertex
/// sequence exactly once. The visitor may stop the walk early.
pub fn for_each_monotone_path<F>(n: usize, k: usize, c: &Direction, visit: &mut F) -> Result<()>
where
    F: FnMut(&[Support]) -> ControlFlow<()>,
{
    check_params(n, k)?;
    if c.n() != n {
        return Err(Error::InvalidParameter(format!(
            "direction has n={}, expected {n}",
            c.n()
        )));
    }
    let vmax = Support::maximum(n, k)?;
    let mut trail = vec![Support::minimum(n, k)?];
    let _ = dfs(n, &vmax, &mut trail, visit);
    Ok(())
}

fn dfs<F>(n: usize, vmax: &Support, trail: &mut Vec<Support>, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Support]) -> ControlFlow<()>,
{
    let current = trail.last().expect("trail is never empty").clone();
    if current == *vmax {
        return visit(trail);
    }
    // Children in lexicographic (x, y) swap order: this fixes the canonical
    // path enumeration order.
    for xi in 0..current.k() {
        let x = current.elems()[xi];
        for y in x + 1..=n {
            if current.contains(y) {
                continue;
            }
            trail.push(current.swap(x, y).expect("valid swap"));
            let flow = dfs(n, vmax, trail, visit);
            trail.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Every monotone path from the minimal to the maximal vertex, in canonical
/// order.
pub fn enumerate_monotone_paths(n: usize, k: usize, c: &Direction) -> Result<Vec<MonotonePath>> {
    let mut out = Vec::new();
    for_each_monotone_path(n, k, c, &mut |supports| {
        out.push(MonotonePath::from_validated(n, k, supports.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

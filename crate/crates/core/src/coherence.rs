//! Coherence of monotone paths: capture cones, exact LP certificates, the
//! greedy capture map, and the step-pair criterion.
//!
//! A direction `omega` captures a monotone path when, at every path vertex
//! `v`, the successor on the path is the unique maximizer of the slope
//! `(omega(u) - omega(v)) / (c(u) - c(v))` over all vertices `u` of higher
//! `c`-weight. A path is coherent when some `omega` in the box `[-1, 1]^n`
//! captures it. Quantifier elimination turns this into the capture cone: one
//! homogeneous linear form per (step, competitor) pair, and the path is
//! coherent exactly when some point of the box makes every form strictly
//! positive. A single exact LP decides that, and both the coherent and the
//! incoherent verdict are re-verified from first principles before being
//! returned.

use std::ops::ControlFlow;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypersimplex::{
    for_each_monotone_path, improving_neighbors, step_between, Direction, MonotonePath, Support,
};
use crate::lp::{self, Constraint, Program};
use crate::rational::{format_rational, parse_rational, rat, Rational};

/// One facet normal of a capture cone. The row says: along step `step`, the
/// path's own edge has strictly larger slope than the move toward
/// `competitor`. Coefficients are integral and have no common factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRow {
    /// Index of the step `v_step -> v_{step+1}` the row belongs to.
    pub step: usize,
    /// The competing vertex the step must beat.
    pub competitor: Support,
    pub coeffs: Vec<BigInt>,
}

/// All capture constraints of a path, one row per (step, higher-weight
/// competitor) pair. Rows are kept unreduced and in deterministic order so a
/// certificate can be audited against each one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptureCone {
    n: usize,
    rows: Vec<ConeRow>,
}

impl CaptureCone {
    pub fn new(path: &MonotonePath, c: &Direction) -> Result<Self> {
        if c.n() != path.n() {
            return Err(Error::InvalidParameter(format!(
                "direction has n = {} but the path has n = {}",
                c.n(),
                path.n()
            )));
        }
        let n = path.n();
        let k = path.k();
        let supports = path.supports();
        let weights: Vec<Rational> = supports
            .iter()
            .map(|s| s.weight(c))
            .collect::<Result<_>>()?;

        let mut rows = Vec::new();
        for i in 0..supports.len() - 1 {
            let v = &supports[i];
            let vnext = &supports[i + 1];
            let wv = &weights[i];
            let dw = &weights[i + 1] - wv;
            for elems in (1..=n).combinations(k) {
                let competitor = Support::new(n, elems)?;
                if competitor == *vnext {
                    continue;
                }
                let wj = competitor.weight(c)?;
                if wj <= *wv {
                    continue;
                }
                // a = (w(J) - w(v)) (chi(v') - chi(v)) - (w(v') - w(v)) (chi(J) - chi(v))
                let scale = &wj - wv;
                let mut row = vec![Rational::zero(); n];
                for (t, entry) in row.iter_mut().enumerate() {
                    let idx = t + 1;
                    let dv = (vnext.contains(idx) as i64) - (v.contains(idx) as i64);
                    let dj = (competitor.contains(idx) as i64) - (v.contains(idx) as i64);
                    if dv != 0 {
                        *entry += &scale * rat(dv);
                    }
                    if dj != 0 {
                        *entry -= &dw * rat(dj);
                    }
                }
                let coeffs = primitive(&row);
                let dot: Rational = coeffs
                    .iter()
                    .zip(c.values())
                    .map(|(a, ci)| Rational::from_integer(a.clone()) * ci)
                    .sum();
                assert!(dot.is_zero(), "cone rows are orthogonal to the direction");
                rows.push(ConeRow {
                    step: i,
                    competitor,
                    coeffs,
                });
            }
        }
        Ok(CaptureCone { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[ConeRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Scales a nonzero rational vector to coprime integers, preserving signs.
fn primitive(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|r| r.numer() * &lcm / r.denom()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    assert!(gcd.is_positive(), "capture cone rows are never zero");
    if !gcd.is_one() {
        for v in &mut ints {
            *v /= &gcd;
        }
    }
    ints
}

fn dot(coeffs: &[BigInt], omega: &[Rational]) -> Rational {
    coeffs
        .iter()
        .zip(omega)
        .map(|(a, w)| Rational::from_integer(a.clone()) * w)
        .sum()
}

fn sigma(row: &ConeRow) -> Rational {
    Rational::from_integer(row.coeffs.iter().sum())
}

/// Shift making the all-zero corner of the translated box feasible:
/// `L = max(0, max_j sum(a_j))`.
fn shift(cone: &CaptureCone) -> Rational {
    let mut ell = Rational::zero();
    for row in &cone.rows {
        let s = sigma(row);
        if s > ell {
            ell = s;
        }
    }
    ell
}

/// True when `omega` lies in the box and makes every row at least `delta`.
fn achieves_margin(cone: &CaptureCone, omega: &[Rational], delta: &Rational) -> bool {
    omega.len() == cone.n
        && omega.iter().all(|w| w.abs() <= Rational::one())
        && cone.rows.iter().all(|r| dot(&r.coeffs, omega) >= *delta)
}

/// True when `omega` lies in the box and is strictly inside the cone, i.e.
/// it captures the path the cone was built from.
pub fn omega_captures(cone: &CaptureCone, omega: &[Rational]) -> bool {
    omega.len() == cone.n
        && omega.iter().all(|w| w.abs() <= Rational::one())
        && cone
            .rows
            .iter()
            .all(|r| dot(&r.coeffs, omega).is_positive())
}

/// The box-margin LP in its direct form: maximize `d` subject to
/// `-a_j . u + d <= L - sum(a_j)` and `u_i <= 2` over nonnegative `(u, d)`,
/// where `u = omega + 1` and `d = delta + L`. Kept as a cross-check oracle
/// for the production solver below.
#[cfg(test)]
fn solve_primal(cone: &CaptureCone) -> (Rational, Vec<Rational>) {
    let n = cone.n;
    let ell = shift(cone);
    let mut constraints = Vec::with_capacity(cone.rows.len() + n);
    for row in &cone.rows {
        let mut coeffs: Vec<Rational> = row
            .coeffs
            .iter()
            .map(|a| -Rational::from_integer(a.clone()))
            .collect();
        coeffs.push(rat(1));
        constraints.push(Constraint::le(coeffs, &ell - sigma(row)));
    }
    for i in 0..n {
        let mut coeffs = vec![rat(0); n + 1];
        coeffs[i] = rat(1);
        constraints.push(Constraint::le(coeffs, rat(2)));
    }
    let mut objective = vec![rat(0); n + 1];
    objective[n] = rat(1);
    let program = Program {
        nvars: n + 1,
        objective,
        constraints,
    };
    let solution = lp::solve(&program).expect("well-formed program");
    let opt = solution
        .optimum()
        .expect("the box-margin LP is feasible and bounded")
        .clone();
    let delta = &opt.point[n] - &ell;
    let omega = opt.point[..n].iter().map(|u| u - rat(1)).collect();
    (delta, omega)
}

/// Solves the box-margin LP through its dual, which has only `n + 1` rows
/// regardless of how many cone rows there are. The optimizer of the direct
/// form is read off the dual row prices, then both sides are re-verified
/// exactly: the point certifies `delta* >= delta`, the dual solution
/// certifies `delta* <= delta`.
fn solve_dual(cone: &CaptureCone) -> (Rational, Vec<Rational>) {
    let n = cone.n;
    let m = cone.rows.len();
    let ell = shift(cone);

    // Variables y_j >= 0 (one per cone row) and w_i >= 0 (one per box face):
    // minimize sum beta_j y_j + 2 sum w_i with beta_j = L - sum(a_j), subject
    // to w_i >= sum_j a_{j,i} y_j and sum_j y_j >= 1, stated as maximization.
    let mut objective: Vec<Rational> = cone.rows.iter().map(|r| sigma(r) - &ell).collect();
    objective.extend(std::iter::repeat_n(rat(-2), n));
    let mut constraints = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut coeffs: Vec<Rational> = cone
            .rows
            .iter()
            .map(|r| -Rational::from_integer(r.coeffs[i].clone()))
            .collect();
        let mut wpart = vec![rat(0); n];
        wpart[i] = rat(1);
        coeffs.extend(wpart);
        constraints.push(Constraint::ge(coeffs, rat(0)));
    }
    let mut ones = vec![rat(1); m];
    ones.extend(vec![rat(0); n]);
    constraints.push(Constraint::ge(ones, rat(1)));
    let program = Program {
        nvars: m + n,
        objective,
        constraints,
    };

    let solution = lp::solve(&program).expect("well-formed program");
    let opt = solution
        .optimum()
        .expect("the dual of the box-margin LP is feasible and bounded")
        .clone();

    let omega: Vec<Rational> = opt.row_duals[..n].iter().map(|t| -t - rat(1)).collect();
    let delta = -&opt.row_duals[n] - &ell;

    // The extracted point must meet every row with margin delta.
    assert!(
        achieves_margin(cone, &omega, &delta),
        "extracted optimizer must achieve the optimal margin on every row"
    );
    // The dual solution itself must bound the margin from above by delta:
    // nonnegative, feasible, and with objective value exactly delta + L.
    let y = &opt.point[..m];
    let w = &opt.point[m..];
    assert!(opt.point.iter().all(|v| !v.is_negative()));
    for (i, wi) in w.iter().enumerate().take(n) {
        let pull: Rational = cone
            .rows
            .iter()
            .zip(y)
            .map(|(r, yj)| Rational::from_integer(r.coeffs[i].clone()) * yj)
            .sum();
        assert!(*wi >= pull, "dual solution must dominate each coordinate");
    }
    assert!(y.iter().sum::<Rational>() >= Rational::one());
    let value: Rational = cone
        .rows
        .iter()
        .zip(y)
        .map(|(r, yj)| (&ell - sigma(r)) * yj)
        .sum::<Rational>()
        + w.iter().map(|wi| rat(2) * wi).sum::<Rational>();
    assert_eq!(value, &delta + &ell, "weak duality must close exactly");

    (delta, omega)
}

/// A checkable coherence verdict: `omega` is present exactly when the path
/// is coherent, and then it captures the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub coherent: bool,
    pub omega: Option<Vec<Rational>>,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = 1 + usize::from(self.omega.is_some());
        let mut st = serializer.serialize_struct("Certificate", fields)?;
        st.serialize_field("coherent", &self.coherent)?;
        if let Some(omega) = &self.omega {
            let strings: Vec<String> = omega.iter().map(format_rational).collect();
            st.serialize_field("omega", &strings)?;
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            coherent: bool,
            #[serde(default)]
            omega: Option<Vec<String>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        if repr.coherent != repr.omega.is_some() {
            return Err(D::Error::custom(
                "a certificate carries omega exactly when it is coherent",
            ));
        }
        let omega = match repr.omega {
            None => None,
            Some(strings) => Some(
                strings
                    .iter()
                    .map(|s| parse_rational(s).map_err(D::Error::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()?,
            ),
        };
        Ok(Certificate {
            coherent: repr.coherent,
            omega,
        })
    }
}

/// Coherence verdict together with the optimal box margin: the largest
/// `delta` such that some box point makes every cone row at least `delta`.
/// The margin is `None` when the cone has no rows at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceAnalysis {
    pub margin: Option<Rational>,
    pub certificate: Certificate,
}

/// Decides coherence of `path` for the sweep direction `c` by exact linear
/// programming and returns a self-contained certificate.
pub fn analyze_coherence(path: &MonotonePath, c: &Direction) -> Result<CoherenceAnalysis> {
    let cone = CaptureCone::new(path, c)?;
    if cone.is_empty() {
        // No competitor ever outweighs a path vertex, so any omega works.
        return Ok(CoherenceAnalysis {
            margin: None,
            certificate: Certificate {
                coherent: true,
                omega: Some(vec![rat(0); cone.n]),
            },
        });
    }
    let (delta, omega) = solve_dual(&cone);
    let coherent = delta.is_positive();
    if coherent {
        debug_assert!(omega_captures(&cone, &omega));
    }
    Ok(CoherenceAnalysis {
        margin: Some(delta),
        certificate: Certificate {
            coherent,
            omega: coherent.then_some(omega),
        },
    })
}

/// True when some direction in `[-1, 1]^n` captures the path.
pub fn is_coherent_lp(path: &MonotonePath, c: &Direction) -> Result<bool> {
    Ok(analyze_coherence(path, c)?.certificate.coherent)
}

pub fn coherence_certificate(path: &MonotonePath, c: &Direction) -> Result<Certificate> {
    Ok(analyze_coherence(path, c)?.certificate)
}

/// Follows `omega` greedily from the bottom vertex: at each vertex, move to
/// the improving neighbor of the steepest slope `(omega_y - omega_x) /
/// (c_y - c_x)`. Fails with [`Error::NonGenericOmega`] when two neighbors
/// tie for the steepest slope.
pub fn captured_path(c: &Direction, k: usize, omega: &[Rational]) -> Result<MonotonePath> {
    let n = c.n();
    if omega.len() != n {
        return Err(Error::InvalidParameter(format!(
            "omega has {} entries but the direction has n = {}",
            omega.len(),
            n
        )));
    }
    let vmax = Support::maximum(n, k)?;
    let mut current = Support::minimum(n, k)?;
    let mut supports = vec![current.clone()];
    while current != vmax {
        let neighbors = improving_neighbors(&current, c)?;
        debug_assert!(
            !neighbors.is_empty(),
            "only the top vertex has no improving moves"
        );
        let mut slopes = Vec::with_capacity(neighbors.len());
        for nb in &neighbors {
            let step = step_between(&current, nb)?;
            let rise = &omega[step.y - 1] - &omega[step.x - 1];
            let run = c.value(step.y) - c.value(step.x);
            slopes.push(rise / run);
        }
        let best = slopes.iter().max().expect("nonempty").clone();
        let winners: Vec<usize> = (0..neighbors.len())
            .filter(|&i| slopes[i] == best)
            .collect();
        if winners.len() > 1 {
            return Err(Error::NonGenericOmega {
                vertex: current.to_string(),
                first: neighbors[winners[0]].to_string(),
                second: neighbors[winners[1]].to_string(),
            });
        }
        current = neighbors[winners[0]].clone();
        supports.push(current.clone());
    }
    MonotonePath::new(n, k, supports)
}

/// Looks for a pair of steps violating the pairwise ordering rule: whenever
/// an earlier step `(i -> j over A)` precedes a later step `(x -> y over Z)`
/// with `x < j`, then `j` must still be present (`j` in `Z`) or `x` must
/// already have been present (`x` in `A`). Returns the first violating pair
/// of step indices in scan order.
pub fn criterion_violation(path: &MonotonePath) -> Option<(usize, usize)> {
    let steps = path.enhanced_steps();
    for p in 0..steps.len() {
        for q in (p + 1)..steps.len() {
            let earlier = &steps[p];
            let later = &steps[q];
            if later.x < earlier.y && !later.z.contains(&earlier.y) && !earlier.z.contains(&later.x)
            {
                return Some((p, q));
            }
        }
    }
    None
}

/// The pairwise step criterion. Satisfying it is necessary for coherence for
/// every `k`, and equivalent to coherence when `k <= 2`.
pub fn satisfies_criterion(path: &MonotonePath) -> bool {
    criterion_violation(path).is_none()
}

/// Searches, in canonical enumeration order with the standard direction, for
/// a path that satisfies the pairwise criterion yet is not coherent. Scans
/// `n = k + 1, ..., n_max` and gives up with [`Error::ResourceLimit`] after
/// examining `max_paths` paths in total.
pub fn search_criterion_gap(
    k: usize,
    n_max: usize,
    max_paths: usize,
) -> Result<Option<MonotonePath>> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "the pairwise criterion is exact for k = {k}; a gap requires k >= 3"
        )));
    }
    let mut examined = 0usize;
    for n in (k + 1)..=n_max {
        let c = Direction::standard(n)?;
        let mut found: Option<MonotonePath> = None;
        let mut failure: Option<Error> = None;
        let mut exhausted = false;
        for_each_monotone_path(n, k, &c, &mut |supports| {
            examined += 1;
            if examined > max_paths {
                exhausted = true;
                return ControlFlow::Break(());
            }
            let path = match MonotonePath::new(n, k, supports.to_vec()) {
                Ok(p) => p,
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            };
            if !satisfies_criterion(&path) {
                return ControlFlow::Continue(());
            }
            match is_coherent_lp(&path, &c) {
                Ok(true) => ControlFlow::Continue(()),
                Ok(false) => {
                    found = Some(path);
                    ControlFlow::Break(())
                }
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        if exhausted {
            return Err(Error::ResourceLimit(format!(
                "gap search budget of {max_paths} paths exhausted at n = {n}"
            )));
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

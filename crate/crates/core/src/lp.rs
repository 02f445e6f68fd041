//! Exact rational linear programming by the two-phase simplex method.
//!
//! The solver works entirely over arbitrary-precision rationals, so
//! feasibility and optimality verdicts are exact, never approximate. Pivot
//! selection follows Bland's rule (lowest eligible index for both the
//! entering and leaving variable), which guarantees termination.
//!
//! Conventions: variables are nonnegative, the objective is maximized, and
//! constraints may be `<=`, `>=`, or `=`. Reported row duals satisfy
//! `sum_r dual_r * rhs_r = objective`, with `dual >= 0` on binding `<=` rows
//! and `dual <= 0` on binding `>=` rows.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            sense: Sense::Le,
            rhs,
        }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            sense: Sense::Ge,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            sense: Sense::Eq,
            rhs,
        }
    }
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct Program {
    pub nvars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub struct Optimum {
    pub objective: Rational,
    pub point: Vec<Rational>,
    pub row_duals: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub enum Solution {
    Infeasible,
    Unbounded,
    Optimal(Optimum),
}

impl Solution {
    pub fn optimum(&self) -> Option<&Optimum> {
        match self {
            Solution::Optimal(opt) => Some(opt),
            _ => None,
        }
    }
}

/// Which auxiliary column carries a row's dual value, and with which sign.
#[derive(Debug, Clone, Copy)]
struct DualSource {
    col: usize,
    negate: bool,
}

struct Tableau {
    /// Live rows; each has `cols + 1` entries, the last being the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    /// Columns at or beyond this index are artificial.
    art_start: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Tableau {
    /// One simplex phase under Bland's rule. `costs` has an entry per column;
    /// artificial columns never enter once `ban_artificials` is set.
    fn run(&mut self, costs: &[Rational], ban_artificials: bool) -> PhaseEnd {
        let mut reduced = self.reduced_costs(costs);
        loop {
            let limit = if ban_artificials {
                self.art_start
            } else {
                self.cols
            };
            let entering = (0..limit).find(|&j| reduced[j].is_negative());
            let Some(col) = entering else {
                return PhaseEnd::Optimal;
            };
            let Some(row) = self.leaving_row(col) else {
                return PhaseEnd::Unbounded;
            };
            self.pivot(row, col, &mut reduced);
        }
    }

    /// `reduced[j] = (basis costs) . column_j - costs[j]`; optimal when all
    /// entries are nonnegative.
    fn reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut reduced: Vec<Rational> = costs.iter().map(|c| -c).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate() {
                if !row[j].is_zero() {
                    *r += cb * &row[j];
                }
            }
        }
        reduced
    }

    /// Minimum-ratio row for the entering column, ties broken toward the
    /// smallest basic variable index.
    fn leaving_row(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &row[self.cols] / &row[col];
            let better = match &best {
                None => true,
                Some((bi, br)) => match ratio.cmp(br) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => self.basis[i] < self.basis[*bi],
                    std::cmp::Ordering::Greater => false,
                },
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize, reduced: &mut [Rational]) {
        {
            let p = &mut self.rows[row];
            let inv = p[col].recip();
            for entry in p.iter_mut() {
                if !entry.is_zero() {
                    *entry = &*entry * &inv;
                }
            }
            p[col] = rat(1);
        }
        let pivot_row = self.rows[row].clone();
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == row || other[col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut other[col], rat(0));
            for (entry, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
            other[col] = rat(0);
        }
        if !reduced[col].is_zero() {
            let factor = std::mem::replace(&mut reduced[col], rat(0));
            for (entry, p) in reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
            reduced[col] = rat(0);
        }
        self.basis[row] = col;
    }

    /// Pivots zero-level artificial variables out of the basis; rows whose
    /// artificial cannot leave are redundant and are dropped.
    fn purge_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.art_start {
                i += 1;
                continue;
            }
            debug_assert!(self.rows[i][self.cols].is_zero());
            let col = (0..self.art_start).find(|&j| !self.rows[i][j].is_zero());
            match col {
                Some(col) => {
                    let mut reduced = vec![rat(0); self.cols + 1];
                    self.pivot(i, col, &mut reduced);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

/// Solves the program exactly.
pub fn solve(program: &Program) -> Result<Solution> {
    let n = program.nvars;
    if program.objective.len() != n {
        return Err(Error::InvalidParameter(format!(
            "objective has {} entries, expected {n}",
            program.objective.len()
        )));
    }
    for c in &program.constraints {
        if c.coeffs.len() != n {
            return Err(Error::InvalidParameter(format!(
                "constraint has {} coefficients, expected {n}",
                c.coeffs.len()
            )));
        }
    }

    let m = program.constraints.len();
    // Normalize every row to a nonnegative rhs, and prefer slack form for
    // rows with rhs = 0 so they need no artificial variable.
    let mut coeffs: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut senses: Vec<Sense> = Vec::with_capacity(m);
    let mut negated: Vec<bool> = Vec::with_capacity(m);
    for c in &program.constraints {
        let mut row = c.coeffs.clone();
        let mut b = c.rhs.clone();
        let mut sense = c.sense;
        let mut neg = false;
        if b.is_negative() || (b.is_zero() && sense == Sense::Ge) {
            for e in &mut row {
                *e = -&*e;
            }
            b = -b;
            neg = true;
            sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
        coeffs.push(row);
        rhs.push(b);
        senses.push(sense);
        negated.push(neg);
    }

    // Column layout: structural, then slack/surplus per row, then artificials.
    let mut next = n;
    let mut aux_col: Vec<Option<usize>> = vec![None; m];
    for (i, sense) in senses.iter().enumerate() {
        if matches!(sense, Sense::Le | Sense::Ge) {
            aux_col[i] = Some(next);
            next += 1;
        }
    }
    let art_start = next;
    let mut art_col: Vec<Option<usize>> = vec![None; m];
    for (i, sense) in senses.iter().enumerate() {
        if matches!(sense, Sense::Ge | Sense::Eq) {
            art_col[i] = Some(next);
            next += 1;
        }
    }
    let cols = next;

    let mut dual_source: Vec<DualSource> = Vec::with_capacity(m);
    for i in 0..m {
        let (col, negate) = match senses[i] {
            Sense::Le => (aux_col[i].unwrap(), false),
            Sense::Ge => (aux_col[i].unwrap(), true),
            Sense::Eq => (art_col[i].unwrap(), false),
        };
        dual_source.push(DualSource {
            col,
            negate: negate != negated[i],
        });
    }

    let mut tableau = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        cols,
        art_start,
    };
    for i in 0..m {
        let mut row = vec![rat(0); cols + 1];
        row[..n].clone_from_slice(&coeffs[i]);
        if let Some(j) = aux_col[i] {
            row[j] = if senses[i] == Sense::Le {
                rat(1)
            } else {
                rat(-1)
            };
        }
        if let Some(j) = art_col[i] {
            row[j] = rat(1);
        }
        row[cols] = rhs[i].clone();
        tableau.rows.push(row);
        tableau.basis.push(match senses[i] {
            Sense::Le => aux_col[i].unwrap(),
            _ => art_col[i].unwrap(),
        });
    }

    if art_start < cols {
        // Phase one: maximize minus the sum of artificials.
        let mut costs = vec![rat(0); cols];
        for c in costs.iter_mut().take(cols).skip(art_start) {
            *c = rat(-1);
        }
        match tableau.run(&costs, false) {
            PhaseEnd::Unbounded => unreachable!("phase one objective is bounded above by zero"),
            PhaseEnd::Optimal => {}
        }
        let infeasible = tableau
            .rows
            .iter()
            .zip(&tableau.basis)
            .any(|(row, &b)| b >= art_start && !row[cols].is_zero());
        if infeasible {
            return Ok(Solution::Infeasible);
        }
        tableau.purge_artificials();
    }

    // Phase two: the real objective over structural columns.
    let mut costs = vec![rat(0); cols];
    costs[..n].clone_from_slice(&program.objective);
    if let PhaseEnd::Unbounded = tableau.run(&costs, true) {
        return Ok(Solution::Unbounded);
    }

    let mut point = vec![rat(0); n];
    for (row, &b) in tableau.rows.iter().zip(&tableau.basis) {
        if b < n {
            point[b] = row[tableau.cols].clone();
        }
    }
    let objective: Rational = program
        .objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c * x)
        .sum();

    // Each row's dual is read off the reduced cost of its slack, surplus, or
    // artificial column; rows dropped as redundant land on zero here too.
    let reduced = tableau.reduced_costs(&costs);
    let mut row_duals = vec![rat(0); m];
    for (i, source) in dual_source.iter().enumerate() {
        let mut d = reduced[source.col].clone();
        if source.negate {
            d = -d;
        }
        row_duals[i] = d;
    }

    debug_assert_eq!(
        row_duals
            .iter()
            .zip(&program.constraints)
            .map(|(y, c)| y * &c.rhs)
            .sum::<Rational>(),
        objective,
        "strong duality must hold exactly"
    );

    Ok(Solution::Optimal(Optimum {
        objective,
        point,
        row_duals,
    }))
}

/// True when the constraint system admits any nonnegative solution.
pub fn is_feasible(nvars: usize, constraints: Vec<Constraint>) -> Result<bool> {
    let program = Program {
        nvars,
        objective: vec![rat(0); nvars],
        constraints,
    };
    Ok(!matches!(solve(&program)?, Solution::Infeasible))
}

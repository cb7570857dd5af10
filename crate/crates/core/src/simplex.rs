//! Exact phase-1 simplex for small feasibility systems.
//!
//! Solves `find t >= 0 with sum_j t_j col_j = rhs` over the rationals
//! using a dense tableau and Bland's anti-cycling rule. An infeasible
//! system yields a Farkas vector `y` with `y . col_j <= 0` for every
//! column and `y . rhs > 0`, read off the artificial columns' reduced
//! costs.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

pub(crate) enum FeasibilityOutcome {
    /// Nonnegative weights solving the system exactly.
    Feasible(Vec<Rat>),
    /// Farkas certificate of infeasibility.
    Infeasible(Vec<Rat>),
}

pub(crate) fn solve_feasibility(columns: &[Vec<Rat>], rhs: &[Rat]) -> Result<FeasibilityOutcome> {
    let m = rhs.len();
    let n_cols = columns.len();
    if m == 0 {
        return Err(Error::InvalidInput("empty constraint system".into()));
    }
    for col in columns {
        if col.len() != m {
            return Err(Error::LengthMismatch {
                left: m,
                right: col.len(),
            });
        }
    }

    // Flip rows so the right-hand side is nonnegative.
    let flip: Vec<bool> = rhs.iter().map(Rat::is_negative).collect();
    let signed = |value: &Rat, row: usize| {
        if flip[row] {
            -value.clone()
        } else {
            value.clone()
        }
    };

    // Tableau layout: [original columns | artificials | rhs].
    let total = n_cols + m;
    let mut tableau: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = Vec::with_capacity(total + 1);
            for col in columns {
                row.push(signed(&col[i], i));
            }
            for j in 0..m {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            row.push(signed(&rhs[i], i));
            row
        })
        .collect();

    // Phase-1 objective: minimize the artificial sum. With the
    // artificial basis, the reduced-cost row is c - sum of all rows.
    let mut cost: Vec<Rat> = vec![Rat::zero(); total + 1];
    for c in cost.iter_mut().take(total).skip(n_cols) {
        *c = Rat::one();
    }
    for row in &tableau {
        for (c, value) in cost.iter_mut().zip(row.iter()) {
            *c -= value;
        }
    }
    let mut basis: Vec<usize> = (n_cols..total).collect();

    // Bland: entering = lowest-index column with negative reduced cost.
    while let Some(entering) = (0..total).find(|&j| cost[j].is_negative()) {
        // Ratio test; ties broken by smallest basic variable index.
        let mut pivot_row: Option<usize> = None;
        let mut best_ratio: Option<Rat> = None;
        for r in 0..m {
            if !tableau[r][entering].is_positive() {
                continue;
            }
            let ratio = &tableau[r][total] / &tableau[r][entering];
            let better = match &best_ratio {
                None => true,
                Some(best) => {
                    ratio < *best
                        || (ratio == *best && basis[r] < basis[pivot_row.expect("row set")])
                }
            };
            if better {
                best_ratio = Some(ratio);
                pivot_row = Some(r);
            }
        }
        let Some(r) = pivot_row else {
            return Err(Error::internal("phase-1 objective unbounded"));
        };
        pivot(&mut tableau, &mut cost, r, entering);
        basis[r] = entering;
    }

    // Objective value is the negated cost-row entry under the rhs.
    let objective = -cost[total].clone();
    if objective.is_zero() {
        let mut t = vec![Rat::zero(); n_cols];
        for (r, &var) in basis.iter().enumerate() {
            if var < n_cols {
                t[var] = tableau[r][total].clone();
            }
        }
        if t.iter().any(Rat::is_negative) {
            return Err(Error::internal("negative basic value at optimum"));
        }
        return Ok(FeasibilityOutcome::Feasible(t));
    }

    // y_i = 1 - reduced cost of artificial i, undoing the row flips.
    let y: Vec<Rat> = (0..m)
        .map(|i| {
            let raw = Rat::one() - &cost[n_cols + i];
            if flip[i] {
                -raw
            } else {
                raw
            }
        })
        .collect();
    Ok(FeasibilityOutcome::Infeasible(y))
}

fn pivot(tableau: &mut [Vec<Rat>], cost: &mut [Rat], r: usize, c: usize) {
    let inv = tableau[r][c].recip();
    for cell in tableau[r].iter_mut() {
        *cell *= &inv;
    }
    let pivot_row = tableau[r].clone();
    for (idx, row) in tableau.iter_mut().enumerate() {
        if idx == r || row[c].is_zero() {
            continue;
        }
        let factor = row[c].clone();
        for (cell, p) in row.iter_mut().zip(&pivot_row) {
            *cell -= &factor * p;
        }
    }
    if !cost[c].is_zero() {
        let factor = cost[c].clone();
        for (cell, p) in cost.iter_mut().zip(&pivot_row) {
            *cell -= &factor * p;
        }
    }
}

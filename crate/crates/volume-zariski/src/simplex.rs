//! Exact nonnegative linear solving: given columns `A_1, …, A_n` and a
//! target `d`, find `λ ≥ 0` with `Σ λ_i A_i = d`, or decide none exists.
//! Phase-1 simplex with Bland's rule over exact rationals.

use num::{Signed, Zero};
use picard_lattice::Rat;

/// Finds a nonnegative rational combination of `columns` equal to `target`.
/// Returns the coefficients aligned with `columns`, or `None` when the
/// target is outside the cone they span. All columns and the target must
/// have the same length.
// Pivot updates read row `prow` while mutating row `r` (and the cost row),
// so the inner loops must index rather than iterate.
#[allow(clippy::needless_range_loop)]
pub fn nonnegative_combination(columns: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let m = target.len();
    let n = columns.len();
    assert!(
        columns.iter().all(|c| c.len() == m),
        "column/target length mismatch"
    );

    // Tableau rows: [a_1 … a_n | artificial identity | rhs], with rows
    // flipped so the right-hand side is nonnegative.
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for r in 0..m {
        let flip = target[r].is_negative();
        let sign = if flip { -Rat::one() } else { Rat::one() };
        let mut row: Vec<Rat> = Vec::with_capacity(n + m + 1);
        for c in columns {
            row.push(&c[r] * &sign);
        }
        for j in 0..m {
            row.push(if j == r { Rat::one() } else { Rat::zero() });
        }
        row.push(&target[r] * &sign);
        t.push(row);
    }
    use num::One;

    // Objective: minimise the sum of artificial variables. Reduced costs
    // start as the negated column sums over all rows (cost row of phase 1).
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut cost: Vec<Rat> = vec![Rat::zero(); n + m + 1];
    for row in &t {
        for (j, v) in row.iter().enumerate() {
            cost[j] -= v;
        }
    }
    // Artificial columns have cost 1 each; their reduced costs are 0 now.
    for c in &mut cost[n..n + m] {
        *c += Rat::one();
    }

    // Bland's rule: enter on the smallest index with negative reduced cost.
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        // Ratio test, smallest basis index breaking ties.
        let mut pivot: Option<(usize, Rat)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[n + m] / &row[enter];
                let better = match &pivot {
                    None => true,
                    Some((pr, pv)) => {
                        ratio < *pv || (ratio == *pv && basis[r] < basis[*pr])
                    }
                };
                if better {
                    pivot = Some((r, ratio));
                }
            }
        }
        let (prow, _) = pivot?; // unbounded phase-1 cannot happen, but stay safe
        // Pivot.
        let denom = t[prow][enter].clone();
        for v in t[prow].iter_mut() {
            *v /= &denom;
        }
        for r in 0..m {
            if r != prow && !t[r][enter].is_zero() {
                let factor = t[r][enter].clone();
                for j in 0..n + m + 1 {
                    let delta = &t[prow][j] * &factor;
                    t[r][j] -= delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for j in 0..n + m + 1 {
                let delta = &t[prow][j] * &factor;
                cost[j] -= delta;
            }
        }
        basis[prow] = enter;
    }

    // Feasible iff the phase-1 objective is zero: every artificial variable
    // left in the basis must carry value 0.
    for (r, &b) in basis.iter().enumerate() {
        if b >= n && !t[r][n + m].is_zero() {
            return None;
        }
    }
    let mut lambda = vec![Rat::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            lambda[b] = t[r][n + m].clone();
        }
    }
    debug_assert!(lambda.iter().all(|l| !l.is_negative()));
    Some(lambda)
}

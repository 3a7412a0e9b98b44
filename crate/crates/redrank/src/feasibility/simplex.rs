//! Exact rational feasibility via phase-1 simplex with Bland's rule.
//!
//! Systems built from eigenvalue inequalities have few variables and many
//! rows, most of them slack at any vertex. The driver therefore activates
//! constraints lazily: solve a small subsystem exactly, add the most
//! violated remaining row, repeat. Every answer is certified: a feasible
//! witness is substituted into the full system, and infeasibility of an
//! activated subsystem implies infeasibility of the whole.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::system::{dot, InequalitySystem};

/// Outcome of an exact feasibility test.
#[derive(Debug, Clone)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Exact point satisfying every constraint, when feasible.
    pub witness: Option<Vec<BigRational>>,
}

/// Decide whether the system has a solution, exactly.
pub fn lp_feasible(sys: &InequalitySystem) -> FeasibilityResult {
    let total = sys.inequality_count();
    let mut active: Vec<usize> = Vec::new();

    loop {
        let point = match phase1(sys, &active) {
            Some(p) => p,
            // A subsystem is already infeasible.
            None => {
                return FeasibilityResult {
                    feasible: false,
                    witness: None,
                }
            }
        };

        // Most violated inactive row; ties broken by index.
        let mut worst: Option<(usize, BigRational)> = None;
        for idx in 0..total {
            if active.contains(&idx) {
                continue;
            }
            let (row, rhs) = &sys.inequalities()[idx];
            let excess = dot(row, &point) - rhs;
            if excess.is_positive() {
                let beat = match &worst {
                    Some((_, best)) => excess > *best,
                    None => true,
                };
                if beat {
                    worst = Some((idx, excess));
                }
            }
        }

        match worst {
            Some((idx, _)) => active.push(idx),
            None => {
                let violated = sys.violations(&point);
                assert!(
                    violated.is_empty(),
                    "exact witness failed substitution: {violated:?}"
                );
                return FeasibilityResult {
                    feasible: true,
                    witness: Some(point),
                };
            }
        }
    }
}

/// Phase-1 simplex on the equalities plus the activated inequalities.
/// Returns an exact solution of that subsystem, or None if it is infeasible.
fn phase1(sys: &InequalitySystem, active: &[usize]) -> Option<Vec<BigRational>> {
    let nv = sys.vars();
    let zero = BigRational::zero;
    let one = BigRational::one;

    // Free variables split as c = u - w; one slack per activated inequality.
    // Column layout: [u_0..u_nv) [w_0..w_nv) [slacks) [artificials).
    let n_slack = active.len();
    let rows: Vec<(Vec<BigRational>, BigRational, bool)> = sys
        .equalities()
        .iter()
        .map(|(r, b)| (r.clone(), b.clone(), true))
        .chain(active.iter().map(|&i| {
            let (r, b) = &sys.inequalities()[i];
            (r.clone(), b.clone(), false)
        }))
        .collect();
    let n_rows = rows.len();
    if n_rows == 0 {
        return Some(vec![zero(); nv]);
    }

    let base_cols = 2 * nv + n_slack;
    // Artificial columns are appended per row that needs one.
    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(n_rows);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(n_rows);
    let mut basis: Vec<usize> = Vec::with_capacity(n_rows);
    let mut n_artificial = 0usize;

    let mut slack_seen = 0usize;
    for (row, b, is_eq) in rows {
        let mut t = vec![zero(); base_cols];
        for (j, coeff) in row.iter().enumerate() {
            t[j] = coeff.clone();
            t[nv + j] = -coeff.clone();
        }
        let slack_col = if is_eq {
            None
        } else {
            let col = 2 * nv + slack_seen;
            slack_seen += 1;
            t[col] = one();
            Some(col)
        };
        let mut b = b;
        if b.is_negative() {
            for v in t.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        // Slack serves as the initial basic variable only if its
        // coefficient stayed +1 after sign normalization.
        let basic = match slack_col {
            Some(col) if t[col].is_one() => col,
            _ => {
                n_artificial += 1;
                usize::MAX // patched below once artificial columns exist
            }
        };
        tableau.push(t);
        rhs.push(b);
        basis.push(basic);
    }

    let total_cols = base_cols + n_artificial;
    let mut next_art = base_cols;
    for (i, row) in tableau.iter_mut().enumerate() {
        row.resize(total_cols, zero());
        if basis[i] == usize::MAX {
            row[next_art] = one();
            basis[i] = next_art;
            next_art += 1;
        }
    }

    // Reduced costs for min(sum of artificials): r_j = c_j - sum of
    // artificial-basic rows at column j. The value cell carries -w so the
    // usual row operations keep it in sync; feasible means w reaches 0.
    let mut obj = vec![zero(); total_cols];
    let mut obj_val = zero();
    for cost in obj.iter_mut().skip(base_cols) {
        *cost = one();
    }
    for i in 0..n_rows {
        if basis[i] >= base_cols {
            for j in 0..total_cols {
                let v = tableau[i][j].clone();
                obj[j] -= v;
            }
            obj_val -= rhs[i].clone();
        }
    }

    loop {
        // Bland: smallest-index entering column with negative reduced cost;
        // artificials never re-enter.
        let entering = (0..base_cols).find(|&j| obj[j].is_negative());
        let Some(col) = entering else { break };

        // Ratio test; Bland tie-break on the basic variable index.
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..n_rows {
            if tableau[i][col].is_positive() {
                let ratio = &rhs[i] / &tableau[i][col];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase-1 objective is bounded below by zero");

        // Normalize pivot row, eliminate the column elsewhere.
        let pivot = tableau[pivot_row][col].clone();
        for v in tableau[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        rhs[pivot_row] /= &pivot;
        let pivot_cols = tableau[pivot_row].clone();
        let pivot_rhs = rhs[pivot_row].clone();
        for i in 0..n_rows {
            if i == pivot_row || tableau[i][col].is_zero() {
                continue;
            }
            let factor = tableau[i][col].clone();
            for (cell, p) in tableau[i].iter_mut().zip(&pivot_cols) {
                *cell -= &factor * p;
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
        if !obj[col].is_zero() {
            let factor = obj[col].clone();
            for (cell, p) in obj.iter_mut().zip(&pivot_cols) {
                *cell -= &factor * p;
            }
            obj_val -= &factor * &pivot_rhs;
        }
        basis[pivot_row] = col;
    }

    if !obj_val.is_zero() {
        return None;
    }

    // Read the witness: c_j = u_j - w_j from basic values.
    let value = |col: usize| -> BigRational {
        basis
            .iter()
            .position(|&b| b == col)
            .map(|i| rhs[i].clone())
            .unwrap_or_else(zero)
    };
    Some((0..nv).map(|j| value(j) - value(nv + j)).collect())
}

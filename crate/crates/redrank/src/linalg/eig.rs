//! Cyclic Jacobi diagonalization for dense complex Hermitian matrices.
//!
//! Each rotation factors as a phase that makes the (p,q) pivot real followed
//! by a classical symmetric Schur rotation. Sweeps run until the off-diagonal
//! Frobenius norm drops below a fraction of the matrix norm. Quadratic
//! convergence makes a handful of sweeps enough at the dimensions this crate
//! touches.

use num_complex::Complex64 as C64;

use super::matrix::ComplexMatrix;

/// Eigenvalues (decreasing) with the matching unitary of eigenvectors.
///
/// `vectors` has eigenvectors as columns: `H = V diag(values) V*`. Equal
/// eigenvalues keep the order the sweeps produced; nothing downstream relies
/// on the basis chosen inside a degenerate eigenspace.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Diagonalize a Hermitian matrix.
///
/// `eig_tol` bounds the relative off-diagonal norm at convergence. The input
/// is symmetrized first so that roundoff-level asymmetry cannot leak into the
/// rotations.
pub fn eig_hermitian(h: &ComplexMatrix, eig_tol: f64) -> EigDecomposition {
    assert!(h.is_square(), "eigendecomposition needs a square matrix");
    let n = h.rows();
    let mut a = h.hermitize();
    let mut u = ComplexMatrix::identity(n);

    if n > 1 {
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        // Tighter than the promised tolerance; the final sweep overshoots.
        let target = eig_tol * 0.1 * scale;
        const MAX_SWEEPS: usize = 60;
        for _ in 0..MAX_SWEEPS {
            if off_norm(&a) <= target {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut u, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // Stable by eigenvalue, descending; ties keep sweep order.
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    EigDecomposition { values, vectors }
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating A[p][q].
fn rotate(a: &mut ComplexMatrix, u: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a[(p, q)];
    let b = beta.norm();
    if b == 0.0 {
        return;
    }
    let phase = beta / b; // e^{i phi}
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;

    let tau = (gamma - alpha) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J restricted to the (p,q) plane:
    //   [ c          s         ]
    //   [-s conj(ph) c conj(ph)]
    let n = a.rows();
    let ph_c = phase.conj();

    // A <- A J  (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * (ph_c * s);
        a[(k, q)] = akp * s + akq * (ph_c * c);
    }
    // A <- J* A  (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * (phase * s);
        a[(q, k)] = apk * s + aqk * (phase * c);
    }
    // Pivot is annihilated by construction; write the exact zeros.
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    // U <- U J
    for k in 0..n {
        let ukp = u[(k, p)];
        let ukq = u[(k, q)];
        u[(k, p)] = ukp * c - ukq * (ph_c * s);
        u[(k, q)] = ukp * s + ukq * (ph_c * c);
    }
}

/// Number of eigenvalues with magnitude above `tol`.
pub fn rank_eps_matrix(h: &ComplexMatrix, tol: f64, eig_tol: f64) -> usize {
    assert!(tol > 0.0);
    eig_hermitian(h, eig_tol)
        .values
        .iter()
        .filter(|v| v.abs() > tol)
        .count()
}

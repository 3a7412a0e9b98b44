//! Golden data shared by the integration suites: a 6x6 reference state
//! with known marginals and a known exact certificate, in both factor
//! orders.
//!
//! `RHO_32_TWELFTHS` is laid out with the 3-dimensional factor major (its
//! block traces give the 3x3 marginal); `RHO_23_TWELFTHS` is the same
//! state reindexed to the (2,3) split. The swap test pins the two forms
//! against each other.

#![allow(dead_code)]

use redrank::linalg::{ComplexMatrix, DensityMatrix};
use redrank::Tolerances;

/// Reference state in units of 1/12, factor order (3,2).
pub const RHO_32_TWELFTHS: [[f64; 6]; 6] = [
    [3.0, -2.0, 1.0, 1.0, 2.0, -1.0],
    [-2.0, 2.0, 0.0, 0.0, -2.0, 2.0],
    [1.0, 0.0, 1.0, 1.0, 0.0, 1.0],
    [1.0, 0.0, 1.0, 1.0, 0.0, 1.0],
    [2.0, -2.0, 0.0, 0.0, 2.0, -2.0],
    [-1.0, 2.0, 1.0, 1.0, -2.0, 3.0],
];

/// The same state with the 2-dimensional factor major (split (2,3)).
pub const RHO_23_TWELFTHS: [[f64; 6]; 6] = [
    [3.0, 1.0, 2.0, -2.0, 1.0, -1.0],
    [1.0, 1.0, 0.0, 0.0, 1.0, 1.0],
    [2.0, 0.0, 2.0, -2.0, 0.0, -2.0],
    [-2.0, 0.0, -2.0, 2.0, 0.0, 2.0],
    [1.0, 1.0, 0.0, 0.0, 1.0, 1.0],
    [-1.0, 1.0, -2.0, 2.0, 1.0, 3.0],
];

pub const SIGMA1_TWELFTHS: [[f64; 2]; 2] = [[6.0, -3.0], [-3.0, 6.0]];

pub const SIGMA2_TWELFTHS: [[f64; 3]; 3] = [[5.0, 1.0, 4.0], [1.0, 2.0, 1.0], [4.0, 1.0, 5.0]];

pub fn matrix_from_twelfths<const N: usize>(rows: &[[f64; N]; N]) -> ComplexMatrix {
    let entries: Vec<f64> = rows.iter().flatten().map(|&x| x / 12.0).collect();
    ComplexMatrix::from_real(N, N, &entries).unwrap()
}

pub fn golden_rho_32(tols: &Tolerances) -> DensityMatrix {
    DensityMatrix::from_matrix_split(matrix_from_twelfths(&RHO_32_TWELFTHS), 3, 2, tols).unwrap()
}

pub fn golden_rho_23(tols: &Tolerances) -> DensityMatrix {
    DensityMatrix::from_matrix_split(matrix_from_twelfths(&RHO_23_TWELFTHS), 2, 3, tols).unwrap()
}

pub fn golden_sigma1(tols: &Tolerances) -> DensityMatrix {
    DensityMatrix::from_matrix(matrix_from_twelfths(&SIGMA1_TWELFTHS), tols).unwrap()
}

pub fn golden_sigma2(tols: &Tolerances) -> DensityMatrix {
    DensityMatrix::from_matrix(matrix_from_twelfths(&SIGMA2_TWELFTHS), tols).unwrap()
}

/// lambda(sigma1) = (3/4, 1/4) exactly.
pub const SIGMA1_EIGS: [f64; 2] = [0.75, 0.25];

/// lambda(sigma2) = ((11+sqrt(57))/24, (11-sqrt(57))/24, 1/12).
pub fn sigma2_eigs() -> [f64; 3] {
    let s = 57f64.sqrt();
    [(11.0 + s) / 24.0, (11.0 - s) / 24.0, 1.0 / 12.0]
}

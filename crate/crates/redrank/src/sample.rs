//! Random instances for tests, benches, and stochastic cross-checks:
//! Ginibre vectors, Haar-ish unitaries, random density matrices, and exact
//! rational spectra.

use num_complex::Complex64 as C64;
use num_rational::BigRational;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{vec_inner, vec_norm, vec_scale, ComplexMatrix, DensityMatrix, Spectrum};
use crate::rational::ratio;
use crate::tol::Tolerances;

/// Complex standard-Gaussian vector.
pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<C64> {
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im)
        })
        .collect()
}

/// Complex standard-Gaussian matrix.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_entries(rows, cols, random_vector(rng, rows * cols)).unwrap()
}

/// Random Hermitian matrix (A + A*)/2 with Gaussian A.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    a.add(&a.adjoint()).scale_re(0.5)
}

/// Unitary from Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = random_vector(rng, n);
        for c in &cols {
            let proj = vec_inner(c, &v);
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let norm = vec_norm(&v);
        if norm > 1e-8 {
            cols.push(vec_scale(&v, C64::new(1.0 / norm, 0.0)));
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Full-rank random density matrix A A* / tr(A A*).
pub fn random_density<R: Rng>(rng: &mut R, n: usize, tols: &Tolerances) -> DensityMatrix {
    random_density_with_rank(rng, n, n, tols)
}

/// Random density matrix of rank exactly `r` (almost surely).
pub fn random_density_with_rank<R: Rng>(
    rng: &mut R,
    n: usize,
    r: usize,
    tols: &Tolerances,
) -> DensityMatrix {
    assert!(r >= 1 && r <= n);
    let a = random_matrix(rng, n, r);
    let g = a.mul(&a.adjoint());
    let tr = g.trace().re;
    DensityMatrix::from_matrix(g.scale_re(1.0 / tr).hermitize(), tols)
        .expect("normalized Gram matrix is a state")
}

/// Random exact rational spectrum of length `n` summing to exactly 1,
/// with denominators bounded by `n * max_part`.
pub fn random_rational_spectrum<R: Rng>(rng: &mut R, n: usize, max_part: u64) -> Spectrum {
    loop {
        let parts: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_part)).collect();
        let total: u64 = parts.iter().sum();
        if total == 0 {
            continue;
        }
        let vals: Vec<BigRational> = parts
            .iter()
            .map(|&p| ratio(p as i64, total as i64))
            .collect();
        return Spectrum::from_rationals(vals);
    }
}

/// Random exact rational spectrum with all entries strictly positive.
pub fn random_full_rank_rational_spectrum<R: Rng>(
    rng: &mut R,
    n: usize,
    max_part: u64,
) -> Spectrum {
    loop {
        let s = random_rational_spectrum(rng, n, max_part);
        if s.rank(0.0) == n {
            return s;
        }
    }
}

//! Bipartite structure: partial traces, matricization, Schmidt form, the
//! system swap, and local unitary conjugation.
//!
//! Index convention throughout: C^m (x) C^n is flattened with the first
//! factor major, so the basis vector e_i (x) e_j sits at index i*n + j
//! (0-based) and an mn x mn operator is an m x m grid of n x n blocks.
//! Under this layout, for W = `[w]` the m x n matricization of w,
//!   tr_2(w w*) = W W*   and   tr_1(w w*) = W^t conj(W).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

use super::eig::eig_hermitian;
use super::matrix::{vec_norm, vec_scale, vec_tensor, ComplexMatrix};
use super::states::{DensityMatrix, HermitianMatrix};

/// Sum of the m diagonal n x n blocks: the marginal on the second factor.
pub fn trace_out_first(mat: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    check_split(mat, m, n)?;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..m {
        for p in 0..n {
            for q in 0..n {
                out[(p, q)] += mat[(i * n + p, i * n + q)];
            }
        }
    }
    Ok(out)
}

/// Matrix of block traces: the marginal on the first factor.
pub fn trace_out_second(mat: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    check_split(mat, m, n)?;
    let mut out = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..n {
                acc += mat[(i * n + p, j * n + p)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

fn check_split(mat: &ComplexMatrix, m: usize, n: usize) -> Result<()> {
    if !mat.is_square() || mat.rows() != m * n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, split ({m},{n}) needs {}x{}",
            mat.rows(),
            mat.cols(),
            m * n,
            m * n
        )));
    }
    Ok(())
}

impl DensityMatrix {
    /// tr_1: marginal on the second subsystem (an n x n state).
    pub fn partial_trace_1(&self) -> Result<HermitianMatrix> {
        let (m, n) = self.require_split()?;
        Ok(HermitianMatrix::new_unchecked(trace_out_first(
            self.matrix(),
            m,
            n,
        )?))
    }

    /// tr_2: marginal on the first subsystem (an m x m state).
    pub fn partial_trace_2(&self) -> Result<HermitianMatrix> {
        let (m, n) = self.require_split()?;
        Ok(HermitianMatrix::new_unchecked(trace_out_second(
            self.matrix(),
            m,
            n,
        )?))
    }
}

/// Reshape w in C^{mn} into the m x n matrix whose i-th row is the i-th
/// block of w.
pub fn matricize(w: &[C64], m: usize, n: usize) -> Result<ComplexMatrix> {
    if w.len() != m * n {
        return Err(Error::Dimension(format!(
            "vector of length {} cannot reshape to {m}x{n}",
            w.len()
        )));
    }
    ComplexMatrix::from_entries(m, n, w.to_vec())
}

/// Row-major flattening; inverse of [`matricize`].
pub fn vectorize(mat: &ComplexMatrix) -> Vec<C64> {
    mat.entries().to_vec()
}

/// One Schmidt term: weight and the two unit factors.
#[derive(Debug, Clone)]
pub struct SchmidtTerm {
    pub weight: f64,
    pub left: Vec<C64>,
    pub right: Vec<C64>,
}

impl SchmidtTerm {
    /// The product vector weight * left (x) right.
    pub fn vector(&self) -> Vec<C64> {
        vec_scale(
            &vec_tensor(&self.left, &self.right),
            C64::new(self.weight, 0.0),
        )
    }
}

/// Schmidt decomposition w = sum_j s_j x_j (x) y_j with s_1 >= s_2 >= ... > 0
/// and orthonormal factor families.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub terms: Vec<SchmidtTerm>,
    pub m: usize,
    pub n: usize,
}

impl SchmidtForm {
    /// Number of terms = Schmidt rank of the vector.
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    /// Rebuild sum_j s_j x_j (x) y_j.
    pub fn reconstruct(&self) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.m * self.n];
        for t in &self.terms {
            for (o, v) in out.iter_mut().zip(t.vector()) {
                *o += v;
            }
        }
        out
    }
}

/// Schmidt form of a nonzero vector in C^m (x) C^n.
///
/// Computed through the Gram matrix of the smaller side of `[w]`; singular
/// values at or below `sv_cutoff` are dropped. With W = sum s_j x_j y_j^t,
/// the right factors satisfy y_j = W^t conj(x_j) / s_j, which is exactly the
/// pairing that makes tr_1(w w*) = sum s_j^2 y_j y_j*.
pub fn schmidt(w: &[C64], m: usize, n: usize, tols: &Tolerances) -> Result<SchmidtForm> {
    if vec_norm(w) == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mat = matricize(w, m, n)?;
    let use_left = m <= n;
    // Gram matrix of the smaller factor.
    let gram = if use_left {
        mat.mul(&mat.adjoint())
    } else {
        mat.adjoint().mul(&mat)
    };
    let eig = eig_hermitian(&gram, tols.eig_tol);

    let mut terms = Vec::new();
    for (j, &lambda) in eig.values.iter().enumerate() {
        let s = lambda.max(0.0).sqrt();
        if s <= tols.sv_cutoff {
            break; // eigenvalues are sorted
        }
        if use_left {
            let x = eig.vectors.column(j);
            // y = W^t conj(x) / s
            let y = mat
                .transpose()
                .matvec(&x.iter().map(|z| z.conj()).collect::<Vec<_>>());
            terms.push(SchmidtTerm {
                weight: s,
                left: x,
                right: vec_scale(&y, C64::new(1.0 / s, 0.0)),
            });
        } else {
            // Gram is W* W: eigenvectors v give y = conj(v), x = W conj(y)/s.
            let v = eig.vectors.column(j);
            let y: Vec<C64> = v.iter().map(|z| z.conj()).collect();
            let x = mat.matvec(&y.iter().map(|z| z.conj()).collect::<Vec<_>>());
            terms.push(SchmidtTerm {
                weight: s,
                left: vec_scale(&x, C64::new(1.0 / s, 0.0)),
                right: y,
            });
        }
    }
    Ok(SchmidtForm { terms, m, n })
}

/// Permutation index map realizing the factor swap (m,n) -> (n,m):
/// position of e_i (x) e_j goes to the position of e_j (x) e_i.
fn swap_index(idx: usize, m: usize, n: usize) -> usize {
    let (i, j) = (idx / n, idx % n);
    debug_assert!(i < m);
    j * m + i
}

/// Conjugate by the commutation permutation: exchanges the two factors, so
/// the partial traces swap roles. Pure index arithmetic, no floating error.
pub fn swap_systems(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let (m, n) = rho.require_split()?;
    let d = m * n;
    let mat = rho.matrix();
    let mut out = ComplexMatrix::zeros(d, d);
    for p in 0..d {
        let sp = swap_index(p, m, n);
        for q in 0..d {
            out[(sp, swap_index(q, m, n))] = mat[(p, q)];
        }
    }
    Ok(DensityMatrix::new_unchecked(out, Some((n, m))))
}

/// Swap the factors of a single vector in C^m (x) C^n.
pub fn swap_vector(w: &[C64], m: usize, n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); m * n];
    for (idx, &z) in w.iter().enumerate() {
        out[swap_index(idx, m, n)] = z;
    }
    out
}

/// The swap permutation as an explicit mn x mn matrix P, so that the swapped
/// state is P rho P^T.
pub fn swap_permutation_matrix(m: usize, n: usize) -> ComplexMatrix {
    let d = m * n;
    let mut p = ComplexMatrix::zeros(d, d);
    for old in 0..d {
        p[(swap_index(old, m, n), old)] = C64::new(1.0, 0.0);
    }
    p
}

/// Apply (U (x) V) to a vector without forming the Kronecker product:
/// `[(U (x) V) w]` = U `[w]` V^t.
pub fn apply_local_to_vector(w: &[C64], u: &ComplexMatrix, v: &ComplexMatrix) -> Result<Vec<C64>> {
    let (m, n) = (u.rows(), v.rows());
    let mat = matricize(w, m, n)?;
    Ok(vectorize(&u.mul(&mat).mul(&v.transpose())))
}

/// Conjugate a bipartite state by a local unitary pair:
/// rho -> (U (x) V) rho (U (x) V)*.
///
/// Maps states with marginals (s1, s2) to states with marginals
/// (U s1 U*, V s2 V*), preserving the spectrum.
pub fn conjugate_local(
    rho: &DensityMatrix,
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    tols: &Tolerances,
) -> Result<DensityMatrix> {
    let (m, n) = rho.require_split()?;
    if u.rows() != m || v.rows() != n {
        return Err(Error::Dimension(format!(
            "local unitaries {}x{} and {}x{} do not match split ({m},{n})",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    for w in [u, v] {
        let dev = w.unitary_deviation();
        if dev > tols.unit_tol {
            return Err(Error::NotUnitary(dev));
        }
    }
    let k = u.kron(v);
    let out = k.mul(rho.matrix()).mul(&k.adjoint()).hermitize();
    Ok(DensityMatrix::new_unchecked(out, Some((m, n))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{basis_vector, vec_inner};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn matricize_layout() {
        let w: Vec<C64> = (1..=6).map(|k| C64::new(k as f64, 0.0)).collect();
        let mat = matricize(&w, 2, 3).unwrap();
        assert_eq!(mat[(0, 0)].re, 1.0);
        assert_eq!(mat[(0, 2)].re, 3.0);
        assert_eq!(mat[(1, 0)].re, 4.0);
        assert_eq!(vectorize(&mat), w);
        assert!(matricize(&w, 3, 3).is_err());
    }

    #[test]
    fn matricize_of_basis_tensor_is_unit_matrix() {
        let w = vec_tensor(&basis_vector(2, 0), &basis_vector(3, 2));
        let mat = matricize(&w, 2, 3).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                let want = if (i, j) == (0, 2) { 1.0 } else { 0.0 };
                assert_eq!(mat[(i, j)].re, want);
            }
        }
    }

    #[test]
    fn partial_traces_of_product_state() {
        let t = tols();
        let s1 = DensityMatrix::from_diag(&[0.75, 0.25], &t).unwrap();
        let s2 = DensityMatrix::from_diag(&[0.5, 0.3, 0.2], &t).unwrap();
        let rho = DensityMatrix::product(&s1, &s2);
        let tr1 = rho.partial_trace_1().unwrap();
        let tr2 = rho.partial_trace_2().unwrap();
        assert!(tr1.matrix().approx_eq(s2.matrix(), 1e-14));
        assert!(tr2.matrix().approx_eq(s1.matrix(), 1e-14));
    }

    #[test]
    fn partial_traces_of_maximally_mixed() {
        let t = tols();
        let rho = DensityMatrix::maximally_mixed(4, &t)
            .with_split(2, 2)
            .unwrap();
        let tr1 = rho.partial_trace_1().unwrap();
        let half_i = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(tr1.matrix().approx_eq(&half_i, 1e-15));
    }

    #[test]
    fn partial_trace_of_pure_basis_state() {
        let t = tols();
        let w = vec_tensor(&basis_vector(2, 0), &basis_vector(2, 1));
        let rho = DensityMatrix::from_matrix_split(ComplexMatrix::outer(&w, &w), 2, 2, &t).unwrap();
        let tr2 = rho.partial_trace_2().unwrap();
        let mut e11 = ComplexMatrix::zeros(2, 2);
        e11[(0, 0)] = C64::new(1.0, 0.0);
        assert!(tr2.matrix().approx_eq(&e11, 1e-15));
    }

    #[test]
    fn gram_identities_for_random_vectors() {
        // tr_2(ww*) = W W*  and  tr_1(ww*) = W^t conj(W), computed both ways.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(m, n) in &[(2usize, 3usize), (3, 3), (3, 4)] {
            let w = sample::random_vector(&mut rng, m * n);
            let ww = ComplexMatrix::outer(&w, &w);
            let mat = matricize(&w, m, n).unwrap();
            let lhs2 = trace_out_second(&ww, m, n).unwrap();
            let rhs2 = mat.mul(&mat.adjoint());
            assert!(lhs2.approx_eq(&rhs2, 1e-12));
            let lhs1 = trace_out_first(&ww, m, n).unwrap();
            let rhs1 = mat.transpose().mul(&mat.conj());
            assert!(lhs1.approx_eq(&rhs1, 1e-12));
        }
    }

    #[test]
    fn partial_traces_are_linear_and_trace_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (m, n) = (2, 3);
        let a = sample::random_hermitian(&mut rng, m * n);
        let b = sample::random_hermitian(&mut rng, m * n);
        let combo = a.scale_re(0.3).add(&b.scale_re(-1.7));
        let lhs = trace_out_first(&combo, m, n).unwrap();
        let rhs = trace_out_first(&a, m, n)
            .unwrap()
            .scale_re(0.3)
            .add(&trace_out_first(&b, m, n).unwrap().scale_re(-1.7));
        assert!(lhs.approx_eq(&rhs, 1e-12));
        for mat in [&a, &b, &combo] {
            let t0 = mat.trace();
            let t1 = trace_out_first(mat, m, n).unwrap().trace();
            let t2 = trace_out_second(mat, m, n).unwrap().trace();
            assert!((t0 - t1).norm() < 1e-12 && (t0 - t2).norm() < 1e-12);
        }
    }

    #[test]
    fn schmidt_of_basis_tensor() {
        let t = tols();
        let w = vec_tensor(&basis_vector(2, 0), &basis_vector(2, 0));
        let form = schmidt(&w, 2, 2, &t).unwrap();
        assert_eq!(form.rank(), 1);
        assert!((form.terms[0].weight - 1.0).abs() < 1e-14);
    }

    #[test]
    fn schmidt_of_maximally_entangled() {
        let t = tols();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut w = vec![C64::new(0.0, 0.0); 4];
        w[0] = C64::new(s, 0.0);
        w[3] = C64::new(s, 0.0);
        let form = schmidt(&w, 2, 2, &t).unwrap();
        assert_eq!(form.rank(), 2);
        for term in &form.terms {
            assert!((term.weight - s).abs() < 1e-12);
        }
    }

    #[test]
    fn schmidt_reconstructs_random_vectors() {
        let t = tols();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &(m, n) in &[(2usize, 3usize), (3, 2), (3, 4)] {
            let w = sample::random_vector(&mut rng, m * n);
            let form = schmidt(&w, m, n, &t).unwrap();
            let back = form.reconstruct();
            let err: f64 = w
                .iter()
                .zip(&back)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err <= 1e-10, "reconstruction error {err:.3e}");
            // Orthonormal factors.
            for i in 0..form.rank() {
                for j in 0..form.rank() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    let gl = vec_inner(&form.terms[i].left, &form.terms[j].left);
                    let gr = vec_inner(&form.terms[i].right, &form.terms[j].right);
                    assert!((gl - C64::new(want, 0.0)).norm() < 1e-8);
                    assert!((gr - C64::new(want, 0.0)).norm() < 1e-8);
                }
            }
        }
        assert!(matches!(
            schmidt(&[C64::new(0.0, 0.0); 6], 2, 3, &t),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn schmidt_rank_matches_gram_rank() {
        let t = tols();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for rank in 1..=2usize {
            // Vector with prescribed Schmidt rank.
            let mut w = vec![C64::new(0.0, 0.0); 6];
            for _ in 0..rank {
                let x = sample::random_vector(&mut rng, 2);
                let y = sample::random_vector(&mut rng, 3);
                for (wi, ti) in w.iter_mut().zip(vec_tensor(&x, &y)) {
                    *wi += ti;
                }
            }
            let form = schmidt(&w, 2, 3, &t).unwrap();
            let mat = matricize(&w, 2, 3).unwrap();
            let gram = mat.mul(&mat.adjoint());
            let gram_rank =
                crate::linalg::eig::rank_eps_matrix(&gram, t.sv_cutoff * t.sv_cutoff, t.eig_tol);
            assert_eq!(form.rank(), gram_rank);
            assert_eq!(form.rank(), rank);
        }
    }

    #[test]
    fn swap_matches_permutation_conjugation() {
        let t = tols();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let rho = sample::random_density(&mut rng, 6, &t)
            .with_split(2, 3)
            .unwrap();
        let swapped = swap_systems(&rho).unwrap();
        let p = swap_permutation_matrix(2, 3);
        let direct = p.mul(rho.matrix()).mul(&p.transpose());
        assert!(swapped.matrix().approx_eq(&direct, 0.0));
        // Involution and exchanged marginals.
        let back = swap_systems(&swapped).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 0.0));
        let tr1_swapped = swapped.partial_trace_1().unwrap();
        let tr2 = rho.partial_trace_2().unwrap();
        assert!(tr1_swapped.matrix().approx_eq(tr2.matrix(), 0.0));
    }

    #[test]
    fn swap_permutation_for_2x3() {
        // The 6x6 permutation with rows picking columns 1,4,2,5,3,6.
        let p = swap_permutation_matrix(2, 3);
        let cols = [0usize, 3, 1, 4, 2, 5];
        for (r, &c) in cols.iter().enumerate() {
            for j in 0..6 {
                let want = if j == c { 1.0 } else { 0.0 };
                assert_eq!(p[(r, j)].re, want);
            }
        }
    }

    #[test]
    fn local_conjugation_covariance() {
        let t = tols();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = sample::random_density(&mut rng, 6, &t)
            .with_split(2, 3)
            .unwrap();
        let u = sample::random_unitary(&mut rng, 2);
        let v = sample::random_unitary(&mut rng, 3);
        let out = conjugate_local(&rho, &u, &v, &t).unwrap();

        let tr2 = out.partial_trace_2().unwrap();
        let want2 = u
            .mul(rho.partial_trace_2().unwrap().matrix())
            .mul(&u.adjoint());
        assert!(tr2.matrix().approx_eq(&want2, 1e-10));

        let tr1 = out.partial_trace_1().unwrap();
        let want1 = v
            .mul(rho.partial_trace_1().unwrap().matrix())
            .mul(&v.adjoint());
        assert!(tr1.matrix().approx_eq(&want1, 1e-10));

        // Identity pair is a no-op; spectrum is preserved.
        let same = conjugate_local(
            &rho,
            &ComplexMatrix::identity(2),
            &ComplexMatrix::identity(3),
            &t,
        )
        .unwrap();
        assert!(same.matrix().approx_eq(rho.matrix(), 1e-14));
        let s1 = rho.spectrum(&t);
        let s2 = out.spectrum(&t);
        assert!(s1.matches(&s2, 1e-10));

        let not_unitary = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(conjugate_local(&rho, &not_unitary, &v, &t).is_err());
    }
}

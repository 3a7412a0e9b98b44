//! Explicit joint states with prescribed marginals: the rank-one builder,
//! the cyclic ladder reaching the larger marginal rank, rank-raising
//! splits, a numerical search for ranks below that, and membership
//! verification.

pub mod witness;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::feasibility;
use crate::linalg::{
    apply_local_to_vector, basis_vector, schmidt, swap_vector, trace_out_first, trace_out_second,
    vec_add, vec_norm, vec_scale, vec_tensor, ComplexMatrix, DensityMatrix, EigDecomposition,
    HermitianMatrix,
};
use crate::tol::{Tolerances, WitnessOptions};

pub use witness::numerical_witness;

/// A state presented as a sum of rank-one terms rho = sum_j z_j z_j^*.
#[derive(Debug, Clone)]
pub struct RankOneDecomposition {
    vectors: Vec<Vec<C64>>,
    m: usize,
    n: usize,
}

impl RankOneDecomposition {
    pub fn new(vectors: Vec<Vec<C64>>, m: usize, n: usize) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != m * n) {
            return Err(Error::Dimension(format!(
                "every term must live in C^{}",
                m * n
            )));
        }
        if vectors.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { vectors, m, n })
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn term_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn split(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Total trace sum_j ||z_j||^2.
    pub fn trace(&self) -> f64 {
        self.vectors.iter().map(|v| vec_norm(v).powi(2)).sum()
    }

    /// Assemble sum z z^* (renormalized to unit trace against roundoff).
    pub fn state(&self) -> DensityMatrix {
        let d = self.m * self.n;
        let mut mat = ComplexMatrix::zeros(d, d);
        for z in &self.vectors {
            for i in 0..d {
                for j in 0..d {
                    mat[(i, j)] += z[i] * z[j].conj();
                }
            }
        }
        let tr = mat.trace().re;
        DensityMatrix::new_unchecked(mat.scale_re(1.0 / tr).hermitize(), Some((self.m, self.n)))
    }
}

/// Residuals, positivity margin, and rank of a candidate member of the
/// compatibility set.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MembershipReport {
    /// Frobenius distance of tr_1 from sigma2.
    pub residual_tr1: f64,
    /// Frobenius distance of tr_2 from sigma1.
    pub residual_tr2: f64,
    /// Smallest eigenvalue of the candidate.
    pub psd_min_eig: f64,
    /// Eigenvalue count above the rank tolerance.
    pub rank: usize,
    pub pass: bool,
}

/// Compare the partial traces of `rho` (read with split (m, n)) against the
/// prescribed marginals.
pub fn verify_membership(
    rho: &HermitianMatrix,
    m: usize,
    n: usize,
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    tols: &Tolerances,
) -> Result<MembershipReport> {
    if rho.dim() != m * n || sigma1.dim() != m || sigma2.dim() != n {
        return Err(Error::Dimension(format!(
            "rho is {}-dimensional, marginals are ({}, {}), split ({m},{n})",
            rho.dim(),
            sigma1.dim(),
            sigma2.dim()
        )));
    }
    let tr1 = trace_out_first(rho.matrix(), m, n)?;
    let tr2 = trace_out_second(rho.matrix(), m, n)?;
    let residual_tr1 = tr1.sub(sigma2.matrix()).frobenius_norm();
    let residual_tr2 = tr2.sub(sigma1.matrix()).frobenius_norm();
    let eig = rho.eig(tols);
    let psd_min_eig = eig.values.last().copied().unwrap_or(0.0);
    let rank = eig
        .values
        .iter()
        .filter(|v| v.abs() > tols.rank_tol)
        .count();
    let pass = residual_tr1 <= tols.member_tol
        && residual_tr2 <= tols.member_tol
        && psd_min_eig >= -tols.psd_tol;
    Ok(MembershipReport {
        residual_tr1,
        residual_tr2,
        psd_min_eig,
        rank,
        pass,
    })
}

/// Membership check using the split carried by `rho`.
pub fn verify_density(
    rho: &DensityMatrix,
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    tols: &Tolerances,
) -> Result<MembershipReport> {
    let (m, n) = rho.require_split()?;
    verify_membership(rho.hermitian(), m, n, sigma1, sigma2, tols)
}

/// Eigendecomposition with eigenvalues clamped at zero and counted against
/// the rank tolerance.
struct MarginalEig {
    values: Vec<f64>,
    vectors: ComplexMatrix,
    rank: usize,
}

fn marginal_eig(sigma: &DensityMatrix, tols: &Tolerances) -> MarginalEig {
    let EigDecomposition { values, vectors } = sigma.hermitian().eig(tols);
    let rank = values.iter().filter(|v| v.abs() > tols.rank_tol).count();
    let values = values.into_iter().map(|v| v.max(0.0)).collect();
    MarginalEig {
        values,
        vectors,
        rank,
    }
}

/// Rank-one member v v^* where v pairs the eigenvectors of the two
/// marginals along their common spectrum.
///
/// Exists exactly when the nonzero spectra coincide as multisets. With the
/// row-major matricization no conjugation is needed on either factor:
/// v = sum_j sqrt(lambda_j) x_j (x) y_j has tr_2 = sum lambda x x* and
/// tr_1 = sum lambda y y*.
pub fn rank_one_state(
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    tols: &Tolerances,
) -> Result<DensityMatrix> {
    let e1 = marginal_eig(sigma1, tols);
    let e2 = marginal_eig(sigma2, tols);
    let r = e1.rank.max(e2.rank);
    let mut deviation: f64 = 0.0;
    for j in 0..r {
        let a = e1.values.get(j).copied().unwrap_or(0.0);
        let b = e2.values.get(j).copied().unwrap_or(0.0);
        deviation = deviation.max((a - b).abs());
    }
    if deviation > tols.spec_tol || e1.rank != e2.rank {
        return Err(Error::SpectraMismatch(deviation));
    }
    let (m, n) = (sigma1.dim(), sigma2.dim());
    let mut v = vec![C64::new(0.0, 0.0); m * n];
    for j in 0..r {
        let s = e1.values[j].sqrt();
        let term = vec_tensor(&e1.vectors.column(j), &e2.vectors.column(j));
        v = vec_add(&v, &vec_scale(&term, C64::new(s, 0.0)));
    }
    let norm = vec_norm(&v);
    let v = vec_scale(&v, C64::new(1.0 / norm, 0.0));
    DensityMatrix::from_matrix_split(ComplexMatrix::outer(&v, &v), m, n, tols)
}

/// The cyclic ladder terms in the eigenbasis, for nonzero eigenvalue lists
/// mu (length r1) and mu_hat (length r2 <= r1), embedded in C^{m x n}.
/// Term l couples mu_hat_i with mu at the cyclically shifted row (i + l)
/// mod r1, so every term is a generalized-permutation vector; terms have
/// pairwise disjoint coordinate supports.
fn diagonal_ladder_terms(mu: &[f64], mu_hat: &[f64], m: usize, n: usize) -> Vec<Vec<C64>> {
    let r1 = mu.len();
    let r2 = mu_hat.len();
    debug_assert!(r2 <= r1 && r1 <= m && r2 <= n);
    (0..r1)
        .map(|l| {
            let mut z = vec![C64::new(0.0, 0.0); m * n];
            for i in 0..r2 {
                let row = (i + l) % r1;
                z[row * n + i] = C64::new((mu[row] * mu_hat[i]).sqrt(), 0.0);
            }
            z
        })
        .collect()
}

/// Rank-one decomposition of a joint state of rank exactly
/// r_1 = max(rank sigma1, rank sigma2).
///
/// Built in the eigenbasis and conjugated back by the marginal eigenvector
/// unitaries; when sigma2 has the larger rank the swapped problem is built
/// and the factors are exchanged at the end.
pub fn ladder_state(
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    tols: &Tolerances,
) -> Result<RankOneDecomposition> {
    let e1 = marginal_eig(sigma1, tols);
    let e2 = marginal_eig(sigma2, tols);
    let (m, n) = (sigma1.dim(), sigma2.dim());
    let vectors = if e1.rank >= e2.rank {
        let terms = diagonal_ladder_terms(&e1.values[..e1.rank], &e2.values[..e2.rank], m, n);
        terms
            .iter()
            .map(|z| apply_local_to_vector(z, &e1.vectors, &e2.vectors))
            .collect::<Result<Vec<_>>>()?
    } else {
        let terms = diagonal_ladder_terms(&e2.values[..e2.rank], &e1.values[..e1.rank], n, m);
        terms
            .iter()
            .map(|z| {
                let conj = apply_local_to_vector(z, &e2.vectors, &e1.vectors)?;
                Ok(swap_vector(&conj, n, m))
            })
            .collect::<Result<Vec<_>>>()?
    };
    // Renormalize total trace against dropped near-zero eigenvalues.
    let mut dec = RankOneDecomposition::new(vectors, m, n)?;
    let tr = dec.trace();
    let s = C64::new(1.0 / tr.sqrt(), 0.0);
    for z in dec.vectors.iter_mut() {
        *z = vec_scale(z, s);
    }
    Ok(dec)
}

/// Replace term `j` by its first `p` Schmidt terms plus the remaining tail.
///
/// Cross terms between distinct Schmidt components have vanishing partial
/// traces, so the represented state keeps both marginals; the term count
/// grows by `p` and the rank by at most `p`.
pub fn split_step(
    dec: &RankOneDecomposition,
    j: usize,
    p: usize,
    tols: &Tolerances,
) -> Result<RankOneDecomposition> {
    if j >= dec.term_count() {
        return Err(Error::Dimension(format!(
            "term index {j} out of range for {} terms",
            dec.term_count()
        )));
    }
    let form = schmidt(&dec.vectors[j], dec.m, dec.n, tols)?;
    let t = form.rank();
    if p == 0 || p >= t {
        return Err(Error::SplitOutOfRange { p, max: t });
    }
    let mut vectors = Vec::with_capacity(dec.term_count() + p);
    vectors.extend(dec.vectors[..j].iter().cloned());
    for term in &form.terms[..p] {
        vectors.push(term.vector());
    }
    let mut tail = vec![C64::new(0.0, 0.0); dec.m * dec.n];
    for term in &form.terms[p..] {
        tail = vec_add(&tail, &term.vector());
    }
    vectors.push(tail);
    vectors.extend(dec.vectors[j + 1..].iter().cloned());
    RankOneDecomposition::new(vectors, dec.m, dec.n)
}

/// Schmidt rank of each term (used to pick what to split next).
fn schmidt_ranks(dec: &RankOneDecomposition, tols: &Tolerances) -> Result<Vec<usize>> {
    dec.vectors
        .iter()
        .map(|z| Ok(schmidt(z, dec.m, dec.n, tols)?.rank()))
        .collect()
}

/// Split one unit at a time (largest Schmidt rank first) until the
/// represented state reaches rank `k` exactly.
fn split_until_rank(
    mut dec: RankOneDecomposition,
    k: usize,
    tols: &Tolerances,
) -> Result<RankOneDecomposition> {
    loop {
        let rank = dec.state().rank_eps(tols.rank_tol, tols);
        if rank == k {
            return Ok(dec);
        }
        if rank > k {
            return Err(Error::NumericalFailure(format!(
                "splitting overshot rank {k} (reached {rank})"
            )));
        }
        let ranks = schmidt_ranks(&dec, tols)?;
        let candidate = ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >= 2)
            .max_by_key(|(_, &r)| r)
            .map(|(i, _)| i);
        let Some(j) = candidate else {
            return Err(Error::NumericalFailure(format!(
                "all terms are product vectors at rank {rank} < {k}"
            )));
        };
        dec = split_step(&dec, j, 1, tols)?;
    }
}

/// A member of the compatibility set with rank exactly `k`.
///
/// Routes: k = 1 via the rank-one builder; k >= r_1 via the ladder in the
/// eigenbasis plus unit splits (conjugated back at the end, where the split
/// terms are plain coordinate vectors so every split raises the rank by
/// exactly one); minimal-rank-1 cases below r_1 via splits of the rank-one
/// state; everything else via the numerical search, with a split walk from
/// the minimal rank as fallback.
pub fn state_of_rank(
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    k: usize,
    opts: &WitnessOptions,
    tols: &Tolerances,
) -> Result<DensityMatrix> {
    let e1 = marginal_eig(sigma1, tols);
    let e2 = marginal_eig(sigma2, tols);
    let (m, n) = (sigma1.dim(), sigma2.dim());
    let max_rank = e1.rank * e2.rank;
    if k == 1 {
        // The rank-one builder carries its own spectra-match test, which is
        // a float comparison rather than a rationalized one.
        return rank_one_state(sigma1, sigma2, tols).map_err(|e| match e {
            Error::SpectraMismatch(_) => Error::RankOutOfRange {
                k: 1,
                min: 2,
                max: max_rank,
            },
            other => other,
        });
    }
    let spec1 = sigma1.spectrum(tols);
    let spec2 = sigma2.spectrum(tols);
    let min = feasibility::min_rank(&spec1, &spec2, tols)?.rank;
    if k < min || k > max_rank {
        return Err(Error::RankOutOfRange {
            k,
            min,
            max: max_rank,
        });
    }

    let r1 = e1.rank.max(e2.rank);
    if k >= r1 {
        // Ladder + splits in the diagonal model, conjugation afterwards.
        let swapped = e1.rank < e2.rank;
        let (hi, lo, dm, dn) = if swapped {
            (&e2, &e1, n, m)
        } else {
            (&e1, &e2, m, n)
        };
        let terms = diagonal_ladder_terms(&hi.values[..hi.rank], &lo.values[..lo.rank], dm, dn);
        let mut dec = RankOneDecomposition::new(terms, dm, dn)?;
        while dec.term_count() < k {
            let ranks = schmidt_ranks(&dec, tols)?;
            let j = ranks
                .iter()
                .enumerate()
                .filter(|(_, &r)| r >= 2)
                .max_by_key(|(_, &r)| r)
                .map(|(i, _)| i)
                .expect("ladder terms carry enough Schmidt weight to split");
            dec = split_step(&dec, j, 1, tols)?;
        }
        let (u, v) = if swapped {
            (&e2.vectors, &e1.vectors)
        } else {
            (&e1.vectors, &e2.vectors)
        };
        let vectors = dec
            .vectors
            .iter()
            .map(|z| {
                let conj = apply_local_to_vector(z, u, v)?;
                Ok(if swapped {
                    swap_vector(&conj, n, m)
                } else {
                    conj
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = RankOneDecomposition::new(vectors, m, n)?;
        let tr = out.trace();
        let s = C64::new(1.0 / tr.sqrt(), 0.0);
        for z in out.vectors.iter_mut() {
            *z = vec_scale(z, s);
        }
        return Ok(out.state());
    }

    // min <= k < r1.
    if min == 1 {
        if let Ok(v) = rank_one_state(sigma1, sigma2, tols) {
            let dec = decomposition_from_state_vector(&v, m, n, tols)?;
            return Ok(split_until_rank(dec, k, tols)?.state());
        }
    }
    if let Some((cols, _)) = witness::witness_vectors(sigma1, sigma2, k, opts, tols) {
        let rho = witness::state_from_columns(&cols, m, n);
        let rank = rho.rank_eps(tols.rank_tol, tols);
        if rank == k {
            return Ok(rho);
        }
        if rank < k {
            let dec = RankOneDecomposition::new(nonzero_columns(cols), m, n)?;
            return Ok(split_until_rank(dec, k, tols)?.state());
        }
    }
    // Fall back to a witness at the minimal rank, then walk up.
    if k > min {
        if let Some((cols, _)) = witness::witness_vectors(sigma1, sigma2, min, opts, tols) {
            let dec = RankOneDecomposition::new(nonzero_columns(cols), m, n)?;
            return Ok(split_until_rank(dec, k, tols)?.state());
        }
    }
    Err(Error::NumericalFailure(format!(
        "exact feasibility admits rank {k} but the search did not converge \
         after {} restarts; raise the restart or iteration budget",
        opts.max_restarts
    )))
}

fn nonzero_columns(cols: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
    cols.into_iter().filter(|c| vec_norm(c) > 1e-12).collect()
}

/// Single-vector decomposition of a pure state.
fn decomposition_from_state_vector(
    rho: &DensityMatrix,
    m: usize,
    n: usize,
    tols: &Tolerances,
) -> Result<RankOneDecomposition> {
    // rho = v v^*: recover v from the dominant eigenpair.
    let eig = rho.hermitian().eig(tols);
    let scale = eig.values[0].max(0.0).sqrt();
    let v = vec_scale(&eig.vectors.column(0), C64::new(scale, 0.0));
    RankOneDecomposition::new(vec![v], m, n)
}

/// Convenience: a weighted coordinate product vector, for assembling
/// explicit decompositions term by term in tests.
pub fn product_term(m: usize, n: usize, i: usize, j: usize, weight: f64) -> Vec<C64> {
    vec_scale(
        &vec_tensor(&basis_vector(m, i), &basis_vector(n, j)),
        C64::new(weight, 0.0),
    )
}

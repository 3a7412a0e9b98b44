//! Quantum channels: Kraus and Choi forms, conversions, achievable Choi
//! ranks, and synthesis of channels with a prescribed image of the
//! maximally mixed state.
//!
//! A channel Phi: M_m -> M_n is stored as Kraus operators F_j (n x m) with
//! sum_j F_j* F_j = I_m. Its Choi matrix C = (Phi(E_ij)) is an m x m grid
//! of n x n blocks, i.e. an operator on C^m (x) C^n in this crate's index
//! convention. C/m is then a state with tr_2 = I_m/m and tr_1 =
//! Phi(I_m/m), which turns Choi-rank questions into marginal-rank
//! questions.

use std::ops::RangeInclusive;

use num_complex::Complex64 as C64;

use crate::construct;
use crate::error::{Error, Result};
use crate::feasibility;
use crate::linalg::{
    matricize, trace_out_first, vec_scale, vectorize, ComplexMatrix, DensityMatrix, HermitianMatrix,
};
use crate::tol::{Tolerances, WitnessOptions};

/// Operator-sum representation of a channel M_m -> M_n.
#[derive(Debug, Clone)]
pub struct KrausRep {
    m: usize,
    n: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausRep {
    /// Validates shapes and trace preservation (sum F*F = I within tp_tol).
    pub fn new(
        m: usize,
        n: usize,
        operators: Vec<ComplexMatrix>,
        tols: &Tolerances,
    ) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::Dimension(
                "a channel needs at least one Kraus operator".into(),
            ));
        }
        for f in &operators {
            if f.rows() != n || f.cols() != m {
                return Err(Error::Dimension(format!(
                    "Kraus operator is {}x{}, expected {n}x{m}",
                    f.rows(),
                    f.cols()
                )));
            }
        }
        let rep = Self { m, n, operators };
        let deviation = rep.trace_preservation_deviation();
        if deviation > tols.tp_tol {
            return Err(Error::NotTracePreserving {
                deviation,
                tol: tols.tp_tol,
            });
        }
        Ok(rep)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Frobenius deviation of sum F*F from the identity.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.m, self.m);
        for f in &self.operators {
            acc = acc.add(&f.adjoint().mul(f));
        }
        acc.sub(&ComplexMatrix::identity(self.m)).frobenius_norm()
    }
}

/// Choi matrix (Phi(E_ij)) as a validated bipartite operator.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    m: usize,
    n: usize,
    matrix: HermitianMatrix,
}

impl ChoiMatrix {
    /// Validates positivity and the block-trace identity (tr P_ij) = I_m.
    pub fn new(m: usize, n: usize, matrix: HermitianMatrix, tols: &Tolerances) -> Result<Self> {
        if matrix.dim() != m * n {
            return Err(Error::Dimension(format!(
                "Choi matrix is {}-dimensional, expected {}",
                matrix.dim(),
                m * n
            )));
        }
        let min_eig = matrix.eig(tols).values.last().copied().unwrap_or(0.0);
        if min_eig < -tols.psd_tol {
            return Err(Error::NotPositive { min_eig });
        }
        let block_tr = crate::linalg::trace_out_second(matrix.matrix(), m, n)?;
        let deviation = block_tr.sub(&ComplexMatrix::identity(m)).frobenius_norm();
        if deviation > tols.tp_tol {
            return Err(Error::NotTracePreserving {
                deviation,
                tol: tols.tp_tol,
            });
        }
        Ok(Self { m, n, matrix })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Rank at the crate rank tolerance.
    pub fn rank(&self, tols: &Tolerances) -> usize {
        self.matrix.rank_eps(tols.rank_tol, tols)
    }

    /// The associated state C/m, with tr_2 = I_m/m.
    pub fn as_state(&self, tols: &Tolerances) -> Result<DensityMatrix> {
        DensityMatrix::from_matrix_split(
            self.matrix.matrix().scale_re(1.0 / self.m as f64),
            self.m,
            self.n,
            tols,
        )
    }
}

/// Apply the operator sum: Phi(A) = sum_j F_j A F_j*.
pub fn apply_channel(k: &KrausRep, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows() != k.m || a.cols() != k.m {
        return Err(Error::Dimension(format!(
            "input is {}x{}, channel acts on {}x{}",
            a.rows(),
            a.cols(),
            k.m,
            k.m
        )));
    }
    let mut out = ComplexMatrix::zeros(k.n, k.n);
    for f in &k.operators {
        out = out.add(&f.mul(a).mul(&f.adjoint()));
    }
    Ok(out)
}

/// Choi matrix from Kraus operators: each F contributes the rank-one term
/// g g* with g = vec(F^t), so block (i,j) is sum_t F_t E_ij F_t*.
pub fn choi_from_kraus(k: &KrausRep, tols: &Tolerances) -> Result<ChoiMatrix> {
    let d = k.m * k.n;
    let mut mat = ComplexMatrix::zeros(d, d);
    for f in &k.operators {
        let g = vectorize(&f.transpose());
        for i in 0..d {
            for j in 0..d {
                mat[(i, j)] += g[i] * g[j].conj();
            }
        }
    }
    ChoiMatrix::new(k.m, k.n, HermitianMatrix::new(mat.hermitize(), tols)?, tols)
}

/// Kraus operators from a Choi matrix: each eigenpair (lambda, u) above the
/// rank tolerance yields F = sqrt(lambda) `[u]`^t, the transpose of the m x n
/// matricization. The operator count equals the Choi rank.
pub fn kraus_from_choi(c: &ChoiMatrix, tols: &Tolerances) -> Result<KrausRep> {
    let eig = c.matrix.eig(tols);
    if let Some(&min) = eig.values.last() {
        if min < -tols.psd_tol {
            return Err(Error::NotPositive { min_eig: min });
        }
    }
    let mut operators = Vec::new();
    for (j, &lambda) in eig.values.iter().enumerate() {
        if lambda <= tols.rank_tol {
            break;
        }
        let g = vec_scale(&eig.vectors.column(j), C64::new(lambda.sqrt(), 0.0));
        operators.push(matricize(&g, c.m, c.n)?.transpose());
    }
    KrausRep::new(c.m, c.n, operators, tols)
}

/// Achievable Choi ranks of channels M_m -> M_n with Phi(I_m/m) = sigma2:
/// exactly the achievable ranks of joint states with marginals
/// (I_m/m, sigma2).
pub fn choi_rank_range(
    sigma2: &DensityMatrix,
    m: usize,
    tols: &Tolerances,
) -> Result<RangeInclusive<usize>> {
    let uniform = DensityMatrix::maximally_mixed(m, tols);
    feasibility::rank_range(&uniform, sigma2, tols)
}

/// Synthesize a channel with exactly `k` Kraus operators and
/// Phi(I_m/m) = sigma2: build a rank-k member of the compatibility set,
/// scale it to a Choi matrix, and extract Kraus operators.
pub fn channel_with_choi_rank(
    sigma2: &DensityMatrix,
    m: usize,
    k: usize,
    opts: &WitnessOptions,
    tols: &Tolerances,
) -> Result<KrausRep> {
    let uniform = DensityMatrix::maximally_mixed(m, tols);
    let rho = construct::state_of_rank(&uniform, sigma2, k, opts, tols)?;
    let choi_mat = rho.matrix().scale_re(m as f64);
    let choi = ChoiMatrix::new(m, sigma2.dim(), HermitianMatrix::new(choi_mat, tols)?, tols)?;
    kraus_from_choi(&choi, tols)
}

/// Phi(I_m/m) read off the Choi matrix: tr_1(C)/m.
pub fn fixed_marginal(k: &KrausRep, tols: &Tolerances) -> Result<ComplexMatrix> {
    let choi = choi_from_kraus(k, tols)?;
    Ok(trace_out_first(choi.matrix(), k.m, k.n)?.scale_re(1.0 / k.m as f64))
}

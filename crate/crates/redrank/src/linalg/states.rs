//! Validated wrappers: Hermitian matrices and (bipartite) density matrices.

use crate::error::{Error, Result};
use crate::tol::Tolerances;

use super::eig::{eig_hermitian, EigDecomposition};
use super::matrix::ComplexMatrix;
use super::spectrum::Spectrum;

/// Square matrix checked to equal its adjoint within `herm_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    mat: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(mat: ComplexMatrix, tols: &Tolerances) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix cannot be Hermitian",
                mat.rows(),
                mat.cols()
            )));
        }
        let deviation = mat.hermitian_deviation();
        if deviation > tols.herm_tol {
            return Err(Error::NotHermitian {
                deviation,
                tol: tols.herm_tol,
            });
        }
        Ok(Self { mat })
    }

    /// For matrices Hermitian by construction; checked in debug builds only.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        debug_assert!(mat.is_hermitian(1e-8), "constructed matrix not Hermitian");
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eig(&self, tols: &Tolerances) -> EigDecomposition {
        eig_hermitian(&self.mat, tols.eig_tol)
    }

    pub fn spectrum(&self, tols: &Tolerances) -> Spectrum {
        Spectrum::from_f64s(self.eig(tols).values)
    }

    /// Number of eigenvalues with magnitude above `tol`.
    pub fn rank_eps(&self, tol: f64, tols: &Tolerances) -> usize {
        assert!(tol > 0.0);
        self.eig(tols)
            .values
            .iter()
            .filter(|v| v.abs() > tol)
            .count()
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }
}

/// Positive semidefinite, unit trace, optionally carrying a bipartite split.
///
/// The split `(m, n)` records that the underlying space is C^m (x) C^n with
/// the first factor indexed block-wise (an mn x mn matrix is m x m blocks of
/// n x n). Partial traces require it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    herm: HermitianMatrix,
    split: Option<(usize, usize)>,
    min_eig: f64,
}

impl DensityMatrix {
    pub fn new(herm: HermitianMatrix, tols: &Tolerances) -> Result<Self> {
        let trace = herm.trace();
        if (trace - 1.0).abs() > tols.trace_tol {
            return Err(Error::NotUnitTrace { trace });
        }
        let min_eig = herm.eig(tols).values.last().copied().unwrap_or(0.0);
        if min_eig < -tols.psd_tol {
            return Err(Error::NotPositive { min_eig });
        }
        Ok(Self {
            herm,
            split: None,
            min_eig,
        })
    }

    pub fn from_matrix(mat: ComplexMatrix, tols: &Tolerances) -> Result<Self> {
        Self::new(HermitianMatrix::new(mat, tols)?, tols)
    }

    /// Attach a bipartite split; `m * n` must equal the dimension.
    pub fn with_split(mut self, m: usize, n: usize) -> Result<Self> {
        if m * n != self.dim() {
            return Err(Error::Dimension(format!(
                "split ({m},{n}) does not factor dimension {}",
                self.dim()
            )));
        }
        self.split = Some((m, n));
        Ok(self)
    }

    pub fn from_matrix_split(
        mat: ComplexMatrix,
        m: usize,
        n: usize,
        tols: &Tolerances,
    ) -> Result<Self> {
        Self::from_matrix(mat, tols)?.with_split(m, n)
    }

    /// Diagonal density matrix from a spectrum (must sum to ~1).
    pub fn from_diag(values: &[f64], tols: &Tolerances) -> Result<Self> {
        Self::from_matrix(ComplexMatrix::from_diag(values), tols)
    }

    /// Maximally mixed state I_n / n.
    pub fn maximally_mixed(n: usize, tols: &Tolerances) -> Self {
        Self::from_matrix(ComplexMatrix::identity(n).scale_re(1.0 / n as f64), tols)
            .expect("I/n is a density matrix")
    }

    pub(crate) fn new_unchecked(mat: ComplexMatrix, split: Option<(usize, usize)>) -> Self {
        debug_assert!((mat.trace().re - 1.0).abs() < 1e-6);
        Self {
            herm: HermitianMatrix::new_unchecked(mat),
            split,
            min_eig: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.herm.dim()
    }

    pub fn split(&self) -> Option<(usize, usize)> {
        self.split
    }

    pub fn require_split(&self) -> Result<(usize, usize)> {
        self.split.ok_or_else(|| {
            Error::Dimension("operation needs a bipartite split, none attached".into())
        })
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.herm
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.herm.matrix()
    }

    pub fn spectrum(&self, tols: &Tolerances) -> Spectrum {
        self.herm.spectrum(tols)
    }

    pub fn rank_eps(&self, tol: f64, tols: &Tolerances) -> usize {
        self.herm.rank_eps(tol, tols)
    }

    /// Product state sigma1 (x) sigma2 with the natural split.
    pub fn product(sigma1: &DensityMatrix, sigma2: &DensityMatrix) -> DensityMatrix {
        let mat = sigma1.matrix().kron(sigma2.matrix());
        let mut out = DensityMatrix::new_unchecked(mat, Some((sigma1.dim(), sigma2.dim())));
        out.min_eig = (sigma1.min_eig * sigma2.min_eig).max(0.0);
        out
    }
}

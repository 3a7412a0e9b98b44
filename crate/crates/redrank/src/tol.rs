//! Numerical tolerances and search parameters.
//!
//! Rank and feasibility are exact notions in the underlying theory; a
//! floating-point artifact has to declare thresholds. Every threshold used
//! anywhere in the crate lives here so it can be overridden in one place.

/// Tolerances for all approximate checks performed by the crate.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Max entrywise deviation allowed between a matrix and its adjoint.
    pub herm_tol: f64,
    /// Allowed deviation of a density-matrix trace from 1.
    pub trace_tol: f64,
    /// Eigenvalues above `-psd_tol` count as nonnegative.
    pub psd_tol: f64,
    /// Singular values at or below this are dropped from Schmidt forms.
    pub sv_cutoff: f64,
    /// Eigenvalues with magnitude above this count toward the rank.
    pub rank_tol: f64,
    /// Jacobi sweep convergence: relative off-diagonal Frobenius norm.
    pub eig_tol: f64,
    /// Slack allowed in majorization partial-sum comparisons.
    pub maj_tol: f64,
    /// Allowed deviation from orthonormality in Schmidt factors.
    pub orth_tol: f64,
    /// Allowed reconstruction error for a Schmidt form.
    pub recon_tol: f64,
    /// Allowed deviation of `U U*` from the identity for unitary inputs.
    pub unit_tol: f64,
    /// Partial-trace residual allowed when verifying membership.
    pub member_tol: f64,
    /// Max deviation between spectra that still counts as "equal".
    pub spec_tol: f64,
    /// Allowed deviation of a Kraus family from trace preservation.
    pub tp_tol: f64,
    /// Objective threshold below which a numerical witness counts as found.
    pub oracle_tol: f64,
    /// Denominator cap for float-to-rational conversion.
    pub rat_den_cap: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm_tol: 1e-10,
            trace_tol: 1e-10,
            psd_tol: 1e-10,
            sv_cutoff: 1e-8,
            rank_tol: 1e-8,
            eig_tol: 1e-12,
            maj_tol: 1e-10,
            orth_tol: 1e-8,
            recon_tol: 1e-10,
            unit_tol: 1e-8,
            member_tol: 1e-8,
            spec_tol: 1e-8,
            tp_tol: 1e-9,
            oracle_tol: 1e-14,
            rat_den_cap: 1_000_000,
        }
    }
}

/// Parameters for the randomized witness search.
#[derive(Debug, Clone)]
pub struct WitnessOptions {
    /// Number of random restarts before reporting failure.
    pub max_restarts: usize,
    /// Iteration budget per restart.
    pub iters: usize,
    /// Seed for the restart RNG; restarts are seeded independently from it.
    pub seed: u64,
    /// Restarts evaluated per wave. Waves finish before a winner is chosen,
    /// so results do not depend on thread count.
    pub wave: usize,
}

/// Default seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x0072_6564_7261_6e6b; // "redrank" as bytes

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            max_restarts: 32,
            iters: 5000,
            seed: DEFAULT_SEED,
            wave: 8,
        }
    }
}

impl WitnessOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

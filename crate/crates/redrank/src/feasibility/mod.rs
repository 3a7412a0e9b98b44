//! Exact feasibility of marginal-spectra constraints and the minimal-rank
//! search.

pub mod closed_form;
pub mod regions;
pub mod simplex;
pub mod system;

pub use closed_form::{
    rank2_feasible_2x4, rank2_feasible_3x6, rank2_majorization_lower_3x6,
    rank2_majorization_upper_3x6,
};
pub use regions::{
    build_pr, build_qr, exact_marginal, min_rank, rank_feasible, rank_range, rank_range_spectra,
    region_check, MinRankResult, RegionCheck,
};
pub use simplex::{lp_feasible, FeasibilityResult};
pub use system::InequalitySystem;

//! Dense complex linear algebra and bipartite structure.

pub mod bipartite;
pub mod eig;
pub mod matrix;
pub mod spectrum;
pub mod states;

pub use bipartite::{
    apply_local_to_vector, conjugate_local, matricize, schmidt, swap_permutation_matrix,
    swap_systems, swap_vector, trace_out_first, trace_out_second, vectorize, SchmidtForm,
    SchmidtTerm,
};
pub use eig::{eig_hermitian, rank_eps_matrix, EigDecomposition};
pub use matrix::{
    basis_vector, vec_add, vec_inner, vec_norm, vec_scale, vec_tensor, ComplexMatrix, C64,
};
pub use spectrum::{majorizes, Spectrum};
pub use states::{DensityMatrix, HermitianMatrix};

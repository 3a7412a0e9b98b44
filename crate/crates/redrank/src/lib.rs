//! Which ranks can a bipartite density matrix have, given both of its
//! reduced states?
//!
//! The achievable ranks form a contiguous range. The upper end is the
//! product of the marginal ranks; the lower end is decided by an exact
//! rational feasibility test over eigenvalue inequalities for sums of
//! Hermitian matrices. This crate computes the range, certifies the lower
//! end with an exact witness vector, constructs explicit states of every
//! achievable rank, and applies the same machinery to quantum channels
//! (achievable Choi ranks, Kraus synthesis).
//!
//! Organization:
//! - [`linalg`]: dense complex matrices, Jacobi eigensolver, partial
//!   traces, Schmidt decomposition, majorization, system swap.
//! - [`combinat`]: partitions, Littlewood-Richardson coefficients, and the
//!   eigenvalue-inequality index sets.
//! - [`feasibility`]: exact rational linear feasibility, the minimal-rank
//!   search, and closed-form low-dimension tests.
//! - [`construct`]: explicit witness states (rank-one, ladder, splitting,
//!   numerical search) and membership verification.
//! - [`channels`]: Choi/Kraus conversions and channel synthesis with a
//!   prescribed Choi rank.
//! - [`io`]: JSON formats with deterministic float formatting.
//!
//! With the default `parallel` feature, witness-search restarts run on
//! rayon; results are bitwise independent of thread count.

pub mod channels;
pub mod combinat;
pub mod construct;
pub mod error;
pub mod feasibility;
pub mod io;
pub mod linalg;
mod par;
pub mod rational;
pub mod sample;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, HermitianMatrix, Spectrum};
pub use tol::{Tolerances, WitnessOptions, DEFAULT_SEED};

//! Partitions, Littlewood-Richardson coefficients, and the inequality index
//! sets they select.

pub mod klyachko;
pub mod lr;
pub mod partition;

pub use klyachko::{
    evaluate_inequality, generate_tuples, klyachko_inequalities, klyachko_inequalities_with_caps,
    GeneratorCaps, IndexTuple,
};
pub use lr::{lr_coefficient, LrCalculator};
pub use partition::{k_subsets, partition_of_subset, Partition};

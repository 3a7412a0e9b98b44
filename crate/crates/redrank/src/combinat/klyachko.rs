//! Index tuples for the eigenvalue inequalities of Hermitian sums.
//!
//! A spectrum a is realizable as the spectrum of C_1 + ... + C_r with
//! prescribed lambda(C_j) exactly when the trace balances and, for every
//! generated tuple (J_0; J_1..J_r) of equal-size subsets of {1..m} whose
//! subset partitions have positive iterated Littlewood-Richardson
//! coefficient,
//!     sum_{i in J_0} a_i <= sum_j sum_{i in J_j} lambda_i(C_j).
//! The list may contain redundant members; redundancy does not change the
//! feasible region. The trace identity is handled separately as an equality
//! constraint wherever these tuples are consumed.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Spectrum;

use super::lr::LrCalculator;
use super::partition::{k_subsets, partition_of_subset, Partition};

/// One inequality index: subsets of {1..m}, all of size `k`, 1-based and
/// sorted increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    pub k: usize,
    pub j0: Vec<usize>,
    pub js: Vec<Vec<usize>>,
}

impl IndexTuple {
    /// Left side sum_{i in J_0} a_i evaluated on floats.
    pub fn lhs_f64(&self, a: &[f64]) -> f64 {
        self.j0.iter().map(|&i| a[i - 1]).sum()
    }

    /// Right side sum_j sum_{i in J_j} c_j\[i\] evaluated on floats.
    pub fn rhs_f64(&self, cs: &[&[f64]]) -> f64 {
        self.js
            .iter()
            .zip(cs)
            .map(|(j, c)| j.iter().map(|&i| c[i - 1]).sum::<f64>())
            .sum()
    }

    fn lhs_exact(&self, a: &[BigRational]) -> BigRational {
        self.j0.iter().map(|&i| a[i - 1].clone()).sum()
    }

    fn rhs_exact(&self, cs: &[&[BigRational]]) -> BigRational {
        let mut acc = BigRational::zero();
        for (j, c) in self.js.iter().zip(cs) {
            for &i in j {
                acc += c[i - 1].clone();
            }
        }
        acc
    }

    /// Canonical one-line form, e.g. `a[1,3] <= c[1,2] + c[1,3]`.
    pub fn canonical_text(&self) -> String {
        let set = |s: &[usize]| {
            s.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let rhs = self
            .js
            .iter()
            .map(|j| format!("c[{}]", set(j)))
            .collect::<Vec<_>>()
            .join(" + ");
        format!("a[{}] <= {}", set(&self.j0), rhs)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Truth of the tuple's inequality at the given spectra. Exact when every
/// operand carries exact values; floating otherwise.
pub fn evaluate_inequality(t: &IndexTuple, a: &Spectrum, cs: &[Spectrum]) -> Result<bool> {
    if cs.len() != t.js.len() {
        return Err(Error::Dimension(format!(
            "{} summand spectra for a tuple with {} subsets",
            cs.len(),
            t.js.len()
        )));
    }
    let m = a.dim();
    let max_index =
        t.j0.iter()
            .chain(t.js.iter().flatten())
            .max()
            .copied()
            .unwrap_or(0);
    if max_index > m || cs.iter().any(|c| c.dim() != m) {
        return Err(Error::Dimension(format!(
            "tuple indexes up to {max_index} on spectra of dimension {m}"
        )));
    }
    let all_exact = a.is_exact() && cs.iter().all(|c| c.is_exact());
    if all_exact {
        let ea = a.exact().unwrap();
        let ecs: Vec<&[BigRational]> = cs.iter().map(|c| c.exact().unwrap()).collect();
        Ok(t.lhs_exact(ea) <= t.rhs_exact(&ecs))
    } else {
        let fcs: Vec<&[f64]> = cs.iter().map(|c| c.values()).collect();
        Ok(t.lhs_f64(a.values()) <= t.rhs_f64(&fcs))
    }
}

/// Enumeration guard: generation is exponential in m and r.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorCaps {
    pub max_m: usize,
    pub max_r: usize,
}

impl Default for GeneratorCaps {
    fn default() -> Self {
        Self { max_m: 8, max_r: 4 }
    }
}

/// All inequality tuples for spectra of dimension `m` and `r` summands,
/// deduplicated and sorted by (k, J_0, J_1, ..., J_r).
///
/// Enumerates equal-size subsets for k = 1..m-1, keeps tuples whose subset
/// partitions balance in weight and have positive iterated LR coefficient.
/// The k = m case degenerates to the trace identity and is not emitted.
pub fn generate_tuples(m: usize, r: usize, caps: GeneratorCaps) -> Result<Vec<IndexTuple>> {
    if m == 0 || r == 0 {
        return Err(Error::Dimension(format!(
            "need m >= 1 and r >= 1, got m={m}, r={r}"
        )));
    }
    if m > caps.max_m || r > caps.max_r {
        return Err(Error::CapExceeded {
            m,
            r,
            max_m: caps.max_m,
            max_r: caps.max_r,
        });
    }
    let mut lr = LrCalculator::new();
    let mut out = Vec::new();
    for k in 1..m {
        let subsets = k_subsets(m, k);
        let partitions: Vec<Partition> = subsets.iter().map(|s| partition_of_subset(s)).collect();
        let weights: Vec<usize> = partitions.iter().map(|p| p.weight()).collect();
        let max_weight = weights.iter().copied().max().unwrap_or(0);

        for (i0, j0) in subsets.iter().enumerate() {
            let target = weights[i0];
            // Depth-first over (J_1..J_r) with weight pruning.
            let mut chosen: Vec<usize> = Vec::with_capacity(r);
            select_summands(
                &subsets,
                &weights,
                max_weight,
                target,
                0,
                r,
                &mut chosen,
                &mut |sel: &[usize]| {
                    let mus: Vec<Partition> = sel.iter().map(|&i| partitions[i].clone()).collect();
                    if lr.coefficient(&partitions[i0], &mus) > 0 {
                        out.push(IndexTuple {
                            k,
                            j0: j0.clone(),
                            js: sel.iter().map(|&i| subsets[i].clone()).collect(),
                        });
                    }
                },
            );
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn select_summands(
    subsets: &[Vec<usize>],
    weights: &[usize],
    max_weight: usize,
    remaining: usize,
    depth: usize,
    r: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if depth == r {
        if remaining == 0 {
            emit(chosen);
        }
        return;
    }
    let slots_left = r - depth - 1;
    for idx in 0..subsets.len() {
        let w = weights[idx];
        if w > remaining {
            continue;
        }
        if remaining - w > slots_left * max_weight {
            continue;
        }
        chosen.push(idx);
        select_summands(
            subsets,
            weights,
            max_weight,
            remaining - w,
            depth + 1,
            r,
            chosen,
            emit,
        );
        chosen.pop();
    }
}

type TupleCache = Mutex<HashMap<(usize, usize), Arc<Vec<IndexTuple>>>>;

fn cache() -> &'static TupleCache {
    static CACHE: OnceLock<TupleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached tuple list for (m, r) under the default caps. Generation runs at
/// most once per pair per process.
pub fn klyachko_inequalities(m: usize, r: usize) -> Result<Arc<Vec<IndexTuple>>> {
    klyachko_inequalities_with_caps(m, r, GeneratorCaps::default())
}

pub fn klyachko_inequalities_with_caps(
    m: usize,
    r: usize,
    caps: GeneratorCaps,
) -> Result<Arc<Vec<IndexTuple>>> {
    if let Some(hit) = cache().lock().unwrap().get(&(m, r)) {
        return Ok(hit.clone());
    }
    let generated = Arc::new(generate_tuples(m, r, caps)?);
    cache()
        .lock()
        .unwrap()
        .entry((m, r))
        .or_insert_with(|| generated.clone());
    Ok(generated)
}

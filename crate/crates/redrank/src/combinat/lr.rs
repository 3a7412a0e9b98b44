//! Littlewood-Richardson coefficients by skew-tableau backtracking.
//!
//! The two-factor coefficient c^nu_{kappa,mu} counts semistandard fillings
//! of the skew shape nu/kappa with content mu whose reverse reading word
//! (right-to-left along rows, top row first) is a lattice word. Filling
//! cells in exactly that order lets every constraint be enforced
//! incrementally. Multi-factor coefficients fold over intermediate shapes:
//!   c^nu_{mu_1..mu_p} = sum_kappa c^kappa_{mu_1..mu_{p-1}} c^nu_{kappa,mu_p}.
//!
//! Shapes here stay tiny (weights well under 20), so exact counting with a
//! memo on (nu, kappa, mu) is cheap.

use std::collections::HashMap;

use super::partition::Partition;

/// Memoized Littlewood-Richardson calculator.
#[derive(Default)]
pub struct LrCalculator {
    skew: HashMap<(Partition, Partition, Partition), u64>,
    iterated: HashMap<(Partition, Vec<Partition>), u64>,
}

impl LrCalculator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Iterated coefficient c^nu_{mu_1,...,mu_p}. Zero unless the weights
    /// balance; empty factors are inert.
    pub fn coefficient(&mut self, nu: &Partition, mus: &[Partition]) -> u64 {
        let mus: Vec<Partition> = mus.iter().filter(|m| !m.is_empty()).cloned().collect();
        if nu.weight() != mus.iter().map(|m| m.weight()).sum::<usize>() {
            return 0;
        }
        self.iterated_inner(nu, &mus)
    }

    fn iterated_inner(&mut self, nu: &Partition, mus: &[Partition]) -> u64 {
        match mus.len() {
            0 => return u64::from(nu.is_empty()),
            1 => return u64::from(nu == &mus[0]),
            _ => {}
        }
        let key = (nu.clone(), mus.to_vec());
        if let Some(&c) = self.iterated.get(&key) {
            return c;
        }
        let (last, head) = mus.split_last().unwrap();
        let head_weight: usize = head.iter().map(|m| m.weight()).sum();
        let mut total = 0u64;
        for kappa in nu.sub_partitions_of_weight(head_weight) {
            let inner = self.iterated_inner(&kappa, head);
            if inner == 0 {
                continue;
            }
            total += inner * self.skew_count(nu, &kappa, last);
        }
        self.iterated.insert(key, total);
        total
    }

    /// Number of LR skew tableaux of shape nu/kappa and content mu.
    pub fn skew_count(&mut self, nu: &Partition, kappa: &Partition, mu: &Partition) -> u64 {
        if !nu.contains(kappa) || nu.weight() != kappa.weight() + mu.weight() {
            return 0;
        }
        if mu.is_empty() {
            return u64::from(nu == kappa);
        }
        let key = (nu.clone(), kappa.clone(), mu.clone());
        if let Some(&c) = self.skew.get(&key) {
            return c;
        }

        // Cells in reverse reading order.
        let mut cells = Vec::new();
        for row in 0..nu.len() {
            let lo = kappa.part(row);
            let hi = nu.part(row);
            for col in (lo..hi).rev() {
                cells.push((row, col));
            }
        }

        let nvals = mu.len();
        let mut grid = vec![vec![0usize; nu.part(0)]; nu.len()];
        let mut counts = vec![0usize; nvals + 1];
        let count = fill(&cells, 0, nu, kappa, mu, nvals, &mut grid, &mut counts);
        self.skew.insert(key, count);
        count
    }
}

#[allow(clippy::too_many_arguments)]
fn fill(
    cells: &[(usize, usize)],
    pos: usize,
    nu: &Partition,
    kappa: &Partition,
    mu: &Partition,
    nvals: usize,
    grid: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
) -> u64 {
    if pos == cells.len() {
        return 1;
    }
    let (row, col) = cells[pos];
    // Right neighbor already filled (same row, larger column).
    let right_cap = if col + 1 < nu.part(row) {
        grid[row][col + 1]
    } else {
        usize::MAX
    };
    // Cell above is a constraint only when it lies in the skew part.
    let above = if row > 0 && col >= kappa.part(row - 1) {
        grid[row - 1][col]
    } else {
        0
    };
    let mut total = 0u64;
    for v in above + 1..=nvals.min(right_cap) {
        if counts[v] >= mu.part(v - 1) {
            continue;
        }
        // Lattice word: after placing v, #v's must not exceed #(v-1)'s.
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        grid[row][col] = v;
        counts[v] += 1;
        total += fill(cells, pos + 1, nu, kappa, mu, nvals, grid, counts);
        counts[v] -= 1;
        grid[row][col] = 0;
    }
    total
}

/// One-shot iterated coefficient with a fresh memo.
pub fn lr_coefficient(nu: &Partition, mus: &[Partition]) -> u64 {
    LrCalculator::new().coefficient(nu, mus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn single_factor_is_kronecker_delta() {
        assert_eq!(lr_coefficient(&p(&[3, 1]), &[p(&[3, 1])]), 1);
        assert_eq!(lr_coefficient(&p(&[3, 1]), &[p(&[2, 2])]), 0);
        assert_eq!(lr_coefficient(&Partition::empty(), &[]), 1);
    }

    #[test]
    fn two_boxes() {
        assert_eq!(lr_coefficient(&p(&[2]), &[p(&[1]), p(&[1])]), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &[p(&[1]), p(&[1])]), 1);
        // Weight mismatch.
        assert_eq!(lr_coefficient(&p(&[2, 1]), &[p(&[1]), p(&[1])]), 0);
    }

    #[test]
    fn three_single_boxes() {
        // Standard Young tableaux of shape (2,1): two of them.
        assert_eq!(lr_coefficient(&p(&[2, 1]), &[p(&[1]), p(&[1]), p(&[1])]), 2);
        assert_eq!(lr_coefficient(&p(&[3]), &[p(&[1]), p(&[1]), p(&[1])]), 1);
        assert_eq!(
            lr_coefficient(&p(&[1, 1, 1]), &[p(&[1]), p(&[1]), p(&[1])]),
            1
        );
    }

    #[test]
    fn classic_square_of_two_one() {
        // Multiplicity of (3,2,1) in (2,1)*(2,1); counted by hand.
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &[p(&[2, 1]), p(&[2, 1])]), 2);
        assert_eq!(lr_coefficient(&p(&[4, 2]), &[p(&[2, 1]), p(&[2, 1])]), 1);
        assert_eq!(lr_coefficient(&p(&[2, 2]), &[p(&[2]), p(&[2])]), 1);
    }

    #[test]
    fn empty_factor_is_inert() {
        let nu = p(&[2, 1]);
        let mu = p(&[2, 1]);
        assert_eq!(
            lr_coefficient(&nu, &[mu.clone(), Partition::empty()]),
            lr_coefficient(&nu, &[mu])
        );
    }

    #[test]
    fn symmetric_under_factor_permutation() {
        let nu = p(&[3, 2, 1]);
        let a = p(&[2, 1]);
        let b = p(&[2]);
        let c = p(&[1]);
        let orders: [[&Partition; 3]; 3] = [[&a, &b, &c], [&c, &a, &b], [&b, &c, &a]];
        let vals: Vec<u64> = orders
            .iter()
            .map(|o| lr_coefficient(&nu, &[o[0].clone(), o[1].clone(), o[2].clone()]))
            .collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
        assert!(vals[0] > 0);
    }
}

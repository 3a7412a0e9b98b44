//! Integer partitions and the subset-to-partition translation used to index
//! eigenvalue inequalities.

use std::fmt;

/// Weakly decreasing nonnegative parts, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Does `self` contain `inner` as a subdiagram?
    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len()
            && inner
                .parts
                .iter()
                .enumerate()
                .all(|(i, &p)| p <= self.part(i))
    }

    /// All subdiagrams of `self` with the given weight, in lexicographic
    /// order.
    pub fn sub_partitions_of_weight(&self, weight: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(
            outer: &Partition,
            row: usize,
            remaining: usize,
            max_part: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if remaining == 0 {
                out.push(Partition::new(current.clone()));
                return;
            }
            if row >= outer.len() {
                return;
            }
            let hi = outer.part(row).min(max_part).min(remaining);
            // Rows below can hold at most this much in total.
            for p in (1..=hi).rev() {
                let mut cap = 0usize;
                for r in row + 1..outer.len() {
                    cap += outer.part(r).min(p);
                }
                if remaining > p + cap {
                    continue;
                }
                current.push(p);
                rec(outer, row + 1, remaining - p, p, current, out);
                current.pop();
            }
        }
        if weight == 0 {
            return vec![Partition::empty()];
        }
        rec(self, 0, weight, usize::MAX, &mut current, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partition attached to a subset J = {j_1 < ... < j_k} of {1..m}:
/// (j_k - k, j_{k-1} - (k-1), ..., j_1 - 1).
pub fn partition_of_subset(subset: &[usize]) -> Partition {
    debug_assert!(
        subset.windows(2).all(|w| w[0] < w[1]),
        "subset must be sorted"
    );
    let parts: Vec<usize> = subset
        .iter()
        .enumerate()
        .rev()
        .map(|(idx, &j)| j - (idx + 1))
        .collect();
    Partition::new(parts)
}

/// All k-subsets of {1..m} in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for j in start..=m + 1 - needed {
            current.push(j);
            rec(m, k, j + 1, current, out);
            current.pop();
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > m {
        return out;
    }
    rec(m, k, 1, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_translation() {
        // Initial segments give the empty partition.
        assert_eq!(partition_of_subset(&[1, 2, 3]), Partition::empty());
        // {2,4} in {1..4} -> (2,1).
        assert_eq!(partition_of_subset(&[2, 4]), Partition::new(vec![2, 1]));
        // {m} -> (m-1).
        assert_eq!(partition_of_subset(&[5]), Partition::new(vec![4]));
    }

    #[test]
    fn subset_enumeration_lexicographic() {
        let subs = k_subsets(4, 2);
        assert_eq!(
            subs,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(2, 3).len(), 0);
    }

    #[test]
    fn sub_partitions() {
        let nu = Partition::new(vec![2, 1]);
        assert_eq!(
            nu.sub_partitions_of_weight(1),
            vec![Partition::new(vec![1])]
        );
        let of2 = nu.sub_partitions_of_weight(2);
        assert_eq!(
            of2,
            vec![Partition::new(vec![2]), Partition::new(vec![1, 1])]
        );
        assert_eq!(nu.sub_partitions_of_weight(3), vec![nu.clone()]);
        assert_eq!(nu.sub_partitions_of_weight(0), vec![Partition::empty()]);
        assert!(nu.sub_partitions_of_weight(4).is_empty());
    }

    #[test]
    fn containment() {
        let nu = Partition::new(vec![3, 2]);
        assert!(nu.contains(&Partition::new(vec![2, 2])));
        assert!(nu.contains(&Partition::empty()));
        assert!(!nu.contains(&Partition::new(vec![1, 1, 1])));
        assert!(!nu.contains(&Partition::new(vec![4])));
    }
}

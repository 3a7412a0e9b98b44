//! Ordered eigenvalue lists, with optional exact-rational backing.
//!
//! Spectra produced by the eigensolver are floating; spectra supplied as
//! rational literals stay exact. Feasibility routines work on the exact side
//! whenever it is present and rationalize floats once, at a declared
//! denominator cap.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rationalize, to_f64};

/// Real eigenvalues in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

impl Spectrum {
    /// Floating spectrum; values are sorted into decreasing order.
    pub fn from_f64s(mut values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "spectrum must be nonempty");
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Self {
            values,
            exact: None,
        }
    }

    /// Exact spectrum; values are sorted into decreasing order.
    pub fn from_rationals(mut exact: Vec<BigRational>) -> Self {
        assert!(!exact.is_empty(), "spectrum must be nonempty");
        exact.sort_by(|a, b| b.cmp(a));
        let values = exact.iter().map(to_f64).collect();
        Self {
            values,
            exact: Some(exact),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Number of entries with magnitude above `tol` (exact spectra: nonzero).
    pub fn rank(&self, tol: f64) -> usize {
        match &self.exact {
            Some(ex) => ex.iter().filter(|v| !v.is_zero()).count(),
            None => self.values.iter().filter(|v| v.abs() > tol).count(),
        }
    }

    /// Exact view of the spectrum. Exact values pass through; floats go
    /// through continued-fraction rounding with denominator cap `cap`, with
    /// magnitudes at or below `zero_tol` snapped to zero first.
    pub fn to_exact(&self, cap: u64, zero_tol: f64) -> Vec<BigRational> {
        match &self.exact {
            Some(ex) => ex.clone(),
            None => self
                .values
                .iter()
                .map(|&v| {
                    if v.abs() <= zero_tol {
                        BigRational::zero()
                    } else {
                        rationalize(v, cap)
                    }
                })
                .collect(),
        }
    }

    /// Exact view adjusted so the entries sum to exactly 1.
    ///
    /// Exact spectra must already sum to 1. Floating spectra may deviate by
    /// up to `trace_tol`; the rationalization defect is absorbed into the
    /// largest entry, which keeps exactly-representable small eigenvalues
    /// untouched (they are the ones that sit on tight constraints).
    pub fn to_exact_normalized(
        &self,
        cap: u64,
        zero_tol: f64,
        trace_tol: f64,
    ) -> Result<Vec<BigRational>> {
        let mut ex = self.to_exact(cap, zero_tol);
        let total: BigRational = ex.iter().sum();
        if total.is_zero() {
            return Err(Error::NotNormalized("spectrum sums to 0".into()));
        }
        if ex.iter().any(|v| v.is_negative()) {
            return Err(Error::NotNormalized("spectrum has a negative entry".into()));
        }
        let one = BigRational::from_integer(1.into());
        if self.is_exact() {
            if total != one {
                return Err(Error::NotNormalized(format!(
                    "exact spectrum sums to {total}"
                )));
            }
            return Ok(ex);
        }
        // Gate on the floating data; the extra defect introduced by
        // denominator-capped rationalization is absorbed, not rejected.
        let dev = (self.sum() - 1.0).abs();
        if dev > trace_tol {
            return Err(Error::NotNormalized(format!(
                "spectrum sums to {} (deviation {dev:.3e})",
                self.sum()
            )));
        }
        ex[0] += one - total;
        ex.sort_by(|a, b| b.cmp(a));
        Ok(ex)
    }

    /// Entrywise comparison after zero-padding to a common length.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        let n = self.dim().max(other.dim());
        (0..n).all(|i| {
            let a = self.values.get(i).copied().unwrap_or(0.0);
            let b = other.values.get(i).copied().unwrap_or(0.0);
            (a - b).abs() <= tol
        })
    }
}

/// Does `a` majorize-precede `b` (written a < b): every partial sum of `a`
/// is at most the matching partial sum of `b`, with equal totals.
///
/// Shorter input is zero-padded. Exact when both spectra are exact;
/// otherwise compared with slack `tol`.
pub fn majorizes(a: &Spectrum, b: &Spectrum, tol: f64) -> bool {
    let n = a.dim().max(b.dim());
    match (a.exact(), b.exact()) {
        (Some(ea), Some(eb)) => {
            let mut sa = BigRational::zero();
            let mut sb = BigRational::zero();
            for k in 0..n {
                sa += ea.get(k).cloned().unwrap_or_else(BigRational::zero);
                sb += eb.get(k).cloned().unwrap_or_else(BigRational::zero);
                if k + 1 < n && sa > sb {
                    return false;
                }
            }
            sa == sb
        }
        _ => {
            let mut sa = 0.0;
            let mut sb = 0.0;
            for k in 0..n {
                sa += a.values().get(k).copied().unwrap_or(0.0);
                sb += b.values().get(k).copied().unwrap_or(0.0);
                if k + 1 < n && sa > sb + tol {
                    return false;
                }
            }
            (sa - sb).abs() <= tol
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn sorted_on_construction() {
        let s = Spectrum::from_f64s(vec![0.2, 0.5, 0.3]);
        assert_eq!(s.values(), &[0.5, 0.3, 0.2]);
        let r = Spectrum::from_rationals(vec![ratio(1, 4), ratio(3, 4)]);
        assert_eq!(r.values(), &[0.75, 0.25]);
    }

    #[test]
    fn majorization_extremes() {
        let uniform = Spectrum::from_f64s(vec![1.0 / 3.0; 3]);
        let pure = Spectrum::from_f64s(vec![1.0, 0.0, 0.0]);
        assert!(majorizes(&uniform, &pure, 1e-10));
        assert!(!majorizes(&pure, &uniform, 1e-10));
    }

    #[test]
    fn majorization_first_partial_sum_fails() {
        let a = Spectrum::from_f64s(vec![0.5, 0.5, 0.0]);
        let b = Spectrum::from_f64s(vec![0.4, 0.3, 0.3]);
        assert!(!majorizes(&a, &b, 1e-10));
    }

    #[test]
    fn majorization_pads_shorter() {
        let a = Spectrum::from_rationals(vec![ratio(1, 2), ratio(1, 2)]);
        let b = Spectrum::from_rationals(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]);
        assert!(majorizes(&b, &a, 0.0));
        assert!(!majorizes(&a, &b, 0.0));
    }

    #[test]
    fn exact_normalization() {
        let s = Spectrum::from_f64s(vec![0.75, 0.25]);
        let ex = s.to_exact_normalized(1_000_000, 1e-10, 1e-10).unwrap();
        assert_eq!(ex, vec![ratio(3, 4), ratio(1, 4)]);

        let bad = Spectrum::from_rationals(vec![ratio(1, 2), ratio(1, 4)]);
        assert!(bad.to_exact_normalized(1_000_000, 1e-10, 1e-10).is_err());
    }
}

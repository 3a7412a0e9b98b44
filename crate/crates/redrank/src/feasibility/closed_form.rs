//! Closed-form rank-2 feasibility tests for the (3,6) and (2,4) marginal
//! dimensions, plus the equivalent majorization sandwich for (3,6).
//!
//! These are irredundant low-dimension reductions of the general region
//! test; the general LP path double-checks them in the test suite.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::Spectrum;
use crate::rational::ratio;
use crate::tol::Tolerances;

fn exact_pair(
    a: &Spectrum,
    b: &Spectrum,
    da: usize,
    db: usize,
    tols: &Tolerances,
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    if a.dim() != da || b.dim() != db {
        return Err(Error::Dimension(format!(
            "closed form needs spectra of dimensions ({da},{db}), got ({},{})",
            a.dim(),
            b.dim()
        )));
    }
    let ea = a.to_exact(tols.rat_den_cap, tols.rank_tol);
    let eb = b.to_exact(tols.rat_den_cap, tols.rank_tol);
    let sa: BigRational = ea.iter().sum();
    let sb: BigRational = eb.iter().sum();
    if sa != sb {
        return Err(Error::NotNormalized(format!(
            "spectra have different totals {sa} and {sb}"
        )));
    }
    Ok((ea, eb))
}

/// Rank-2 feasibility for a 3-dimensional marginal against a 6-dimensional
/// one: three two-sided inequality rows on the sorted spectra (with equal
/// totals as a precondition).
pub fn rank2_feasible_3x6(a: &Spectrum, b: &Spectrum, tols: &Tolerances) -> Result<bool> {
    let (a, b) = exact_pair(a, b, 3, 6, tols)?;
    let two = ratio(2, 1);
    let row1 = &b[2] + &b[5] <= a[0] && &b[3] + &b[4] <= a[0] && a[0] <= &b[0] + &b[1];
    let mid_lo = (&b[2] + &b[3] + &b[4] + &b[5]) / &two;
    let mid_hi = (&b[0] + &b[1] + &b[2] + &b[3]) / &two;
    let row2 = mid_lo <= a[1] && a[1] <= mid_hi;
    let row3 = &b[4] + &b[5] <= a[2] && a[2] <= &b[0] + &b[3] && a[2] <= &b[1] + &b[2];
    Ok(row1 && row2 && row3)
}

/// Rank-2 feasibility for a 2-dimensional marginal against a 4-dimensional
/// one: the (3,6) rows with a_3 = b_5 = b_6 = 0 collapse to two.
pub fn rank2_feasible_2x4(a: &Spectrum, b: &Spectrum, tols: &Tolerances) -> Result<bool> {
    let (a, b) = exact_pair(a, b, 2, 4, tols)?;
    let lower = (&b[2] + &b[3]) / ratio(2, 1);
    Ok(lower <= a[1] && a[0] <= &b[0] + &b[1])
}

/// Lower majorization bound for the (3,6) region: `a` is rank-2 feasible
/// against `b` if and only if c < a < (b1+b2, b3+b4, b5+b6), where c is the
/// vector returned here. Requires `b` to sum to exactly 1 (the branch
/// thresholds sit at 1/3).
pub fn rank2_majorization_lower_3x6(b: &Spectrum, tols: &Tolerances) -> Result<Spectrum> {
    if b.dim() != 6 {
        return Err(Error::Dimension(format!(
            "majorization bound needs a 6-dimensional spectrum, got {}",
            b.dim()
        )));
    }
    let eb = b.to_exact_normalized(tols.rat_den_cap, tols.rank_tol, tols.trace_tol)?;
    let third = ratio(1, 3);
    let two = ratio(2, 1);
    let b45 = &eb[3] + &eb[4];
    let b23 = &eb[1] + &eb[2];
    let c = if b45 >= third {
        let half_rest = (&eb[0] + &eb[1] + &eb[2] + &eb[5]) / &two;
        vec![b45, half_rest.clone(), half_rest]
    } else if b23 >= third {
        vec![third.clone(), third.clone(), third]
    } else {
        let half_rest = (&eb[0] + &eb[3] + &eb[4] + &eb[5]) / &two;
        vec![half_rest.clone(), half_rest, b23]
    };
    Ok(Spectrum::from_rationals(c))
}

/// Upper majorization bound (b1+b2, b3+b4, b5+b6) for the same region.
pub fn rank2_majorization_upper_3x6(b: &Spectrum, tols: &Tolerances) -> Result<Spectrum> {
    if b.dim() != 6 {
        return Err(Error::Dimension(format!(
            "majorization bound needs a 6-dimensional spectrum, got {}",
            b.dim()
        )));
    }
    let eb = b.to_exact(tols.rat_den_cap, tols.rank_tol);
    Ok(Spectrum::from_rationals(vec![
        &eb[0] + &eb[1],
        &eb[2] + &eb[3],
        &eb[4] + &eb[5],
    ]))
}

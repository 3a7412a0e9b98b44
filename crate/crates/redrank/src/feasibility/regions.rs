//! Feasible c-regions for prescribed marginal spectra, and the minimal-rank
//! search over them.
//!
//! A joint state of rank at most r with marginal spectra a (length m) and b
//! (length n >= m) exists exactly when some decreasing nonnegative c with
//! sum 1/r satisfies every inequality indexed by the (m, r) tuples on the
//! a side and, with c zero-padded to length n, every inequality indexed by
//! the (n, r) tuples on the b side. All arithmetic here is exact rational.

use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Zero;

use crate::combinat::{klyachko_inequalities, IndexTuple};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Spectrum};
use crate::rational::ratio;
use crate::tol::Tolerances;

use super::simplex::lp_feasible;
use super::system::InequalitySystem;

fn check_spectrum_vector(v: &[BigRational], what: &str) -> Result<()> {
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotNormalized(format!("{what} is not decreasing")));
    }
    if v.last().map(|x| x < &BigRational::zero()).unwrap_or(false) {
        return Err(Error::NotNormalized(format!("{what} has negative entries")));
    }
    let total: BigRational = v.iter().sum();
    if total != ratio(1, 1) {
        return Err(Error::NotNormalized(format!(
            "{what} sums to {total}, expected 1"
        )));
    }
    Ok(())
}

/// Constraints common to both regions: c decreasing, nonnegative, summing
/// to 1/r.
fn base_system(m: usize, r: usize) -> InequalitySystem {
    let mut sys = InequalitySystem::new(m);
    sys.push_equality(vec![ratio(1, 1); m], ratio(1, r as i64), "sum c = 1/r");
    for i in 0..m.saturating_sub(1) {
        let mut row = vec![BigRational::zero(); m];
        row[i] = ratio(-1, 1);
        row[i + 1] = ratio(1, 1);
        sys.push_inequality(
            row,
            BigRational::zero(),
            format!("c{} >= c{}", i + 1, i + 2),
        );
    }
    let mut row = vec![BigRational::zero(); m];
    row[m - 1] = ratio(-1, 1);
    sys.push_inequality(row, BigRational::zero(), format!("c{m} >= 0"));
    sys
}

/// The region for the a side: every tuple inequality with all r summand
/// spectra equal to c.
pub fn build_pr(a: &[BigRational], r: usize, tuples: &[IndexTuple]) -> Result<InequalitySystem> {
    check_spectrum_vector(a, "a")?;
    let m = a.len();
    let mut sys = base_system(m, r);
    for t in tuples {
        let mut row = vec![BigRational::zero(); m];
        for j_set in &t.js {
            for &i in j_set {
                row[i - 1] -= ratio(1, 1);
            }
        }
        let lhs: BigRational = t.j0.iter().map(|&i| a[i - 1].clone()).sum();
        sys.push_inequality(row, -lhs, format!("P: {}", t.canonical_text()));
    }
    Ok(sys)
}

/// The region for the b side: tuples over {1..n} evaluated with c padded by
/// zeros beyond index m. Tuples touching only padded indices degenerate to
/// constant sign conditions on b and are kept as such.
pub fn build_qr(
    b: &[BigRational],
    r: usize,
    m: usize,
    tuples: &[IndexTuple],
) -> Result<InequalitySystem> {
    check_spectrum_vector(b, "b")?;
    let n = b.len();
    if m > n {
        return Err(Error::Dimension(format!(
            "padded region needs m <= n, got m={m}, n={n}"
        )));
    }
    let mut sys = base_system(m, r);
    for t in tuples {
        let mut row = vec![BigRational::zero(); m];
        for j_set in &t.js {
            for &i in j_set {
                if i <= m {
                    row[i - 1] -= ratio(1, 1);
                }
            }
        }
        let lhs: BigRational = t.j0.iter().map(|&i| b[i - 1].clone()).sum();
        sys.push_inequality(row, -lhs, format!("Q: {}", t.canonical_text()));
    }
    Ok(sys)
}

/// Exact view of a marginal spectrum: snap rank-level zeros, normalize to
/// unit sum.
pub fn exact_marginal(s: &Spectrum, tols: &Tolerances) -> Result<Vec<BigRational>> {
    s.to_exact_normalized(tols.rat_den_cap, tols.rank_tol, tols.trace_tol)
}

fn nonzero_count(v: &[BigRational]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

fn padded_equal(a: &[BigRational], b: &[BigRational]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        x == y
    })
}

/// Result of the minimal-rank search.
#[derive(Debug, Clone)]
pub struct MinRankResult {
    /// Smallest achievable rank of a joint state with the two marginals.
    pub rank: usize,
    /// Exact c certifying feasibility at that rank. Lives on the smaller
    /// side: its length is min(dim a, dim b).
    pub witness: Vec<BigRational>,
    /// Inequality rows in the last system solved (0 when no LP ran).
    pub inequality_count: usize,
}

/// Smallest r such that some joint state of rank r has marginal spectra a
/// and b.
///
/// Floating spectra are rationalized first (denominator cap
/// `tols.rat_den_cap`), so all decisions are exact. The search compares
/// padded spectra for r = 1, runs the exact feasibility test for
/// 1 < r < r_1, and stops at r_1 = max(rank a, rank b), which is always
/// achievable; the witness there is the column-spectrum average of the
/// cyclic ladder decomposition, so no inequality generation is needed at
/// the top.
pub fn min_rank(a: &Spectrum, b: &Spectrum, tols: &Tolerances) -> Result<MinRankResult> {
    let mut ea = exact_marginal(a, tols)?;
    let mut eb = exact_marginal(b, tols)?;
    if ea.len() > eb.len() {
        std::mem::swap(&mut ea, &mut eb);
    }
    let (m, n) = (ea.len(), eb.len());

    if padded_equal(&ea, &eb) {
        return Ok(MinRankResult {
            rank: 1,
            witness: ea,
            inequality_count: 0,
        });
    }

    let ra = nonzero_count(&ea);
    let rb = nonzero_count(&eb);
    let r1 = ra.max(rb);
    debug_assert!(r1 >= 2, "distinct padded spectra force r1 >= 2");

    for r in 2..r1 {
        let tuples_a = klyachko_inequalities(m, r)?;
        let tuples_b = klyachko_inequalities(n, r)?;
        let mut sys = build_pr(&ea, r, &tuples_a)?;
        sys.extend(&build_qr(&eb, r, m, &tuples_b)?);
        let res = lp_feasible(&sys);
        if res.feasible {
            return Ok(MinRankResult {
                rank: r,
                witness: res.witness.unwrap(),
                inequality_count: tuples_a.len() + tuples_b.len(),
            });
        }
    }

    Ok(MinRankResult {
        rank: r1,
        witness: ladder_average_witness(&ea, &eb, m),
        inequality_count: 0,
    })
}

/// Averaged column spectra of the cyclic ladder decomposition at r = r_1.
///
/// Term l of the ladder pairs the larger-rank eigenvalues mu with the
/// smaller-rank eigenvalues mu_hat along a cyclic shift, so its matrix has
/// singular values sqrt(mu_{shift(l,i)} mu_hat_i). Averaging the sorted
/// squared-singular-value vectors over l yields a point satisfying every
/// tuple inequality on both sides (cyclic symmetrization preserves them),
/// hence an exact witness at r_1.
fn ladder_average_witness(ea: &[BigRational], eb: &[BigRational], m: usize) -> Vec<BigRational> {
    let mut hi: Vec<BigRational> = ea.iter().filter(|x| !x.is_zero()).cloned().collect();
    let mut lo: Vec<BigRational> = eb.iter().filter(|x| !x.is_zero()).cloned().collect();
    if hi.len() < lo.len() {
        std::mem::swap(&mut hi, &mut lo);
    }
    let (r1, r2) = (hi.len(), lo.len());
    let mut acc = vec![BigRational::zero(); m];
    for l in 0..r1 {
        let mut col: Vec<BigRational> = (0..r2).map(|i| &hi[(i + l) % r1] * &lo[i]).collect();
        col.sort_by(|x, y| y.cmp(x));
        for (i, v) in col.into_iter().enumerate() {
            acc[i] += v;
        }
    }
    let r1_rat = ratio(r1 as i64, 1);
    acc.into_iter().map(|v| v / &r1_rat).collect()
}

/// Full region test with diagnostics: the assembled system, an exact
/// witness when feasible, and the inequalities tight at that witness.
#[derive(Debug, Clone)]
pub struct RegionCheck {
    pub feasible: bool,
    pub witness: Option<Vec<BigRational>>,
    /// Labels of inequalities satisfied with equality at the witness.
    pub binding: Vec<String>,
    pub inequality_count: usize,
}

/// Decide membership of (a, b) in the rank-r region by solving the full
/// system (no shortcuts), reporting binding constraints at the witness.
pub fn region_check(
    a: &Spectrum,
    b: &Spectrum,
    r: usize,
    tols: &Tolerances,
) -> Result<RegionCheck> {
    if r == 0 {
        return Err(Error::Dimension("rank bound must be at least 1".into()));
    }
    let mut ea = exact_marginal(a, tols)?;
    let mut eb = exact_marginal(b, tols)?;
    if ea.len() > eb.len() {
        std::mem::swap(&mut ea, &mut eb);
    }
    let (m, n) = (ea.len(), eb.len());
    let tuples_a = klyachko_inequalities(m, r)?;
    let tuples_b = klyachko_inequalities(n, r)?;
    let mut sys = build_pr(&ea, r, &tuples_a)?;
    sys.extend(&build_qr(&eb, r, m, &tuples_b)?);
    let res = lp_feasible(&sys);
    let binding = res
        .witness
        .as_ref()
        .map(|w| sys.binding_at(w))
        .unwrap_or_default();
    Ok(RegionCheck {
        feasible: res.feasible,
        witness: res.witness,
        binding,
        inequality_count: tuples_a.len() + tuples_b.len(),
    })
}

/// Is there a joint state of rank at most `r` with these marginal spectra?
pub fn rank_feasible(a: &Spectrum, b: &Spectrum, r: usize, tols: &Tolerances) -> Result<bool> {
    if r == 0 {
        return Ok(false);
    }
    let mut ea = exact_marginal(a, tols)?;
    let mut eb = exact_marginal(b, tols)?;
    if ea.len() > eb.len() {
        std::mem::swap(&mut ea, &mut eb);
    }
    if r == 1 {
        return Ok(padded_equal(&ea, &eb));
    }
    let r1 = nonzero_count(&ea).max(nonzero_count(&eb));
    if r >= r1 {
        return Ok(true);
    }
    let (m, n) = (ea.len(), eb.len());
    let tuples_a = klyachko_inequalities(m, r)?;
    let tuples_b = klyachko_inequalities(n, r)?;
    let mut sys = build_pr(&ea, r, &tuples_a)?;
    sys.extend(&build_qr(&eb, r, m, &tuples_b)?);
    Ok(lp_feasible(&sys).feasible)
}

/// Achievable ranks over prescribed marginal spectra, as a contiguous range.
pub fn rank_range_spectra(
    a: &Spectrum,
    b: &Spectrum,
    tols: &Tolerances,
) -> Result<RangeInclusive<usize>> {
    let min = min_rank(a, b, tols)?.rank;
    let max = a.rank(tols.rank_tol) * b.rank(tols.rank_tol);
    Ok(min..=max)
}

/// Achievable ranks of joint states with the given reduced states.
pub fn rank_range(
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    tols: &Tolerances,
) -> Result<RangeInclusive<usize>> {
    rank_range_spectra(&sigma1.spectrum(tols), &sigma2.spectrum(tols), tols)
}

//! Randomized search for a rank-bounded joint state with prescribed
//! marginals.
//!
//! Parametrize rho = V V* with V an (mn) x k complex matrix and minimize
//!   f(V) = || tr_1(V V*) - sigma2 ||_F^2 + || tr_2(V V*) - sigma1 ||_F^2.
//! The gradient in the conjugate coordinates is 2 (I (x) R1 + R2 (x) I) V
//! with R1, R2 the marginal residuals; it is applied blockwise, never
//! forming the Kronecker factor. Along any direction f is an exact quartic
//! in the step, so the line search minimizes a cubic derivative by
//! bisection. Restarts are seeded independently and evaluated in fixed-size
//! waves; the winner is the lowest objective (ties by restart index), so
//! the result is identical across thread counts and with the `parallel`
//! feature off.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::par;
use crate::sample::random_vector;
use crate::tol::{Tolerances, WitnessOptions};

/// Columns of V; each is a vector in C^{mn}.
pub(crate) type Columns = Vec<Vec<C64>>;

struct Problem {
    m: usize,
    n: usize,
    sigma1: ComplexMatrix,
    sigma2: ComplexMatrix,
}

impl Problem {
    /// Marginals of sum_j v_j v_j^* via the matricized columns.
    fn residuals(&self, cols: &Columns) -> (ComplexMatrix, ComplexMatrix) {
        let (m, n) = (self.m, self.n);
        let mut tr1 = ComplexMatrix::zeros(n, n);
        let mut tr2 = ComplexMatrix::zeros(m, m);
        for v in cols {
            accumulate_marginals(v, m, n, &mut tr1, &mut tr2);
        }
        (tr1.sub(&self.sigma2), tr2.sub(&self.sigma1))
    }

    fn objective(&self, cols: &Columns) -> f64 {
        let (r1, r2) = self.residuals(cols);
        frob_sq(&r1) + frob_sq(&r2)
    }

    /// Gradient 2 (I (x) R1 + R2 (x) I) V, blockwise per column.
    fn gradient(&self, cols: &Columns, r1: &ComplexMatrix, r2: &ComplexMatrix) -> Columns {
        let (m, n) = (self.m, self.n);
        cols.iter()
            .map(|v| {
                let mut g = vec![C64::new(0.0, 0.0); m * n];
                for b in 0..m {
                    for p in 0..n {
                        let mut acc = C64::new(0.0, 0.0);
                        // (I (x) R1) v : R1 acts inside block b.
                        for q in 0..n {
                            acc += r1[(p, q)] * v[b * n + q];
                        }
                        // (R2 (x) I) v : R2 mixes blocks.
                        for c in 0..m {
                            acc += r2[(b, c)] * v[c * n + p];
                        }
                        g[b * n + p] = acc * 2.0;
                    }
                }
                g
            })
            .collect()
    }
}

/// Add the marginal contributions of one rank-one term v v^*.
fn accumulate_marginals(
    v: &[C64],
    m: usize,
    n: usize,
    tr1: &mut ComplexMatrix,
    tr2: &mut ComplexMatrix,
) {
    // tr_2 contribution: (W W*)_{bc} = <row_c, row_b>.
    for b in 0..m {
        for c in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..n {
                acc += v[b * n + p] * v[c * n + p].conj();
            }
            tr2[(b, c)] += acc;
        }
    }
    // tr_1 contribution: (W^t conj(W))_{pq} = sum_b v_{bp} conj(v_{bq}).
    for p in 0..n {
        for q in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..m {
                acc += v[b * n + p] * v[b * n + q].conj();
            }
            tr1[(p, q)] += acc;
        }
    }
}

fn frob_sq(a: &ComplexMatrix) -> f64 {
    a.entries().iter().map(|z| z.norm_sqr()).sum()
}

fn inner_re(a: &Columns, b: &Columns) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y))
        .map(|(p, q)| (p.conj() * q).re)
        .sum()
}

fn axpy(y: &mut Columns, alpha: f64, x: &Columns) {
    for (yc, xc) in y.iter_mut().zip(x) {
        for (yv, xv) in yc.iter_mut().zip(xc) {
            *yv += xv * alpha;
        }
    }
}

/// Quartic coefficients of t -> f(V + t D).
fn quartic_along(p: &Problem, cols: &Columns, dir: &Columns) -> [f64; 5] {
    let (m, n) = (p.m, p.n);
    let (r1, r2) = p.residuals(cols);
    // First-order terms S_i = d/dt marginals at t=0, second-order T_i.
    let mut s1 = ComplexMatrix::zeros(n, n);
    let mut s2 = ComplexMatrix::zeros(m, m);
    let mut t1 = ComplexMatrix::zeros(n, n);
    let mut t2 = ComplexMatrix::zeros(m, m);
    for (v, d) in cols.iter().zip(dir) {
        cross_marginals(v, d, m, n, &mut s1, &mut s2);
        accumulate_marginals(d, m, n, &mut t1, &mut t2);
    }
    let dot = |a: &ComplexMatrix, b: &ComplexMatrix| -> f64 {
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| (x.conj() * y).re)
            .sum()
    };
    [
        frob_sq(&r1) + frob_sq(&r2),
        2.0 * (dot(&r1, &s1) + dot(&r2, &s2)),
        frob_sq(&s1) + frob_sq(&s2) + 2.0 * (dot(&r1, &t1) + dot(&r2, &t2)),
        2.0 * (dot(&s1, &t1) + dot(&s2, &t2)),
        frob_sq(&t1) + frob_sq(&t2),
    ]
}

/// Marginals of v d^* + d v^*, accumulated.
fn cross_marginals(
    v: &[C64],
    d: &[C64],
    m: usize,
    n: usize,
    s1: &mut ComplexMatrix,
    s2: &mut ComplexMatrix,
) {
    for b in 0..m {
        for c in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..n {
                acc += v[b * n + p] * d[c * n + p].conj() + d[b * n + p] * v[c * n + p].conj();
            }
            s2[(b, c)] += acc;
        }
    }
    for p in 0..n {
        for q in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..m {
                acc += v[b * n + p] * d[b * n + q].conj() + d[b * n + p] * v[b * n + q].conj();
            }
            s1[(p, q)] += acc;
        }
    }
}

/// Positive minimizer of the quartic along a descent direction, by
/// bisection on the cubic derivative.
fn line_search(q: &[f64; 5]) -> f64 {
    let deriv = |t: f64| q[1] + 2.0 * q[2] * t + 3.0 * q[3] * t * t + 4.0 * q[4] * t * t * t;
    if deriv(0.0) >= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    let mut grow = 0;
    while deriv(hi) < 0.0 && grow < 200 {
        hi *= 2.0;
        grow += 1;
    }
    if deriv(hi) < 0.0 {
        return hi;
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// One restart: nonlinear conjugate gradient with exact quartic line search.
fn run_restart(p: &Problem, k: usize, iters: usize, seed: u64) -> (f64, Columns) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = p.m * p.n;
    let mut cols: Columns = (0..k).map(|_| random_vector(&mut rng, d)).collect();
    // Unit total trace as the starting scale.
    let tr: f64 = cols.iter().flatten().map(|z| z.norm_sqr()).sum();
    let scale = 1.0 / tr.sqrt();
    for c in cols.iter_mut().flatten() {
        *c *= scale;
    }

    let (mut r1, mut r2) = p.residuals(&cols);
    let mut grad = p.gradient(&cols, &r1, &r2);
    let mut dir: Columns = grad
        .iter()
        .map(|c| c.iter().map(|z| -z).collect())
        .collect();
    let mut g_sq = inner_re(&grad, &grad);
    let mut best = frob_sq(&r1) + frob_sq(&r2);
    let mut stall = 0usize;

    for it in 0..iters {
        if best < 1e-28 || g_sq < 1e-30 {
            break;
        }
        let q = quartic_along(p, &cols, &dir);
        let t = line_search(&q);
        if t <= 0.0 {
            // Not a descent direction; restart CG from steepest descent.
            dir = grad
                .iter()
                .map(|c| c.iter().map(|z| -z).collect())
                .collect();
            continue;
        }
        axpy(&mut cols, t, &dir);
        let res = p.residuals(&cols);
        r1 = res.0;
        r2 = res.1;
        let f = frob_sq(&r1) + frob_sq(&r2);
        let new_grad = p.gradient(&cols, &r1, &r2);
        let new_g_sq = inner_re(&new_grad, &new_grad);
        // Polak-Ribiere+ with periodic restart.
        let mut beta = (new_g_sq - inner_re(&new_grad, &grad)) / g_sq;
        if beta < 0.0 || (it + 1) % 50 == 0 {
            beta = 0.0;
        }
        for (dc, gc) in dir.iter_mut().zip(&new_grad) {
            for (dv, gv) in dc.iter_mut().zip(gc) {
                *dv = -gv + *dv * beta;
            }
        }
        grad = new_grad;
        g_sq = new_g_sq;

        if f < best * (1.0 - 1e-12) {
            stall = 0;
        } else {
            stall += 1;
            if stall > 60 {
                break;
            }
        }
        best = best.min(f);
    }
    (p.objective(&cols), cols)
}

/// Search for columns V with f(V) below `tols.oracle_tol`. Returns the
/// winning columns and their objective, or None after all restarts fail.
pub(crate) fn witness_vectors(
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    k: usize,
    opts: &WitnessOptions,
    tols: &Tolerances,
) -> Option<(Columns, f64)> {
    assert!(k >= 1, "witness rank must be at least 1");
    let p = Problem {
        m: sigma1.dim(),
        n: sigma2.dim(),
        sigma1: sigma1.matrix().clone(),
        sigma2: sigma2.matrix().clone(),
    };
    let wave = opts.wave.max(1);
    let mut start = 0usize;
    while start < opts.max_restarts {
        let count = wave.min(opts.max_restarts - start);
        let results = par::map_indices(0..count, |i| {
            let idx = start + i;
            let seed = opts
                .seed
                .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(idx as u64 + 1));
            run_restart(&p, k, opts.iters, seed)
        });
        let winner = results
            .into_iter()
            .enumerate()
            .filter(|(_, (obj, _))| *obj < tols.oracle_tol)
            .min_by(|(i, (a, _)), (j, (b, _))| a.partial_cmp(b).unwrap().then(i.cmp(j)));
        if let Some((_, (obj, cols))) = winner {
            return Some((cols, obj));
        }
        start += count;
    }
    None
}

/// Build the density matrix sum_j v_j v_j^* from witness columns.
pub(crate) fn state_from_columns(cols: &Columns, m: usize, n: usize) -> DensityMatrix {
    let d = m * n;
    let mut mat = ComplexMatrix::zeros(d, d);
    for v in cols {
        for i in 0..d {
            for j in 0..d {
                mat[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    let tr = mat.trace().re;
    DensityMatrix::new_unchecked(mat.scale_re(1.0 / tr).hermitize(), Some((m, n)))
}

/// Randomized witness: a state of rank at most `k` whose marginals match
/// `sigma1` and `sigma2`, or None when every restart fails to converge.
pub fn numerical_witness(
    sigma1: &DensityMatrix,
    sigma2: &DensityMatrix,
    k: usize,
    opts: &WitnessOptions,
    tols: &Tolerances,
) -> Option<DensityMatrix> {
    witness_vectors(sigma1, sigma2, k, opts, tols)
        .map(|(cols, _)| state_from_columns(&cols, sigma1.dim(), sigma2.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_norm;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let t = tols();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s1 = sample::random_density(&mut rng, 2, &t);
        let s2 = sample::random_density(&mut rng, 3, &t);
        let p = Problem {
            m: 2,
            n: 3,
            sigma1: s1.matrix().clone(),
            sigma2: s2.matrix().clone(),
        };
        let cols: Columns = (0..2).map(|_| random_vector(&mut rng, 6)).collect();
        let dir: Columns = (0..2).map(|_| random_vector(&mut rng, 6)).collect();
        let (r1, r2) = p.residuals(&cols);
        let g = p.gradient(&cols, &r1, &r2);
        // g holds df/d(conj V); the directional derivative is 2 Re <g, d>.
        let analytic = 2.0 * inner_re(&g, &dir);
        let eps = 1e-6;
        let mut plus = cols.clone();
        axpy(&mut plus, eps, &dir);
        let mut minus = cols.clone();
        axpy(&mut minus, -eps, &dir);
        let numeric = (p.objective(&plus) - p.objective(&minus)) / (2.0 * eps);
        assert!(
            (analytic - numeric).abs() <= 1e-5 * (1.0 + analytic.abs()),
            "analytic {analytic}, numeric {numeric}"
        );
        // The quartic model reproduces the objective along the ray.
        let q = quartic_along(&p, &cols, &dir);
        for t_step in [0.1, 0.7, 1.9] {
            let model = q[0]
                + q[1] * t_step
                + q[2] * t_step * t_step
                + q[3] * t_step.powi(3)
                + q[4] * t_step.powi(4);
            let mut moved = cols.clone();
            axpy(&mut moved, t_step, &dir);
            let actual = p.objective(&moved);
            assert!((model - actual).abs() <= 1e-9 * (1.0 + actual));
        }
    }

    #[test]
    fn full_rank_witness_always_converges() {
        let t = tols();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s1 = sample::random_density(&mut rng, 2, &t);
        let s2 = sample::random_density(&mut rng, 3, &t);
        let opts = WitnessOptions::with_seed(11);
        let rho = numerical_witness(&s1, &s2, 6, &opts, &t).expect("k = mn always succeeds");
        let tr1 = rho.partial_trace_1().unwrap();
        assert!(tr1.matrix().approx_eq(s2.matrix(), 1e-6));
    }

    #[test]
    fn rank_one_mismatch_fails_every_restart() {
        let t = tols();
        let s1 = DensityMatrix::from_diag(&[0.75, 0.25], &t).unwrap();
        let s2 = DensityMatrix::from_diag(&[0.5, 0.3, 0.2], &t).unwrap();
        let opts = WitnessOptions {
            max_restarts: 6,
            iters: 800,
            seed: 5,
            wave: 3,
        };
        assert!(numerical_witness(&s1, &s2, 1, &opts, &t).is_none());
    }

    #[test]
    fn waves_are_thread_count_invariant() {
        let t = tols();
        let s1 = DensityMatrix::from_diag(&[0.6, 0.4], &t).unwrap();
        let s2 = DensityMatrix::from_diag(&[0.5, 0.5], &t).unwrap();
        let opts = WitnessOptions::with_seed(42);
        let a = witness_vectors(&s1, &s2, 2, &opts, &t).unwrap();
        let b = witness_vectors(&s1, &s2, 2, &opts, &t).unwrap();
        assert_eq!(a.1, b.1);
        for (ca, cb) in a.0.iter().zip(&b.0) {
            for (x, y) in ca.iter().zip(cb) {
                assert_eq!(x, y);
            }
        }
        assert!(a.0.iter().all(|c| vec_norm(c) > 0.0));
    }
}

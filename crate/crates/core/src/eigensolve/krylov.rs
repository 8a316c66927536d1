//! Block Krylov-Schur with thick restart for the largest eigenvalues of a
//! symmetric operator, full reorthogonalization.

use faer::linalg::matmul::matmul;
use faer::{Accum, Mat, MatMut, MatRef, Par};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(super) trait Operator {
    fn dim(&self) -> usize;
    /// `out = T x` column by column
    fn apply(&self, x: MatRef<'_, f64>, out: MatMut<'_, f64>);
}

pub(super) struct KsParams {
    pub k: usize,
    pub block: usize,
    pub basis: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

pub(super) struct KsOutput {
    /// largest Ritz values, descending
    pub theta: Vec<f64>,
    /// matching Ritz vectors (columns)
    pub vectors: Mat<f64>,
    pub residuals: Vec<f64>,
    pub restarts: usize,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

/// `w ← w - V Vᵀ w` twice; returns the accumulated coefficients.
fn project_out(v: MatRef<'_, f64>, w: &mut Mat<f64>) -> Mat<f64> {
    let mut total = Mat::<f64>::zeros(v.ncols(), w.ncols());
    if v.ncols() == 0 {
        return total;
    }
    let mut h = Mat::<f64>::zeros(v.ncols(), w.ncols());
    for _ in 0..2 {
        matmul(h.as_mut(), Accum::Replace, v.transpose(), w.as_ref(), 1.0, Par::Seq);
        matmul(w.as_mut(), Accum::Add, v, h.as_ref(), -1.0, Par::Seq);
        total += &h;
    }
    total
}

/// Orthonormalizes the columns of `w` (already orthogonal to `v`). Columns
/// that collapse are replaced by random vectors orthogonal to everything so
/// the basis keeps growing; their `R` entries are left at zero.
fn block_qr(v: MatRef<'_, f64>, w: &mut Mat<f64>, rng: &mut ChaCha8Rng) -> Mat<f64> {
    let b = w.ncols();
    let n = w.nrows();
    let mut r = Mat::<f64>::zeros(b, b);
    for c in 0..b {
        let orig = dot(w.col_as_slice(c), w.col_as_slice(c)).sqrt();
        for _ in 0..2 {
            for d in 0..c {
                let (left, right) = w.as_mut().split_at_col_mut(c);
                let wd = left.col(d);
                let wd: Vec<f64> = (0..n).map(|i| wd[i]).collect();
                let mut wc = right.col_mut(0);
                let mut s = 0.0;
                for i in 0..n {
                    s += wd[i] * wc[i];
                }
                for i in 0..n {
                    wc[i] -= s * wd[i];
                }
                r[(d, c)] += s;
            }
        }
        let nrm = dot(w.col_as_slice(c), w.col_as_slice(c)).sqrt();
        if nrm > 1e-12 * orig && nrm > f64::MIN_POSITIVE {
            r[(c, c)] = nrm;
            w.col_as_slice_mut(c).iter_mut().for_each(|x| *x /= nrm);
            continue;
        }
        // collapse: fresh direction
        for d in 0..c {
            r[(d, c)] = 0.0;
        }
        let mut fresh = Mat::<f64>::from_fn(n, 1, |_, _| rng.random_range(-1.0..1.0));
        project_out(v, &mut fresh);
        for _ in 0..2 {
            for d in 0..c {
                let s = dot(w.col_as_slice(d), fresh.col_as_slice(0));
                let wd: Vec<f64> = w.col_as_slice(d).to_vec();
                axpy(-s, &wd, fresh.col_as_slice_mut(0));
            }
        }
        let fn_ = dot(fresh.col_as_slice(0), fresh.col_as_slice(0)).sqrt();
        let dst = w.col_as_slice_mut(c);
        dst.copy_from_slice(fresh.col_as_slice(0));
        dst.iter_mut().for_each(|x| *x /= fn_);
    }
    r
}

/// Runs until the `check` callback reports all `k` residuals `≤ tol`.
///
/// `check(theta, vectors)` receives the current wanted Ritz pairs and
/// returns one residual per pair in whatever norm the caller certifies.
pub(super) fn krylov_schur(
    op: &dyn Operator,
    params: &KsParams,
    tol: f64,
    start: Option<MatRef<'_, f64>>,
    check: &mut dyn FnMut(&[f64], MatRef<'_, f64>) -> Vec<f64>,
) -> KsOutput {
    let n = op.dim();
    let b = params.block;
    let k = params.k;
    let m = params.basis;
    assert!(m % b == 0 && m + b <= n && k + b <= m);
    let steps = ((m - k) / (2 * b)).max(1);
    let keep = m - steps * b;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut v = Mat::<f64>::zeros(n, m + b);
    let mut first = Mat::<f64>::from_fn(n, b, |_, _| rng.random_range(-1.0..1.0));
    if let Some(s) = start {
        for c in 0..s.ncols() {
            for i in 0..n {
                first[(i, c % b)] += s[(i, c)];
            }
        }
    }
    block_qr(v.as_ref().subcols(0, 0), &mut first, &mut rng);
    v.as_mut().subcols_mut(0, b).copy_from(first.as_ref());

    let mut h = DMatrix::<f64>::zeros(m + b, m);
    let mut j = 0;
    let mut restarts = 0;
    let mut best = f64::INFINITY;
    let mut stale = 0;
    let mut w = Mat::<f64>::zeros(n, b);

    loop {
        while j < m {
            op.apply(v.as_ref().subcols(j, b), w.as_mut());
            let coef = project_out(v.as_ref().subcols(0, j + b), &mut w);
            let r = block_qr(v.as_ref().subcols(0, j + b), &mut w, &mut rng);
            for c in 0..b {
                for row in 0..j + b {
                    h[(row, j + c)] = coef[(row, c)];
                }
                for row in 0..b {
                    h[(j + b + row, j + c)] = r[(row, c)];
                }
            }
            v.as_mut().subcols_mut(j + b, b).copy_from(w.as_ref());
            j += b;
        }

        let s = h.view((0, 0), (m, m)).into_owned();
        let s = 0.5 * (&s + s.transpose());
        let eig = SymmetricEigen::new(s);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &c| eig.eigenvalues[c].total_cmp(&eig.eigenvalues[a]));
        let theta: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let y = DMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);

        let yk = Mat::<f64>::from_fn(m, keep, |r, c| y[(r, c)]);
        let mut ritz = Mat::<f64>::zeros(n, keep);
        matmul(ritz.as_mut(), Accum::Replace, v.as_ref().subcols(0, m), yk.as_ref(), 1.0, Par::Seq);

        let res = check(&theta[..k], ritz.as_ref().subcols(0, k));
        let worst = res.iter().copied().fold(0.0, f64::max);
        if worst <= tol {
            return KsOutput {
                theta: theta[..k].to_vec(),
                vectors: ritz.as_ref().subcols(0, k).to_owned(),
                residuals: res,
                restarts,
                converged: true,
            };
        }
        if worst < 0.99 * best {
            best = worst;
            stale = 0;
        } else {
            stale += 1;
        }
        if restarts >= params.max_restarts || stale >= 25 {
            return KsOutput {
                theta: theta[..k].to_vec(),
                vectors: ritz.as_ref().subcols(0, k).to_owned(),
                residuals: res,
                restarts,
                converged: false,
            };
        }
        restarts += 1;

        // thick restart: keep the leading Ritz vectors and the residual block
        let coupling = h.view((m, 0), (b, m)) * y.view((0, 0), (m, keep));
        let next = v.as_ref().subcols(m, b).to_owned();
        v.as_mut().subcols_mut(0, keep).copy_from(ritz.as_ref());
        v.as_mut().subcols_mut(keep, b).copy_from(next.as_ref());
        h.fill(0.0);
        for c in 0..keep {
            h[(c, c)] = theta[c];
            for row in 0..b {
                h[(keep + row, c)] = coupling[(row, c)];
            }
        }
        j = keep;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Diag(Vec<f64>);

    impl Operator for Diag {
        fn dim(&self) -> usize {
            self.0.len()
        }
        fn apply(&self, x: MatRef<'_, f64>, mut out: MatMut<'_, f64>) {
            for c in 0..x.ncols() {
                for i in 0..x.nrows() {
                    out[(i, c)] = self.0[i] * x[(i, c)];
                }
            }
        }
    }

    #[test]
    fn finds_largest_of_diagonal_with_multiplicity() {
        let mut d: Vec<f64> = (0..400).map(|i| 1.0 / (1.0 + i as f64)).collect();
        d[1] = 1.0; // double top eigenvalue
        let op = Diag(d.clone());
        let p = KsParams { k: 4, block: 2, basis: 24, max_restarts: 500, seed: 1 };
        let out = krylov_schur(&op, &p, 1e-10, None, &mut |th, x| {
            (0..th.len())
                .map(|c| (0..x.nrows()).map(|i| (d[i] * x[(i, c)] - th[c] * x[(i, c)]).powi(2)).sum::<f64>().sqrt())
                .collect()
        })
        ;
        assert!(out.converged);
        let mut want = d.clone();
        want.sort_by(|a, b| b.total_cmp(a));
        for c in 0..4 {
            assert!((out.theta[c] - want[c]).abs() < 1e-10, "{:?}", out.theta);
        }
    }
}

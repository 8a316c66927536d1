//! Shift-invert driver: factors `A - σB` and runs Krylov-Schur on
//! `B^{1/2} (A - σB)^{-1} B^{1/2}`.

use super::dense::{dense_eigenpairs, DENSE_LIMIT};
use super::krylov::{krylov_schur, KsParams, Operator};
use super::{residual_norm, EigResult, EigenError, SolverOptions};
use crate::discretize::EigenProblem;
use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::sparse::SparseColMat;
use faer::{Mat, MatMut, MatRef, Side};

/// Below this size the dense path is used outright.
const SMALL: usize = 200;

struct ShiftInvert {
    llt: Llt<usize, f64>,
    sqrt_w: Vec<f64>,
}

impl Operator for ShiftInvert {
    fn dim(&self) -> usize {
        self.sqrt_w.len()
    }

    fn apply(&self, x: MatRef<'_, f64>, mut out: MatMut<'_, f64>) {
        for c in 0..x.ncols() {
            for i in 0..x.nrows() {
                out[(i, c)] = self.sqrt_w[i] * x[(i, c)];
            }
        }
        self.llt.solve_in_place(out.as_mut());
        for c in 0..x.ncols() {
            for i in 0..x.nrows() {
                out[(i, c)] *= self.sqrt_w[i];
            }
        }
    }
}

struct Factorizer<'a> {
    problem: &'a EigenProblem,
    shifted: SparseColMat<usize, f64>,
    diag_pos: Vec<usize>,
    symbolic: SymbolicLlt<usize>,
}

impl<'a> Factorizer<'a> {
    fn new(problem: &'a EigenProblem) -> Result<Self, EigenError> {
        let shifted = problem.form_matrix.clone();
        let (cp, ri) = (shifted.col_ptr(), shifted.row_idx());
        let mut diag_pos = Vec::with_capacity(problem.dim());
        for j in 0..problem.dim() {
            let pos = (cp[j]..cp[j + 1])
                .find(|&k| ri[k] == j)
                .ok_or_else(|| EigenError::Factorization(format!("missing diagonal entry {j}")))?;
            diag_pos.push(pos);
        }
        let symbolic = SymbolicLlt::try_new(shifted.symbolic(), Side::Lower)
            .map_err(|e| EigenError::Factorization(format!("{e:?}")))?;
        Ok(Self { problem, shifted, diag_pos, symbolic })
    }

    fn factor(&mut self, sigma: f64) -> Option<Llt<usize, f64>> {
        let orig = self.problem.form_matrix.val();
        let vals = self.shifted.val_mut();
        for (j, &p) in self.diag_pos.iter().enumerate() {
            vals[p] = orig[p] - sigma * self.problem.weights[j];
        }
        Llt::try_new_with_symbolic(self.symbolic.clone(), self.shifted.as_ref(), Side::Lower).ok()
    }

    /// Lowers `sigma` until `A - σB` is positive definite.
    fn factor_below(&mut self, mut sigma: f64) -> Result<(f64, Llt<usize, f64>), EigenError> {
        let mut step = (0.25 * sigma.abs()).max(0.05);
        for _ in 0..80 {
            if let Some(llt) = self.factor(sigma) {
                return Ok((sigma, llt));
            }
            sigma -= step;
            step *= 2.0;
        }
        Err(EigenError::Factorization("no positive definite shift found".into()))
    }
}

/// Lower bound on the spectrum from Gershgorin discs of `B^{-1/2} A B^{-1/2}`.
fn gershgorin_floor(problem: &EigenProblem) -> f64 {
    let a = &problem.form_matrix;
    let (cp, ri, v) = (a.col_ptr(), a.row_idx(), a.val());
    let w = &problem.weights;
    let mut floor = f64::INFINITY;
    for j in 0..problem.dim() {
        let mut centre = 0.0;
        let mut radius = 0.0;
        for k in cp[j]..cp[j + 1] {
            let i = ri[k];
            let s = v[k] / (w[i] * w[j]).sqrt();
            if i == j {
                centre = s;
            } else {
                radius += s.abs();
            }
        }
        floor = floor.min(centre - radius);
    }
    floor
}

fn initial_shift(problem: &EigenProblem, opts: &SolverOptions) -> f64 {
    if let Some(s) = opts.shift {
        return s;
    }
    match problem.meta.threshold() {
        Some(mu) if mu < 0.0 => mu - 0.5 * mu.abs(),
        Some(mu) => mu - 0.05,
        None => gershgorin_floor(problem),
    }
}

pub(super) fn solve(problem: &EigenProblem, k: usize, opts: &SolverOptions) -> Result<EigResult, EigenError> {
    let n = problem.dim();
    if k == 0 || k > n {
        return Err(EigenError::InvalidRequest(format!("k = {k} with n = {n}")));
    }
    if !(opts.tol > 0.0) {
        return Err(EigenError::InvalidRequest("tolerance must be positive".into()));
    }
    let b = opts.block_size.unwrap_or(k.min(4)).max(1);
    let m = opts.basis_size.unwrap_or((4 * k).max(k + 30)).max(k + b);
    let m = m.div_ceil(b) * b;
    if n <= SMALL || m + b > n {
        if n > DENSE_LIMIT {
            return Err(EigenError::InvalidRequest(format!("basis {m} too large for n = {n}")));
        }
        return dense_eigenpairs(problem, k);
    }

    let mut fac = Factorizer::new(problem)?;
    let (mut sigma, mut llt) = fac.factor_below(initial_shift(problem, opts))?;
    let sqrt_w: Vec<f64> = problem.weights.iter().map(|w| w.sqrt()).collect();
    let params = KsParams { k, block: b, basis: m, max_restarts: opts.max_restarts, seed: opts.seed };

    let mut warm: Option<Mat<f64>> = None;
    let mut total = 0;
    let mut reshifted = !opts.reshift;
    loop {
        let op = ShiftInvert { llt, sqrt_w: sqrt_w.clone() };
        let s = sigma;
        let out = krylov_schur(&op, &params, opts.tol, warm.as_ref().map(|w| w.as_ref()), &mut |theta, y| {
            theta
                .iter()
                .enumerate()
                .map(|(c, th)| {
                    let x: Vec<f64> = (0..y.nrows()).map(|i| y[(i, c)] / sqrt_w[i]).collect();
                    residual_norm(problem, &x, s + 1.0 / th)
                })
                .collect()
        });
        total += out.restarts;
        let lambdas: Vec<f64> = out.theta.iter().map(|th| sigma + 1.0 / th).collect();
        if out.converged {
            let vectors = (0..k)
                .map(|c| (0..n).map(|i| out.vectors[(i, c)] / sqrt_w[i]).collect())
                .collect();
            return Ok(EigResult { values: lambdas, vectors, residuals: out.residuals, iterations: total, shift: sigma });
        }
        let (l1, lk) = (lambdas[0], lambdas[k - 1]);
        if reshifted || !(l1 - sigma > lk - l1) {
            let best = out.residuals.iter().copied().fold(0.0, f64::max);
            return Err(EigenError::NoConvergence { iterations: total, best_residual: best });
        }
        reshifted = true;
        let (s2, l2) = fac.factor_below(0.5 * (sigma + l1))?;
        sigma = s2;
        llt = l2;
        warm = Some(out.vectors);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolve::{dense_oracle, lowest_eigenpairs};

    fn laplacian(n: usize) -> EigenProblem {
        let h = 1.0 / (n + 1) as f64;
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = 2.0 / h;
            if i + 1 < n {
                a[i][i + 1] = -1.0 / h;
                a[i + 1][i] = -1.0 / h;
            }
        }
        EigenProblem::from_dense(&a, vec![h; n]).unwrap()
    }

    #[test]
    fn dirichlet_laplacian_bottom() {
        let p = laplacian(800);
        let r = lowest_eigenpairs(&p, 3, 1e-9).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        for (j, v) in r.values.iter().enumerate() {
            let exact = pi2 * ((j + 1) as f64).powi(2);
            assert!((v - exact).abs() / exact < 1e-4, "{v} vs {exact}");
        }
        assert!(r.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(r.max_residual() <= 1e-9);
    }

    #[test]
    fn matches_dense_oracle() {
        let p = laplacian(600);
        let r = lowest_eigenpairs(&p, 6, 1e-7).unwrap();
        let d = dense_oracle(&p).unwrap();
        for j in 0..6 {
            assert!((r.values[j] - d[j]).abs() <= 1e-8 * d[j].abs().max(1.0));
        }
    }

    #[test]
    fn shift_above_spectrum_bottom_is_lowered() {
        let p = laplacian(400);
        let opts = SolverOptions { shift: Some(500.0), ..SolverOptions::with_tol(1e-9) };
        let r = crate::eigensolve::lowest_eigenpairs_with(&p, 2, &opts).unwrap();
        assert!(r.shift < r.values[0]);
        assert!((r.values[0] - std::f64::consts::PI.powi(2)).abs() < 1e-3);
    }
}

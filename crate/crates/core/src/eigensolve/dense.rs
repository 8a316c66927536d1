//! Dense reference solver for small problems.

use super::{residual_norm, EigResult, EigenError};
use crate::discretize::EigenProblem;
use faer::{Mat, Side};

/// Largest dimension accepted by the dense paths.
pub const DENSE_LIMIT: usize = 4000;

fn scaled(problem: &EigenProblem) -> Result<Mat<f64>, EigenError> {
    let n = problem.dim();
    if n > DENSE_LIMIT {
        return Err(EigenError::TooLarge { n, limit: DENSE_LIMIT });
    }
    let a = problem.dense_form();
    let s: Vec<f64> = problem.weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    Ok(Mat::from_fn(n, n, |i, j| a[i * n + j] * s[i] * s[j]))
}

/// All eigenvalues, ascending.
pub fn dense_oracle(problem: &EigenProblem) -> Result<Vec<f64>, EigenError> {
    let c = scaled(problem)?;
    let mut vals = c
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| EigenError::Factorization(format!("{e:?}")))?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// `k` lowest eigenpairs with `B`-orthonormal vectors.
pub fn dense_eigenpairs(problem: &EigenProblem, k: usize) -> Result<EigResult, EigenError> {
    let n = problem.dim();
    if k == 0 || k > n {
        return Err(EigenError::InvalidRequest(format!("k = {k} with n = {n}")));
    }
    let c = scaled(problem)?;
    let eig = c
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| EigenError::Factorization(format!("{e:?}")))?;
    let u = eig.U();
    let s = eig.S().column_vector();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for &j in order.iter().take(k) {
        let x: Vec<f64> = (0..n).map(|i| u[(i, j)] / problem.weights[i].sqrt()).collect();
        residuals.push(residual_norm(problem, &x, s[j]));
        values.push(s[j]);
        vectors.push(x);
    }
    Ok(EigResult { values, vectors, residuals, iterations: 0, shift: f64::NAN })
}

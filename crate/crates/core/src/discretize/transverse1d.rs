use super::{DiscretizeError, EigenProblem, Mesh, ProblemKind, ProblemMeta, SymBuilder};
use crate::transverse::CouplingParams;

/// The transverse operator on `(-d, d)` with Neumann ends: linear elements
/// with lumped mass on `n` intervals (`n` even so `x = 0` is a node).
/// The step bias enters through the lumped mass, half of it at `x = 0`.
pub fn assemble_transverse(params: &CouplingParams, d: f64, n: usize) -> Result<EigenProblem, DiscretizeError> {
    if n < 2 || n % 2 != 0 || !(d > 0.0) {
        return Err(DiscretizeError::InvalidGrid(format!("need even n >= 2 and d > 0 (n = {n}, d = {d})")));
    }
    let h = 2.0 * d / n as f64;
    let nodes = n + 1;
    let mid = n / 2;
    let mut b = SymBuilder::new(nodes);
    let mut mass = vec![h; nodes];
    mass[0] = 0.5 * h;
    mass[n] = 0.5 * h;
    for e in 0..n {
        b.diag[e] += 1.0 / h;
        b.diag[e + 1] += 1.0 / h;
        b.couple(e, e + 1, -1.0 / h);
    }
    for i in 0..nodes {
        let frac = match i.cmp(&mid) {
            std::cmp::Ordering::Less => 0.0,
            std::cmp::Ordering::Equal => 0.5,
            std::cmp::Ordering::Greater => 1.0,
        };
        b.diag[i] += mass[i] * frac * params.v0;
    }
    b.diag[mid] -= params.alpha;
    let meta = ProblemMeta {
        kind: ProblemKind::Transverse,
        m: None,
        theta: None,
        params: Some(*params),
        box_size: 2.0 * d,
        spacing: h,
        delta_nodes: 1,
    };
    EigenProblem::from_lower_triplets(nodes, &b.finish(), mass, Mesh::Line { x0: -d, h, n: nodes }, (0..nodes).collect(), meta)
}

use leaky_surface::discretize::{assemble_transverse, EigenProblem, Mesh, ProblemMeta};
use leaky_surface::eigensolve::*;
use leaky_surface::experiments::cone_problem;
use leaky_surface::transverse::{neumann_box_ground_energy, BiasSide, CouplingParams, NeumannBoxParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn laplacian(n: usize, len: f64) -> EigenProblem {
    let h = len / (n + 1) as f64;
    let mut t = Vec::new();
    for i in 0..n {
        t.push((i, i, 2.0 / h));
        if i > 0 {
            t.push((i, i - 1, -1.0 / h));
        }
    }
    EigenProblem::from_lower_triplets(n, &t, vec![h; n], Mesh::Line { x0: h, h, n }, (0..n).collect(), ProblemMeta::generic())
        .unwrap()
}

fn random_banded(n: usize, seed: u64) -> EigenProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::new();
    for i in 0..n {
        t.push((i, i, 6.0 + rng.random::<f64>() * 4.0));
        for off in 1..=3 {
            if i >= off {
                t.push((i, i - off, rng.random::<f64>() - 0.5));
            }
        }
    }
    let w = (0..n).map(|_| 0.5 + rng.random::<f64>()).collect();
    EigenProblem::from_lower_triplets(n, &t, w, Mesh::Line { x0: 0.0, h: 1.0, n }, (0..n).collect(), ProblemMeta::generic())
        .unwrap()
}

#[test]
fn two_by_two_diagonal() {
    let p = EigenProblem::from_dense(&[vec![3.0, 0.0], vec![0.0, 1.0]], vec![1.0, 2.0]).unwrap();
    let r = lowest_eigenpairs(&p, 2, 1e-12).unwrap();
    assert!((r.values[0] - 0.5).abs() < 1e-14 && (r.values[1] - 3.0).abs() < 1e-14);
}

#[test]
fn iterative_matches_dense_on_random_problems() {
    for seed in 0..4 {
        let p = random_banded(600, seed);
        let oracle = dense_oracle(&p).unwrap();
        let r = lowest_eigenpairs(&p, 5, 1e-9).unwrap();
        for (a, b) in r.values.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "seed {seed}: {a} vs {b}");
        }
        assert!(r.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn small_random_problem_uses_exact_values() {
    let p = random_banded(50, 9);
    let oracle = dense_oracle(&p).unwrap();
    let r = lowest_eigenpairs(&p, 3, 1e-10).unwrap();
    for i in 0..3 {
        assert!((r.values[i] - oracle[i]).abs() < 1e-8);
    }
}

#[test]
fn vectors_are_b_orthonormal() {
    let p = random_banded(400, 3);
    let r = lowest_eigenpairs(&p, 4, 1e-9).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let ip: f64 = (0..p.dim()).map(|q| r.vectors[i][q] * p.weights[q] * r.vectors[j][q]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((ip - want).abs() < 1e-8, "({i},{j}) {ip}");
        }
        assert!(residual_norm(&p, &r.vectors[i], r.values[i]) < 1e-9);
    }
}

#[test]
fn dirichlet_laplacian_modes() {
    let p = laplacian(1000, std::f64::consts::PI);
    let r = lowest_eigenpairs(&p, 3, 1e-8).unwrap();
    let h = std::f64::consts::PI / 1001.0;
    for (j, v) in r.values.iter().enumerate() {
        let k = (j + 1) as f64;
        let exact = 4.0 / (h * h) * (0.5 * k * h).sin().powi(2);
        assert!((v - exact).abs() < 1e-8 * exact, "{v} vs {exact}");
    }
}

#[test]
fn transverse_ground_energy_second_order() {
    let params = CouplingParams::new(1.0, 0.0, BiasSide::Interior).unwrap();
    let d = 10.0;
    let exact = neumann_box_ground_energy(&params, &NeumannBoxParams::new(d).unwrap(), 1e-14).unwrap().unwrap();
    let err = |n: usize| {
        let p = assemble_transverse(&params, d, n).unwrap();
        (lowest_eigenpairs(&p, 1, 1e-12).unwrap().values[0] - exact).abs()
    };
    let (e1, e2) = (err(400), err(800));
    let order = (e1 / e2).log2();
    assert!(order > 1.8 && order < 2.2, "{e1} {e2} order {order}");
}

#[test]
fn free_laplacian_has_only_artifacts() {
    let c = classify_spectrum(&[10.0, 20.0, 40.0], |l| Ok(laplacian(400, l)), 0.0, 3, 1e-10, &ClassifyOptions::default())
        .unwrap();
    assert!(c.tags.iter().all(|t| *t == SpectralTag::EssentialEdgeArtifact));
    assert!(c.lowest_discrete().is_none());
}

#[test]
fn short_ladder_rejected() {
    let r = classify_spectrum(&[10.0, 20.0], |l| Ok(laplacian(50, l)), 0.0, 1, 1e-10, &ClassifyOptions::default());
    assert!(matches!(r, Err(EigenError::InsufficientLadder(2))));
}

fn cone_m0(length: f64) -> EigResult {
    let params = CouplingParams::new(1.0, 0.0, BiasSide::Interior).unwrap();
    let p = cone_problem(std::f64::consts::FRAC_PI_4, 0, &params, 0.1, length, 12.0).unwrap();
    let r = lowest_eigenpairs(&p, 3, 1e-9).unwrap();
    assert!(r.max_residual() < 1e-9);
    r
}

#[test]
#[ignore = "λ₀ = -0.24886 at box 30: the Dirichlet tube end lifts the weakly bound state above -1/4"]
fn cone_ground_state_below_threshold_box30() {
    let r = cone_m0(30.0);
    assert!(r.values[0] < -0.25, "{}", r.values[0]);
}

#[test]
fn cone_ground_state_below_threshold_box100() {
    let r = cone_m0(100.0);
    assert!(r.values[0] < -0.25, "{}", r.values[0]);
}

#[test]
fn laplacian_on_100_nodes() {
    let p = laplacian(100, 1.0);
    let r = lowest_eigenpairs(&p, 3, 1e-8).unwrap();
    let h = 1.0 / 101.0;
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((r.values[0] - pi2).abs() < pi2 * pi2 * h * h / 12.0 * 1.01);
    assert!(r.values[0] <= r.values[1] && r.values[1] <= r.values[2]);
}

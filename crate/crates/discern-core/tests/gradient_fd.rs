//! Central finite differences of the dual objective against the analytic
//! gradients. This pins the sign of the `C` gradient.

use discern_core::data::{Dataset, NoiseSpec};
use discern_core::linalg::center_columns;
use discern_core::mat::Mat;
use discern_core::rng::SeedStream;
use discern_core::solver::{build_problem, dual_objective, gradients, RegularizerWeights, SmoothedProblem};

fn random_problem(rng: &mut SeedStream) -> (SmoothedProblem, usize, usize) {
    let n = 6 + rng.below(15); // <= 20
    let d = 2 + rng.below(5); // <= 6
    let noise = NoiseSpec::uniform(1.0).unwrap();
    let x = Mat::from_fn(n, d, |_, _| noise.sample(rng));
    let ds = Dataset::new(center_columns(&x), true, None, "fd".into()).unwrap();
    let a_scale = rng.uniform(0.05, 0.8);
    let lambda = rng.uniform(0.0, 0.3);
    let nu = if rng.unit() < 0.4 { 1.0 } else { rng.uniform(0.0, 0.9) };
    let epsilon = rng.uniform(0.05, 0.3);
    let w = RegularizerWeights::from_scalars(d, a_scale, lambda, nu, epsilon).unwrap();
    let p = build_problem(&ds, &w).unwrap();
    let dim = p.dim();
    (p, n, dim)
}

fn interior_state(p: &SmoothedProblem, n: usize, dim: usize, rng: &mut SeedStream) -> (Vec<f64>, Mat) {
    let u: Vec<f64> = (0..n).map(|_| rng.uniform(0.5, 2.0)).collect();
    let mut c = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let bound = p.c_weights()[i] * p.c_weights()[j];
            let v = 0.5 * bound * rng.uniform(-1.0, 1.0);
            c[(i, j)] = v;
            c[(j, i)] = v;
        }
    }
    (u, c)
}

/// Aggregated relative error between analytic and finite-difference
/// gradients over 20 random problems; must be <= 1e-5.
#[test]
fn gradients_match_central_differences() {
    let mut rng = SeedStream::new(0xFD);
    for trial in 0..20 {
        let (p, n, dim) = random_problem(&mut rng);
        let (u, c) = interior_state(&p, n, dim, &mut rng);
        let (gu, gc) = gradients(&p, &u, &c).unwrap();

        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for i in 0..n {
            let h = 3e-6 * (1.0 + u[i].abs());
            let mut up = u.clone();
            let mut dn = u.clone();
            up[i] += h;
            dn[i] -= h;
            let fd = (dual_objective(&p, &up, &c).unwrap()
                - dual_objective(&p, &dn, &c).unwrap())
                / (2.0 * h);
            // gradients() covers the smooth spectral term; the barrier
            // contributes -1/(2n u^2) analytically
            let an = gu[i] - 1.0 / (2.0 * n as f64 * u[i] * u[i]);
            num += (fd - an) * (fd - an);
            den += an * an;
        }
        // symmetric perturbations: E_ij + E_ji moves the objective by
        // 2 * grad_ij off the diagonal
        for i in 0..dim {
            for j in i..dim {
                let h = 3e-6 * (1.0 + c[(i, j)].abs());
                let mut up = c.clone();
                let mut dn = c.clone();
                up[(i, j)] += h;
                dn[(i, j)] -= h;
                if i != j {
                    up[(j, i)] += h;
                    dn[(j, i)] -= h;
                }
                let fd = (dual_objective(&p, &u, &up).unwrap()
                    - dual_objective(&p, &u, &dn).unwrap())
                    / (2.0 * h);
                let an = if i == j { gc[(i, j)] } else { 2.0 * gc[(i, j)] };
                num += (fd - an) * (fd - an);
                den += an * an;
            }
        }
        let rel = num.sqrt() / (1e-12 + den.sqrt());
        assert!(rel <= 1e-5, "trial {trial}: relative gradient error {rel:.3e}");
    }
}

use nalgebra::{DMatrix, DVector};
use svdyn::shadowing::{
    corrections, make_pseudo_orbit, shadow, shadow_strict, torus_distance, Perturbation, ShadowError,
    ToralAuto, Verification,
};

fn cat() -> ToralAuto {
    ToralAuto::new([[2, 1], [1, 1]]).unwrap()
}

/// Solves `c_{k+1} - A c_k = -e_k` for `k < N` together with
/// `P_s c_0 = 0` and `P_u c_N = 0` as one dense linear system.
fn corrections_oracle(auto: &ToralAuto, defects: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let n = defects.len();
    let dim = 2 * (n + 1);
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    let mut rhs = DVector::<f64>::zeros(dim);
    let a = auto.matrix;
    for k in 0..n {
        for r in 0..2 {
            let row = 2 * k + r;
            m[(row, 2 * (k + 1) + r)] = 1.0;
            m[(row, 2 * k)] -= a[r][0] as f64;
            m[(row, 2 * k + 1)] -= a[r][1] as f64;
            rhs[row] = -defects[k][r];
        }
    }
    // Each projection has rank one, so one nonzero row expresses it.
    let pick = |p: [[f64; 2]; 2]| if p[0][0].abs() + p[0][1].abs() >= p[1][0].abs() + p[1][1].abs() { p[0] } else { p[1] };
    let s = pick(auto.proj_s);
    m[(2 * n, 0)] = s[0];
    m[(2 * n, 1)] = s[1];
    let u = pick(auto.proj_u);
    m[(2 * n + 1, 2 * n)] = u[0];
    m[(2 * n + 1, 2 * n + 1)] = u[1];
    let x = m.lu().solve(&rhs).expect("system is nonsingular");
    (0..=n).map(|k| [x[2 * k], x[2 * k + 1]]).collect()
}

fn max_gap(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p[0] - q[0]).abs().max((p[1] - q[1]).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn corrections_match_the_linear_system() {
    for matrix in [[[2, 1], [1, 1]], [[3, 1], [2, 1]], [[1, 1], [1, 0]]] {
        let auto = ToralAuto::new(matrix).unwrap();
        let po = make_pseudo_orbit(&auto, [0.2, 0.6], 200, 1e-4, Perturbation::Seeded(11)).unwrap();
        let gap = max_gap(&corrections(&auto, &po.defects), &corrections_oracle(&auto, &po.defects));
        assert!(gap < 1e-12, "{matrix:?}: {gap}");
    }
}

#[test]
fn corrections_are_linear() {
    let auto = cat();
    let d1 = make_pseudo_orbit(&auto, [0.1, 0.1], 50, 1e-3, Perturbation::Seeded(1)).unwrap().defects;
    let d2 = make_pseudo_orbit(&auto, [0.1, 0.1], 50, 1e-3, Perturbation::Seeded(2)).unwrap().defects;
    let combo: Vec<[f64; 2]> = d1.iter().zip(&d2).map(|(a, b)| [3.0 * a[0] - b[0], 3.0 * a[1] - b[1]]).collect();
    let c1 = corrections(&auto, &d1);
    let c2 = corrections(&auto, &d2);
    let expected: Vec<[f64; 2]> = c1.iter().zip(&c2).map(|(a, b)| [3.0 * a[0] - b[0], 3.0 * a[1] - b[1]]).collect();
    assert!(max_gap(&corrections(&auto, &combo), &expected) < 1e-15);
}

#[test]
fn zero_defects_shadow_exactly() {
    let auto = cat();
    let po = make_pseudo_orbit(&auto, [0.3, 0.9], 300, 1e-4, Perturbation::Injected(vec![[0.0; 2]; 300])).unwrap();
    let r = shadow(&auto, &po).unwrap();
    assert_eq!(r.max_distance, 0.0);
    assert!(r.per_step_distance.iter().all(|&d| d == 0.0));
}

#[test]
fn single_defect_within_bound() {
    let auto = cat();
    let delta = 1e-3;
    for step in [0, 17, 99] {
        let mut list = vec![[0.0; 2]; 100];
        list[step] = [0.999 * delta, -0.999 * delta];
        let po = make_pseudo_orbit(&auto, [0.4, 0.1], 100, delta, Perturbation::Injected(list)).unwrap();
        let r = shadow(&auto, &po).unwrap();
        assert!(r.max_distance <= r.bound, "step {step}");
        let oracle = corrections_oracle(&auto, &po.defects);
        for (k, c) in oracle.iter().enumerate() {
            let norm = c[0].abs().max(c[1].abs());
            assert!((r.per_step_distance[k] - norm).abs() < 1e-12, "step {step} k {k}");
        }
    }
}

#[test]
fn random_pseudo_orbits_across_seeds() {
    let auto = cat();
    let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
    let delta = 1e-4;
    let constant = auto.basis_distortion * (1.0 / (phi2 - 1.0) + 1.0 / (1.0 - 1.0 / phi2));
    let mut ratios = Vec::new();
    for seed in 0..20 {
        let po = make_pseudo_orbit(&auto, [0.5, 0.5], 200, delta, Perturbation::Seeded(seed)).unwrap();
        let r = shadow(&auto, &po).unwrap();
        assert!(matches!(r.verification, Verification::Exact { .. }));
        assert!(r.max_distance <= constant * delta, "seed {seed}");
        // The exact orbit agrees with the correction formula.
        let c = corrections(&auto, &po.defects);
        for (k, d) in r.per_step_distance.iter().enumerate() {
            assert!((d - c[k][0].abs().max(c[k][1].abs())).abs() < 1e-12);
        }
        ratios.push(r.max_distance / delta);
    }
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    println!("empirical max_distance/delta over 20 seeds: {lo:.4} .. {hi:.4} (bound {constant:.4})");
    assert!(hi / lo < 3.0);
}

#[test]
fn shadow_point_iterates_onto_the_orbit() {
    let auto = cat();
    let po = make_pseudo_orbit(&auto, [0.25, 0.75], 60, 1e-5, Perturbation::Seeded(5)).unwrap();
    let r = shadow(&auto, &po).unwrap();
    let mut y = r.shadow_start;
    for k in 0..=60 {
        // Double-precision iteration loses a factor lambda_u per step.
        if k <= 15 {
            assert!(torus_distance(y, r.orbit[k]) < 1e-9, "k {k}");
        }
        assert!((torus_distance(r.orbit[k], po.points[k]) - r.per_step_distance[k]).abs() < 1e-15);
        y = auto.apply_mod1(y);
    }
}

#[test]
fn long_orbits_fall_back_or_fail_strictly() {
    let auto = cat();
    let n = 200_000;
    let po = make_pseudo_orbit(&auto, [0.1, 0.2], n, 1e-6, Perturbation::Seeded(3)).unwrap();
    assert!(matches!(shadow_strict(&auto, &po), Err(ShadowError::PrecisionLoss { .. })));
    let r = shadow(&auto, &po).unwrap();
    match r.verification {
        Verification::CorrectionFormula { residual } => assert!(residual < 1e-9),
        other => panic!("expected the correction path, got {other:?}"),
    }
    assert!(r.max_distance <= r.bound);
}

use isominimal::catalog::{cartan_model, clifford_model, equator_model, IsoModel};
use isominimal::field::{Polynomial, ScalarFieldSpec};
use isominimal::numeric::{sym_eigen, RngStream};
use isominimal::shape::{curvature_report, second_form, CurvatureReport, DEFAULT_CLUSTER_TOL};
use isominimal::sphere::{project_to_level, surface_normal, tangent_basis, LevelSpec, SpherePoint, TangentFrame};

fn cartan_spec() -> LevelSpec {
    let m = cartan_model();
    LevelSpec::new(m.field.clone().unwrap(), m.level.unwrap())
}

fn sample_points(spec: &LevelSpec, n: usize, seed: u64) -> Vec<SpherePoint> {
    let root = RngStream::new(seed);
    (0..n as u64)
        .map(|i| {
            let (x0, _) = root.split(i).unit_sphere6();
            project_to_level(&x0, spec, 1e-12, 100).expect("projection")
        })
        .collect()
}

fn frame_at(spec: &LevelSpec, p: &SpherePoint) -> TangentFrame {
    tangent_basis(p, &surface_normal(p, spec).unwrap()).unwrap()
}

/// Rotates the tangent vectors of `frame` by a random orthogonal 4×4 matrix.
fn rotated(frame: &TangentFrame, s: RngStream) -> TangentFrame {
    let mut s = s;
    let mut q = [[0.0f64; 4]; 4];
    for row in &mut q {
        for v in row.iter_mut() {
            let (x, next) = s.uniform(-1.0, 1.0).unwrap();
            s = next;
            *v = x;
        }
    }
    for i in 0..4 {
        for j in 0..i {
            let c: f64 = (0..4).map(|k| q[i][k] * q[j][k]).sum();
            for k in 0..4 {
                q[i][k] -= c * q[j][k];
            }
        }
        let n = q[i].iter().map(|v| v * v).sum::<f64>().sqrt();
        q[i].iter_mut().for_each(|v| *v /= n);
    }
    let e = std::array::from_fn(|a| std::array::from_fn(|c| (0..4).map(|b| q[a][b] * frame.e[b][c]).sum()));
    TangentFrame { e, ..*frame }
}

fn reversed(frame: &TangentFrame) -> TangentFrame {
    TangentFrame { e: [frame.e[3], frame.e[2], frame.e[1], frame.e[0]], ..*frame }
}

#[test]
fn cartan_frames_are_orthonormal() {
    let spec = cartan_spec();
    for p in sample_points(&spec, 1000, 1) {
        let f = frame_at(&spec, &p);
        assert!(f.orthonormality_defect() <= 1e-12, "defect {}", f.orthonormality_defect());
        assert!((spec.field.value(p.coords()).unwrap() - spec.level).abs() <= 1e-12);
    }
}

#[test]
fn projection_is_idempotent() {
    let spec = cartan_spec();
    for p in sample_points(&spec, 200, 2) {
        let q = project_to_level(p.coords(), &spec, 1e-12, 100).unwrap();
        let moved: f64 = p.coords().iter().zip(q.coords()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        assert!(moved <= 1e-12);
    }
}

#[test]
fn flipping_the_normal_negates_odd_invariants() {
    let spec = cartan_spec();
    for p in sample_points(&spec, 500, 3) {
        let h = second_form(&spec, &frame_at(&spec, &p)).unwrap();
        let up = CurvatureReport::from_lambdas(sym_eigen(&h).values, DEFAULT_CLUSTER_TOL);
        let down = CurvatureReport::from_lambdas(sym_eigen(&h.negated()).values, DEFAULT_CLUSTER_TOL);
        assert!((up.f1 + down.f1).abs() <= 1e-10);
        assert!((up.f3 + down.f3).abs() <= 1e-10);
        assert!((up.f2 - down.f2).abs() <= 1e-10);
        assert!((up.f4 - down.f4).abs() <= 1e-10);
        assert!((up.k - down.k).abs() <= 1e-10);
        assert_eq!(up.g, down.g);
        let mut rev = down.multiplicities.clone();
        rev.reverse();
        assert_eq!(up.multiplicities, rev);
    }
}

#[test]
fn eigenvalues_do_not_depend_on_the_tangent_basis() {
    let spec = cartan_spec();
    let root = RngStream::new(99);
    for (i, p) in sample_points(&spec, 500, 4).into_iter().enumerate() {
        let f = frame_at(&spec, &p);
        let base = sym_eigen(&second_form(&spec, &f).unwrap()).values;
        for other in [rotated(&f, root.split(i as u64)), reversed(&f)] {
            assert!(other.orthonormality_defect() < 1e-12);
            let vals = sym_eigen(&second_form(&spec, &other).unwrap()).values;
            for k in 0..4 {
                assert!((vals[k] - base[k]).abs() <= 1e-10, "{vals:?} vs {base:?}");
            }
        }
    }
}

#[test]
fn gauss_relation_holds_for_every_report() {
    let spec = cartan_spec();
    for p in sample_points(&spec, 300, 5) {
        let r = curvature_report(&spec, &p, DEFAULT_CLUSTER_TOL).unwrap();
        assert!((r.r + r.s - r.f1 * r.f1 - 12.0).abs() <= 1e-12);
    }
    // Off the minimal level too.
    let t03 = LevelSpec::new(ScalarFieldSpec::CartanQuartic, isominimal::catalog::cartan_level(0.3).unwrap());
    for p in sample_points(&t03, 100, 6) {
        let r = curvature_report(&t03, &p, DEFAULT_CLUSTER_TOL).unwrap();
        assert!((r.r + r.s - r.f1 * r.f1 - 12.0).abs() <= 1e-10);
    }
}

/// Checks sampled curvatures against the model's multiset up to a global sign.
fn check_model(model: &IsoModel, spec: &LevelSpec, seed: u64) {
    let mut expected: Vec<f64> = model.curvature_list().iter().map(|c| c.to_f64()).collect();
    expected.sort_by(f64::total_cmp);
    let flipped: Vec<f64> = expected.iter().rev().map(|x| -x).collect();
    let s_model = ((model.g - 1) * 4) as f64;
    for p in sample_points(spec, 200, seed) {
        let r = curvature_report(spec, &p, DEFAULT_CLUSTER_TOL).unwrap();
        let close = |want: &[f64]| r.lambdas.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-6);
        assert!(close(&expected) || close(&flipped), "{:?} vs {expected:?}", r.lambdas);
        assert!((r.s - s_model).abs() <= 1e-6);
        assert_eq!(r.g, model.g);
    }
}

#[test]
fn catalog_models_match_sampled_curvatures() {
    check_model(&cartan_model(), &cartan_spec(), 7);
    let eq = equator_model();
    check_model(&eq, &LevelSpec::new(eq.field.clone().unwrap(), eq.level.unwrap()), 8);
    // S^r(√(r/4)) × S^s(√(s/4)) as the level Σ_{i≤r} x_i² = r/4.
    for (r, s) in [(1, 3), (2, 2)] {
        let m = clifford_model(r, s).unwrap();
        let idx: Vec<usize> = (0..=r).collect();
        let spec = LevelSpec::new(ScalarFieldSpec::polynomial(Polynomial::sum_of_squares(&idx, 1.0)), r as f64 / 4.0);
        check_model(&m, &spec, 9 + r as u64);
    }
}

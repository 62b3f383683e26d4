use zernike_core::fixture::{self, Family};
use zernike_core::numeric::{self, Cart2F64, QuadratureRule, DEFAULT_SEED};
use zernike_core::verify::{self, Report};
use zernike_core::zernike2d::{self as z2, NollIndex};
use zernike_core::zernike3d::{self as z3, Index3D};
use zernike_core::Exec;

fn assert_report(name: &str, r: Report) {
    assert!(!r.is_empty(), "{name}: empty suite");
    if let Some(c) = r.first_failure() {
        panic!("{name}: {} of {} failed, first: {c}", r.len() - r.pass_count(), r.len());
    }
}

#[test]
fn quadrature_is_exact_on_monomials() {
    for order in [8, 16, 64] {
        let rule = QuadratureRule::gauss_legendre(order);
        for d in 0..=(2 * order - 2) as i32 {
            let got = rule.integrate_unit(|r| r.powi(d));
            let want = 1.0 / (d + 1) as f64;
            assert!((got - want).abs() < 1e-14, "order {order} degree {d}: {got}");
        }
    }
}

#[test]
fn numeric_orthogonality() {
    assert_report("ortho 2D", verify::ortho_numeric_2d(16, 1e-13));
    assert_report("ortho 3D", verify::ortho_numeric_3d(12, 1e-13));
}

#[test]
fn sphere_orthonormality() {
    assert_report("sphere", verify::sphere_orthonormality(6, 1e-10));
}

#[test]
fn oracle_grids() {
    for (family, nmax) in [(Family::H, 14), (Family::F, 13), (Family::G, 6), (Family::K, 4), (Family::U, 5)] {
        assert_report(family.name(), verify::oracle_grid(family, nmax, 1e-11, Exec::Parallel));
    }
}

#[test]
fn oracle_fixture_rows() {
    let dir = fixture::fixtures_dir();
    for family in [Family::H, Family::F, Family::G, Family::K, Family::U] {
        assert_report(family.name(), verify::oracle_fixtures(&dir, family, 1e-11, Exec::Parallel).unwrap());
    }
}

#[test]
fn fhat_matches_pointwise() {
    let rule = QuadratureRule::default();
    for i in Index3D::all(11) {
        let (n, j) = (i.n(), i.l());
        let terms: Vec<_> = z3::power_to_radial_3d_fixed_n(j, n)
            .unwrap()
            .into_iter()
            .map(|(l, c)| (c.to_f64(), z3::radial_3d(Index3D::new(n, l).unwrap())))
            .collect();
        for r in rule.nodes().iter().map(|x| (x + 1.0) / 2.0) {
            let got: f64 = terms.iter().map(|(c, p)| c * numeric::eval_radial(p, r)).sum();
            assert!((got - r.powi(j as i32)).abs() < 1e-11, "n={n} j={j} r={r}");
        }
    }
}

#[test]
fn noll_functions_have_norm_pi() {
    // ∫ Z_j² over the unit disk in polar form: GL in r, trapezoid in φ
    let rule = QuadratureRule::gauss_legendre(16);
    let nphi = 64;
    for j in 1..=45 {
        let z = Cart2F64::new(&z2::zernike_to_cart_2d(NollIndex::new(j).unwrap()));
        let mut acc = 0.0;
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            let r = (x + 1.0) / 2.0;
            for s in 0..nphi {
                let phi = 2.0 * std::f64::consts::PI * s as f64 / nphi as f64;
                acc += w / 2.0 * r * z.eval(r * phi.cos(), r * phi.sin()).powi(2);
            }
        }
        let norm = acc * 2.0 * std::f64::consts::PI / nphi as f64;
        assert!((norm - std::f64::consts::PI).abs() < 1e-11, "Z_{j}: {norm}");
    }
}

#[test]
fn cross_evaluation() {
    assert_report("2D", verify::cross_eval_2d(9, 100, DEFAULT_SEED, 1e-11, Exec::Parallel));
    assert_report("3D", verify::cross_eval_3d(7, 100, DEFAULT_SEED, 1e-11, Exec::Parallel));
}

#[test]
fn seeded_points_are_reproducible_and_inside() {
    let a = numeric::seeded_ball_points(50, DEFAULT_SEED);
    assert_eq!(a, numeric::seeded_ball_points(50, DEFAULT_SEED));
    assert!(a.iter().all(|(x, y, z)| x * x + y * y + z * z < 1.0));
    let d = numeric::seeded_disk_points(50, 7);
    assert!(d.iter().all(|(x, y)| x * x + y * y < 1.0));
    assert_ne!(d, numeric::seeded_disk_points(50, 8));
}

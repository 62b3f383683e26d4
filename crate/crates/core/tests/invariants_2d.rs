use num_bigint::BigInt;
use zernike_core::combinat::{binomial, factorial};
use zernike_core::exact::{int, rat};
use zernike_core::poly::{AngularKind, CartPoly2, RadialPoly};
use zernike_core::verify::{self, Report};
use zernike_core::zernike2d::{self as z2, Index2D, NollIndex};
use zernike_core::{Exec, Rational, SurdSum};

fn assert_report(name: &str, r: Report) {
    assert!(!r.is_empty(), "{name}: empty suite");
    if let Some(c) = r.first_failure() {
        panic!("{name}: {} of {} failed, first: {c}", r.len() - r.pass_count(), r.len());
    }
}

#[test]
fn radial_forms_agree_and_hit_one() {
    assert_report("radial forms", verify::radial_forms(20, 0));
}

#[test]
fn odd_m_swap_symmetry() {
    assert_report("odd m", verify::odd_m_symmetry(13));
}

#[test]
fn power_expansions_reproduce_powers() {
    for i in Index2D::all(14) {
        let (j, m) = (i.n(), i.m());
        let sum = z2::power_to_radial_2d(j, m)
            .unwrap()
            .into_iter()
            .fold(RadialPoly::zero(), |acc, (n, h)| &acc + &z2::radial_2d(Index2D::new(n, m).unwrap()).scale_rational(&h));
        assert_eq!(sum, RadialPoly::term(j, SurdSum::one()), "r^{j} at m={m}");
    }
}

#[test]
fn products_reproduce_radial_products() {
    for a in Index2D::all(6) {
        for b in Index2D::all(6) {
            let prod = &z2::radial_2d(a) * &z2::radial_2d(b);
            for m3 in [a.m().abs_diff(b.m()), a.m() + b.m()] {
                let sum = z2::product_expand_2d(a, b, m3)
                    .unwrap()
                    .into_iter()
                    .fold(RadialPoly::zero(), |acc, (n3, g)| &acc + &z2::radial_2d(Index2D::new(n3, m3).unwrap()).scale_rational(&g));
                assert_eq!(sum, prod, "{a} * {b} at m3={m3}");
            }
        }
    }
}

#[test]
fn noll_is_a_bijection() {
    for j in 1..=231 {
        let (idx, kind) = z2::noll_unpack(NollIndex::new(j).unwrap());
        assert_eq!(z2::noll_pack(idx, kind).unwrap().get(), j);
        match kind {
            AngularKind::Radial => assert_eq!(idx.m(), 0),
            AngularKind::Cos(m) => assert!(m == idx.m() && j % 2 == 0),
            AngularKind::Sin(m) => assert!(m == idx.m() && j % 2 == 1),
        }
    }
    assert!(NollIndex::new(0).is_err());
}

#[test]
fn invalid_indices_are_rejected() {
    assert!(Index2D::new(3, 2).is_err());
    assert!(Index2D::new(2, 4).is_err());
    assert!(z2::power_to_radial_2d(3, 0).is_err());
    assert!(z2::h_coeff(3, Index2D::new(2, 0).unwrap()).is_err());
    let (a, b) = (Index2D::new(2, 2).unwrap(), Index2D::new(1, 1).unwrap());
    assert!(z2::product_expand_2d(a, b, 2).is_err());
    assert!(z2::rj_trig_to_cart(3, 0, z2::Trig::Cos).is_err());
    assert!(z2::rj_trig_to_cart(2, 0, z2::Trig::Sin).is_err());
}

// C(p,q) by its binomial sum
fn c_binomial(p: u32, q: u32) -> Rational {
    let j = (p + q) as i64;
    let s: BigInt = (0..=q as i64).map(|l| binomial(p as i64, j / 2 - l) * binomial(q as i64, l) * if l % 2 == 0 { 1 } else { -1 }).sum();
    Rational::from_integer(s)
}

fn double_factorial(n: i64) -> BigInt {
    (1..=n).rev().step_by(2).map(BigInt::from).product()
}

// Γ(k + 1/2) / √π for integer k, including negative k
fn half_gamma(k: i64) -> Rational {
    if k >= 0 {
        Rational::new(factorial(2 * k as u64), factorial(k as u64) * (BigInt::from(4).pow(k as u32)))
    } else {
        let k = -k;
        Rational::new(BigInt::from(-4).pow(k as u32) * factorial(k as u64), factorial(2 * k as u64))
    }
}

#[test]
fn constant_term_matches_closed_forms() {
    for p in (0..=12).step_by(2) {
        for q in (0..=12).step_by(2) {
            let j = (p + q) as i64;
            let phase = int(if (q / 2) % 2 == 0 { 1 } else { -1 });
            let lib = z2::trig_constant_term(p, q);
            let c = c_binomial(p, q);
            assert_eq!(&lib, &(&phase * &c), "p={p} q={q}");
            let df = Rational::new(
                double_factorial(q as i64 - 1) * double_factorial(p as i64 - 1) * (BigInt::from(1) << (j / 2) as usize),
                factorial((j / 2) as u64),
            ) * &phase;
            assert_eq!(df, c, "double factorial form p={p} q={q}");
            // 2^j Γ((p+1)/2) / (Γ(j/2+1) Γ((1-q)/2)): √π cancels
            let gamma = Rational::from_integer(BigInt::from(1) << j as usize) * half_gamma(p as i64 / 2)
                / (Rational::from_integer(factorial((j / 2) as u64)) * half_gamma(-(q as i64) / 2));
            assert_eq!(gamma, c, "gamma form p={p} q={q}");
        }
    }
    assert_eq!(z2::trig_constant_term(1, 1), int(0));
    assert_eq!(z2::trig_constant_term(2, 1), int(0));
}

#[test]
fn trig_expansion_matches_float_identity() {
    for p in 0..=7 {
        for q in 0..=7 {
            let terms = z2::trig_power_expand(p, q);
            for &phi in &[0.3f64, 1.1, 2.7, -0.9] {
                let want = phi.cos().powi(p as i32) * phi.sin().powi(q as i32);
                let got: f64 = terms
                    .iter()
                    .map(|(k, c)| {
                        let c = SurdSum::from_rational(c.clone()).to_f64();
                        match k {
                            AngularKind::Radial => c,
                            AngularKind::Cos(m) => c * (*m as f64 * phi).cos(),
                            AngularKind::Sin(m) => c * (*m as f64 * phi).sin(),
                        }
                    })
                    .sum();
                assert!((got - want).abs() < 1e-14, "p={p} q={q} phi={phi}");
            }
        }
    }
}

#[test]
fn zernike_to_cart_examples() {
    let z6 = z2::zernike_to_cart_2d(NollIndex::new(6).unwrap());
    let want = CartPoly2::from_iter([([2, 0], SurdSum::sqrt(6)), ([0, 2], -SurdSum::sqrt(6))]);
    assert_eq!(z6, want);
    let z14 = z2::zernike_to_cart_2d(NollIndex::new(14).unwrap());
    assert_eq!(z14.coeff(&[2, 2]), SurdSum::term(int(-6), 10));
    assert_eq!(z2::h_coeff(10, Index2D::new(4, 4).unwrap()).unwrap(), rat(5, 8));
}

#[test]
fn sequential_and_parallel_agree() {
    let a = verify::sum_rule_g(4, Exec::Sequential);
    let b = verify::sum_rule_g(4, Exec::Parallel);
    assert_eq!(a, b);
    assert_report("g sum rule", a);
}

use zernike_core::combinat::factorial;
use zernike_core::exact::int;
use zernike_core::numeric::{assoc_legendre, sph_harmonic_sqrt_pi, QuadratureRule};
use zernike_core::poly::RadialPoly;
use zernike_core::verify::{self, Report};
use zernike_core::zernike3d::{self as z3, Index3D, SphIndex};
use zernike_core::{ComplexSurd, SurdSum};

fn assert_report(name: &str, r: Report) {
    assert!(!r.is_empty(), "{name}: empty suite");
    if let Some(c) = r.first_failure() {
        panic!("{name}: {} of {} failed, first: {c}", r.len() - r.pass_count(), r.len());
    }
}

fn idx(n: u32, l: u32) -> Index3D {
    Index3D::new(n, l).unwrap()
}

#[test]
fn radial_forms_agree_and_hit_sqrt() {
    assert_report("radial forms", verify::radial_forms(0, 13));
}

#[test]
fn fhat_sum_rule() {
    assert_report("fhat", verify::sum_rule_fhat(13));
}

#[test]
fn fixed_n_expansion_reproduces_power() {
    for i in Index3D::all(11) {
        let (n, j) = (i.n(), i.l());
        let sum = z3::power_to_radial_3d_fixed_n(j, n)
            .unwrap()
            .into_iter()
            .fold(RadialPoly::zero(), |acc, (l, c)| &acc + &z3::radial_3d(idx(n, l)).scale(&c));
        assert_eq!(sum, RadialPoly::term(j, SurdSum::one()), "r^{j} at n={n}");
    }
}

#[test]
fn power_expansion_reproduces_power() {
    for i in Index3D::all(13) {
        let (j, l) = (i.n(), i.l());
        let sum = z3::power_to_radial_3d(j, l)
            .unwrap()
            .into_iter()
            .fold(RadialPoly::zero(), |acc, (n, c)| &acc + &z3::radial_3d(idx(n, l)).scale(&c));
        assert_eq!(sum, RadialPoly::term(j, SurdSum::one()), "r^{j} at l={l}");
    }
}

#[test]
fn k_reproduces_radial_products() {
    for a in Index3D::all(5) {
        for b in Index3D::all(5) {
            let prod = &z3::radial_3d(a) * &z3::radial_3d(b);
            for l3 in ((a.l() + b.l()) % 2..=a.l() + b.l()).step_by(2) {
                let sum = z3::product_expand_3d(a, b, l3)
                    .unwrap()
                    .into_iter()
                    .fold(RadialPoly::zero(), |acc, (n3, k)| &acc + &z3::radial_3d(idx(n3, l3)).scale(&k));
                assert_eq!(sum, prod, "{a} * {b} at l3={l3}");
            }
        }
    }
}

#[test]
fn negative_m_rule() {
    assert_report("negative m", verify::negative_m_rule(6));
}

#[test]
fn harmonics_are_homogeneous() {
    for l in 0..=6 {
        for m in -(l as i32)..=l as i32 {
            let y = z3::ylm_cart(SphIndex::new(l, m).unwrap());
            assert!(y.keys().all(|k| k.iter().sum::<u32>() == l), "Y_{l}^{m}");
        }
    }
}

#[test]
fn i_phi_matches_trig_expansion() {
    use zernike_core::poly::AngularKind;
    use zernike_core::zernike2d::trig_power_expand;
    // ∫ e^{imφ} cos(kφ) dφ = π δ_{k,|m|} (2π at k = 0); ∫ e^{imφ} sin(kφ) dφ = iπ sgn(m) δ_{k,|m|}
    for p in 0..=7 {
        for q in 0..=7 {
            for m in -9i32..=9 {
                let mut want = ComplexSurd::zero();
                for (k, c) in trig_power_expand(p, q) {
                    let c = SurdSum::from_rational(c);
                    let term = match k {
                        AngularKind::Radial if m == 0 => ComplexSurd::real(c.scale(&int(2))),
                        AngularKind::Cos(k) if k == m.unsigned_abs() => ComplexSurd::real(c),
                        AngularKind::Sin(k) if k == m.unsigned_abs() => ComplexSurd::imag(c.scale(&int(m.signum() as i64))),
                        _ => continue,
                    };
                    want = &want + &term;
                }
                assert_eq!(z3::i_phi(p, q, m), want, "p={p} q={q} m={m}");
            }
        }
    }
}

#[test]
fn i_phi_recurrence() {
    for p in 0..=6 {
        for q in 0..=6 {
            for m in -8i32..=8 {
                let lhs = z3::i_phi(p, q + 2, m);
                let rhs = &z3::i_phi(p, q, m) - &z3::i_phi(p + 2, q, m);
                assert_eq!(lhs, rhs, "p={p} q={q} m={m}");
            }
        }
    }
}

#[test]
fn i_theta_matches_quadrature() {
    let rule = QuadratureRule::default();
    for l in 0..=6u32 {
        for m in -(l as i32)..=l as i32 {
            let ma = m.unsigned_abs();
            // P_l^{-μ} = (-1)^μ (l-μ)!/(l+μ)! P_l^μ so that Y^(-m) = (-1)^m Y^(m)*
            let scale = if m >= 0 {
                1.0
            } else {
                let r = SurdSum::from_rational(zernike_core::Rational::new(factorial((l - ma) as u64), factorial((l + ma) as u64))).to_f64();
                if ma % 2 == 0 { r } else { -r }
            };
            for k in (ma..=ma + 6).step_by(2) {
                for t in 0..=5u32 {
                    let exact = SurdSum::from_rational(z3::i_theta(k, t, l, m)).to_f64();
                    let quad = scale
                        * rule.integrate(|x| (1.0 - x * x).powf(k as f64 / 2.0) * x.powi(t as i32) * assoc_legendre(l, ma, x));
                    assert!((exact - quad).abs() < 1e-12, "k={k} t={t} l={l} m={m}: {exact} vs {quad}");
                }
            }
        }
    }
}

#[test]
fn y_product_matches_gaunt_quadrature() {
    // √π Y1 Y2 = Σ c √π Y3 with c = ∫ (√πY1)(√πY2)(√πY3)* dΩ / π
    let rule = QuadratureRule::gauss_legendre(24);
    let nphi = 32;
    for l1 in 0..=2u32 {
        for l2 in 0..=l1 {
            for m1 in -(l1 as i32)..=l1 as i32 {
                for m2 in -(l2 as i32)..=l2 as i32 {
                    let (i1, i2) = (SphIndex::new(l1, m1).unwrap(), SphIndex::new(l2, m2).unwrap());
                    let table = z3::y_product_expand(i1, i2);
                    for l3 in 0..=l1 + l2 {
                        let m3 = m1 + m2;
                        if m3.unsigned_abs() > l3 {
                            continue;
                        }
                        let i3 = SphIndex::new(l3, m3).unwrap();
                        let mut re = 0.0;
                        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
                            for s in 0..nphi {
                                let phi = 2.0 * std::f64::consts::PI * s as f64 / nphi as f64;
                                let a = sph_harmonic_sqrt_pi(i1, *x, phi);
                                let b = sph_harmonic_sqrt_pi(i2, *x, phi);
                                let c = sph_harmonic_sqrt_pi(i3, *x, phi);
                                let ab = (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
                                re += w * (ab.0 * c.0 + ab.1 * c.1);
                            }
                        }
                        let quad = re * 2.0 / nphi as f64;
                        let exact = table.get(&i3).map(SurdSum::to_f64).unwrap_or(0.0);
                        assert!((quad - exact).abs() < 1e-12, "Y_{l1}^{m1} Y_{l2}^{m2} -> Y_{l3}^{m3}: {exact} vs {quad}");
                    }
                }
            }
        }
    }
}

#[test]
fn wigner_selection_rules() {
    use zernike_core::zernike3d::{wigner3j, Wigner3jArgs};
    assert!(wigner3j(Wigner3jArgs::new([1, 1, 3], [0, 0, 0]).unwrap()).is_zero());
    assert!(wigner3j(Wigner3jArgs::new([1, 1, 1], [0, 0, 0]).unwrap()).is_zero());
    assert!(wigner3j(Wigner3jArgs::new([2, 1, 1], [1, 1, 0]).unwrap()).is_zero());
    assert!(Wigner3jArgs::new([1, 1, 1], [2, 0, 0]).is_err());
}

#[test]
fn invalid_indices_are_rejected() {
    assert!(Index3D::new(3, 2).is_err());
    assert!(SphIndex::new(2, 3).is_err());
    assert!(z3::zernike3d_to_cart(2, 2, 3).is_err());
    assert!(z3::power_to_radial_3d_fixed_n(1, 2).is_err());
    assert!(z3::product_expand_3d(idx(1, 1), idx(1, 1), 1).is_err());
}

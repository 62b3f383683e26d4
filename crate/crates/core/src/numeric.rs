//! Floating-point oracles: Gauss–Legendre quadrature, polynomial evaluation,
//! and brute-force integrals for every exact coefficient family.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::SurdSum;
use crate::poly::{CartPoly2, CartPoly3, RadialPoly};
use crate::zernike2d::{self as z2, AngularKind, Index2D, NollIndex};
use crate::zernike3d::{self as z3, Index3D, SphIndex};

/// Seed for the sample points used by cross-evaluation checks.
pub const DEFAULT_SEED: u64 = 0x5EED_2D3D;

/// Default node count.
pub const DEFAULT_ORDER: usize = 64;

/// Gauss–Legendre rule on `(-1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

impl QuadratureRule {
    /// Nodes by Newton iteration on `P_order` from Chebyshev-like starting points.
    pub fn gauss_legendre(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        if order == 1 {
            return QuadratureRule { nodes: vec![0.0], weights: vec![2.0] };
        }
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(order, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(order, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        QuadratureRule { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_{-1}^{1} f`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }

    /// `∫_0^1 f`, by the affine map from `(-1, 1)`.
    pub fn integrate_unit(&self, f: impl Fn(f64) -> f64) -> f64 {
        0.5 * self.integrate(|x| f(0.5 * (x + 1.0)))
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::gauss_legendre(DEFAULT_ORDER)
    }
}

/// Float image of a radial polynomial, ready for repeated evaluation.
///
/// When every coefficient is a rational multiple of one common surd, the surd
/// is factored out so the remaining coefficients are usually exact in `f64`.
#[derive(Clone, Debug)]
pub struct RadialF64 {
    // dense, index = exponent
    coeffs: Vec<f64>,
    scale: f64,
}

impl RadialF64 {
    pub fn new(p: &RadialPoly) -> Self {
        let degree = p.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![0.0; degree + 1];
        let radicands: BTreeSet<u64> = p.iter().flat_map(|(_, c)| c.terms().map(|(k, _)| k)).collect();
        let common = match (radicands.len(), p.iter().all(|(_, c)| c.len() == 1)) {
            (1, true) => radicands.first().copied(),
            _ => None,
        };
        for (e, c) in p.iter() {
            coeffs[*e as usize] = match common {
                Some(k) => SurdSum::from_rational(c.weight(k)).to_f64(),
                None => c.to_f64(),
            };
        }
        let scale = common.map_or(1.0, |k| (k as f64).sqrt());
        RadialF64 { coeffs, scale }
    }

    /// Compensated Horner evaluation.
    pub fn eval(&self, r: f64) -> f64 {
        let mut it = self.coeffs.iter().rev();
        let Some(&top) = it.next() else { return 0.0 };
        let (mut s, mut err) = (top, 0.0f64);
        for &a in it {
            let p = s * r;
            let p_err = s.mul_add(r, -p);
            let t = p + a;
            let z = t - p;
            let t_err = (p - (t - z)) + (a - z);
            err = err.mul_add(r, p_err + t_err);
            s = t;
        }
        self.scale * (s + err)
    }
}

/// Float image of a bivariate polynomial.
#[derive(Clone, Debug)]
pub struct Cart2F64(Vec<([i32; 2], f64)>);

impl Cart2F64 {
    pub fn new(p: &CartPoly2) -> Self {
        Cart2F64(p.iter().map(|(k, c)| ([k[0] as i32, k[1] as i32], c.to_f64())).collect())
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.0.iter().map(|([p, q], c)| c * x.powi(*p) * y.powi(*q)).sum()
    }
}

/// Float image of a complex trivariate polynomial.
#[derive(Clone, Debug)]
pub struct Cart3F64(Vec<([i32; 3], f64, f64)>);

impl Cart3F64 {
    pub fn new(p: &CartPoly3) -> Self {
        Cart3F64(
            p.iter()
                .map(|(k, c)| {
                    let (re, im) = c.to_f64_pair();
                    ([k[0] as i32, k[1] as i32, k[2] as i32], re, im)
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> (f64, f64) {
        self.0.iter().fold((0.0, 0.0), |(ar, ai), ([p, q, t], re, im)| {
            let v = x.powi(*p) * y.powi(*q) * z.powi(*t);
            (ar + re * v, ai + im * v)
        })
    }
}

pub fn eval_radial(p: &RadialPoly, r: f64) -> f64 {
    RadialF64::new(p).eval(r)
}

/// `|∫₀¹ r R R' dr - δ/(2(n+1))|` by quadrature.
pub fn ortho_check_2d(rule: &QuadratureRule, n: u32, n2: u32, m: u32) -> f64 {
    let a = RadialF64::new(&z2::radial_2d(Index2D::new(n, m).expect("valid index")));
    let b = RadialF64::new(&z2::radial_2d(Index2D::new(n2, m).expect("valid index")));
    let target = if n == n2 { 1.0 / (2.0 * (n as f64 + 1.0)) } else { 0.0 };
    (rule.integrate_unit(|r| r * a.eval(r) * b.eval(r)) - target).abs()
}

/// `|∫₀¹ r² R R' dr - δ|` by quadrature.
pub fn ortho_check_3d(rule: &QuadratureRule, n: u32, n2: u32, l: u32) -> f64 {
    let a = RadialF64::new(&z3::radial_3d(Index3D::new(n, l).expect("valid index")));
    let b = RadialF64::new(&z3::radial_3d(Index3D::new(n2, l).expect("valid index")));
    let target = if n == n2 { 1.0 } else { 0.0 };
    (rule.integrate_unit(|r| r * r * a.eval(r) * b.eval(r)) - target).abs()
}

/// `2(n+1) ∫₀¹ r^{j+1} R_n^m dr`, the projection defining `h`.
pub fn brute_force_h(rule: &QuadratureRule, j: u32, idx: Index2D) -> f64 {
    let p = RadialF64::new(&z2::radial_2d(idx));
    2.0 * (idx.n() as f64 + 1.0) * rule.integrate_unit(|r| r.powi(j as i32 + 1) * p.eval(r))
}

/// `∫₀¹ r^{j+2} R_n^(l) dr`, the projection defining `f`.
pub fn brute_force_f(rule: &QuadratureRule, j: u32, idx: Index3D) -> f64 {
    let p = RadialF64::new(&z3::radial_3d(idx));
    rule.integrate_unit(|r| r.powi(j as i32 + 2) * p.eval(r))
}

/// `2(n3+1) ∫₀¹ r R1 R2 R3 dr`.
pub fn brute_force_g(rule: &QuadratureRule, i1: Index2D, i2: Index2D, i3: Index2D) -> f64 {
    let [a, b, c] = [i1, i2, i3].map(|i| RadialF64::new(&z2::radial_2d(i)));
    2.0 * (i3.n() as f64 + 1.0) * rule.integrate_unit(|r| r * a.eval(r) * b.eval(r) * c.eval(r))
}

/// `∫₀¹ r² R1 R2 R3 dr`.
pub fn brute_force_k(rule: &QuadratureRule, i1: Index3D, i2: Index3D, i3: Index3D) -> f64 {
    let [a, b, c] = [i1, i2, i3].map(|i| RadialF64::new(&z3::radial_3d(i)));
    rule.integrate_unit(|r| r * r * a.eval(r) * b.eval(r) * c.eval(r))
}

/// Product rule over the unit ball: Gauss–Legendre in `r` and `cos θ`,
/// trapezoid in `φ`. Exact for polynomials of degree below the node counts.
#[derive(Clone, Debug)]
pub struct BallRule {
    radial: QuadratureRule,
    polar: QuadratureRule,
    azimuth: usize,
}

impl BallRule {
    pub fn new(order: usize) -> Self {
        BallRule {
            radial: QuadratureRule::gauss_legendre(order),
            polar: QuadratureRule::gauss_legendre(order),
            azimuth: 2 * order,
        }
    }

    /// `∫ f dV` over the unit ball for complex `f` given as `(re, im)`.
    pub fn integrate(&self, f: impl Fn(f64, f64, f64) -> (f64, f64)) -> (f64, f64) {
        let dphi = 2.0 * PI / self.azimuth as f64;
        let mut acc = (0.0, 0.0);
        for (xr, wr) in self.radial.nodes().iter().zip(self.radial.weights()) {
            let r = 0.5 * (xr + 1.0);
            let wr = 0.5 * wr * r * r;
            for (ct, wt) in self.polar.nodes().iter().zip(self.polar.weights()) {
                let st = (1.0 - ct * ct).sqrt();
                for k in 0..self.azimuth {
                    let phi = k as f64 * dphi;
                    let (re, im) = f(r * st * phi.cos(), r * st * phi.sin(), r * ct);
                    let w = wr * wt * dphi;
                    acc.0 += w * re;
                    acc.1 += w * im;
                }
            }
        }
        acc
    }
}

/// `(1/π) ∫_ball x^p y^q z^t conj(√π Z) dV`, the projection defining `u`.
pub fn brute_force_u(rule: &BallRule, p: u32, q: u32, t: u32, idx: Index3D, m: i32) -> (f64, f64) {
    let z = Cart3F64::new(&z3::zernike3d_to_cart(idx.n(), idx.l(), m).expect("valid index"));
    let (re, im) = rule.integrate(|x, y, zz| {
        let mono = x.powi(p as i32) * y.powi(q as i32) * zz.powi(t as i32);
        let (zr, zi) = z.eval(x, y, zz);
        (mono * zr, -mono * zi)
    });
    (re / PI, im / PI)
}

/// Uniform points in the open unit disk.
pub fn seeded_disk_points(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (x, y): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if x * x + y * y < 1.0 {
            out.push((x, y));
        }
    }
    out
}

/// Uniform points in the open unit ball.
pub fn seeded_ball_points(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: (f64, f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if v.0 * v.0 + v.1 * v.1 + v.2 * v.2 < 1.0 {
            out.push(v);
        }
    }
    out
}

/// Max `|polar - Cartesian|` for `Z_j` over the samples.
pub fn cross_eval_2d(j: NollIndex, samples: &[(f64, f64)]) -> f64 {
    let (idx, kind) = z2::noll_unpack(j);
    let radial = RadialF64::new(&z2::radial_2d(idx));
    let norm = z2::noll_norm(idx).to_f64();
    let cart = Cart2F64::new(&z2::zernike_to_cart_2d(j));
    samples
        .iter()
        .map(|&(x, y)| {
            let (r, phi) = (x.hypot(y), y.atan2(x));
            let ang = match kind {
                AngularKind::Radial => 1.0,
                AngularKind::Cos(m) => (m as f64 * phi).cos(),
                AngularKind::Sin(m) => (m as f64 * phi).sin(),
            };
            (norm * radial.eval(r) * ang - cart.eval(x, y)).abs()
        })
        .fold(0.0, f64::max)
}

/// Associated Legendre `P_l^m(x)` for `m >= 0` without the `(-1)^m` phase.
pub fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    if m > l {
        return 0.0;
    }
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 0..m {
        pmm *= (2 * k + 1) as f64 * s;
    }
    if l == m {
        return pmm;
    }
    let mut p1 = x * (2 * m + 1) as f64 * pmm;
    let mut p0 = pmm;
    for ll in m + 2..=l {
        let p2 = ((2 * ll - 1) as f64 * x * p1 - (ll + m - 1) as f64 * p0) / (ll - m) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `√π Y_l^(m)(θ, φ)` from the Legendre recurrence, with the `(-1)^m` phase.
pub fn sph_harmonic_sqrt_pi(idx: SphIndex, cos_theta: f64, phi: f64) -> (f64, f64) {
    let (l, m) = (idx.l(), idx.m());
    let ma = m.unsigned_abs();
    let ratio: f64 = ((l - ma + 1)..=(l + ma)).map(|k| k as f64).product::<f64>().recip();
    let norm = ((2 * l + 1) as f64 / 4.0 * ratio).sqrt();
    let v = norm * assoc_legendre(l, ma, cos_theta);
    let phase = if ma % 2 == 1 { -1.0 } else { 1.0 };
    let (re, im) = (phase * v * (ma as f64 * phi).cos(), phase * v * (ma as f64 * phi).sin());
    if m >= 0 {
        (re, im)
    } else {
        // Y^(-m) = (-1)^m conj(Y^(m))
        (phase * re, -phase * im)
    }
}

/// Max deviation between `√π Z_{n,l}^(m)` from radial times spherical
/// harmonic and from its Cartesian polynomial, on real and imaginary parts.
pub fn cross_eval_3d(n: u32, l: u32, m: i32, samples: &[(f64, f64, f64)]) -> (f64, f64) {
    let idx = Index3D::new(n, l).expect("valid index");
    let sph = SphIndex::new(l, m).expect("valid harmonic");
    let radial = RadialF64::new(&z3::radial_3d(idx));
    let cart = Cart3F64::new(&z3::zernike3d_to_cart(n, l, m).expect("valid index"));
    samples.iter().fold((0.0, 0.0), |(dr, di), &(x, y, z)| {
        let r = (x * x + y * y + z * z).sqrt();
        let (ct, phi) = (z / r, y.atan2(x));
        let rv = radial.eval(r);
        let (yr, yi) = sph_harmonic_sqrt_pi(sph, ct, phi);
        let (cr, ci) = cart.eval(x, y, z);
        (dr.max((rv * yr - cr).abs()), di.max((rv * yi - ci).abs()))
    })
}

/// Max `|(1/π)∫ (√πY)(√πY')* dΩ - δ|` over all pairs with `l, l' <= lmax`,
/// with Gauss–Legendre in `cos θ` and trapezoid in `φ`.
pub fn sphere_orthonormality_residual(lmax: u32, order: usize) -> f64 {
    let rule = QuadratureRule::gauss_legendre(order);
    let naz = 2 * order;
    let dphi = 2.0 * PI / naz as f64;
    let idx: Vec<SphIndex> = (0..=lmax)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| SphIndex::new(l, m).unwrap()))
        .collect();
    let polys: Vec<Cart3F64> = idx.iter().map(|i| Cart3F64::new(&z3::ylm_cart(*i))).collect();
    let mut worst: f64 = 0.0;
    for a in 0..idx.len() {
        for b in a..idx.len() {
            let mut acc = (0.0, 0.0);
            for (ct, w) in rule.nodes().iter().zip(rule.weights()) {
                let st = (1.0 - ct * ct).sqrt();
                for k in 0..naz {
                    let phi = k as f64 * dphi;
                    let (x, y, z) = (st * phi.cos(), st * phi.sin(), *ct);
                    let (ar, ai) = polys[a].eval(x, y, z);
                    let (br, bi) = polys[b].eval(x, y, z);
                    acc.0 += w * dphi * (ar * br + ai * bi);
                    acc.1 += w * dphi * (ai * br - ar * bi);
                }
            }
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((acc.0 / PI - target).abs()).max((acc.1 / PI).abs());
        }
    }
    worst
}

//! Verification suites shared by the CLI and the acceptance target. Each
//! suite returns a [`Report`] with one [`Check`] per index tuple.

use std::fmt;
use std::path::Path;

use crate::exact::{int, ComplexSurd, Rational, SurdSum};
use crate::expr::{Atom, Expr};
use crate::fixture::{self, Family, FixtureError};
use crate::numeric::{self, BallRule, QuadratureRule};
use crate::par::Exec;
use crate::poly::{CartPoly2, CartPoly3};
use crate::zernike2d::{self as z2, Index2D, NollIndex};
use crate::zernike3d::{self as z3, Index3D, Wigner3jArgs};

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    /// Exact equality check.
    Exact(bool),
    /// Floating-point residual against a tolerance.
    Residual { value: f64, tol: f64 },
    /// The check could not be evaluated.
    Error(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn exact(label: impl Into<String>, ok: bool) -> Self {
        Check { label: label.into(), outcome: Outcome::Exact(ok) }
    }

    pub fn residual(label: impl Into<String>, value: f64, tol: f64) -> Self {
        Check { label: label.into(), outcome: Outcome::Residual { value, tol } }
    }

    pub fn error(label: impl Into<String>, msg: impl fmt::Display) -> Self {
        Check { label: label.into(), outcome: Outcome::Error(msg.to_string()) }
    }

    pub fn passed(&self) -> bool {
        match self.outcome {
            Outcome::Exact(ok) => ok,
            // NaN fails
            Outcome::Residual { value, tol } => value <= tol,
            Outcome::Error(_) => false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok  " } else { "FAIL" };
        match &self.outcome {
            Outcome::Exact(_) => write!(f, "{status} {} exact", self.label),
            Outcome::Residual { value, tol } => write!(f, "{status} {} residual {value:.3e} (tol {tol:.0e})", self.label),
            Outcome::Error(msg) => write!(f, "{status} {} error: {msg}", self.label),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter_map(|c| match c.outcome {
                Outcome::Residual { value, .. } => Some(value),
                _ => None,
            })
            .fold(0.0, f64::max)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn merge(reports: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report::default();
        for r in reports {
            out.extend(r);
        }
        out
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        Report { checks: iter.into_iter().collect() }
    }
}

/// Exact regeneration of every transcribed row of `family`.
pub fn fixtures(dir: &Path, family: Family, exec: Exec) -> Result<Report, FixtureError> {
    let rows = fixture::check_family(dir, family, exec)?;
    Ok(rows
        .iter()
        .map(|c| {
            let label = format!("{} {}", family, c.entry.key);
            match &c.generated {
                Err(e) => Check::error(label, e),
                Ok(_) => Check::exact(label, c.matches()),
            }
        })
        .collect())
}

fn pairs_2d(nmax: u32) -> Vec<(Index2D, Index2D)> {
    let all = Index2D::all(nmax);
    all.iter().flat_map(|a| all.iter().map(move |b| (*a, *b))).collect()
}

fn pairs_3d(nmax: u32) -> Vec<(Index3D, Index3D)> {
    let all = Index3D::all(nmax);
    all.iter().flat_map(|a| all.iter().map(move |b| (*a, *b))).collect()
}

/// `Σ_n h_{j,n,m} = 1` for every valid `(j, m)` with `j <= jmax`.
pub fn sum_rule_h(jmax: u32) -> Report {
    Index2D::all(jmax)
        .into_iter()
        .map(|i| {
            let (j, m) = (i.n(), i.m());
            let label = format!("h j={j} m={m}");
            match z2::power_to_radial_2d(j, m) {
                Ok(h) => Check::exact(label, h.values().fold(int(0), |a, v| a + v) == int(1)),
                Err(e) => Check::error(label, e),
            }
        })
        .collect()
}

/// `Σ_n √(2n+3) f_{j,n,l} = 1` for every valid `(j, l)` with `j <= jmax`.
pub fn sum_rule_f(jmax: u32) -> Report {
    Index3D::all(jmax)
        .into_iter()
        .map(|i| {
            let (j, l) = (i.n(), i.l());
            let label = format!("f j={j} l={l}");
            match z3::power_to_radial_3d(j, l) {
                Ok(f) => {
                    let s = f.iter().fold(SurdSum::zero(), |a, (n, v)| &a + &(v * &SurdSum::sqrt(2 * *n as u64 + 3)));
                    Check::exact(label, s == SurdSum::one())
                }
                Err(e) => Check::error(label, e),
            }
        })
        .collect()
}

/// `√(2n+3) Σ_l f̂_l = 1` for every valid `(j, n)` with `n <= nmax`.
pub fn sum_rule_fhat(nmax: u32) -> Report {
    Index3D::all(nmax)
        .into_iter()
        .map(|i| {
            let (n, j) = (i.n(), i.l());
            let label = format!("fhat j={j} n={n}");
            match z3::power_to_radial_3d_fixed_n(j, n) {
                Ok(f) => {
                    let s = f.values().fold(SurdSum::zero(), |a, v| &a + v);
                    Check::exact(label, &s * &SurdSum::sqrt(2 * n as u64 + 3) == SurdSum::one())
                }
                Err(e) => Check::error(label, e),
            }
        })
        .collect()
}

/// `Σ_{n3} g = 1` for both couplings `m3 = |m1 - m2|, m1 + m2`.
pub fn sum_rule_g(nmax: u32, exec: Exec) -> Report {
    let pairs = pairs_2d(nmax);
    let rows = exec.map(&pairs, |(a, b)| {
        let mut m3s = vec![a.m().abs_diff(b.m()), a.m() + b.m()];
        m3s.dedup();
        m3s.into_iter()
            .map(|m3| {
                let label = format!("g {a} {b} m3={m3}");
                match z2::product_expand_2d(*a, *b, m3) {
                    Ok(g) => Check::exact(label, g.values().fold(int(0), |s, v| s + v) == int(1)),
                    Err(e) => Check::error(label, e),
                }
            })
            .collect::<Vec<_>>()
    });
    rows.into_iter().flatten().collect()
}

fn l3_range(a: Index3D, b: Index3D) -> impl Iterator<Item = u32> {
    ((a.l() + b.l()) % 2..=a.l() + b.l()).step_by(2)
}

/// `Σ_{n3} √(2n3+3) k = √(2n1+3) √(2n2+3)` for every admissible `l3`.
pub fn sum_rule_k(nmax: u32, exec: Exec) -> Report {
    let pairs = pairs_3d(nmax);
    let rows = exec.map(&pairs, |(a, b)| {
        let target = &SurdSum::sqrt(a.norm_sq()) * &SurdSum::sqrt(b.norm_sq());
        l3_range(*a, *b)
            .map(|l3| {
                let label = format!("k {a} {b} l3={l3}");
                match z3::product_expand_3d(*a, *b, l3) {
                    Ok(k) => {
                        let s = k.iter().fold(SurdSum::zero(), |acc, (n3, v)| &acc + &(v * &SurdSum::sqrt(2 * *n3 as u64 + 3)));
                        Check::exact(label, s == target)
                    }
                    Err(e) => Check::error(label, e),
                }
            })
            .collect::<Vec<_>>()
    });
    rows.into_iter().flatten().collect()
}

/// Symbolic `∫₀¹ r R_n^m R_{n'}^m dr = δ/(2(n+1))` for `n, n' <= nmax`.
pub fn ortho_exact_2d(nmax: u32, exec: Exec) -> Report {
    let pairs: Vec<_> = pairs_2d(nmax).into_iter().filter(|(a, b)| a.m() == b.m()).collect();
    exec.map(&pairs, |(a, b)| {
        let v = (&z2::radial_2d(*a) * &z2::radial_2d(*b)).integral_weighted(1);
        let want = if a == b { SurdSum::from_rational(Rational::new(1.into(), (2 * (a.n() + 1)).into())) } else { SurdSum::zero() };
        Check::exact(format!("{a} {b}"), v == want)
    })
    .into_iter()
    .collect()
}

/// Symbolic `∫₀¹ r² R_n^(l) R_{n'}^(l) dr = δ` for `n, n' <= nmax`.
pub fn ortho_exact_3d(nmax: u32, exec: Exec) -> Report {
    let pairs: Vec<_> = pairs_3d(nmax).into_iter().filter(|(a, b)| a.l() == b.l()).collect();
    exec.map(&pairs, |(a, b)| {
        let v = (&z3::radial_3d(*a) * &z3::radial_3d(*b)).integral_weighted(2);
        let want = if a == b { SurdSum::one() } else { SurdSum::zero() };
        Check::exact(format!("{a} {b}"), v == want)
    })
    .into_iter()
    .collect()
}

/// Quadrature orthogonality residuals in 2D, `n, n' <= nmax`.
pub fn ortho_numeric_2d(nmax: u32, tol: f64) -> Report {
    let rule = QuadratureRule::default();
    pairs_2d(nmax)
        .into_iter()
        .filter(|(a, b)| a.m() == b.m())
        .map(|(a, b)| Check::residual(format!("{a} {b}"), numeric::ortho_check_2d(&rule, a.n(), b.n(), a.m()), tol))
        .collect()
}

/// Quadrature orthonormality residuals in 3D, `n, n' <= nmax`.
pub fn ortho_numeric_3d(nmax: u32, tol: f64) -> Report {
    let rule = QuadratureRule::default();
    pairs_3d(nmax)
        .into_iter()
        .filter(|(a, b)| a.l() == b.l())
        .map(|(a, b)| Check::residual(format!("{a} {b}"), numeric::ortho_check_3d(&rule, a.n(), b.n(), a.l()), tol))
        .collect()
}

/// Both closed forms agree and `R(1)` has its special value.
pub fn radial_forms(nmax_2d: u32, nmax_3d: u32) -> Report {
    let mut out: Report = Index2D::all(nmax_2d)
        .into_iter()
        .map(|i| {
            let p = z2::radial_2d(i);
            Check::exact(format!("{i} forms"), p == z2::radial_2d_alt(i) && p.coeff_sum() == SurdSum::one())
        })
        .collect();
    out.extend(
        Index3D::all(nmax_3d)
            .into_iter()
            .map(|i| {
                let p = z3::radial_3d(i);
                Check::exact(format!("{i} forms"), p == z3::radial_3d_alt(i) && p.coeff_sum() == SurdSum::sqrt(i.norm_sq()))
            })
            .collect(),
    );
    out
}

fn recur_check<T: PartialEq + fmt::Debug>(label: String, got: crate::Result<T>, want: crate::Result<T>) -> Check {
    match (got, want) {
        (Ok(g), Ok(w)) => Check::exact(label, g == w),
        (Err(e), _) | (_, Err(e)) => Check::error(label, e),
    }
}

/// The three h recurrences against the closed form, on `j <= jmax`.
pub fn recurrences_h(jmax: u32) -> Report {
    let mut out = Report::default();
    for j in 0..=jmax {
        for i in Index2D::all(j) {
            let (n, m) = (i.n(), i.m());
            if (j - m) % 2 != 0 {
                continue;
            }
            let h = z2::h_coeff(j, i).expect("valid grid point");
            if j + 2 <= jmax {
                out.checks.push(recur_check(format!("h j-step j={j} n={n} m={m}"), z2::h_recur_j(&h, j, n, m), z2::h_coeff(j + 2, i)));
            }
            if n + 2 <= j {
                out.checks.push(recur_check(format!("h n-step j={j} n={n} m={m}"), z2::h_recur_n(&h, j, n, m), Index2D::new(n + 2, m).and_then(|i2| z2::h_coeff(j, i2))));
            }
            if m + 2 <= n {
                out.checks.push(recur_check(format!("h m-step j={j} n={n} m={m}"), z2::h_recur_m(&h, j, n, m), Index2D::new(n, m + 2).and_then(|i2| z2::h_coeff(j, i2))));
            }
        }
    }
    out
}

/// The three f recurrences against the closed form, on `j <= jmax`.
pub fn recurrences_f(jmax: u32) -> Report {
    let mut out = Report::default();
    for j in 0..=jmax {
        for i in Index3D::all(j) {
            let (n, l) = (i.n(), i.l());
            if (j - l) % 2 != 0 {
                continue;
            }
            let f = z3::f_coeff(j, i).expect("valid grid point");
            if j + 2 <= jmax {
                out.checks.push(recur_check(format!("f j-step j={j} n={n} l={l}"), z3::f_recur_j(&f, j, n, l), z3::f_coeff(j + 2, i)));
            }
            if n + 2 <= j {
                out.checks.push(recur_check(format!("f n-step j={j} n={n} l={l}"), z3::f_recur_n(&f, j, n, l), Index3D::new(n + 2, l).and_then(|i2| z3::f_coeff(j, i2))));
            }
            if l + 2 <= n {
                out.checks.push(recur_check(format!("f l-step j={j} n={n} l={l}"), z3::f_recur_l(&f, j, n, l), Index3D::new(n, l + 2).and_then(|i2| z3::f_coeff(j, i2))));
            }
        }
    }
    out
}

/// Triple-sum g equals the linear-system route for all `n1, n2 <= nmax`.
pub fn g_routes(nmax: u32, exec: Exec) -> Report {
    let pairs = pairs_2d(nmax);
    let rows = exec.map(&pairs, |(a, b)| {
        let mut m3s = vec![a.m().abs_diff(b.m()), a.m() + b.m()];
        m3s.dedup();
        m3s.into_iter()
            .map(|m3| {
                recur_check(format!("g routes {a} {b} m3={m3}"), z2::product_expand_2d(*a, *b, m3), z2::g_via_linear_system(*a, *b, m3))
            })
            .collect::<Vec<_>>()
    });
    rows.into_iter().flatten().collect()
}

/// `x^p y^q` back through the Zernike expansion, for `p + q <= deg`.
pub fn roundtrip_2d(deg: u32, exec: Exec) -> Report {
    let monos: Vec<(u32, u32)> = (0..=deg).flat_map(|d| (0..=d).map(move |p| (p, d - p))).collect();
    exec.map(&monos, |&(p, q)| {
        let label = format!("x^{p} y^{q}");
        match z2::expansion_to_cart_2d(&z2::cart_monomial_to_zernike_2d(p, q)) {
            Ok(back) => Check::exact(label, back == CartPoly2::term([p, q], SurdSum::one())),
            Err(e) => Check::error(label, e),
        }
    })
    .into_iter()
    .collect()
}

/// `x^p y^q z^t` back through the 3D expansion, for `p + q + t <= deg`.
pub fn roundtrip_3d(deg: u32, exec: Exec) -> Report {
    let monos: Vec<[u32; 3]> = (0..=deg)
        .flat_map(|d| (0..=d).flat_map(move |p| (0..=d - p).map(move |q| [p, q, d - p - q])))
        .collect();
    exec.map(&monos, |&[p, q, t]| {
        let label = format!("x^{p} y^{q} z^{t}");
        match z3::expansion_to_cart_3d(&z3::cart_monomial_to_zernike_3d(p, q, t)) {
            Ok(back) => Check::exact(label, back == CartPoly3::term([p, q, t], ComplexSurd::one())),
            Err(e) => Check::error(label, e),
        }
    })
    .into_iter()
    .collect()
}

/// Polar against Cartesian evaluation of every `Z_j` with `n <= nmax`.
pub fn cross_eval_2d(nmax: u32, count: usize, seed: u64, tol: f64, exec: Exec) -> Report {
    let pts = numeric::seeded_disk_points(count, seed);
    let js: Vec<u32> = (1..=(nmax + 1) * (nmax + 2) / 2).collect();
    exec.map(&js, |&j| Check::residual(format!("Z_{j}"), numeric::cross_eval_2d(NollIndex::new(j).unwrap(), &pts), tol))
        .into_iter()
        .collect()
}

/// Polar against Cartesian evaluation of every `Z_{n,l}^(m)` with `n <= nmax`.
pub fn cross_eval_3d(nmax: u32, count: usize, seed: u64, tol: f64, exec: Exec) -> Report {
    let pts = numeric::seeded_ball_points(count, seed);
    let keys: Vec<(u32, u32, i32)> = Index3D::all(nmax)
        .into_iter()
        .flat_map(|i| (-(i.l() as i32)..=i.l() as i32).map(move |m| (i.n(), i.l(), m)))
        .collect();
    exec.map(&keys, |&(n, l, m)| {
        let (dr, di) = numeric::cross_eval_3d(n, l, m, &pts);
        Check::residual(format!("Z_{n},{l}^({m})"), dr.max(di), tol)
    })
    .into_iter()
    .collect()
}

fn perm<T: Copy>(v: [T; 3], p: [usize; 3]) -> [T; 3] {
    [v[p[0]], v[p[1]], v[p[2]]]
}

/// Column permutation and m-negation symmetries of the 3j symbol, `j_i <= jmax`.
pub fn wigner_symmetry(jmax: u32) -> Report {
    let mut out = Report::default();
    const EVEN: [[usize; 3]; 2] = [[1, 2, 0], [2, 0, 1]];
    const ODD: [[usize; 3]; 3] = [[1, 0, 2], [0, 2, 1], [2, 1, 0]];
    for j1 in 0..=jmax {
        for j2 in 0..=jmax {
            for j3 in 0..=jmax {
                let phase = int(if (j1 + j2 + j3) % 2 == 0 { 1 } else { -1 });
                let js = [j1, j2, j3];
                for m1 in -(j1 as i32)..=j1 as i32 {
                    for m2 in -(j2 as i32)..=j2 as i32 {
                        for m3 in -(j3 as i32)..=j3 as i32 {
                            let ms = [m1, m2, m3];
                            let base = z3::wigner3j(Wigner3jArgs { j: js, m: ms });
                            let flipped = base.scale(&phase);
                            let mut ok = EVEN.iter().all(|p| z3::wigner3j(Wigner3jArgs { j: perm(js, *p), m: perm(ms, *p) }) == base);
                            ok &= ODD.iter().all(|p| z3::wigner3j(Wigner3jArgs { j: perm(js, *p), m: perm(ms, *p) }) == flipped);
                            ok &= z3::wigner3j(Wigner3jArgs { j: js, m: [-m1, -m2, -m3] }) == flipped;
                            out.checks.push(Check::exact(format!("3j ({j1} {j2} {j3}; {m1} {m2} {m3})"), ok));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `r^j sin(mφ)` is the x/y-swapped `r^j cos(mφ)` up to `(-1)^⌊m/2⌋`, odd `m`.
pub fn odd_m_symmetry(jmax: u32) -> Report {
    let mut out = Report::default();
    for j in 0..=jmax {
        for m in (1..=j).step_by(2).filter(|m| (j - m) % 2 == 0) {
            let c = z2::rj_trig_to_cart(j, m, z2::Trig::Cos).unwrap().swap_xy();
            let s = z2::rj_trig_to_cart(j, m, z2::Trig::Sin).unwrap();
            let sign = int(if (m / 2) % 2 == 0 { 1 } else { -1 });
            out.checks.push(Check::exact(format!("r^{j} m={m}"), c.scale_rational(&sign) == s));
        }
    }
    out
}

/// `Z^(-m)`: imaginary part flips for even `m`, real part flips for odd `m`.
pub fn negative_m_rule(nmax: u32) -> Report {
    let mut out = Report::default();
    for i in Index3D::all(nmax) {
        for m in 1..=i.l() as i32 {
            let pos = z3::zernike3d_to_cart(i.n(), i.l(), m).unwrap();
            let neg = z3::zernike3d_to_cart(i.n(), i.l(), -m).unwrap();
            let want = if m % 2 == 0 {
                pos.map(|k, c| (k, c.conj()))
            } else {
                pos.map(|k, c| (k, -&c.conj()))
            };
            out.checks.push(Check::exact(format!("Z_{},{}^(-{m})", i.n(), i.l()), neg == want));
        }
    }
    out
}

/// Quadrature orthonormality of `√π Y_l^(m)` on the unit sphere.
pub fn sphere_orthonormality(lmax: u32, tol: f64) -> Report {
    Report {
        checks: vec![Check::residual(format!("Y l<={lmax}"), numeric::sphere_orthonormality_residual(lmax, 16), tol)],
    }
}

fn oracle_label(family: Family, key: &str, atom: &Atom) -> String {
    format!("{family} {key} {atom}")
}

fn single_atom(mono: &[(Atom, i32)]) -> Option<Atom> {
    match mono {
        [(a, 1)] => Some(*a),
        _ => None,
    }
}

/// Every coefficient of a transcribed `h`, `f`, `g`, `k` or `u` row against
/// its brute-force integral.
pub fn oracle_fixtures(dir: &Path, family: Family, tol: f64, exec: Exec) -> Result<Report, FixtureError> {
    let entries = fixture::load_family(dir, family)?;
    let rows = exec.map(&entries, |e| oracle_row(family, &e.key, &e.value, tol));
    Ok(Report::merge(rows))
}

fn key_nums(key: &str) -> Vec<i64> {
    key.split(',').filter_map(|p| p.trim().parse().ok()).collect()
}

fn oracle_row(family: Family, key: &str, value: &Expr, tol: f64) -> Report {
    let rule = QuadratureRule::default();
    let ball = BallRule::new(12);
    let k = key_nums(key);
    value
        .iter()
        .map(|(mono, c)| {
            let Some(atom) = single_atom(mono) else {
                return Check::error(format!("{family} {key}"), "term is not a single basis function");
            };
            let label = oracle_label(family, key, &atom);
            let (re, im) = c.to_f64_pair();
            let got = match (family, atom, k.as_slice()) {
                (Family::H, Atom::Radial2 { n, m }, [j, _]) => Index2D::new(n, m).map(|i| (numeric::brute_force_h(&rule, *j as u32, i), 0.0)),
                (Family::F, Atom::Radial3 { n, l }, [j, _]) => Index3D::new(n, l).map(|i| (numeric::brute_force_f(&rule, *j as u32, i), 0.0)),
                (Family::G, Atom::Radial2 { n, m }, [n1, m1, n2, m2, _]) => (|| {
                    Ok((numeric::brute_force_g(&rule, Index2D::new(*n1 as u32, *m1 as u32)?, Index2D::new(*n2 as u32, *m2 as u32)?, Index2D::new(n, m)?), 0.0))
                })(),
                (Family::K, Atom::Radial3 { n, l }, [n1, l1, n2, l2, _]) => (|| {
                    Ok((numeric::brute_force_k(&rule, Index3D::new(*n1 as u32, *l1 as u32)?, Index3D::new(*n2 as u32, *l2 as u32)?, Index3D::new(n, l)?), 0.0))
                })(),
                (Family::U, Atom::Zernike3 { n, l, m }, [p, q, t]) => {
                    Index3D::new(n, l).map(|i| numeric::brute_force_u(&ball, *p as u32, *q as u32, *t as u32, i, m))
                }
                _ => return Check::error(label, "no oracle for this term"),
            };
            match got {
                Ok((gr, gi)) => Check::residual(label, (gr - re).abs().max((gi - im).abs()), tol),
                Err(e) => Check::error(label, e),
            }
        })
        .collect()
}

/// Exact coefficients over a whole index grid against brute-force integrals.
///
/// `nmax` bounds `j` for `h` and `f`, `n1, n2` for `g` and `k`, and the
/// monomial degree for `u`.
pub fn oracle_grid(family: Family, nmax: u32, tol: f64, exec: Exec) -> Report {
    let rule = QuadratureRule::default();
    match family {
        Family::H => Report::merge(Index2D::all(nmax).into_iter().map(|i| {
            let (j, m) = (i.n(), i.m());
            z2::power_to_radial_2d(j, m)
                .unwrap()
                .into_iter()
                .map(|(n, h)| {
                    let q = numeric::brute_force_h(&rule, j, Index2D::new(n, m).unwrap());
                    Check::residual(format!("h j={j} R_{n}^{m}"), (q - rat_f64(&h)).abs(), tol)
                })
                .collect::<Report>()
        })),
        Family::F => Report::merge(Index3D::all(nmax).into_iter().map(|i| {
            let (j, l) = (i.n(), i.l());
            z3::power_to_radial_3d(j, l)
                .unwrap()
                .into_iter()
                .map(|(n, f)| {
                    let q = numeric::brute_force_f(&rule, j, Index3D::new(n, l).unwrap());
                    Check::residual(format!("f j={j} R_{n}^({l})"), (q - f.to_f64()).abs(), tol)
                })
                .collect::<Report>()
        })),
        Family::G => {
            let pairs = pairs_2d(nmax);
            Report::merge(exec.map(&pairs, |(a, b)| {
                let mut m3s = vec![a.m().abs_diff(b.m()), a.m() + b.m()];
                m3s.dedup();
                m3s.into_iter()
                    .flat_map(|m3| {
                        (m3..=a.n() + b.n()).step_by(2).map(move |n3| {
                            let c = Index2D::new(n3, m3).unwrap();
                            let exact = z2::g_coeff(*a, *b, c).unwrap();
                            let q = numeric::brute_force_g(&QuadratureRule::default(), *a, *b, c);
                            Check::residual(format!("g {a} {b} {c}"), (q - rat_f64(&exact)).abs(), tol)
                        })
                    })
                    .collect::<Report>()
            }))
        }
        Family::K => {
            let pairs = pairs_3d(nmax);
            Report::merge(exec.map(&pairs, |(a, b)| {
                l3_range(*a, *b)
                    .flat_map(|l3| {
                        (l3..=a.n() + b.n()).step_by(2).map(move |n3| {
                            let c = Index3D::new(n3, l3).unwrap();
                            let exact = z3::k_coeff(*a, *b, c).unwrap();
                            let q = numeric::brute_force_k(&QuadratureRule::default(), *a, *b, c);
                            Check::residual(format!("k {a} {b} {c}"), (q - exact.to_f64()).abs(), tol)
                        })
                    })
                    .collect::<Report>()
            }))
        }
        Family::U => {
            let monos: Vec<[u32; 3]> = (0..=nmax)
                .flat_map(|d| (0..=d).flat_map(move |p| (0..=d - p).map(move |q| [p, q, d - p - q])))
                .collect();
            Report::merge(exec.map(&monos, |&[p, q, t]| {
                let ball = BallRule::new(nmax as usize / 2 + 8);
                let mut rep = Report::default();
                for i in Index3D::all(p + q + t) {
                    for m in -(i.l() as i32)..=i.l() as i32 {
                        let exact = z3::u_coeff(p, q, t, i, m).unwrap().to_f64_pair();
                        let (gr, gi) = numeric::brute_force_u(&ball, p, q, t, i, m);
                        let res = (gr - exact.0).abs().max((gi - exact.1).abs());
                        rep.checks.push(Check::residual(format!("u x^{p}y^{q}z^{t} Z_{},{}^({m})", i.n(), i.l()), res, tol));
                    }
                }
                rep
            }))
        }
        other => Report {
            checks: vec![Check::error(format!("{other}"), "no quadrature oracle for this family")],
        },
    }
}

fn rat_f64(q: &Rational) -> f64 {
    SurdSum::from_rational(q.clone()).to_f64()
}

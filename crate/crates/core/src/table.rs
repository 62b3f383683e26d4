//! Row enumeration for whole coefficient tables. Keys use the fixture syntax,
//! so every generated row can be written out and read back by
//! [`fixture::load_family`].

use crate::expr::Expr;
use crate::fixture::{self, Family, FixtureError};
use crate::par::Exec;
use crate::zernike2d::Index2D;
use crate::zernike3d::Index3D;

/// Default table extent: the ranges printed in the published tables.
pub fn default_nmax(family: Family) -> u32 {
    match family {
        Family::Radial2d | Family::Radial3d | Family::F | Family::Fhat => 13,
        Family::H => 14,
        Family::Noll | Family::Z2cart2d => 10,
        Family::Cart2z2d => 8,
        Family::G => 8,
        Family::Ylmcart | Family::Z3dcart | Family::K => 7,
        Family::U => 5,
        Family::Yprod => 2,
    }
}

fn noll_count(n: u32) -> u32 {
    (n + 1) * (n + 2) / 2
}

/// Monomial exponents by ascending total degree, `x` powers first.
fn monomials_2d(deg: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=deg).flat_map(|d| (0..=d).rev().map(move |p| (p, d - p)))
}

fn monomials_3d(deg: u32) -> impl Iterator<Item = [u32; 3]> {
    (0..=deg).flat_map(|d| (0..=d).rev().flat_map(move |p| (0..=d - p).rev().map(move |q| [p, q, d - p - q])))
}

fn couplings(a: u32, b: u32) -> Vec<u32> {
    let mut v = vec![a.abs_diff(b), a + b];
    v.dedup();
    v
}

/// Row keys of `family` up to order `nmax`.
///
/// `nmax` bounds `n` for radial, Noll and Zernike-to-Cartesian tables, `j`
/// for `h` and `f`, the monomial degree for Cartesian-to-Zernike tables, `l`
/// for harmonics and `n1, n2` (or `l1, l2`) for product tables.
pub fn keys(family: Family, nmax: u32) -> Vec<String> {
    use Family::*;
    match family {
        Radial2d | H => Index2D::all(nmax).iter().map(|i| format!("{},{}", i.n(), i.m())).collect(),
        Radial3d | F => Index3D::all(nmax).iter().map(|i| format!("{},{}", i.n(), i.l())).collect(),
        // j <= n with matching parity
        Fhat => Index3D::all(nmax).iter().map(|i| format!("{},{}", i.l(), i.n())).collect(),
        Noll | Z2cart2d => (1..=noll_count(nmax)).map(|j| j.to_string()).collect(),
        Cart2z2d => monomials_2d(nmax).map(|(p, q)| format!("{p},{q}")).collect(),
        U => monomials_3d(nmax).map(|[p, q, t]| format!("{p},{q},{t}")).collect(),
        Ylmcart => (0..=nmax).flat_map(|l| (0..=l).map(move |m| format!("{l},{m}"))).collect(),
        Z3dcart => Index3D::all(nmax)
            .into_iter()
            .flat_map(|i| (0..=i.l()).map(move |m| format!("{},{},{m}", i.n(), i.l())))
            .collect(),
        G => {
            let all = Index2D::all(nmax);
            let mut out = Vec::new();
            for (k, a) in all.iter().enumerate() {
                for b in &all[k..] {
                    for m3 in couplings(a.m(), b.m()) {
                        out.push(format!("{},{},{},{},{m3}", a.n(), a.m(), b.n(), b.m()));
                    }
                }
            }
            out
        }
        K => {
            let all = Index3D::all(nmax);
            let mut out = Vec::new();
            for (k, a) in all.iter().enumerate() {
                for b in &all[k..] {
                    for l3 in ((a.l() + b.l()) % 2..=a.l() + b.l()).step_by(2) {
                        out.push(format!("{},{},{},{},{l3}", a.n(), a.l(), b.n(), b.l()));
                    }
                }
            }
            out
        }
        Yprod => {
            let all: Vec<(u32, i32)> = (0..=nmax).flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m))).collect();
            let mut out = Vec::new();
            for (k, a) in all.iter().enumerate() {
                for b in &all[..=k] {
                    out.push(format!("{},{},{},{}", a.0, a.1, b.0, b.1));
                }
            }
            out
        }
    }
}

/// One generated table row.
#[derive(Debug)]
pub struct Row {
    pub key: String,
    pub value: Result<Expr, FixtureError>,
}

/// Generate every row of `keys`, keeping their order.
pub fn generate(family: Family, keys: &[String], exec: Exec) -> Vec<Row> {
    exec.map(keys, |k| Row { key: k.clone(), value: fixture::generate(family, k) })
}

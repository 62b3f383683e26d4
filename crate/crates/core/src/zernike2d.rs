//! Circle functions: radial polynomials, inverse power expansions, Noll
//! indexing, Cartesian conversion in both directions, and product
//! linearization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::combinat::{binomial, pochhammer, sign};
use crate::error::{bail, Result};
use crate::exact::{int, rat, Rational, SurdSum};
use crate::poly::{CartPoly2, RadialPoly, Zern2Key, ZernExpansion2D};

pub use crate::poly::AngularKind;

/// Radial index pair with `0 <= m <= n` and `n - m` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index2D {
    n: u32,
    m: u32,
}

impl Index2D {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if m > n || !(n - m).is_multiple_of(2) {
            bail!(InvalidIndex, "(n, m) = ({n}, {m}) needs 0 <= m <= n with n - m even");
        }
        Ok(Index2D { n, m })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn m(self) -> u32 {
        self.m
    }

    /// `a = -(n - m)/2`
    pub fn a(self) -> i64 {
        -((self.n - self.m) as i64 / 2)
    }

    /// `b = -(n + m)/2`
    pub fn b(self) -> i64 {
        -((self.n + self.m) as i64 / 2)
    }

    /// Every valid index with `n <= nmax`, ordered by `n` then `m`.
    pub fn all(nmax: u32) -> Vec<Index2D> {
        (0..=nmax)
            .flat_map(|n| (n % 2..=n).step_by(2).map(move |m| Index2D { n, m }))
            .collect()
    }
}

impl fmt::Display for Index2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}^{}", self.n, self.m)
    }
}

/// Noll's single index, `j >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NollIndex(u32);

impl NollIndex {
    pub fn new(j: u32) -> Result<Self> {
        if j < 1 {
            bail!(InvalidArgument, "Noll index starts at 1");
        }
        Ok(NollIndex(j))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Descending-power integer coefficients `(exponent, c)`.
fn radial_2d_ints(idx: Index2D) -> Vec<(u32, BigInt)> {
    let (n, m) = (idx.n as i64, idx.m as i64);
    let half = (n - m) / 2;
    (0..=half)
        .map(|s| {
            let c = binomial(n - s, s) * binomial(n - 2 * s, half - s) * sign(s);
            ((n - 2 * s) as u32, c)
        })
        .collect()
}

fn ints_to_poly(terms: impl IntoIterator<Item = (u32, BigInt)>) -> RadialPoly {
    terms
        .into_iter()
        .map(|(e, c)| (e, SurdSum::from_rational(Rational::from_integer(c))))
        .collect()
}

/// `R_n^m` from the descending-power sum.
pub fn radial_2d(idx: Index2D) -> RadialPoly {
    ints_to_poly(radial_2d_ints(idx))
}

/// `R_n^m` from the ascending-power sum.
pub fn radial_2d_alt(idx: Index2D) -> RadialPoly {
    let (n, m) = (idx.n as i64, idx.m as i64);
    let half = (n - m) / 2;
    let pre = sign(half);
    ints_to_poly((0..=half).map(|s| {
        let c = binomial((n + m) / 2 + s, half - s) * binomial(m + 2 * s, s) * (pre * sign(s));
        ((m + 2 * s) as u32, c)
    }))
}

fn check_power(j: u32, m: u32) -> Result<()> {
    if j < m || !(j - m).is_multiple_of(2) {
        bail!(InvalidArgument, "r^{j} has no expansion over R_n^{m}: need j >= m with j - m even");
    }
    Ok(())
}

/// Coefficient of `R_n^m` in the expansion of `r^j`; zero for `n > j`.
pub fn h_coeff(j: u32, idx: Index2D) -> Result<Rational> {
    check_power(j, idx.m)?;
    let (n, m, j) = (idx.n as i64, idx.m as i64, j as i64);
    let alpha = ((n - m) / 2) as u64;
    let top = pochhammer(&rat(m - j, 2), alpha);
    let bottom = pochhammer(&(int(1) + rat(m + j, 2)), alpha + 1);
    Ok(int((n + 1) * sign(alpha as i64)) * top / bottom)
}

fn ratio(num: i64, den: i64, what: &str) -> Result<Rational> {
    if den == 0 {
        bail!(OutOfRange, "{what} recurrence has a vanishing factor");
    }
    Ok(rat(num, den))
}

/// `h_{j+2,n,m}` from `h_{j,n,m}`.
pub fn h_recur_j(h: &Rational, j: u32, n: u32, m: u32) -> Result<Rational> {
    let (j, n, m) = (j as i64, n as i64, m as i64);
    Ok(h * ratio((j + 2 + m) * (j + 2 - m), (j + 2 - n) * (j + 4 + n), "j")?)
}

/// `h_{j,n+2,m}` from `h_{j,n,m}`.
pub fn h_recur_n(h: &Rational, j: u32, n: u32, _m: u32) -> Result<Rational> {
    let (j, n) = (j as i64, n as i64);
    Ok(h * ratio((n + 3) * (j - n), (j + 4 + n) * (n + 1), "n")?)
}

/// `h_{j,n,m+2}` from `h_{j,n,m}`.
pub fn h_recur_m(h: &Rational, j: u32, _n: u32, m: u32) -> Result<Rational> {
    let (j, m) = (j as i64, m as i64);
    Ok(h * ratio(j + 2 + m, j - m, "m")?)
}

/// `r^j = Σ_n h_{j,n,m} R_n^m`, keyed by `n = m, m+2, ..., j`.
pub fn power_to_radial_2d(j: u32, m: u32) -> Result<BTreeMap<u32, Rational>> {
    check_power(j, m)?;
    (m..=j)
        .step_by(2)
        .map(|n| Ok((n, h_coeff(j, Index2D::new(n, m)?)?)))
        .collect()
}

/// Radial index and azimuthal factor of `Z_j`.
pub fn noll_unpack(j: NollIndex) -> (Index2D, AngularKind) {
    let j = j.0;
    let mut n = 0u32;
    while (n + 1) * (n + 2) / 2 < j {
        n += 1;
    }
    let k = j - n * (n + 1) / 2 - 1;
    let m = if n.is_multiple_of(2) { 2 * k.div_ceil(2) } else { 2 * (k / 2) + 1 };
    let kind = match (m, j % 2) {
        (0, _) => AngularKind::Radial,
        (_, 0) => AngularKind::Cos(m),
        _ => AngularKind::Sin(m),
    };
    (Index2D { n, m }, kind)
}

/// Inverse of [`noll_unpack`].
pub fn noll_pack(idx: Index2D, kind: AngularKind) -> Result<NollIndex> {
    if kind.m() != idx.m || (idx.m == 0) != (kind == AngularKind::Radial) {
        bail!(InvalidArgument, "{kind:?} does not fit {idx}");
    }
    let base = idx.n * (idx.n + 1) / 2;
    if idx.m == 0 {
        return Ok(NollIndex(base + 1));
    }
    let want = u32::from(matches!(kind, AngularKind::Sin(_)));
    let j = [base + idx.m, base + idx.m + 1]
        .into_iter()
        .find(|j| j % 2 == want)
        .expect("two consecutive candidates cover both parities");
    Ok(NollIndex(j))
}

/// Normalization `√(2n+2)` for `m > 0` and `√(n+1)` for `m = 0`.
pub fn noll_norm(idx: Index2D) -> SurdSum {
    if idx.m == 0 {
        SurdSum::sqrt(idx.n as u64 + 1)
    } else {
        SurdSum::sqrt(2 * idx.n as u64 + 2)
    }
}

/// `cos^p φ sin^q φ` as a sum of `cos(kφ)` (q even) or `sin(kφ)` (q odd).
pub fn trig_power_expand(p: u32, q: u32) -> BTreeMap<AngularKind, Rational> {
    let j = (p + q) as i64;
    let (p, q) = (p as i64, q as i64);
    let d = |k: i64| -> BigInt {
        if (j - k) % 2 != 0 || k.abs() > j {
            return BigInt::from(0);
        }
        let t = (j - k) / 2;
        (0..=t).map(|a| binomial(p, a) * binomial(q, t - a) * sign(t - a)).sum()
    };
    let scale = Rational::new(1.into(), BigInt::from(1) << j as usize);
    let mut out = BTreeMap::new();
    let mut put = |kind: AngularKind, v: BigInt| {
        if v != BigInt::from(0) {
            out.insert(kind, &scale * Rational::from_integer(v));
        }
    };
    if q % 2 == 0 {
        let s = sign(q / 2);
        put(AngularKind::Radial, d(0) * s);
        for k in 1..=j {
            put(AngularKind::Cos(k as u32), (d(k) + d(-k)) * s);
        }
    } else {
        let s = sign((q - 1) / 2);
        for k in 1..=j {
            put(AngularKind::Sin(k as u32), (d(k) - d(-k)) * s);
        }
    }
    out
}

/// `x^p y^q` over `R_n^m(r)` times `cos(mφ)`, `sin(mφ)` or 1.
pub fn cart_monomial_to_zernike_2d(p: u32, q: u32) -> ZernExpansion2D {
    let j = p + q;
    let mut out = ZernExpansion2D::zero();
    for (kind, c) in trig_power_expand(p, q) {
        let h = power_to_radial_2d(j, kind.m()).expect("trig terms share the parity of p + q");
        for (n, hv) in h {
            out.add_term(Zern2Key { n, kind }, SurdSum::from_rational(&c * hv));
        }
    }
    out
}

/// Trig factor selector for the Cartesian form of `r^j cos(mφ)` and `r^j sin(mφ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

/// `r^j cos(mφ)` or `r^j sin(mφ)` as a polynomial in x and y.
pub fn rj_trig_to_cart(j: u32, m: u32, trig: Trig) -> Result<CartPoly2> {
    if m > j || !(j - m).is_multiple_of(2) {
        bail!(InvalidIndex, "r^{j} with angular order {m}: need m <= j with j - m even");
    }
    if trig == Trig::Sin && m == 0 {
        bail!(InvalidArgument, "sin(0*phi) vanishes");
    }
    let first = if trig == Trig::Cos { 0 } else { 1 };
    let harmonic: CartPoly2 = (first..=m)
        .step_by(2)
        .map(|k| {
            let c = binomial(m as i64, k as i64) * sign((k / 2) as i64);
            ([m - k, k], SurdSum::from_rational(Rational::from_integer(c)))
        })
        .collect();
    let r2: CartPoly2 = [([2, 0], SurdSum::one()), ([0, 2], SurdSum::one())].into_iter().collect();
    Ok(&r2.pow((j - m) / 2) * &harmonic)
}

/// Cartesian form of `R_n^m(r)` times the azimuthal factor of `key`, without
/// Noll normalization.
pub fn zernike_component_to_cart(key: Zern2Key) -> Result<CartPoly2> {
    let m = key.kind.m();
    let idx = Index2D::new(key.n, m)?;
    let trig = match key.kind {
        AngularKind::Sin(_) => Trig::Sin,
        _ => Trig::Cos,
    };
    let mut out = CartPoly2::zero();
    for (e, c) in radial_2d(idx).iter() {
        let part = rj_trig_to_cart(*e, m, trig)?.scale(c);
        out = &out + &part;
    }
    Ok(out)
}

/// Cartesian form of a Zernike expansion.
pub fn expansion_to_cart_2d(z: &ZernExpansion2D) -> Result<CartPoly2> {
    let mut out = CartPoly2::zero();
    for (key, c) in z.iter() {
        out = &out + &zernike_component_to_cart(*key)?.scale(c);
    }
    Ok(out)
}

/// Cartesian form of the normalized `Z_j`.
pub fn zernike_to_cart_2d(j: NollIndex) -> CartPoly2 {
    let (idx, kind) = noll_unpack(j);
    zernike_component_to_cart(Zern2Key { n: idx.n, kind })
        .expect("Noll indices unpack to valid pairs")
        .scale(&noll_norm(idx))
}

/// `g = 2(n3+1) ∫₀¹ r R1 R2 R3 dr` by the direct triple sum.
pub fn g_coeff(i1: Index2D, i2: Index2D, i3: Index2D) -> Result<Rational> {
    if !(i1.n + i2.n + i3.n).is_multiple_of(2) {
        bail!(InvalidArgument, "n1 + n2 - n3 is odd for {i1} {i2} {i3}");
    }
    let (c1, c2, c3) = (radial_2d_ints(i1), radial_2d_ints(i2), radial_2d_ints(i3));
    let mut acc = int(0);
    for (e1, a) in &c1 {
        for (e2, b) in &c2 {
            let ab = a * b;
            for (e3, c) in &c3 {
                acc += Rational::new(&ab * c, BigInt::from(e1 + e2 + e3 + 2));
            }
        }
    }
    Ok(acc * int(2 * (i3.n as i64 + 1)))
}

fn check_coupling(i1: Index2D, i2: Index2D, m3: u32) -> Result<()> {
    if m3 != i1.m.abs_diff(i2.m) && m3 != i1.m + i2.m {
        bail!(InvalidArgument, "m3 = {m3} is not |m1 - m2| or m1 + m2 for {i1} {i2}");
    }
    Ok(())
}

/// `R1 R2 = Σ_{n3} g R_{n3}^{m3}`, nonzero terms only.
pub fn product_expand_2d(i1: Index2D, i2: Index2D, m3: u32) -> Result<BTreeMap<u32, Rational>> {
    check_coupling(i1, i2, m3)?;
    let mut out = BTreeMap::new();
    for n3 in (m3..=i1.n + i2.n).step_by(2) {
        let g = g_coeff(i1, i2, Index2D::new(n3, m3)?)?;
        if g != int(0) {
            out.insert(n3, g);
        }
    }
    Ok(out)
}

/// Same expansion as [`product_expand_2d`], from the power coefficients of
/// the product and the inverse expansion of each power.
pub fn g_via_linear_system(i1: Index2D, i2: Index2D, m3: u32) -> Result<BTreeMap<u32, Rational>> {
    check_coupling(i1, i2, m3)?;
    let mut prod: BTreeMap<u32, Rational> = BTreeMap::new();
    for (e1, a) in radial_2d_ints(i1) {
        for (e2, b) in radial_2d_ints(i2) {
            *prod.entry(e1 + e2).or_insert_with(|| int(0)) += Rational::from_integer(&a * &b);
        }
    }
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    for (e, c) in prod {
        for (n3, h) in power_to_radial_2d(e, m3)? {
            *out.entry(n3).or_insert_with(|| int(0)) += &c * h;
        }
    }
    out.retain(|_, v| *v != int(0));
    Ok(out)
}

/// Product-to-sum rule for two azimuthal factors.
pub fn angular_product(k1: AngularKind, k2: AngularKind) -> Vec<(AngularKind, Rational)> {
    use AngularKind::*;
    let half = rat(1, 2);
    let cos = |m: i64| if m == 0 { Radial } else { Cos(m.unsigned_abs() as u32) };
    let mut out: Vec<(AngularKind, Rational)> = Vec::new();
    let mut push_sin = |m: i64, c: Rational| {
        if m != 0 {
            out.push((Sin(m.unsigned_abs() as u32), if m < 0 { -c } else { c }));
        }
    };
    match (k1, k2) {
        (Radial, k) | (k, Radial) => return vec![(k, int(1))],
        (Cos(a), Cos(b)) => {
            let (a, b) = (a as i64, b as i64);
            return vec![(cos(a - b), half.clone()), (cos(a + b), half)];
        }
        (Sin(a), Sin(b)) => {
            let (a, b) = (a as i64, b as i64);
            return vec![(cos(a - b), half.clone()), (cos(a + b), -half)];
        }
        (Sin(a), Cos(b)) | (Cos(b), Sin(a)) => {
            let (a, b) = (a as i64, b as i64);
            push_sin(a - b, half.clone());
            push_sin(a + b, half);
        }
    }
    out
}

/// The constant term of [`trig_power_expand`] times `2^(p+q)`.
pub fn trig_constant_term(p: u32, q: u32) -> Rational {
    trig_power_expand(p, q)
        .get(&AngularKind::Radial)
        .cloned()
        .unwrap_or_else(|| int(0))
        * Rational::from_integer(BigInt::from(1) << (p + q) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: u32, m: u32) -> Index2D {
        Index2D::new(n, m).unwrap()
    }

    fn radial(terms: &[(u32, i64)]) -> RadialPoly {
        terms.iter().map(|(e, c)| (*e, SurdSum::from_int(*c))).collect()
    }

    #[test]
    fn radial_examples() {
        assert_eq!(radial_2d(idx(4, 0)), radial(&[(0, 1), (2, -6), (4, 6)]));
        assert_eq!(
            radial_2d(idx(13, 1)),
            radial(&[(1, 7), (3, -168), (5, 1260), (7, -4200), (9, 6930), (11, -5544), (13, 1716)])
        );
        assert_eq!(radial_2d_alt(idx(2, 0)), radial(&[(0, -1), (2, 2)]));
        assert_eq!(radial_2d_alt(idx(8, 4)), radial(&[(4, 15), (6, -42), (8, 28)]));
        assert!(Index2D::new(3, 0).is_err());
        assert!(Index2D::new(2, 4).is_err());
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_coeff(4, idx(2, 0)).unwrap(), rat(1, 2));
        assert_eq!(h_coeff(10, idx(4, 4)).unwrap(), rat(5, 8));
        assert_eq!(h_coeff(5, idx(5, 5)).unwrap(), int(1));
        assert!(h_coeff(3, idx(2, 0)).is_err());
        let m = power_to_radial_2d(14, 6).unwrap();
        let want: BTreeMap<u32, Rational> =
            [(6, rat(7, 11)), (8, rat(3, 11)), (10, rat(1, 13)), (12, rat(1, 77)), (14, rat(1, 1001))].into();
        assert_eq!(m, want);
    }

    #[test]
    fn h_recurrence_examples() {
        assert_eq!(h_recur_j(&int(1), 0, 0, 0).unwrap(), rat(1, 2));
        assert_eq!(h_recur_n(&rat(1, 2), 2, 0, 0).unwrap(), rat(1, 2));
        assert_eq!(h_recur_m(&rat(1, 2), 2, 2, 0).unwrap(), int(1));
        assert!(h_recur_m(&int(1), 2, 2, 2).is_err());
    }

    #[test]
    fn noll_examples() {
        let j = |v| NollIndex::new(v).unwrap();
        assert_eq!(noll_unpack(j(1)), (idx(0, 0), AngularKind::Radial));
        assert_eq!(noll_unpack(j(4)), (idx(2, 0), AngularKind::Radial));
        assert_eq!(noll_unpack(j(5)), (idx(2, 2), AngularKind::Sin(2)));
        assert_eq!(noll_unpack(j(6)), (idx(2, 2), AngularKind::Cos(2)));
        assert_eq!(noll_unpack(j(35)), (idx(7, 7), AngularKind::Sin(7)));
        for v in 1..=300 {
            let (i, k) = noll_unpack(j(v));
            assert_eq!(noll_pack(i, k).unwrap(), j(v));
        }
        assert!(NollIndex::new(0).is_err());
    }

    #[test]
    fn trig_examples() {
        let t = trig_power_expand(2, 0);
        assert_eq!(t[&AngularKind::Radial], rat(1, 2));
        assert_eq!(t[&AngularKind::Cos(2)], rat(1, 2));
        assert_eq!(trig_power_expand(0, 1), [(AngularKind::Sin(1), int(1))].into());
        let t = trig_power_expand(2, 2);
        assert_eq!(t, [(AngularKind::Radial, rat(1, 8)), (AngularKind::Cos(4), rat(-1, 8))].into());
    }

    #[test]
    fn cart_examples() {
        let xy = cart_monomial_to_zernike_2d(1, 1);
        assert_eq!(xy, ZernExpansion2D::term(Zern2Key { n: 2, kind: AngularKind::Sin(2) }, SurdSum::from_rational(rat(1, 2))));
        let r = rj_trig_to_cart(5, 3, Trig::Sin).unwrap();
        let want: CartPoly2 = [([4, 1], 3), ([2, 3], 2), ([0, 5], -1)]
            .into_iter()
            .map(|(k, c)| (k, SurdSum::from_int(c)))
            .collect();
        assert_eq!(r, want);
        let z4 = zernike_to_cart_2d(NollIndex::new(4).unwrap());
        let want: CartPoly2 = [([2, 0], 2), ([0, 2], 2), ([0, 0], -1)]
            .into_iter()
            .map(|(k, c)| (k, SurdSum::term(int(c), 3)))
            .collect();
        assert_eq!(z4, want);
        assert!(rj_trig_to_cart(3, 0, Trig::Sin).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_coeff(idx(1, 1), idx(1, 1), idx(0, 0)).unwrap(), rat(1, 2));
        assert_eq!(g_coeff(idx(3, 1), idx(5, 3), idx(6, 2)).unwrap(), rat(49, 120));
        assert_eq!(g_coeff(idx(6, 2), idx(0, 0), idx(6, 2)).unwrap(), int(1));
        let p = product_expand_2d(idx(2, 2), idx(2, 2), 0).unwrap();
        assert_eq!(p, [(0, rat(1, 3)), (2, rat(1, 2)), (4, rat(1, 6))].into());
        assert_eq!(p, g_via_linear_system(idx(2, 2), idx(2, 2), 0).unwrap());
        assert_eq!(product_expand_2d(idx(1, 1), idx(2, 2), 3).unwrap(), [(3, int(1))].into());
        assert!(product_expand_2d(idx(1, 1), idx(2, 2), 2).is_err());
    }

    #[test]
    fn angular_examples() {
        use AngularKind::*;
        assert_eq!(angular_product(Cos(1), Cos(1)), vec![(Radial, rat(1, 2)), (Cos(2), rat(1, 2))]);
        assert_eq!(angular_product(Sin(2), Sin(2)), vec![(Radial, rat(1, 2)), (Cos(4), rat(-1, 2))]);
        assert_eq!(angular_product(Sin(3), Cos(1)), vec![(Sin(2), rat(1, 2)), (Sin(4), rat(1, 2))]);
        assert_eq!(angular_product(Cos(3), Sin(1)), vec![(Sin(2), rat(-1, 2)), (Sin(4), rat(1, 2))]);
        assert_eq!(angular_product(Sin(2), Cos(2)), vec![(Sin(4), rat(1, 2))]);
    }
}

//! Sphere functions: radial polynomials, f and f̂ inverse expansions,
//! spherical harmonics in Cartesian form, monomial projections, angular
//! momentum coupling and radial linearization.
//!
//! Angular quantities carry a factor √π moved out: `ylm_cart` returns
//! `√π r^l Y_l^(m)`, `zernike3d_to_cart` returns `√π Z`, and the expansion
//! coefficients are those of `x^p y^q z^t / √π`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::{binomial, binomial_general, binomial_q, factorial, pochhammer, sign};
use crate::error::{bail, Result};
use crate::exact::{int, rat, ComplexSurd, Rational, SurdSum};
use crate::poly::{trinomial_expand, CartPoly3, RadialPoly, Zern3Key, ZernExpansion3D};

/// Radial index pair with `0 <= l <= n` and `n - l` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index3D {
    n: u32,
    l: u32,
}

impl Index3D {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if l > n || !(n - l).is_multiple_of(2) {
            bail!(InvalidIndex, "(n, l) = ({n}, {l}) needs 0 <= l <= n with n - l even");
        }
        Ok(Index3D { n, l })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn l(self) -> u32 {
        self.l
    }

    /// `α = (n - l)/2`
    pub fn alpha(self) -> u32 {
        (self.n - self.l) / 2
    }

    /// `2q = 2l + 3`
    pub fn two_q(self) -> u32 {
        2 * self.l + 3
    }

    /// `2n + 3`, the square of `R_n^(l)(1)`.
    pub fn norm_sq(self) -> u64 {
        2 * self.n as u64 + 3
    }

    pub fn all(nmax: u32) -> Vec<Index3D> {
        (0..=nmax)
            .flat_map(|n| (n % 2..=n).step_by(2).map(move |l| Index3D { n, l }))
            .collect()
    }
}

impl fmt::Display for Index3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}^({})", self.n, self.l)
    }
}

/// Spherical harmonic index with `|m| <= l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SphIndex {
    l: u32,
    m: i32,
}

impl SphIndex {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            bail!(InvalidIndex, "Y_{l}^({m}) needs |m| <= l");
        }
        Ok(SphIndex { l, m })
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn m(self) -> i32 {
        self.m
    }
}

impl fmt::Display for SphIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{}^({})", self.l, self.m)
    }
}

/// Arguments of a Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Wigner3jArgs {
    pub j: [u32; 3],
    pub m: [i32; 3],
}

impl Wigner3jArgs {
    pub fn new(j: [u32; 3], m: [i32; 3]) -> Result<Self> {
        for (ji, mi) in j.iter().zip(m) {
            if mi.unsigned_abs() > *ji {
                bail!(InvalidIndex, "3j symbol with |m| = {} > j = {ji}", mi.abs());
            }
        }
        Ok(Wigner3jArgs { j, m })
    }
}

fn radial_3d_from(idx: Index3D, terms: impl Iterator<Item = (u32, BigInt)>) -> RadialPoly {
    let (n, l) = (idx.n as i64, idx.l as i64);
    let pre = Rational::new(1.into(), (BigInt::from(1) << (n - l) as usize) * binomial(n, l));
    let root = SurdSum::sqrt(idx.norm_sq());
    terms
        .map(|(e, c)| (e, root.scale(&(&pre * Rational::from_integer(c)))))
        .collect()
}

/// `R_n^(l)` from the descending-power sum.
pub fn radial_3d(idx: Index3D) -> RadialPoly {
    let (n, l) = (idx.n as i64, idx.l as i64);
    let alpha = (n - l) / 2;
    radial_3d_from(
        idx,
        (0..=alpha).map(move |s| {
            let c = binomial(n, s) * binomial(l + alpha - s, l) * binomial(2 * n + 1 - 2 * s, n - l) * sign(s);
            ((n - 2 * s) as u32, c)
        }),
    )
}

/// `R_n^(l)` from the ascending-power sum.
pub fn radial_3d_alt(idx: Index3D) -> RadialPoly {
    let (n, l) = (idx.n as i64, idx.l as i64);
    let alpha = (n - l) / 2;
    radial_3d_from(
        idx,
        (0..=alpha).map(move |s| {
            let c = binomial(n, alpha - s) * binomial(l + s, l) * binomial(l + 1 + n + 2 * s, n - l) * sign(alpha + s);
            ((l + 2 * s) as u32, c)
        }),
    )
}

fn check_power(j: u32, l: u32) -> Result<()> {
    if j < l || !(j - l).is_multiple_of(2) {
        bail!(InvalidArgument, "r^{j} has no expansion over R_n^({l}): need j >= l with j - l even");
    }
    Ok(())
}

/// Coefficient of `R_n^(l)` in the expansion of `r^j`; zero for `n > j`.
pub fn f_coeff(j: u32, idx: Index3D) -> Result<SurdSum> {
    check_power(j, idx.l)?;
    let (n, l, j) = (idx.n as i64, idx.l as i64, j as i64);
    let alpha = idx.alpha() as u64;
    let top = pochhammer(&(rat(j - n, 2) + int(1)), alpha);
    let bottom = pochhammer(&(rat(j - l, 2) + int(l) + rat(5, 2)), alpha);
    let q = top / bottom / int(j + 3 + l);
    Ok(SurdSum::term(q, idx.norm_sq()))
}

fn ratio(num: i64, den: i64, what: &str) -> Result<Rational> {
    if den == 0 {
        bail!(OutOfRange, "{what} recurrence has a vanishing factor");
    }
    Ok(rat(num, den))
}

/// `f_{j+2,n,l}` from `f_{j,n,l}`.
pub fn f_recur_j(f: &SurdSum, j: u32, n: u32, l: u32) -> Result<SurdSum> {
    let (j, n, l) = (j as i64, n as i64, l as i64);
    Ok(f.scale(&ratio((j + 3 + l) * (j - l + 2), (j - n + 2) * (j + n + 5), "j")?))
}

/// `f_{j,n+2,l}` from `f_{j,n,l}`.
pub fn f_recur_n(f: &SurdSum, j: u32, n: u32, _l: u32) -> Result<SurdSum> {
    let (j, n) = (j as i64, n as i64);
    let root = SurdSum::sqrt_rational(&rat(2 * n + 7, 2 * n + 3))?;
    Ok(&f.scale(&ratio(j - n, j + 5 + n, "n")?) * &root)
}

/// `f_{j,n,l+2}` from `f_{j,n,l}`.
pub fn f_recur_l(f: &SurdSum, j: u32, _n: u32, l: u32) -> Result<SurdSum> {
    let (j, l) = (j as i64, l as i64);
    Ok(f.scale(&ratio(j + 3 + l, j - l, "l")?))
}

/// `r^j = Σ_n f_{j,n,l} R_n^(l)`, keyed by `n = l, l+2, ..., j`.
pub fn power_to_radial_3d(j: u32, l: u32) -> Result<BTreeMap<u32, SurdSum>> {
    check_power(j, l)?;
    (l..=j)
        .step_by(2)
        .map(|n| Ok((n, f_coeff(j, Index3D::new(n, l)?)?)))
        .collect()
}

/// `r^j = Σ_l f̂_l R_n^(l)` at fixed `n`, keyed by `l = j, j+2, ..., n`.
///
/// Solved by elimination on the triangular system of power coefficients,
/// starting from the lowest power `r^j`.
pub fn power_to_radial_3d_fixed_n(j: u32, n: u32) -> Result<BTreeMap<u32, SurdSum>> {
    if j > n || !(n - j).is_multiple_of(2) {
        bail!(InvalidArgument, "r^{j} has no expansion over R_{n}^(l): need j <= n with n - j even");
    }
    let polys: BTreeMap<u32, RadialPoly> = (j..=n)
        .step_by(2)
        .map(|l| Ok((l, radial_3d(Index3D::new(n, l)?))))
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<u32, SurdSum> = BTreeMap::new();
    for e in (j..=n).step_by(2) {
        let mut rhs = if e == j { SurdSum::one() } else { SurdSum::zero() };
        for (l, fl) in &out {
            rhs = &rhs - &(fl * &polys[l].coeff(&e));
        }
        let pivot = polys[&e].coeff(&e).inverse()?;
        out.insert(e, &rhs * &pivot);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn ylm_cart_nonneg(l: u32, m: u32) -> CartPoly3 {
    let (li, mi) = (l as i64, m as i64);
    let norm_sq = rat(2 * li + 1, 4) * Rational::from_integer(factorial((l - m) as u64) * factorial((l + m) as u64));
    let norm = SurdSum::sqrt_rational(&norm_sq).expect("positive normalization");
    let pre = norm.scale(&Rational::new(BigInt::from(sign(mi)), BigInt::from(1) << m as usize));
    let mut out = CartPoly3::zero();
    let smax = (l - m) / 2;
    for s1 in 0..=smax {
        for s2 in 0..=smax - s1 {
            let s = s1 + s2;
            let den = factorial(s1 as u64)
                * factorial(s2 as u64)
                * factorial((m + s) as u64)
                * factorial((l - m - 2 * s) as u64)
                * (BigInt::from(1) << (2 * s) as usize);
            let w = Rational::new(BigInt::from(sign(s as i64)), den);
            for jj in 0..=m {
                let c = &w * binomial_q(mi, jj as i64);
                let coeff = ComplexSurd::real(pre.scale(&c)).times_i_pow(jj as i64);
                out.add_term([m - jj + 2 * s1, jj + 2 * s2, l - m - 2 * s], coeff);
            }
        }
    }
    out
}

/// `√π r^l Y_l^(m)` as a polynomial in x, y, z.
pub fn ylm_cart(idx: SphIndex) -> CartPoly3 {
    let pos = ylm_cart_nonneg(idx.l, idx.m.unsigned_abs());
    if idx.m >= 0 {
        pos
    } else {
        // Y^(-m) = (-1)^m conj(Y^(m))
        let s = int(sign(idx.m as i64));
        pos.map(|k, c| (k, c.conj().scale(&s)))
    }
}

/// `√π Z_{n,l}^(m)` as a polynomial in x, y, z.
pub fn zernike3d_to_cart(n: u32, l: u32, m: i32) -> Result<CartPoly3> {
    let idx = Index3D::new(n, l)?;
    let y = ylm_cart(SphIndex::new(l, m)?);
    let mut radial_part = CartPoly3::zero();
    for (e, c) in radial_3d(idx).iter() {
        let t = trinomial_expand((e - l) / 2).scale(&ComplexSurd::real(c.clone()));
        radial_part = &radial_part + &t;
    }
    Ok(&radial_part * &y)
}

/// Cartesian form of a 3D expansion, in the same √π units.
pub fn expansion_to_cart_3d(z: &ZernExpansion3D) -> Result<CartPoly3> {
    let mut out = CartPoly3::zero();
    for (k, c) in z.iter() {
        out = &out + &zernike3d_to_cart(k.n, k.l, k.m)?.scale(c);
    }
    Ok(out)
}

/// Radial factor of the projection: `f_{j,n,l}`, or zero when a parity rule fails.
pub fn i_r(j: u32, n: u32, l: u32) -> SurdSum {
    if l > n || !(n - l).is_multiple_of(2) || j < l || !(j - l).is_multiple_of(2) {
        return SurdSum::zero();
    }
    f_coeff(j, Index3D { n, l }).expect("parity checked")
}

/// `∫₀^{2π} e^{imφ} cos^p φ sin^q φ dφ / π`.
pub fn i_phi(p: u32, q: u32, m: i32) -> ComplexSurd {
    let j = (p + q) as i64;
    let m = m as i64;
    if (j - m).rem_euclid(2) != 0 || m.abs() > j {
        return ComplexSurd::zero();
    }
    let h = (j - m) / 2;
    let sum: BigInt = (0..=p as i64)
        .map(|s| binomial(p as i64, s) * binomial(q as i64, h - s) * sign(s - h))
        .sum();
    // 1 / 2^(j-1)
    let scale = if j == 0 {
        int(2)
    } else {
        Rational::new(1.into(), BigInt::from(1) << (j - 1) as usize)
    };
    ComplexSurd::real(SurdSum::from_rational(scale * Rational::from_integer(sum))).times_i_pow(q as i64)
}

/// Polar integral of `sin θ cos^t θ sin^k θ P_l^m(cos θ)`-type factors in closed form.
pub fn i_theta(k: u32, t: u32, l: u32, m: i32) -> Rational {
    let (k, t, l) = (k as i64, t as i64, l as i64);
    let ma = m.unsigned_abs() as i64;
    let m = m as i64;
    if (l - m + t).rem_euclid(2) != 0 || ma > l {
        return int(0);
    }
    let pre = Rational::new(
        (BigInt::from(1) << (l + 1) as usize) * sign((m - ma) / 2),
        factorial((l - m) as u64),
    );
    let mut acc = int(0);
    for nu in 0..=(l - ma) / 2 {
        let top = pochhammer(&(rat(1, 2) - int(nu)), l as u64) * binomial_q(l - ma, 2 * nu);
        let upper = rat(1 + t + l + k, 2) - int(nu);
        let b = binomial_general(&upper, (k + ma) / 2);
        let den = int(1 + t + l - ma - 2 * nu) * b;
        if den.is_zero() {
            continue;
        }
        acc += top / den;
    }
    pre * acc
}

/// Coefficient of `Z_{n,l}^(m)` in `x^p y^q z^t / √π`.
pub fn u_coeff(p: u32, q: u32, t: u32, idx: Index3D, m: i32) -> Result<ComplexSurd> {
    let sph = SphIndex::new(idx.l, m)?;
    let (l, mi) = (sph.l as i64, m as i64);
    let ir = i_r(p + q + t, idx.n, idx.l);
    if ir.is_zero() {
        return Ok(ComplexSurd::zero());
    }
    let it = i_theta(p + q, t, idx.l, m);
    let ip = i_phi(p, q, m);
    if it.is_zero() || ip.is_zero() {
        return Ok(ComplexSurd::zero());
    }
    let norm = SurdSum::sqrt_rational(&(int(2 * l + 1) * Rational::new(factorial((l - mi) as u64), factorial((l + mi) as u64))))?;
    let real = (&norm * &ir).scale(&(rat(sign(mi), 2) * it));
    Ok(ip.conj().scale_surd(&real))
}

/// `x^p y^q z^t / √π = Σ u Z_{n,l}^(m)`.
pub fn cart_monomial_to_zernike_3d(p: u32, q: u32, t: u32) -> ZernExpansion3D {
    let j = p + q + t;
    let mut out = ZernExpansion3D::zero();
    for idx in Index3D::all(j) {
        if !(j - idx.l).is_multiple_of(2) {
            continue;
        }
        for m in -(idx.l as i32)..=idx.l as i32 {
            let u = u_coeff(p, q, t, idx, m).expect("indices enumerated in range");
            out.add_term(Zern3Key { n: idx.n, l: idx.l, m }, u);
        }
    }
    out
}

fn fact(n: i64) -> BigInt {
    factorial(n as u64)
}

/// `<j1 m1 j2 m2 | j m>` in closed form; exact zero off the selection rules.
pub fn clebsch_gordan(j1: u32, m1: i32, j2: u32, m2: i32, j: u32, m: i32) -> SurdSum {
    let (j1, j2, j) = (j1 as i64, j2 as i64, j as i64);
    let (m1, m2, m) = (m1 as i64, m2 as i64, m as i64);
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return SurdSum::zero();
    }
    if j < (j1 - j2).abs() || j > j1 + j2 {
        return SurdSum::zero();
    }
    let a = Rational::new(
        BigInt::from(2 * j + 1) * fact(j + j1 - j2) * fact(j - j1 + j2) * fact(j1 + j2 - j),
        fact(j1 + j2 + j + 1),
    ) * Rational::from_integer(
        fact(j + m) * fact(j - m) * fact(j1 - m1) * fact(j1 + m1) * fact(j2 - m2) * fact(j2 + m2),
    );
    let lo = 0.max(j2 - j - m1).max(j1 - j + m2);
    let hi = (j1 + j2 - j).min(j1 - m1).min(j2 + m2);
    let mut zsum = int(0);
    for z in lo..=hi {
        let den = fact(z) * fact(j1 + j2 - j - z) * fact(j1 - m1 - z) * fact(j2 + m2 - z) * fact(j - j2 + m1 + z) * fact(j - j1 - m2 + z);
        zsum += Rational::new(BigInt::from(sign(z)), den);
    }
    SurdSum::sqrt_rational(&a).expect("nonnegative").scale(&zsum)
}

/// Wigner 3j symbol via its Clebsch–Gordan relation.
pub fn wigner3j(args: Wigner3jArgs) -> SurdSum {
    let [j1, j2, j3] = args.j;
    let [m1, m2, m3] = args.m;
    let cg = clebsch_gordan(j1, m1, j2, m2, j3, -m3);
    if cg.is_zero() {
        return cg;
    }
    let phase = sign(j1 as i64 - j2 as i64 - m3 as i64);
    let inv_root = SurdSum::sqrt_rational(&rat(1, 2 * j3 as i64 + 1)).expect("positive");
    (&cg * &inv_root).scale(&int(phase))
}

/// `√π Y_{l1}^(m1) Y_{l2}^(m2) = Σ c Y_l^(m1+m2)`, nonzero terms only.
pub fn y_product_expand(i1: SphIndex, i2: SphIndex) -> BTreeMap<SphIndex, SurdSum> {
    let mm = i1.m + i2.m;
    let mut out = BTreeMap::new();
    for l in i1.l.abs_diff(i2.l)..=i1.l + i2.l {
        if !(i1.l + i2.l + l).is_multiple_of(2) || mm.unsigned_abs() > l {
            continue;
        }
        let w0 = wigner3j(Wigner3jArgs { j: [i1.l, i2.l, l], m: [0, 0, 0] });
        let wm = wigner3j(Wigner3jArgs { j: [i1.l, i2.l, l], m: [i1.m, i2.m, -mm] });
        let dims = (2 * i1.l as i64 + 1) * (2 * i2.l as i64 + 1) * (2 * l as i64 + 1);
        let root = SurdSum::sqrt(dims as u64);
        let c = (&(&w0 * &wm) * &root).scale(&rat(sign(mm as i64), 2));
        if !c.is_zero() {
            out.insert(SphIndex { l, m: mm }, c);
        }
    }
    out
}

fn check_k(i1: Index3D, i2: Index3D, l3: u32) -> Result<()> {
    if l3 > i1.l + i2.l || !(i1.l + i2.l + l3).is_multiple_of(2) {
        bail!(InvalidArgument, "l3 = {l3} needs l3 <= l1 + l2 with matching parity for {i1} {i2}");
    }
    Ok(())
}

/// `k = ∫₀¹ r² R1 R2 R3 dr`, by inserting the f expansion for every power
/// of the product `R1 R2`.
pub fn k_coeff(i1: Index3D, i2: Index3D, i3: Index3D) -> Result<SurdSum> {
    check_k(i1, i2, i3.l)?;
    if !(i1.n + i2.n + i3.n).is_multiple_of(2) {
        bail!(InvalidArgument, "n1 + n2 - n3 is odd for {i1} {i2} {i3}");
    }
    let prod = &radial_3d(i1) * &radial_3d(i2);
    let mut acc = SurdSum::zero();
    for (e, c) in prod.iter() {
        acc += &(c * &f_coeff(*e, i3)?);
    }
    Ok(acc)
}

/// `R1 R2 = Σ_{n3} k R_{n3}^(l3)`, nonzero terms only.
pub fn product_expand_3d(i1: Index3D, i2: Index3D, l3: u32) -> Result<BTreeMap<u32, SurdSum>> {
    check_k(i1, i2, l3)?;
    let mut out = BTreeMap::new();
    for n3 in (l3..=i1.n + i2.n).step_by(2) {
        let k = k_coeff(i1, i2, Index3D::new(n3, l3)?)?;
        if !k.is_zero() {
            out.insert(n3, k);
        }
    }
    Ok(out)
}

//! Sparse exact containers: polynomials in r, in (x, y) and in (x, y, z), and
//! Zernike expansion maps. All share one canonical sparse map type.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::factorial;
use crate::exact::{Coefficient, ComplexSurd, Rational, SurdSum};

/// Exponent keys that multiply by adding.
pub trait Monomial: Ord + Copy + fmt::Debug + Send + Sync {
    fn unit() -> Self;
    fn times(self, other: Self) -> Self;
    fn degree(self) -> u32;
}

impl Monomial for u32 {
    fn unit() -> Self {
        0
    }
    fn times(self, other: Self) -> Self {
        self + other
    }
    fn degree(self) -> u32 {
        self
    }
}

impl<const D: usize> Monomial for [u32; D] {
    fn unit() -> Self {
        [0; D]
    }
    fn times(self, other: Self) -> Self {
        let mut out = self;
        for (o, e) in out.iter_mut().zip(other) {
            *o += e;
        }
        out
    }
    fn degree(self) -> u32 {
        self.iter().sum()
    }
}

/// Sparse map from key to nonzero coefficient; the zero value is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sparse<K: Ord, C> {
    coeffs: BTreeMap<K, C>,
}

/// Polynomial in r, keyed by exponent.
pub type RadialPoly = Sparse<u32, SurdSum>;
/// Polynomial in (x, y), keyed by `[p, q]`.
pub type CartPoly2 = Sparse<[u32; 2], SurdSum>;
/// Polynomial in (x, y, z) with complex coefficients, keyed by `[p, q, t]`.
pub type CartPoly3 = Sparse<[u32; 3], ComplexSurd>;
/// Expansion over 2D Zernike functions `R_n^m` times an azimuthal factor.
pub type ZernExpansion2D = Sparse<Zern2Key, SurdSum>;
/// Expansion over 3D Zernike functions `Z_{n,l}^(m)`.
pub type ZernExpansion3D = Sparse<Zern3Key, ComplexSurd>;

/// Azimuthal factor of a 2D Zernike function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AngularKind {
    Radial,
    Cos(u32),
    Sin(u32),
}

impl AngularKind {
    pub fn m(self) -> u32 {
        match self {
            AngularKind::Radial => 0,
            AngularKind::Cos(m) | AngularKind::Sin(m) => m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Zern2Key {
    pub n: u32,
    pub kind: AngularKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Zern3Key {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl<K: Ord, C> Default for Sparse<K, C> {
    fn default() -> Self {
        Sparse {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Copy, C: Coefficient> Sparse<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(key, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&C> {
        self.coeffs.get(key)
    }

    pub fn coeff(&self, key: &K) -> C {
        self.coeffs.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.coeffs.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.coeffs.keys()
    }

    /// Add `c` at `key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, v.mul_ref(c));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, v.scale_rational(q));
        }
        out
    }

    /// Rebuild with new keys and coefficients; colliding keys are summed.
    pub fn map<K2: Ord + Copy, C2: Coefficient>(&self, mut f: impl FnMut(K, &C) -> (K2, C2)) -> Sparse<K2, C2> {
        let mut out = Sparse::zero();
        for (k, v) in &self.coeffs {
            let (k2, c2) = f(*k, v);
            out.add_term(k2, c2);
        }
        out
    }

    /// Sum of all coefficients; the value at the all-ones point for polynomials.
    pub fn coeff_sum(&self) -> C {
        self.coeffs.values().fold(C::zero(), |acc, c| acc.add_ref(c))
    }
}

impl<K: Ord + Copy, C: Coefficient> FromIterator<(K, C)> for Sparse<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord + Copy, C: Coefficient> Add<&'a Sparse<K, C>> for &'a Sparse<K, C> {
    type Output = Sparse<K, C>;
    fn add(self, rhs: &'a Sparse<K, C>) -> Sparse<K, C> {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a, K: Ord + Copy, C: Coefficient> Sub<&'a Sparse<K, C>> for &'a Sparse<K, C> {
    type Output = Sparse<K, C>;
    fn sub(self, rhs: &'a Sparse<K, C>) -> Sparse<K, C> {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.neg_ref());
        }
        out
    }
}

impl<K: Ord + Copy, C: Coefficient> Neg for &Sparse<K, C> {
    type Output = Sparse<K, C>;
    fn neg(self) -> Sparse<K, C> {
        Sparse {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }
}

impl<'a, M: Monomial, C: Coefficient> Mul<&'a Sparse<M, C>> for &'a Sparse<M, C> {
    type Output = Sparse<M, C>;
    fn mul(self, rhs: &'a Sparse<M, C>) -> Sparse<M, C> {
        let mut out = Sparse::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &rhs.coeffs {
                out.add_term(k1.times(*k2), c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<M: Monomial, C: Coefficient> Sparse<M, C> {
    pub fn one() -> Self
    where
        C: From<SurdSum>,
    {
        Self::term(M::unit(), C::from(SurdSum::one()))
    }

    pub fn pow(&self, k: u32) -> Self
    where
        C: From<SurdSum>,
    {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| m.degree()).max()
    }
}

impl<C: Coefficient> Sparse<u32, C> {
    /// Exact `∫₀¹ r^w p(r) dr = Σ c_e / (e + w + 1)`.
    pub fn integral_weighted(&self, w: u32) -> C {
        self.coeffs.iter().fold(C::zero(), |acc, (e, c)| {
            acc.add_ref(&c.scale_rational(&Rational::new(1.into(), (e + w + 1).into())))
        })
    }
}

impl<C: Coefficient> Sparse<[u32; 2], C> {
    pub fn swap_xy(&self) -> Self {
        self.map(|[p, q], c| ([q, p], c.clone()))
    }
}

/// `(x² + y² + z²)^k` with multinomial coefficients.
pub fn trinomial_expand(k: u32) -> CartPoly3 {
    let kf = factorial(k as u64);
    let mut out = CartPoly3::zero();
    for a in 0..=k {
        for b in 0..=k - a {
            let c = k - a - b;
            let w = &kf / (factorial(a as u64) * factorial(b as u64) * factorial(c as u64));
            let q = Rational::from_integer(w);
            out.add_term([2 * a, 2 * b, 2 * c], ComplexSurd::real(SurdSum::from_rational(q)));
        }
    }
    out
}

/// Embed a real (x, y) polynomial into (x, y, z).
pub fn cart2_to_cart3(p: &CartPoly2) -> CartPoly3 {
    p.map(|[a, b], c| ([a, b, 0], ComplexSurd::real(c.clone())))
}

impl<K: Ord + Serialize, C: Serialize> Serialize for Sparse<K, C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter())
    }
}

impl<'de, K: Ord + Copy + DeserializeOwned, C: Coefficient + DeserializeOwned> Deserialize<'de> for Sparse<K, C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<(K, C)>::deserialize(d)?;
        Ok(raw.into_iter().collect())
    }
}

fn fmt_power(name: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    }
}

fn fmt_sum<C: fmt::Display>(f: &mut fmt::Formatter<'_>, terms: Vec<(String, &C)>) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (idx, (atom, c)) in terms.into_iter().enumerate() {
        let text = if atom.is_empty() {
            format!("({c})")
        } else {
            format!("({c})*{atom}")
        };
        if idx > 0 {
            f.write_str(" + ")?;
        }
        f.write_str(&text)?;
    }
    Ok(())
}

impl<C: Coefficient + fmt::Display> fmt::Display for Sparse<u32, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().map(|(e, c)| (fmt_power("r", *e), c)).collect();
        fmt_sum(f, terms)
    }
}

impl<C: Coefficient + fmt::Display, const D: usize> fmt::Display for Sparse<[u32; D], C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        let terms = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let atom: Vec<String> = k
                    .iter()
                    .zip(NAMES)
                    .map(|(e, n)| fmt_power(n, *e))
                    .filter(|s| !s.is_empty())
                    .collect();
                (atom.join("*"), c)
            })
            .collect();
        fmt_sum(f, terms)
    }
}

impl fmt::Display for Zern2Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AngularKind::Radial => write!(f, "R_{}^0(r)", self.n),
            AngularKind::Cos(m) => write!(f, "R_{}^{m}(r)*cos({m}*phi)", self.n),
            AngularKind::Sin(m) => write!(f, "R_{}^{m}(r)*sin({m}*phi)", self.n),
        }
    }
}

impl fmt::Display for Zern3Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{},{}^({})", self.n, self.l, self.m)
    }
}

impl fmt::Display for ZernExpansion2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().map(|(k, c)| (k.to_string(), c)).collect();
        fmt_sum(f, terms)
    }
}

impl fmt::Display for ZernExpansion3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().map(|(k, c)| (k.to_string(), c)).collect();
        fmt_sum(f, terms)
    }
}

//! Exact scalars: big rationals, finite sums of square roots with rational
//! weights, and complex pairs of those.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert a sum of {0} surd terms")]
    NotInvertible(usize),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Split `n = outside^2 * core` with `core` squarefree, by trial division.
pub fn normalize_radicand(n: u64) -> (u64, u64) {
    assert!(n >= 1, "radicand must be positive");
    let mut rest = n;
    let mut outside = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            outside *= p;
            rest /= p * p;
        }
        if rest.is_multiple_of(p) {
            core *= p;
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, core * rest)
}

/// Same split for big integers; used when taking square roots of factorial ratios.
fn split_square_big(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(small) = n.to_u64() {
        let (o, c) = normalize_radicand(small);
        return (BigUint::from(o), BigUint::from(c));
    }
    let mut rest = n.clone();
    let mut outside = BigUint::one();
    let mut core = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            outside *= &p;
            rest /= &sq;
        }
        if (&rest % &p).is_zero() {
            core *= &p;
            rest /= &p;
        }
        p += 1u32;
    }
    (outside, core * rest)
}

/// Operations the sparse polynomial containers need from a coefficient.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale_rational(&self, q: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self * q
    }
}

/// Finite sum `sum_k q_k * sqrt(k)` over squarefree radicands `k`.
///
/// Canonical by construction: radicands are squarefree, no zero weight is
/// stored, and zero is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SurdSum {
    terms: BTreeMap<u64, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(int(1))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, 1)
    }

    /// `q * sqrt(k)` for any positive `k`.
    pub fn term(q: Rational, k: u64) -> Self {
        let mut out = Self::default();
        if !Zero::is_zero(&q) {
            let (o, c) = normalize_radicand(k);
            out.terms.insert(c, q * Rational::from_integer(BigInt::from(o)));
        }
        out
    }

    pub fn sqrt(k: u64) -> Self {
        Self::term(int(1), k)
    }

    /// `sqrt(q)` for a nonnegative rational, normalized as `sqrt(num*den)/den`.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, ExactError> {
        if q.is_negative() {
            return Err(ExactError::NegativeRadicand(q.to_string()));
        }
        if Zero::is_zero(q) {
            return Ok(Self::zero());
        }
        let (on, cn) = split_square_big(q.numer().magnitude());
        let (od, cd) = split_square_big(q.denom().magnitude());
        // sqrt(on^2 cn / (od^2 cd)) = on/(od cd) * sqrt(cn cd)
        let g = cn.gcd(&cd);
        let (o2, core) = (g.clone(), (&cn / &g) * (&cd / &g));
        let weight = Rational::new(
            BigInt::from_biguint(Sign::Plus, on * o2),
            BigInt::from_biguint(Sign::Plus, od * cd),
        );
        let core = core
            .to_u64()
            .expect("squarefree core of a table coefficient exceeds u64");
        let mut out = Self::default();
        out.terms.insert(core, weight);
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&k| k == 1)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(int(0)),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The rational weight on radicand `k` (zero when absent).
    pub fn weight(&self, k: u64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(|| int(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if Zero::is_zero(q) {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, w)| (*k, w * q)).collect(),
        }
    }

    /// Inverse of a single-term surd: `1/(q sqrt(k)) = sqrt(k)/(q k)`.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        match self.terms.len() {
            0 => Err(ExactError::DivisionByZero),
            1 => {
                let (k, q) = self.terms.iter().next().unwrap();
                let w = (q * int(*k as i64)).recip();
                Ok(Self::term(w, *k))
            }
            n => Err(ExactError::NotInvertible(n)),
        }
    }

    /// Sign of the real value. Exact: uses squared comparisons of the
    /// positive and negative parts.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if surd_to_float(self, 53) > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn to_f64(&self) -> f64 {
        surd_to_float(self, 53)
    }

    fn insert_add(&mut self, k: u64, q: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                if !Zero::is_zero(&q) {
                    v.insert(q);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }
}

/// Float image of `a` with relative error at most `2^(1-precision)`.
///
/// Each term `q sqrt(k)` is floored in fixed point, so the sum carries an
/// absolute error below the term count; the working precision grows until
/// that error is small against the magnitude. A nonzero canonical value never
/// cancels to zero because square roots of distinct squarefree integers are
/// linearly independent over the rationals.
pub fn surd_to_float(a: &SurdSum, precision: u32) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    if let Some(q) = a.to_rational() {
        return q.to_f64().unwrap_or(f64::NAN);
    }
    let prec = precision.clamp(1, 53);
    let n = a.terms.len() as u64;
    let mut bits = prec + 24;
    loop {
        let mut acc = BigInt::zero();
        for (k, q) in &a.terms {
            let num = q.numer().magnitude();
            let den = q.denom().magnitude();
            let scaled: BigUint = (num * num * BigUint::from(*k)) << (2 * bits as usize);
            let v = (scaled / (den * den)).sqrt();
            let v = BigInt::from_biguint(Sign::Plus, v);
            if q.is_negative() {
                acc -= v;
            } else {
                acc += v;
            }
        }
        let bound = BigUint::from(n) << (prec as usize + 2);
        if acc.magnitude() >= &bound {
            let r = Rational::new(acc, BigInt::one() << bits as usize);
            return r.to_f64().unwrap_or(f64::NAN);
        }
        bits += 32;
    }
}

impl Coefficient for SurdSum {
    fn zero() -> Self {
        SurdSum::zero()
    }
    fn is_zero(&self) -> bool {
        SurdSum::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
}

impl From<Rational> for SurdSum {
    fn from(q: Rational) -> Self {
        SurdSum::from_rational(q)
    }
}

impl<'a> Add<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: &'a SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.insert_add(*k, q.clone());
        }
        out
    }
}

impl Add for SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: SurdSum) -> SurdSum {
        &self + &rhs
    }
}

impl AddAssign<&SurdSum> for SurdSum {
    fn add_assign(&mut self, rhs: &SurdSum) {
        for (k, q) in &rhs.terms {
            self.insert_add(*k, q.clone());
        }
    }
}

impl<'a> Sub<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: &'a SurdSum) -> SurdSum {
        self + &(-rhs)
    }
}

impl Sub for SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: SurdSum) -> SurdSum {
        &self - &rhs
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self.terms.iter().map(|(k, q)| (*k, -q)).collect(),
        }
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        -&self
    }
}

impl<'a> Mul<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &'a SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (k1, q1) in &self.terms {
            for (k2, q2) in &rhs.terms {
                // both squarefree: k1 k2 = g^2 (k1/g)(k2/g)
                let g = k1.gcd(k2);
                let core = (k1 / g) * (k2 / g);
                out.insert_add(core, q1 * q2 * int(g as i64));
            }
        }
        out
    }
}

impl Mul for SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: SurdSum) -> SurdSum {
        &self * &rhs
    }
}

fn fmt_weight(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render one term as `q` or `q*k^(1/2)`, with an optional `i` factor.
fn fmt_term(q: &Rational, k: u64, imag: bool) -> String {
    let mut factors = Vec::new();
    if imag {
        factors.push("i".to_string());
    }
    if k != 1 {
        factors.push(format!("{k}^(1/2)"));
    }
    // unit weights are implied, as in `6^(1/2)` or `-i`
    let w = fmt_weight(q);
    match w.as_str() {
        "1" | "-1" if !factors.is_empty() => format!("{}{}", if w == "-1" { "-" } else { "" }, factors.join("*")),
        _ => std::iter::once(w).chain(factors).collect::<Vec<_>>().join("*"),
    }
}

fn join_terms(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (idx, p) in parts.into_iter().enumerate() {
        if idx == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" -");
            out.push_str(rest);
        } else {
            out.push_str(" +");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts = self.terms.iter().map(|(k, q)| fmt_term(q, *k, false)).collect();
        f.write_str(&join_terms(parts))
    }
}

/// Big integer that serializes as a JSON number when it fits in `i64` and as
/// a decimal string otherwise.
#[derive(Debug, Clone, PartialEq)]
struct JsonInt(BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(JsonInt(BigInt::from(v))),
            Raw::Text(t) => t.parse().map(JsonInt).map_err(de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    num: JsonInt,
    den: JsonInt,
    radicand: u64,
    imag: bool,
}

impl JsonTerm {
    fn new(q: &Rational, k: u64, imag: bool) -> Self {
        JsonTerm {
            num: JsonInt(q.numer().clone()),
            den: JsonInt(q.denom().clone()),
            radicand: k,
            imag,
        }
    }

    fn weight<E: de::Error>(&self) -> Result<Rational, E> {
        if self.den.0.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        if self.radicand == 0 {
            return Err(E::custom("zero radicand"));
        }
        Ok(Rational::new(self.num.0.clone(), self.den.0.clone()))
    }
}

impl Serialize for SurdSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<JsonTerm> = self.terms.iter().map(|(k, q)| JsonTerm::new(q, *k, false)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurdSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<JsonTerm>::deserialize(d)?;
        let mut out = SurdSum::zero();
        for t in &raw {
            if t.imag {
                return Err(de::Error::custom("imaginary term in a real surd sum"));
            }
            out += &SurdSum::term(t.weight()?, t.radicand);
        }
        Ok(out)
    }
}

/// Complex number with surd-sum real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct ComplexSurd {
    pub re: SurdSum,
    pub im: SurdSum,
}

impl ComplexSurd {
    pub fn new(re: SurdSum, im: SurdSum) -> Self {
        ComplexSurd { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(SurdSum::one())
    }

    pub fn i() -> Self {
        Self::new(SurdSum::zero(), SurdSum::one())
    }

    pub fn real(re: SurdSum) -> Self {
        Self::new(re, SurdSum::zero())
    }

    pub fn imag(im: SurdSum) -> Self {
        Self::new(SurdSum::zero(), im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.re.scale(q), self.im.scale(q))
    }

    pub fn scale_surd(&self, s: &SurdSum) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    /// Multiply by `i^k`.
    pub fn times_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Self::new(-&self.im, self.re.clone()),
            2 => -self,
            _ => Self::new(self.im.clone(), -&self.re),
        }
    }

    /// Inverse of a value whose real or imaginary part is a single surd term
    /// and whose other part is zero.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.im.is_zero() {
            Ok(Self::real(self.re.inverse()?))
        } else if self.re.is_zero() {
            // 1/(i b) = -i / b
            Ok(Self::imag(-self.im.inverse()?))
        } else {
            Err(ExactError::NotInvertible(self.re.len() + self.im.len()))
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Coefficient for ComplexSurd {
    fn zero() -> Self {
        ComplexSurd::zero()
    }
    fn is_zero(&self) -> bool {
        ComplexSurd::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
}

impl From<SurdSum> for ComplexSurd {
    fn from(s: SurdSum) -> Self {
        ComplexSurd::real(s)
    }
}

impl<'a> Add<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn add(self, rhs: &'a ComplexSurd) -> ComplexSurd {
        ComplexSurd::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for ComplexSurd {
    type Output = ComplexSurd;
    fn add(self, rhs: ComplexSurd) -> ComplexSurd {
        &self + &rhs
    }
}

impl AddAssign<&ComplexSurd> for ComplexSurd {
    fn add_assign(&mut self, rhs: &ComplexSurd) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn sub(self, rhs: &'a ComplexSurd) -> ComplexSurd {
        ComplexSurd::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for ComplexSurd {
    type Output = ComplexSurd;
    fn sub(self, rhs: ComplexSurd) -> ComplexSurd {
        &self - &rhs
    }
}

impl Neg for &ComplexSurd {
    type Output = ComplexSurd;
    fn neg(self) -> ComplexSurd {
        ComplexSurd::new(-&self.re, -&self.im)
    }
}

impl Neg for ComplexSurd {
    type Output = ComplexSurd;
    fn neg(self) -> ComplexSurd {
        -&self
    }
}

impl<'a> Mul<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn mul(self, rhs: &'a ComplexSurd) -> ComplexSurd {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexSurd::new(re, im)
    }
}

impl Mul for ComplexSurd {
    type Output = ComplexSurd;
    fn mul(self, rhs: ComplexSurd) -> ComplexSurd {
        &self * &rhs
    }
}

impl fmt::Display for ComplexSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.re.terms().map(|(k, q)| fmt_term(q, k, false)).collect();
        parts.extend(self.im.terms().map(|(k, q)| fmt_term(q, k, true)));
        f.write_str(&join_terms(parts))
    }
}

impl Serialize for ComplexSurd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut v: Vec<JsonTerm> = self.re.terms().map(|(k, q)| JsonTerm::new(q, k, false)).collect();
        v.extend(self.im.terms().map(|(k, q)| JsonTerm::new(q, k, true)));
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexSurd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<JsonTerm>::deserialize(d)?;
        let mut out = ComplexSurd::zero();
        for t in &raw {
            let s = SurdSum::term(t.weight()?, t.radicand);
            if t.imag {
                out.im += &s;
            } else {
                out.re += &s;
            }
        }
        Ok(out)
    }
}

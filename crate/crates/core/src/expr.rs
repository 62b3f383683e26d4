//! Parser and normal form for the table syntax: exact sums of products of
//! symbols such as `x`, `r`, `R_4^2(r)`, `Z_1,1^(-1)` or `cos(2*phi)` with
//! complex surd weights.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::exact::{ComplexSurd, ExactError, Rational, SurdSum};

/// A symbol of the table syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    X,
    Y,
    Z,
    R,
    /// `Pi^(1/2)`
    SqrtPi,
    Cos(u32),
    Sin(u32),
    /// `R_n^m(r)`
    Radial2 { n: u32, m: u32 },
    /// `R_n^(l)(r)`
    Radial3 { n: u32, l: u32 },
    /// `Z_n,l^(m)`
    Zernike3 { n: u32, l: u32, m: i32 },
    /// `Y_l^(m)`
    Harmonic { l: u32, m: i32 },
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::X => f.write_str("x"),
            Atom::Y => f.write_str("y"),
            Atom::Z => f.write_str("z"),
            Atom::R => f.write_str("r"),
            Atom::SqrtPi => f.write_str("Pi^(1/2)"),
            Atom::Cos(1) => f.write_str("cos(phi)"),
            Atom::Sin(1) => f.write_str("sin(phi)"),
            Atom::Cos(k) => write!(f, "cos({k}*phi)"),
            Atom::Sin(k) => write!(f, "sin({k}*phi)"),
            Atom::Radial2 { n, m } => write!(f, "R_{n}^{m}(r)"),
            Atom::Radial3 { n, l } => write!(f, "R_{n}^({l})(r)"),
            Atom::Zernike3 { n, l, m } => write!(f, "Z_{n},{l}^({m})"),
            Atom::Harmonic { l, m } => write!(f, "Y_{l}^({m})"),
        }
    }
}

/// Product of atoms with nonzero integer exponents, sorted by atom.
pub type Mono = Vec<(Atom, i32)>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut map: BTreeMap<Atom, i32> = a.iter().copied().collect();
    for (atom, e) in b {
        *map.entry(*atom).or_insert(0) += e;
    }
    map.into_iter().filter(|(_, e)| *e != 0).collect()
}

/// Exact sum of weighted monomials; zero is the empty map.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Expr {
    terms: BTreeMap<Mono, ComplexSurd>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cannot divide by a sum of {0} terms")]
    Divisor(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ComplexSurd) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn atom(a: Atom) -> Self {
        Self::term(vec![(a, 1)], ComplexSurd::one())
    }

    pub fn term(mono: Mono, c: ComplexSurd) -> Self {
        let mut out = Self::zero();
        out.add_term(mono, c);
        out
    }

    /// Build from `(atoms with exponents, weight)` pairs; atoms may repeat.
    pub fn from_terms<I, M>(terms: I) -> Self
    where
        I: IntoIterator<Item = (M, ComplexSurd)>,
        M: IntoIterator<Item = (Atom, i32)>,
    {
        let mut out = Self::zero();
        for (atoms, c) in terms {
            let mono = mono_mul(&Vec::new(), &atoms.into_iter().collect());
            out.add_term(mono, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &ComplexSurd)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Mono, c: ComplexSurd) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Expr {
        (0..k).fold(Expr::constant(ComplexSurd::one()), |acc, _| acc.mul(self))
    }

    /// Inverse of a single weighted monomial.
    pub fn inverse(&self) -> Result<Expr, ParseError> {
        if self.terms.len() != 1 {
            return Err(ParseError::Divisor(self.terms.len()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv: Mono = m.iter().map(|(a, e)| (*a, -e)).collect();
        Ok(Expr::term(inv, c.inverse()?))
    }

    /// Value of a constant expression, if it is one.
    pub fn as_constant(&self) -> Option<ComplexSurd> {
        match self.terms.len() {
            0 => Some(ComplexSurd::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Real and imaginary parts as two real-weighted expressions.
    pub fn split_complex(&self) -> (Expr, Expr) {
        let part = |f: fn(&ComplexSurd) -> &SurdSum| {
            Expr::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), ComplexSurd::real(f(c).clone()))))
        };
        (part(|c| &c.re), part(|c| &c.im))
    }

    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.ws();
        if p.pos != p.s.len() {
            return p.fail("trailing input");
        }
        Ok(e)
    }

    /// Parse `re , im` (or a lone real part) into `re + i*im`.
    pub fn parse_complex(text: &str) -> Result<Expr, ParseError> {
        match text.split_once(" , ") {
            None => Expr::parse(text),
            Some((re, im)) => {
                let i = Expr::constant(ComplexSurd::i());
                Ok(Expr::parse(re)?.add(&Expr::parse(im)?.mul(&i)))
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, c)) in self.terms.iter().enumerate() {
            let single = c.re.len() + c.im.len() == 1;
            let coeff = if single { c.to_string() } else { format!("({c})") };
            let (sign, coeff) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if idx > 0 {
                write!(f, " {sign}")?;
            } else if sign == "-" {
                f.write_str("-")?;
            }
            let mut parts = Vec::new();
            let has_numerator = mono.iter().any(|(_, e)| *e > 0);
            if coeff != "1" || !has_numerator {
                parts.push(coeff);
            }
            for (a, e) in mono.iter().filter(|(_, e)| *e > 0) {
                parts.push(if *e == 1 { a.to_string() } else { format!("{a}^{e}") });
            }
            f.write_str(&parts.join("*"))?;
            for (a, e) in mono.iter().filter(|(_, e)| *e < 0) {
                match -e {
                    1 => write!(f, "/{a}")?,
                    k => write!(f, "/{a}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.fail(&format!("expected `{lit}`"))
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected digits");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.fail("integer too large"))
    }

    fn sint(&mut self) -> Result<i32, ParseError> {
        let neg = self.eat("-");
        let v = self.uint()? as i32;
        Ok(if neg { -v } else { v })
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?.inverse()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        if self.eat("(1/2)") {
            let c = match base.as_constant() {
                Some(c) if c.is_real() => c.re.to_rational(),
                _ => None,
            };
            return match c {
                Some(q) if !q.is_negative() => Ok(Expr::constant(ComplexSurd::real(SurdSum::sqrt_rational(&q)?))),
                _ => self.fail("square root of a non-rational"),
            };
        }
        let k = if self.eat("(") {
            let k = self.sint()?;
            self.expect(")")?;
            k
        } else {
            self.uint()? as i32
        };
        if k >= 0 {
            Ok(base.pow(k as u32))
        } else {
            Ok(base.inverse()?.pow(k.unsigned_abs()))
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.ws();
                self.expect(")")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let v: num_bigint::BigInt = text.parse().unwrap();
                Ok(Expr::constant(ComplexSurd::real(SurdSum::from_rational(Rational::from_integer(v)))))
            }
            Some(c) if c.is_ascii_alphabetic() => self.symbol(),
            _ => self.fail("expected a number, symbol or `(`"),
        }
    }

    fn symbol(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
        let atom = match word.as_str() {
            "x" => Atom::X,
            "y" => Atom::Y,
            "z" => Atom::Z,
            "r" => Atom::R,
            "i" => return Ok(Expr::constant(ComplexSurd::i())),
            "Pi" => {
                self.expect("^(1/2)")?;
                Atom::SqrtPi
            }
            "cos" | "sin" => {
                self.expect("(")?;
                let k = if self.eat("phi") {
                    1
                } else {
                    let k = self.uint()?;
                    self.expect("*phi")?;
                    k
                };
                self.expect(")")?;
                if word == "cos" {
                    Atom::Cos(k)
                } else {
                    Atom::Sin(k)
                }
            }
            "R" => {
                self.expect("_")?;
                let n = self.uint()?;
                self.expect("^")?;
                let atom = if self.eat("(") {
                    let l = self.uint()?;
                    self.expect(")")?;
                    Atom::Radial3 { n, l }
                } else {
                    Atom::Radial2 { n, m: self.uint()? }
                };
                self.eat("(r)");
                atom
            }
            "Z" => {
                self.expect("_")?;
                let n = self.uint()?;
                self.expect(",")?;
                let l = self.uint()?;
                self.expect("^(")?;
                let m = self.sint()?;
                self.expect(")")?;
                Atom::Zernike3 { n, l, m }
            }
            "Y" => {
                self.expect("_")?;
                let l = self.uint()?;
                self.expect("^(")?;
                let m = self.sint()?;
                self.expect(")")?;
                Atom::Harmonic { l, m }
            }
            _ => {
                self.pos = start;
                return self.fail(&format!("unknown symbol `{word}`"));
            }
        };
        Ok(Expr::atom(atom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn real(q: crate::exact::Rational, k: u64) -> ComplexSurd {
        ComplexSurd::real(SurdSum::term(q, k))
    }

    #[test]
    fn parses_surds_and_atoms() {
        let e = Expr::parse("1/2*7^(1/2)*( -3 +5*r^2)").unwrap();
        let want = Expr::from_terms([
            (vec![], real(rat(-3, 2), 7)),
            (vec![(Atom::R, 2)], real(rat(5, 2), 7)),
        ]);
        assert_eq!(e, want);
        let e = Expr::parse("1/105*i*210^(1/2)*Z_2,2^(-2) -1/105*i*210^(1/2)*Z_2,2^(2)").unwrap();
        assert_eq!(e.len(), 2);
        let e = Expr::parse("2*R_1^1(r)*cos(phi)").unwrap();
        assert_eq!(e, Expr::from_terms([(vec![(Atom::Radial2 { n: 1, m: 1 }, 1), (Atom::Cos(1), 1)], real(rat(2, 1), 1))]));
        let e = Expr::parse("7^(1/2)*(5/21*R_2^(2) -2/21*R_2^(0))").unwrap();
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn division_by_monomials() {
        let e = Expr::parse("(x)/(1/2)").unwrap();
        assert_eq!(e, Expr::from_terms([(vec![(Atom::X, 1)], real(rat(2, 1), 1))]));
        let e = Expr::parse("1/2*3^(1/2)/Pi^(1/2)").unwrap();
        assert_eq!(e, Expr::from_terms([(vec![(Atom::SqrtPi, -1)], real(rat(1, 2), 3))]));
        assert!(Expr::parse("1/(x+y)").is_err());
    }

    #[test]
    fn complex_split() {
        let e = Expr::parse_complex("-1/4*6^(1/2)*x , -1/4*6^(1/2)*y").unwrap();
        let want = Expr::from_terms([
            (vec![(Atom::X, 1)], real(rat(-1, 4), 6)),
            (vec![(Atom::Y, 1)], ComplexSurd::imag(SurdSum::term(rat(-1, 4), 6))),
        ]);
        assert_eq!(e, want);
    }

    #[test]
    fn render_round_trip() {
        for text in ["-1 +2*r^2", "1/105*i*210^(1/2)*Z_2,2^(-2)", "x^4 -6*x^2*y^2 +y^4", "2/3*2^(1/2)*Y_0^(0) +4/15*6^(1/2)*Y_2^(0)"] {
            let e = Expr::parse(text).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("2*q").is_err());
        assert!(Expr::parse("(1 +x").is_err());
        assert!(Expr::parse("1 2").is_err());
    }
}

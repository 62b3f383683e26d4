//! Transcribed coefficient tables: loading, regeneration from the library,
//! and exact comparison.
//!
//! Each fixture line reads `family | key | value`. Blank lines and lines
//! starting with `#` are skipped. Values use the table syntax parsed by
//! [`Expr`].

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::ZernikeError;
use crate::exact::{ComplexSurd, Rational, SurdSum};
use crate::expr::{Atom, Expr, ParseError};
use crate::par::Exec;
use crate::poly::{AngularKind, CartPoly2, CartPoly3, RadialPoly, ZernExpansion2D, ZernExpansion3D};
use crate::{zernike2d as z2, zernike3d as z3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Radial2d,
    H,
    Noll,
    Cart2z2d,
    Z2cart2d,
    G,
    Radial3d,
    F,
    Fhat,
    Ylmcart,
    Z3dcart,
    U,
    Yprod,
    K,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Radial2d,
        Family::H,
        Family::Noll,
        Family::Cart2z2d,
        Family::Z2cart2d,
        Family::G,
        Family::Radial3d,
        Family::F,
        Family::Fhat,
        Family::Ylmcart,
        Family::Z3dcart,
        Family::U,
        Family::Yprod,
        Family::K,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Radial2d => "radial2d",
            Family::H => "h",
            Family::Noll => "noll",
            Family::Cart2z2d => "cart2z2d",
            Family::Z2cart2d => "z2cart2d",
            Family::G => "g",
            Family::Radial3d => "radial3d",
            Family::F => "f",
            Family::Fhat => "fhat",
            Family::Ylmcart => "ylmcart",
            Family::Z3dcart => "z3dcart",
            Family::U => "u",
            Family::Yprod => "yprod",
            Family::K => "k",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FixtureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FixtureError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("unknown fixture family `{0}`")]
    UnknownFamily(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Format { path: PathBuf, line: usize, msg: String },
    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("bad key `{key}` for family {family}")]
    Key { family: Family, key: String },
    #[error(transparent)]
    Zernike(#[from] ZernikeError),
}

/// One transcribed table row with its parsed value.
#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub family: Family,
    pub key: String,
    pub text: String,
    pub value: Expr,
    pub line: usize,
}

/// Default fixture directory: `fixtures/` at the workspace root.
pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Parse a fixture value into the quantity the generator produces.
fn parse_value(family: Family, text: &str) -> Result<Expr, ParseError> {
    match family {
        Family::Ylmcart => Expr::parse_complex(text),
        // the table divides by √π; generated forms carry it as a factor
        Family::Z3dcart => Ok(Expr::parse_complex(text)?.mul(&Expr::atom(Atom::SqrtPi))),
        _ => Expr::parse(text),
    }
}

pub fn load_family(dir: &Path, family: Family) -> Result<Vec<FixtureEntry>, FixtureError> {
    let path = dir.join(format!("{}.txt", family.name()));
    let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io { path: path.clone(), source })?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.splitn(3, " | ").collect();
        let [fam, key, value] = fields[..] else {
            return Err(FixtureError::Format { path, line, msg: "expected `family | key | value`".into() });
        };
        if fam != family.name() {
            return Err(FixtureError::Format { path, line, msg: format!("family `{fam}` in {} file", family.name()) });
        }
        let parsed = parse_value(family, value).map_err(|source| FixtureError::Parse { path: path.clone(), line, source })?;
        out.push(FixtureEntry {
            family,
            key: key.to_string(),
            text: value.to_string(),
            value: parsed,
            line,
        });
    }
    Ok(out)
}

/// Render a generated value in the fixture syntax of `family`, so that
/// [`load_family`] reads it back to the same value.
pub fn render_value(family: Family, value: &Expr) -> String {
    let split = |v: &Expr| {
        let (re, im) = v.split_complex();
        format!("{re} , {im}")
    };
    match family {
        Family::Ylmcart => split(value),
        Family::Z3dcart => split(&value.mul(&Expr::term(vec![(Atom::SqrtPi, -1)], ComplexSurd::one()))),
        _ => value.to_string(),
    }
}

fn real(s: SurdSum) -> ComplexSurd {
    ComplexSurd::real(s)
}

fn rational(q: Rational) -> ComplexSurd {
    real(SurdSum::from_rational(q))
}

pub fn radial_expr(p: &RadialPoly) -> Expr {
    Expr::from_terms(p.iter().map(|(e, c)| (vec![(Atom::R, *e as i32)], real(c.clone()))))
}

fn cart_atoms<const D: usize>(k: [u32; D]) -> Vec<(Atom, i32)> {
    k.iter().zip([Atom::X, Atom::Y, Atom::Z]).map(|(e, a)| (a, *e as i32)).collect()
}

pub fn cart2_expr(p: &CartPoly2) -> Expr {
    Expr::from_terms(p.iter().map(|(k, c)| (cart_atoms(*k), real(c.clone()))))
}

pub fn cart3_expr(p: &CartPoly3) -> Expr {
    Expr::from_terms(p.iter().map(|(k, c)| (cart_atoms(*k), c.clone())))
}

fn trig_atom(kind: AngularKind) -> Vec<(Atom, i32)> {
    match kind {
        AngularKind::Radial => vec![],
        AngularKind::Cos(m) => vec![(Atom::Cos(m), 1)],
        AngularKind::Sin(m) => vec![(Atom::Sin(m), 1)],
    }
}

pub fn zern2_expr(z: &ZernExpansion2D) -> Expr {
    Expr::from_terms(z.iter().map(|(k, c)| {
        let mut atoms = vec![(Atom::Radial2 { n: k.n, m: k.kind.m() }, 1)];
        atoms.extend(trig_atom(k.kind));
        (atoms, real(c.clone()))
    }))
}

pub fn zern3_expr(z: &ZernExpansion3D) -> Expr {
    Expr::from_terms(z.iter().map(|(k, c)| (vec![(Atom::Zernike3 { n: k.n, l: k.l, m: k.m }, 1)], c.clone())))
}

fn key_err(family: Family, key: &str) -> FixtureError {
    FixtureError::Key { family, key: key.to_string() }
}

fn ints<const N: usize>(family: Family, key: &str) -> Result<[i64; N], FixtureError> {
    let parts: Vec<i64> = key
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| key_err(family, key))?;
    parts.try_into().map_err(|_| key_err(family, key))
}

fn nat<const N: usize>(family: Family, key: &str) -> Result<[u32; N], FixtureError> {
    let v = ints::<N>(family, key)?;
    let mut out = [0u32; N];
    for (o, x) in out.iter_mut().zip(v) {
        *o = u32::try_from(x).map_err(|_| key_err(family, key))?;
    }
    Ok(out)
}

/// Regenerate the row `key` of `family` from the library.
pub fn generate(family: Family, key: &str) -> Result<Expr, FixtureError> {
    use Family::*;
    Ok(match family {
        Radial2d => {
            let [n, m] = nat(family, key)?;
            radial_expr(&z2::radial_2d(z2::Index2D::new(n, m)?))
        }
        H => {
            let [j, m] = nat(family, key)?;
            let h = z2::power_to_radial_2d(j, m)?;
            Expr::from_terms(h.into_iter().map(|(n, v)| (vec![(Atom::Radial2 { n, m }, 1)], rational(v))))
        }
        Noll => {
            let [j] = nat(family, key)?;
            let (idx, kind) = z2::noll_unpack(z2::NollIndex::new(j)?);
            let mut atoms = vec![(Atom::Radial2 { n: idx.n(), m: idx.m() }, 1)];
            atoms.extend(trig_atom(kind));
            Expr::from_terms([(atoms, real(z2::noll_norm(idx)))])
        }
        Cart2z2d => {
            if let Some(rest) = key.strip_prefix("trig:").or_else(|| key.strip_prefix("polar:")) {
                let [p, q] = nat(family, rest)?;
                let polar = key.starts_with("polar:");
                Expr::from_terms(z2::trig_power_expand(p, q).into_iter().map(|(kind, c)| {
                    let mut atoms = trig_atom(kind);
                    if polar && p + q > 0 {
                        atoms.push((Atom::R, (p + q) as i32));
                    }
                    (atoms, rational(c))
                }))
            } else {
                let [p, q] = nat(family, key)?;
                zern2_expr(&z2::cart_monomial_to_zernike_2d(p, q))
            }
        }
        Z2cart2d => {
            if let Some(rest) = key.strip_prefix("rj:") {
                let (nums, kind) = rest.rsplit_once(',').ok_or_else(|| key_err(family, key))?;
                let [j, m] = nat(family, nums)?;
                let trig = match kind {
                    "cos" => z2::Trig::Cos,
                    "sin" => z2::Trig::Sin,
                    _ => return Err(key_err(family, key)),
                };
                cart2_expr(&z2::rj_trig_to_cart(j, m, trig)?)
            } else {
                let [j] = nat(family, key)?;
                cart2_expr(&z2::zernike_to_cart_2d(z2::NollIndex::new(j)?))
            }
        }
        G => {
            let [n1, m1, n2, m2, m3] = nat(family, key)?;
            let g = z2::product_expand_2d(z2::Index2D::new(n1, m1)?, z2::Index2D::new(n2, m2)?, m3)?;
            Expr::from_terms(g.into_iter().map(|(n, v)| (vec![(Atom::Radial2 { n, m: m3 }, 1)], rational(v))))
        }
        Radial3d => {
            let [n, l] = nat(family, key)?;
            radial_expr(&z3::radial_3d(z3::Index3D::new(n, l)?))
        }
        F => {
            let [j, l] = nat(family, key)?;
            let f = z3::power_to_radial_3d(j, l)?;
            Expr::from_terms(f.into_iter().map(|(n, v)| (vec![(Atom::Radial3 { n, l }, 1)], real(v))))
        }
        Fhat => {
            let [j, n] = nat(family, key)?;
            let f = z3::power_to_radial_3d_fixed_n(j, n)?;
            Expr::from_terms(f.into_iter().map(|(l, v)| (vec![(Atom::Radial3 { n, l }, 1)], real(v))))
        }
        Ylmcart => {
            let [l, m] = ints(family, key)?;
            let l = u32::try_from(l).map_err(|_| key_err(family, key))?;
            cart3_expr(&z3::ylm_cart(z3::SphIndex::new(l, m as i32)?))
        }
        Z3dcart => {
            let [n, l, m] = ints(family, key)?;
            let (n, l) = (u32::try_from(n).map_err(|_| key_err(family, key))?, u32::try_from(l).map_err(|_| key_err(family, key))?);
            cart3_expr(&z3::zernike3d_to_cart(n, l, m as i32)?)
        }
        U => {
            let [p, q, t] = nat(family, key)?;
            zern3_expr(&z3::cart_monomial_to_zernike_3d(p, q, t))
        }
        Yprod => {
            let [l1, m1, l2, m2] = ints(family, key)?;
            let i1 = z3::SphIndex::new(u32::try_from(l1).map_err(|_| key_err(family, key))?, m1 as i32)?;
            let i2 = z3::SphIndex::new(u32::try_from(l2).map_err(|_| key_err(family, key))?, m2 as i32)?;
            let y = z3::y_product_expand(i1, i2);
            Expr::from_terms(y.into_iter().map(|(s, v)| (vec![(Atom::Harmonic { l: s.l(), m: s.m() }, 1)], real(v))))
        }
        K => {
            let [n1, l1, n2, l2, l3] = nat(family, key)?;
            let k = z3::product_expand_3d(z3::Index3D::new(n1, l1)?, z3::Index3D::new(n2, l2)?, l3)?;
            Expr::from_terms(k.into_iter().map(|(n, v)| (vec![(Atom::Radial3 { n, l: l3 }, 1)], real(v))))
        }
    })
}

/// Outcome of regenerating one fixture row.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub entry: FixtureEntry,
    pub generated: Result<Expr, String>,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        matches!(&self.generated, Ok(g) if *g == self.entry.value)
    }

    /// Exact difference `generated - expected`, when generation succeeded.
    pub fn difference(&self) -> Option<Expr> {
        self.generated.as_ref().ok().map(|g| g.add(&self.entry.value.neg()))
    }
}

/// Regenerate every row of a family and compare exactly.
pub fn check_family(dir: &Path, family: Family, exec: Exec) -> Result<Vec<Comparison>, FixtureError> {
    let entries = load_family(dir, family)?;
    Ok(exec.map(&entries, |e| Comparison {
        entry: e.clone(),
        generated: generate(e.family, &e.key).map_err(|err| err.to_string()),
    }))
}

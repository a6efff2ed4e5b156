//! The coefficient ring `A = Z[Γ]` specialised to a rational ratio `b/a = p/q`.
//!
//! With `a = q` and `b = p` (in units of `a/q`), the monomial `Q^m q^k`
//! lives at the integer grade `m·p + k·q`, so an element of `A` is a finite
//! sparse map from grades to integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Generator;

/// Ratio `b/a = p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamSpec {
    p: u32,
    q: u32,
}

impl ParamSpec {
    /// Builds `p/q`, reducing to lowest terms.
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidRatio(format!("{p}/{q}")));
        }
        let g = p.gcd(&q);
        Ok(ParamSpec { p: p / g, q: q / g })
    }

    /// `b = r·a`.
    pub fn integer(r: u32) -> Result<Self> {
        Self::new(r, 1)
    }

    /// The midpoint `(2r+1)/2` of the open interval `(r, r+1)`.
    pub fn open_sample(r: u32) -> Self {
        ParamSpec { p: 2 * r + 1, q: 2 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_integer_ratio(&self) -> bool {
        self.q == 1
    }

    /// `floor(b/a)`.
    pub fn regime_r(&self) -> u32 {
        self.p / self.q
    }

    /// Compares `b/a` with `num/den`.
    pub fn cmp_ratio(&self, num: u64, den: u64) -> Ordering {
        (self.p as u64 * den).cmp(&(num * self.q as u64))
    }

    /// `r·a < b < (r+1)·a`.
    pub fn in_open_interval(&self, r: u32) -> bool {
        self.cmp_ratio(r as u64, 1) == Ordering::Greater
            && self.cmp_ratio(r as u64 + 1, 1) == Ordering::Less
    }

    /// Grade of `Q^m q^k`.
    pub fn grade(&self, m: i64, k: i64) -> i64 {
        m * self.p as i64 + k * self.q as i64
    }

    /// Grade of `e^{φ(g)}`: `b` for `t`, `a` for `s_i`.
    pub fn weight(&self, g: Generator) -> i64 {
        match g {
            Generator::T => self.p as i64,
            Generator::S(_) => self.q as i64,
        }
    }

    /// Grade of `e^{φ(w)} = Q^{ℓ_t(w)} q^{ℓ_s(w)}`.
    pub fn weight_of(&self, ell_t: usize, ell_s: usize) -> i64 {
        self.grade(ell_t as i64, ell_s as i64)
    }

    /// A representative `(m, k)` with `m·p + k·q = grade`, choosing `m` in
    /// `(-q/2, q/2]`. Only `grade` carries meaning; this is for display.
    pub fn split_grade(&self, grade: i64) -> (i64, i64) {
        let (p, q) = (self.p as i64, self.q as i64);
        let lo = -((q - 1) / 2);
        (lo..=q / 2)
            .find(|m| (grade - m * p).rem_euclid(q) == 0)
            .map(|m| (m, (grade - m * p) / q))
            .expect("p and q are coprime")
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for ParamSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRatio(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p = p.parse::<u32>().map_err(|_| bad())?;
        let q = q.parse::<u32>().map_err(|_| bad())?;
        ParamSpec::new(p, q).map_err(|_| bad())
    }
}

/// Which grades [`Laurent::truncate`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Neg,
    Pos,
    NonNeg,
    NonPos,
}

impl Part {
    fn keeps(self, grade: i64) -> bool {
        match self {
            Part::Neg => grade < 0,
            Part::Pos => grade > 0,
            Part::NonNeg => grade >= 0,
            Part::NonPos => grade <= 0,
        }
    }
}

/// An element of `A`: sorted `(grade, coefficient)` pairs, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(i64, BigInt)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(0, c)
    }

    /// `c·e^grade`.
    pub fn term(grade: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(grade, c)] }
        }
    }

    /// `Q^m q^k`.
    pub fn monomial(m: i64, k: i64, spec: ParamSpec) -> Self {
        Self::term(spec.grade(m, k), 1)
    }

    /// Builds from arbitrary pairs, merging equal grades and dropping zeros.
    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut terms: Vec<(i64, BigInt)> = pairs.into_iter().collect();
        terms.sort_by_key(|(g, _)| *g);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (g, c) in terms {
            match out.last_mut() {
                Some((lg, lc)) if *lg == g => *lc += c,
                _ => out.push((g, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, grade: i64) -> BigInt {
        self.terms
            .binary_search_by_key(&grade, |(g, _)| *g)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn min_grade(&self) -> Option<i64> {
        self.terms.first().map(|(g, _)| *g)
    }

    pub fn max_grade(&self) -> Option<i64> {
        self.terms.last().map(|(g, _)| *g)
    }

    /// Multiplies by `e^grade`.
    pub fn shift(&self, grade: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(g, c)| (g + grade, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(g, x)| (*g, x * c)).collect() }
    }

    /// The involution `e^γ ↦ e^{-γ}`.
    pub fn bar(&self) -> Self {
        Laurent { terms: self.terms.iter().rev().map(|(g, c)| (-g, c.clone())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn truncate(&self, part: Part) -> Self {
        Laurent { terms: self.terms.iter().filter(|(g, _)| part.keeps(*g)).cloned().collect() }
    }

    /// Coefficient of `e^0`.
    pub fn tau(&self) -> BigInt {
        self.coeff(0)
    }

    /// All grades satisfy `part`.
    pub fn lies_in(&self, part: Part) -> bool {
        self.terms.iter().all(|(g, _)| part.keeps(*g))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some((ga, _)), Some((gb, _))) => ga.cmp(gb),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (g, c) = &b[j];
                    out.push((*g, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Laurent { terms: out }
    }

    /// Renders monomials as `Q^m q^k` using [`ParamSpec::split_grade`].
    pub fn pretty(&self, spec: ParamSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (g, c)) in self.terms.iter().rev().enumerate() {
            let (m, k) = spec.split_grade(*g);
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = monomial_string(m, k);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&abs.to_string()),
                (false, false) => out.push_str(&format!("{abs}{mono}")),
            }
        }
        out
    }
}

fn monomial_string(m: i64, k: i64) -> String {
    let power = |base: &str, e: i64| match e {
        0 => String::new(),
        1 => base.to_string(),
        e => format!("{base}^{e}"),
    };
    format!("{}{}", power("Q", m), power("q", k))
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Grades are printed as exponents of `e` (units of `a/q`).
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}e^{g}")?;
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.merge(rhs, false)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.merge(rhs, true)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if rhs.terms.len() == 1 {
            let (g, c) = &rhs.terms[0];
            return Laurent { terms: self.terms.iter().map(|(h, d)| (h + g, d * c)).collect() };
        }
        Laurent::from_terms(
            self.terms
                .iter()
                .flat_map(|(g, c)| rhs.terms.iter().map(move |(h, d)| (g + h, c * d))),
        )
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = self.merge(rhs, true);
    }
}

/// Serialized as `[[grade, coefficient], ...]`; coefficients outside the
/// `i64` range are written as decimal strings.
impl Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (g, c) in &self.terms {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&(g, v))?,
                None => seq.serialize_element(&(g, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Small(i64),
    Big(String),
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(i64, RawCoeff)>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (g, c) in raw {
            let c = match c {
                RawCoeff::Small(v) => BigInt::from(v),
                RawCoeff::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom)?,
            };
            if c.is_zero() {
                return Err(serde::de::Error::custom("zero coefficient stored"));
            }
            terms.push((g, c));
        }
        if !terms.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(serde::de::Error::custom("grades not strictly increasing"));
        }
        Ok(Laurent { terms })
    }
}

/// A standalone element together with the ratio it was computed under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecifiedLaurent {
    pub p: u32,
    pub q: u32,
    pub terms: Laurent,
}

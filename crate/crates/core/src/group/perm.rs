use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple reflection of `W_n`: the sign change `t` or the transposition `s_i`.
///
/// The derived order is `t < s_1 < ... < s_{n-1}`, which is the order in which
/// descents are chosen whenever a choice has to be made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T,
    S(usize),
}

impl Generator {
    /// Position in the list `t, s_1, ..., s_{n-1}`.
    pub fn index(self) -> usize {
        match self {
            Generator::T => 0,
            Generator::S(i) => i,
        }
    }

    pub fn from_index(index: usize) -> Self {
        if index == 0 {
            Generator::T
        } else {
            Generator::S(index)
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = Generator> {
        (0..n).map(Generator::from_index)
    }

    pub fn validate(self, n: usize) -> Result<Self> {
        match self {
            Generator::T if n >= 1 => Ok(self),
            Generator::S(i) if i >= 1 && i < n => Ok(self),
            _ => Err(Error::GeneratorOutOfRange { index: self.index(), n }),
        }
    }

    pub fn is_t(self) -> bool {
        self == Generator::T
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T => f.write_str("t"),
            Generator::S(i) => write!(f, "s{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(Generator::T),
            _ => s
                .strip_prefix('s')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(Generator::S)
                .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown generator {s:?}"))),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `W_n`, stored as its window `(w(1), ..., w(n))`.
///
/// `w(-i) = -w(i)` is implicit. Products compose right to left:
/// `(x * y)(i) = x(y(i))`. The derived order is lexicographic on windows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let window = Vec::<i32>::deserialize(d)?;
        SignedPermutation::new(window).map_err(serde::de::Error::custom)
    }
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; n];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(Error::InvalidWindow(window));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(SignedPermutation::new(window.clone()).is_ok());
        SignedPermutation { window }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(SignedPermutation { window: (1..=n as i32).collect() })
    }

    pub fn generator(g: Generator, n: usize) -> Result<Self> {
        let g = g.validate(n)?;
        let mut w = SignedPermutation::identity(n)?;
        w.apply_right_generator(g);
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `w(i)` for `i` in `{±1, ..., ±n}`.
    pub fn apply(&self, i: i32) -> i32 {
        debug_assert!(i != 0 && i.unsigned_abs() as usize <= self.rank());
        if i > 0 {
            self.window[i as usize - 1]
        } else {
            -self.window[(-i) as usize - 1]
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(SignedPermutation {
            window: other.window.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = v.unsigned_abs() as usize - 1;
            window[pos] = if v > 0 { i as i32 + 1 } else { -(i as i32 + 1) };
        }
        SignedPermutation { window }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// `w ↦ w·g`: `t` negates `w(1)`, `s_i` swaps positions `i` and `i+1`.
    pub fn apply_right_generator(&mut self, g: Generator) {
        match g {
            Generator::T => self.window[0] = -self.window[0],
            Generator::S(i) => self.window.swap(i - 1, i),
        }
    }

    /// `w ↦ g·w`: `t` negates the value `±1`, `s_i` swaps the values `±i`, `±(i+1)`.
    pub fn apply_left_generator(&mut self, g: Generator) {
        for v in self.window.iter_mut() {
            match g {
                Generator::T => {
                    if v.abs() == 1 {
                        *v = -*v;
                    }
                }
                Generator::S(i) => {
                    let (i, j) = (i as i32, i as i32 + 1);
                    match v.abs() {
                        a if a == i => *v = v.signum() * j,
                        a if a == j => *v = v.signum() * i,
                        _ => {}
                    }
                }
            }
        }
    }

    pub fn right_mul(&self, g: Generator) -> Self {
        let mut w = self.clone();
        w.apply_right_generator(g);
        w
    }

    pub fn left_mul(&self, g: Generator) -> Self {
        let mut w = self.clone();
        w.apply_left_generator(g);
        w
    }

    /// `ℓ(w·g) < ℓ(w)`: `w(i) > w(i+1)` for `s_i`, `w(1) < 0` for `t`.
    pub fn has_right_descent(&self, g: Generator) -> bool {
        match g {
            Generator::T => self.window[0] < 0,
            Generator::S(i) => self.window[i - 1] > self.window[i],
        }
    }

    pub fn has_left_descent(&self, g: Generator) -> bool {
        self.inverse().has_right_descent(g)
    }

    pub fn right_descent_set(&self) -> Vec<Generator> {
        Generator::all(self.rank()).filter(|&g| self.has_right_descent(g)).collect()
    }

    pub fn left_descent_set(&self) -> Vec<Generator> {
        self.inverse().right_descent_set()
    }

    /// A reduced word `g_1 ... g_k` with `w = g_1 ⋯ g_k`, obtained by
    /// repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<Generator> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(g) = Generator::all(w.rank()).find(|&g| w.has_right_descent(g)) {
            w.apply_right_generator(g);
            word.push(g);
        }
        word.reverse();
        word
    }

    pub fn length(&self) -> usize {
        self.reduced_word().len()
    }

    /// Number of `t` in a reduced expression, i.e. the number of negative
    /// entries of the window.
    pub fn ell_t(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    pub fn ell_s(&self) -> usize {
        self.length() - self.ell_t()
    }

    /// Lies in the symmetric group `𝔖_n`, i.e. all window entries positive.
    pub fn is_positive(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    pub fn from_word(word: &[Generator], n: usize) -> Result<Self> {
        let mut w = SignedPermutation::identity(n)?;
        for &g in word {
            w.apply_right_generator(g.validate(n)?);
        }
        Ok(w)
    }
}

impl Mul for &SignedPermutation {
    type Output = SignedPermutation;

    /// Panics on mismatched ranks; use [`SignedPermutation::multiply`] for
    /// the checked form.
    fn mul(self, rhs: &SignedPermutation) -> SignedPermutation {
        self.multiply(rhs).expect("rank mismatch in product")
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Bruhat order by the one-generator descent recursion: pick `s` with
/// `sy < y`; then `x ≤ y` iff `sx ≤ sy` (when `sx < x`) or `x ≤ sy` (otherwise).
pub fn bruhat_leq(x: &SignedPermutation, y: &SignedPermutation) -> Result<bool> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch(x.rank(), y.rank()));
    }
    let (mut x, mut y) = (x.clone(), y.clone());
    let (mut lx, mut ly) = (x.length(), y.length());
    loop {
        if lx > ly {
            return Ok(false);
        }
        if lx == ly {
            return Ok(x == y);
        }
        let s = Generator::all(y.rank())
            .find(|&g| y.has_left_descent(g))
            .expect("non-identity element has a left descent");
        y.apply_left_generator(s);
        ly -= 1;
        if x.has_left_descent(s) {
            x.apply_left_generator(s);
            lx -= 1;
        }
    }
}

/// All `2^n n!` elements in lexicographic order of windows.
pub fn enumerate(n: usize) -> Result<std::vec::IntoIter<SignedPermutation>> {
    enumerate_with_bound(n, crate::DEFAULT_RANK_BOUND)
}

pub fn enumerate_with_bound(
    n: usize,
    bound: usize,
) -> Result<std::vec::IntoIter<SignedPermutation>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if n > bound {
        return Err(Error::RankTooLarge { n, bound });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fill(n, &mut current, &mut used, &mut out);
    Ok(out.into_iter())
}

// Candidate values are visited in increasing signed order, so the output is
// already lexicographic.
fn fill(n: usize, current: &mut Vec<i32>, used: &mut [bool], out: &mut Vec<SignedPermutation>) {
    if current.len() == n {
        out.push(SignedPermutation { window: current.clone() });
        return;
    }
    let values = (1..=n as i32).rev().map(|v| -v).chain(1..=n as i32);
    for v in values {
        let a = v.unsigned_abs() as usize - 1;
        if used[a] {
            continue;
        }
        used[a] = true;
        current.push(v);
        fill(n, current, used, out);
        current.pop();
        used[a] = false;
    }
}

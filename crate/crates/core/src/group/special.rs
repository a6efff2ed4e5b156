//! Named elements of `W_n`: `a_l`, `r_i`, `t_i`, `w_n`, `σ_n`, `σ_[i,j]`,
//! `c_I`, `d_I` and `σ_{l,n-l}`.

use crate::error::{Error, Result};

use super::perm::{Generator, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialKind {
    /// `a_l = r_1 r_2 ⋯ r_l`, `0 ≤ l ≤ n`.
    A(usize),
    /// `r_1 = t`, `r_{i+1} = s_i r_i`.
    R(usize),
    /// `t_1 = t`, `t_{i+1} = s_i t_i s_i`; the sign change at position `i`.
    T(usize),
    /// Longest element of `W_n`.
    LongestW,
    /// Longest element of `𝔖_n`.
    LongestSigma,
    /// Longest element of `𝔖_[i,j]` (identity when `j < i`).
    SigmaInterval(usize, usize),
    /// `c_I = s_{i_1} ⋯ s_{i_l}` for `I ⊆ [1, n-1]`.
    C(Vec<usize>),
    /// `d_I = s_{i_l} ⋯ s_{i_1}`.
    D(Vec<usize>),
    /// Longest element of `𝔖_{l,n-l} = 𝔖_[1,l] × 𝔖_[l+1,n]`.
    SigmaYoung(usize),
}

pub fn special_element(kind: &SpecialKind, n: usize) -> Result<SignedPermutation> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let out_of_range = |what: String| Err(Error::ParameterOutOfRange(what));
    let ni = n as i32;
    let window: Vec<i32> = match kind {
        &SpecialKind::A(l) => {
            if l > n {
                return out_of_range(format!("a_{l} needs l ≤ {n}"));
            }
            let l = l as i32;
            (1..=ni).map(|i| if i <= l { i - 1 - l } else { i }).collect()
        }
        &SpecialKind::R(i) => {
            if i == 0 || i > n {
                return out_of_range(format!("r_{i} needs 1 ≤ i ≤ {n}"));
            }
            let i = i as i32;
            (1..=ni)
                .map(|j| match j {
                    1 => -i,
                    j if j <= i => j - 1,
                    j => j,
                })
                .collect()
        }
        &SpecialKind::T(i) => {
            if i == 0 || i > n {
                return out_of_range(format!("t_{i} needs 1 ≤ i ≤ {n}"));
            }
            (1..=ni).map(|j| if j == i as i32 { -j } else { j }).collect()
        }
        SpecialKind::LongestW => (1..=ni).map(|j| -j).collect(),
        SpecialKind::LongestSigma => (1..=ni).rev().collect(),
        &SpecialKind::SigmaInterval(i, j) => {
            if i == 0 || j > n || i > n + 1 {
                return out_of_range(format!("σ_[{i},{j}] out of range for n = {n}"));
            }
            let (i, j) = (i as i32, j as i32);
            (1..=ni)
                .map(|k| if i <= j && k >= i && k <= j { i + j - k } else { k })
                .collect()
        }
        SpecialKind::C(set) | SpecialKind::D(set) => {
            let mut set = set.clone();
            set.sort_unstable();
            set.dedup();
            if set.iter().any(|&i| i == 0 || i >= n) {
                return out_of_range(format!("{set:?} is not a subset of [1, {}]", n - 1));
            }
            if matches!(kind, SpecialKind::D(_)) {
                set.reverse();
            }
            let word: Vec<Generator> = set.into_iter().map(Generator::S).collect();
            return SignedPermutation::from_word(&word, n);
        }
        &SpecialKind::SigmaYoung(l) => {
            if l > n {
                return out_of_range(format!("σ_{{{l},n-l}} needs l ≤ {n}"));
            }
            let l = l as i32;
            (1..=ni).map(|k| if k <= l { l + 1 - k } else { l + 1 + ni - k }).collect()
        }
    };
    Ok(SignedPermutation::from_window_unchecked(window))
}

pub fn a(l: usize, n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::A(l), n)
}

pub fn r(i: usize, n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::R(i), n)
}

pub fn t(i: usize, n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::T(i), n)
}

pub fn longest(n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::LongestW, n)
}

pub fn sigma_n(n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::LongestSigma, n)
}

pub fn sigma_interval(i: usize, j: usize, n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::SigmaInterval(i, j), n)
}

pub fn c_set(set: &[usize], n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::C(set.to_vec()), n)
}

pub fn d_set(set: &[usize], n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::D(set.to_vec()), n)
}

pub fn sigma_young(l: usize, n: usize) -> Result<SignedPermutation> {
    special_element(&SpecialKind::SigmaYoung(l), n)
}

/// Product `r_{i_1} ⋯ r_{i_k}`.
pub fn r_product(indices: &[usize], n: usize) -> Result<SignedPermutation> {
    let mut w = SignedPermutation::identity(n)?;
    for &i in indices {
        w = &w * &r(i, n)?;
    }
    Ok(w)
}

//! The canonical factorisation `w = α · a_l · σ · β⁻¹` and minimal coset
//! representatives.

use serde::Serialize;

use crate::error::{Error, Result};

use super::perm::SignedPermutation;
use super::special::{a, r_product};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub l: usize,
    pub alpha: SignedPermutation,
    pub beta: SignedPermutation,
    pub sigma: SignedPermutation,
    /// `i_1 < ... < i_l` with `α · a_l = r_{i_1} ⋯ r_{i_l}`.
    pub r_sequence: Vec<usize>,
}

impl Decomposition {
    pub fn reassemble(&self) -> SignedPermutation {
        let n = self.alpha.rank();
        let al = a(self.l, n).expect("l ≤ n by construction");
        &(&(&self.alpha * &al) * &self.sigma) * &self.beta.inverse()
    }
}

/// `w ∈ Y_{l,n-l}`: positive, increasing on `[1,l]` and on `[l+1,n]`.
pub fn is_young_minimal(w: &SignedPermutation, l: usize) -> bool {
    let win = w.window();
    l <= win.len()
        && w.is_positive()
        && win[..l].windows(2).all(|p| p[0] < p[1])
        && win[l..].windows(2).all(|p| p[0] < p[1])
}

/// `w ∈ 𝔖_{l,n-l}`: positive and stabilising `[1,l]`.
pub fn is_young_subgroup_element(w: &SignedPermutation, l: usize) -> bool {
    let win = w.window();
    l <= win.len()
        && w.is_positive()
        && win[..l].iter().all(|&v| v as usize <= l)
}

pub fn decompose(w: &SignedPermutation) -> Decomposition {
    let n = w.rank();
    let mut r_sequence: Vec<usize> = w
        .window()
        .iter()
        .filter(|&&v| v < 0)
        .map(|&v| v.unsigned_abs() as usize)
        .collect();
    r_sequence.sort_unstable();
    let l = r_sequence.len();
    let al = a(l, n).expect("l ≤ n");
    let alpha = &r_product(&r_sequence, n).expect("indices in range") * &al;
    // u = σ β⁻¹ lies in 𝔖_n; β is u⁻¹ with both blocks sorted.
    let u = &(&al * &alpha.inverse()) * w;
    let u_inv = u.inverse();
    let mut beta_window = u_inv.window().to_vec();
    beta_window[..l].sort_unstable();
    beta_window[l..].sort_unstable();
    let beta = SignedPermutation::from_window_unchecked(beta_window);
    let sigma = &u * &beta;
    Decomposition { l, alpha, beta, sigma, r_sequence }
}

/// Splits `w = x · v` with `x ∈ X_n^{(m)}` (minimal in `x W_m`) and `v ∈ W_m`.
pub fn coset_minimal_x(
    w: &SignedPermutation,
    m: usize,
) -> Result<(SignedPermutation, SignedPermutation)> {
    let n = w.rank();
    if m == 0 || m > n {
        return Err(Error::ParameterOutOfRange(format!("coset rank m = {m} not in [1, {n}]")));
    }
    let mut window = w.window().to_vec();
    for v in window[..m].iter_mut() {
        *v = v.abs();
    }
    window[..m].sort_unstable();
    let x = SignedPermutation::from_window_unchecked(window);
    let v = &x.inverse() * w;
    Ok((x, v))
}

/// `0 < w(1) < ... < w(m)`.
pub fn in_x(w: &SignedPermutation, m: usize) -> bool {
    let win = w.window();
    m <= win.len() && win[0] > 0 && win[..m].windows(2).all(|p| p[0] < p[1])
}

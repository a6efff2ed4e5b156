//! The Hecke algebra `H_n` over `A`, in the standard basis `(T_w)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{ElemId, Generator, SignedPermutation, WeylGroup};
use crate::laurent::{Laurent, ParamSpec};

/// Which side a generator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A finite `A`-combination of basis elements indexed by group elements.
///
/// Whether the basis is `(T_w)` or `(C_w)` is up to the caller.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<ElemId, Laurent>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: ElemId) -> Self {
        Self::term(x, Laurent::one())
    }

    pub fn term(x: ElemId, c: Laurent) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &c);
        h
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (ElemId, Laurent)>) -> Self {
        let mut h = Self::zero();
        for (x, c) in pairs {
            h.add_term(x, &c);
        }
        h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElemId, &Laurent)> {
        self.terms.iter().map(|(x, c)| (*x, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: ElemId) -> Laurent {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: ElemId, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(x).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, &-c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        Self::from_terms(self.terms().map(|(x, d)| (x, d * c)))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        Self::from_terms(self.terms().map(|(x, c)| (x, f(c))))
    }

    /// Terms keyed by window, for display and export.
    pub fn to_windows(&self, group: &WeylGroup) -> Vec<(SignedPermutation, Laurent)> {
        let mut out: Vec<_> = self
            .terms()
            .map(|(x, c)| (group.element(x).clone(), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Arithmetic in `H_n` for a fixed ratio.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    group: Arc<WeylGroup>,
    spec: ParamSpec,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<WeylGroup>, spec: ParamSpec) -> Self {
        HeckeAlgebra { group, spec }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn spec(&self) -> ParamSpec {
        self.spec
    }

    /// `v_g = e^{φ(g)}`.
    pub fn v(&self, g: Generator) -> Laurent {
        Laurent::term(self.spec.weight(g), 1)
    }

    /// `v_g - v_g^{-1}`.
    pub fn v_diff(&self, g: Generator) -> Laurent {
        let w = self.spec.weight(g);
        &Laurent::term(w, 1) - &Laurent::term(-w, 1)
    }

    /// `e^{φ(w)}` for a group element.
    pub fn weight(&self, x: ElemId) -> i64 {
        let g = &self.group;
        self.spec.weight_of(g.ell_t(x), g.length(x) - g.ell_t(x))
    }

    /// `T_g · h` or `h · T_g`.
    pub fn mul_generator(&self, g: Generator, h: &HeckeElement, side: Side) -> HeckeElement {
        let diff = self.v_diff(g);
        let mut out = HeckeElement::zero();
        for (x, c) in h.terms() {
            let gx = match side {
                Side::Left => self.group.lmul(g, x),
                Side::Right => self.group.rmul(x, g),
            };
            out.add_term(gx, c);
            if self.group.length(gx) < self.group.length(x) {
                out.add_term(x, &(c * &diff));
            }
        }
        out
    }

    /// `T_g^{-1} · h` or `h · T_g^{-1}`, using `T_g^{-1} = T_g - (v_g - v_g^{-1})`.
    pub fn mul_generator_inverse(
        &self,
        g: Generator,
        h: &HeckeElement,
        side: Side,
    ) -> HeckeElement {
        self.mul_generator(g, h, side).sub(&h.scale(&self.v_diff(g)))
    }

    /// `C_g = T_g + v_g^{-1}` in the standard basis.
    pub fn c_generator(&self, g: Generator) -> HeckeElement {
        let mut h = HeckeElement::basis(self.group.lmul(g, self.group.identity()));
        h.add_term(self.group.identity(), &Laurent::term(-self.spec.weight(g), 1));
        h
    }

    /// `T_x · h`.
    pub fn mul_basis(&self, x: ElemId, h: &HeckeElement) -> HeckeElement {
        let mut acc = h.clone();
        for &g in self.group.reduced_word(x).iter().rev() {
            acc = self.mul_generator(g, &acc, Side::Left);
        }
        acc
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in a.terms() {
            out = out.add(&self.mul_basis(x, b).scale(c));
        }
        out
    }

    /// `T_{w^{-1}}^{-1} = T_{g_1}^{-1} ⋯ T_{g_k}^{-1}` for a reduced word `w = g_1 ⋯ g_k`.
    pub fn bar_basis(&self, w: ElemId) -> HeckeElement {
        let mut acc = HeckeElement::basis(self.group.identity());
        for &g in self.group.reduced_word(w).iter().rev() {
            acc = self.mul_generator_inverse(g, &acc, Side::Left);
        }
        acc
    }

    /// The semilinear involution `Σ c_w T_w ↦ Σ bar(c_w) T_{w^{-1}}^{-1}`.
    pub fn bar(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, c) in h.terms() {
            out = out.add(&self.bar_basis(w).scale(&c.bar()));
        }
        out
    }
}

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

use super::perm::{enumerate_with_bound, Generator, SignedPermutation};

/// Index of an element in [`WeylGroup`]; ids follow the lexicographic order
/// of windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// `W_n` with every element enumerated and the generator actions tabulated.
pub struct WeylGroup {
    n: usize,
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, ElemId>,
    length: Vec<u32>,
    ell_t: Vec<u32>,
    inverse: Vec<ElemId>,
    // [generator][element]
    left: Vec<Vec<ElemId>>,
    right: Vec<Vec<ElemId>>,
    by_length: Vec<Vec<ElemId>>,
    identity: ElemId,
    longest: ElemId,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup(B{}, {} elements)", self.n, self.elements.len())
    }
}

impl WeylGroup {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_bound(n, crate::DEFAULT_RANK_BOUND)
    }

    pub fn with_bound(n: usize, bound: usize) -> Result<Self> {
        let elements: Vec<_> = enumerate_with_bound(n, bound)?.collect();
        let index: HashMap<_, _> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), ElemId(i as u32)))
            .collect();
        let id = |w: &SignedPermutation| index[w];
        let length: Vec<u32> = elements.iter().map(|w| w.length() as u32).collect();
        let ell_t = elements.iter().map(|w| w.ell_t() as u32).collect();
        let inverse = elements.iter().map(|w| id(&w.inverse())).collect();
        let left = Generator::all(n)
            .map(|g| elements.iter().map(|w| id(&w.left_mul(g))).collect())
            .collect();
        let right = Generator::all(n)
            .map(|g| elements.iter().map(|w| id(&w.right_mul(g))).collect())
            .collect();
        let max_len = *length.iter().max().unwrap() as usize;
        let mut by_length = vec![Vec::new(); max_len + 1];
        for (i, &l) in length.iter().enumerate() {
            by_length[l as usize].push(ElemId(i as u32));
        }
        let identity = id(&SignedPermutation::identity(n)?);
        let longest = id(&super::special::longest(n)?);
        Ok(WeylGroup {
            n,
            elements,
            index,
            length,
            ell_t,
            inverse,
            left,
            right,
            by_length,
            identity,
            longest,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.elements.len() as u32).map(ElemId)
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn element(&self, x: ElemId) -> &SignedPermutation {
        &self.elements[x.idx()]
    }

    pub fn id(&self, w: &SignedPermutation) -> Result<ElemId> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch(w.rank(), self.n));
        }
        Ok(self.index[w])
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    pub fn longest(&self) -> ElemId {
        self.longest
    }

    pub fn length(&self, x: ElemId) -> usize {
        self.length[x.idx()] as usize
    }

    pub fn ell_t(&self, x: ElemId) -> usize {
        self.ell_t[x.idx()] as usize
    }

    pub fn inverse(&self, x: ElemId) -> ElemId {
        self.inverse[x.idx()]
    }

    pub fn lmul(&self, g: Generator, x: ElemId) -> ElemId {
        self.left[g.index()][x.idx()]
    }

    pub fn rmul(&self, x: ElemId, g: Generator) -> ElemId {
        self.right[g.index()][x.idx()]
    }

    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        self.index[&(self.element(x) * self.element(y))]
    }

    pub fn is_left_descent(&self, g: Generator, x: ElemId) -> bool {
        self.length[self.lmul(g, x).idx()] < self.length[x.idx()]
    }

    pub fn is_right_descent(&self, x: ElemId, g: Generator) -> bool {
        self.length[self.rmul(x, g).idx()] < self.length[x.idx()]
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        Generator::all(self.n)
    }

    /// Smallest left descent in the order `t < s_1 < ...`.
    pub fn first_left_descent(&self, x: ElemId) -> Option<Generator> {
        self.generators().find(|&g| self.is_left_descent(g, x))
    }

    pub fn by_length(&self) -> &[Vec<ElemId>] {
        &self.by_length
    }

    /// Reduced word obtained by stripping smallest left descents.
    pub fn reduced_word(&self, x: ElemId) -> Vec<Generator> {
        let mut word = Vec::with_capacity(self.length(x));
        let mut x = x;
        while let Some(g) = self.first_left_descent(x) {
            word.push(g);
            x = self.lmul(g, x);
        }
        word
    }

    /// Bruhat order via the left-descent recursion.
    pub fn bruhat_leq(&self, mut x: ElemId, mut y: ElemId) -> bool {
        loop {
            let (lx, ly) = (self.length(x), self.length(y));
            if lx >= ly {
                return x == y;
            }
            let s = self.first_left_descent(y).expect("y is not the identity");
            let sx = self.lmul(s, x);
            if self.length(sx) < lx {
                x = sx;
            }
            y = self.lmul(s, y);
        }
    }

    /// Membership mask of the Bruhat interval `[e, y]`, built from
    /// `[e, y] = [e, sy] ∪ s[e, sy]` along a reduced word.
    pub fn lower_ideal_mask(&self, y: ElemId) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[self.identity.idx()] = true;
        let mut members = vec![self.identity];
        for &g in self.reduced_word(y).iter().rev() {
            let extra: Vec<ElemId> = members
                .iter()
                .map(|&x| self.lmul(g, x))
                .filter(|x| !mask[x.idx()])
                .collect();
            for x in extra {
                mask[x.idx()] = true;
                members.push(x);
            }
        }
        mask
    }

    /// Elements of `[e, y]` sorted by id.
    pub fn lower_ideal(&self, y: ElemId) -> Vec<ElemId> {
        self.lower_ideal_mask(y)
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| ElemId(i as u32))
            .collect()
    }
}

//! The hyperoctahedral group `W_n` as signed permutations of `{±1, ..., ±n}`.

mod decomposition;
mod perm;
pub mod special;
mod table;

pub use decomposition::{
    coset_minimal_x, decompose, in_x, is_young_minimal, is_young_subgroup_element, Decomposition,
};
pub use perm::{bruhat_leq, enumerate, enumerate_with_bound, Generator, SignedPermutation};
pub use special::{special_element, SpecialKind};
pub use table::{ElemId, WeylGroup};

//! Exact computation of Kazhdan–Lusztig cells of type `B_n` Weyl groups
//! with unequal parameters, together with the domino-tableau and
//! generalized-Knuth partitions that are compared against them.

pub mod cells;
pub mod domino;
pub mod error;
pub mod group;
pub mod hecke;
pub mod kl;
pub mod knuth;
pub mod laurent;
pub mod verify;

pub use cells::{CellKind, CellPartition, Provenance};
pub use error::{Error, Result};
pub use group::{ElemId, Generator, SignedPermutation, WeylGroup};
pub use hecke::{HeckeAlgebra, HeckeElement, Side};
pub use kl::KLTable;
pub use laurent::{Laurent, ParamSpec, Part};
pub use verify::{check_theorem, verify_props, Engine, Property, Regime, RelationSource, TheoremCheck, VerificationReport};

/// Largest rank accepted without an explicit override.
pub const DEFAULT_RANK_BOUND: usize = 6;

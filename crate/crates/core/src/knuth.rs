//! Elementary Knuth-type relations on signed permutations and the
//! equivalence relations they generate.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::cells::{CellKind, CellPartition, Provenance};
use crate::error::{Error, Result};
use crate::group::{Generator, SignedPermutation, WeylGroup};

/// Which elementary relations generate a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationFamily {
    pub include_smile1: bool,
    pub smile2_r: Option<usize>,
    pub smile3_r: Option<usize>,
}

impl RelationFamily {
    /// Generators of equal right domino tableaux at core `r`.
    pub fn domino(r: usize) -> Self {
        RelationFamily { include_smile1: true, smile2_r: Some(r), smile3_r: Some(r) }
    }

    /// Generators of the join of the right relations at `r - 1` and `r`.
    pub fn joined(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ParameterOutOfRange("the joined relation needs r >= 1".into()));
        }
        Ok(RelationFamily { include_smile1: true, smile2_r: Some(r), smile3_r: Some(r - 1) })
    }

    fn validate(&self) -> Result<()> {
        if !self.include_smile1 && self.smile2_r.is_none() && self.smile3_r.is_none() {
            return Err(Error::ParameterOutOfRange("no relation enabled".into()));
        }
        Ok(())
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.include_smile1 {
            parts.push("K1".to_string());
        }
        if let Some(r) = self.smile2_r {
            parts.push(format!("K2^{r}"));
        }
        if let Some(r) = self.smile3_r {
            parts.push(format!("K3^{r}"));
        }
        write!(f, "knuth {}", parts.join("+"))
    }
}

/// Tag of an elementary relation, used in edge exports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationTag {
    K1,
    K2,
    K3,
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationTag::K1 => "K1",
            RelationTag::K2 => "K2",
            RelationTag::K3 => "K3",
        })
    }
}

/// `|w(1)| > |w(i)|` for `2 ≤ i ≤ r+2`, and `w(2), ..., w(r+2)` is a shuffle
/// of a positive decreasing and a negative increasing sequence. Empty for
/// `r ≥ n - 1`.
pub fn in_e(w: &SignedPermutation, r: usize) -> bool {
    let win = w.window();
    let n = win.len();
    if r + 1 >= n {
        return false;
    }
    let head = win[0].abs();
    let tail = &win[1..r + 2];
    if tail.iter().any(|v| v.abs() >= head) {
        return false;
    }
    let positives: Vec<i32> = tail.iter().copied().filter(|&v| v > 0).collect();
    let negatives: Vec<i32> = tail.iter().copied().filter(|&v| v < 0).collect();
    positives.windows(2).all(|p| p[0] > p[1]) && negatives.windows(2).all(|p| p[0] < p[1])
}

/// All `w s_i` with `w(i) < w(i-1) < w(i+1)` (`i ≥ 2`) or
/// `w(i) < w(i+2) < w(i+1)` (`i ≤ n-2`).
pub fn smile1_neighbors(w: &SignedPermutation) -> Vec<SignedPermutation> {
    let at = |i: usize| w.window()[i - 1];
    let n = w.rank();
    (1..n)
        .filter(|&i| {
            (i >= 2 && at(i) < at(i - 1) && at(i - 1) < at(i + 1))
                || (i + 2 <= n && at(i) < at(i + 2) && at(i + 2) < at(i + 1))
        })
        .map(|i| w.right_mul(Generator::S(i)))
        .collect()
}

/// All `w s_i` with `i ≤ min(r, n-1)` and `w(i) w(i+1) < 0`.
pub fn smile2_neighbors(w: &SignedPermutation, r: usize) -> Vec<SignedPermutation> {
    let win = w.window();
    let n = win.len();
    (1..=r.min(n.saturating_sub(1)))
        .filter(|&i| win[i - 1] * win[i] < 0)
        .map(|i| w.right_mul(Generator::S(i)))
        .collect()
}

/// `w t` when `w ∈ E_n^{(r)}`.
pub fn smile3_neighbor(w: &SignedPermutation, r: usize) -> Option<SignedPermutation> {
    in_e(w, r).then(|| w.right_mul(Generator::T))
}

/// Every relation edge out of `w` enabled by `family`.
pub fn relation_edges(
    w: &SignedPermutation,
    family: &RelationFamily,
) -> Vec<(SignedPermutation, RelationTag)> {
    let mut out = Vec::new();
    if family.include_smile1 {
        out.extend(smile1_neighbors(w).into_iter().map(|v| (v, RelationTag::K1)));
    }
    if let Some(r) = family.smile2_r {
        out.extend(smile2_neighbors(w, r).into_iter().map(|v| (v, RelationTag::K2)));
    }
    if let Some(r) = family.smile3_r {
        out.extend(smile3_neighbor(w, r).map(|v| (v, RelationTag::K3)));
    }
    out
}

/// Right-kind partition generated by the enabled relations.
pub fn generated_partition(group: &WeylGroup, family: &RelationFamily) -> Result<CellPartition> {
    family.validate()?;
    let mut uf = UnionFind::<usize>::new(group.order());
    for x in group.ids() {
        for (v, _) in relation_edges(group.element(x), family) {
            uf.union(x.idx(), group.id(&v)?.idx());
        }
    }
    let labels = group.ids().map(|x| (x, uf.find(x.idx())));
    Ok(CellPartition::from_labels(
        group,
        CellKind::Right,
        Provenance::Combinatorial { descriptor: family.to_string() },
        labels,
    ))
}

/// Representative (lexicographically smallest window) of each element's
/// class under `partition`.
pub fn representatives(partition: &CellPartition) -> HashMap<SignedPermutation, SignedPermutation> {
    partition
        .blocks()
        .iter()
        .flat_map(|b| b.iter().map(move |w| (w.clone(), b[0].clone())))
        .collect()
}

/// Tab-separated edge list `w, w', tag`, one line per directed relation edge.
pub fn edges_tsv(group: &WeylGroup, family: &RelationFamily) -> String {
    let mut lines: Vec<String> = Vec::new();
    for w in group.elements() {
        for (v, tag) in relation_edges(w, family) {
            lines.push(format!("{w}\t{v}\t{tag}"));
        }
    }
    let mut out = String::from("w\tw_prime\trelation\n");
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

//! Cell partitions: Kazhdan–Lusztig cells via strongly connected components
//! of the generator-multiplication graph, the `*`-operation, and partition
//! comparison.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElemId, Generator, SignedPermutation, WeylGroup};
use crate::hecke::Side;
use crate::kl::KLTable;

pub const PARTITION_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellKind {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "LR")]
    TwoSided,
}

impl CellKind {
    pub const ALL: [CellKind; 3] = [CellKind::Left, CellKind::Right, CellKind::TwoSided];

    /// The kind obtained by inverting every element.
    pub fn inverted(self) -> Self {
        match self {
            CellKind::Left => CellKind::Right,
            CellKind::Right => CellKind::Left,
            CellKind::TwoSided => CellKind::TwoSided,
        }
    }
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellKind::Left => "L",
            CellKind::Right => "R",
            CellKind::TwoSided => "LR",
        })
    }
}

impl FromStr for CellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "L" | "LEFT" => Ok(CellKind::Left),
            "R" | "RIGHT" => Ok(CellKind::Right),
            "LR" | "TWO_SIDED" | "TWOSIDED" => Ok(CellKind::TwoSided),
            _ => Err(Error::ParameterOutOfRange(format!("unknown cell kind {s:?}"))),
        }
    }
}

/// Where a partition came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    KazhdanLusztig { p: u32, q: u32 },
    Combinatorial { descriptor: String },
    Derived { descriptor: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::KazhdanLusztig { p, q } => write!(f, "KL(b/a = {p}/{q})"),
            Provenance::Combinatorial { descriptor } | Provenance::Derived { descriptor } => {
                f.write_str(descriptor)
            }
        }
    }
}

/// A partition of `W_n` into blocks, kept in canonical order: each block is
/// sorted and blocks are ordered by their smallest element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellPartition {
    pub format_version: u32,
    n: usize,
    kind: CellKind,
    provenance: Provenance,
    blocks: Vec<Vec<SignedPermutation>>,
}

impl PartialEq for CellPartition {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.kind == other.kind && self.blocks == other.blocks
    }
}

impl CellPartition {
    pub fn from_blocks(
        n: usize,
        kind: CellKind,
        provenance: Provenance,
        blocks: Vec<Vec<SignedPermutation>>,
    ) -> Self {
        let mut blocks: Vec<Vec<SignedPermutation>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        blocks.sort();
        CellPartition { format_version: PARTITION_FORMAT_VERSION, n, kind, provenance, blocks }
    }

    /// Groups the elements of `group` by equal labels.
    pub fn from_labels<L: std::hash::Hash + Eq>(
        group: &WeylGroup,
        kind: CellKind,
        provenance: Provenance,
        labels: impl IntoIterator<Item = (ElemId, L)>,
    ) -> Self {
        let mut by_label: HashMap<L, Vec<SignedPermutation>> = HashMap::new();
        for (x, label) in labels {
            by_label.entry(label).or_default().push(group.element(x).clone());
        }
        Self::from_blocks(group.rank(), kind, provenance, by_label.into_values().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn blocks(&self) -> &[Vec<SignedPermutation>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn element_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Element → block index.
    pub fn labels(&self) -> HashMap<&SignedPermutation, usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |w| (w, i)))
            .collect()
    }

    pub fn same_block(&self, x: &SignedPermutation, y: &SignedPermutation) -> bool {
        let labels = self.labels();
        matches!((labels.get(x), labels.get(y)), (Some(a), Some(b)) if a == b)
    }

    /// Checks that the blocks cover exactly the given group.
    pub fn validate(&self, group: &WeylGroup) -> Result<()> {
        let mut seen = vec![false; group.order()];
        for w in self.blocks.iter().flatten() {
            let x = group.id(w)?;
            if std::mem::replace(&mut seen[x.idx()], true) {
                return Err(Error::Integrity(format!("{w} appears twice")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Integrity("blocks do not cover the group".into()));
        }
        Ok(())
    }

    fn check_comparable(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        if self.kind != other.kind {
            return Err(Error::PartitionMismatch(format!(
                "cannot compare {} with {} partitions",
                self.kind, other.kind
            )));
        }
        if self.element_count() != other.element_count() {
            return Err(Error::PartitionMismatch("partitions cover different sets".into()));
        }
        Ok(())
    }

    /// Pairs in a common block of `self` that `other` separates; one pair per
    /// separated element, anchored at the block's smallest element.
    pub fn violations(&self, other: &Self) -> Result<Vec<(SignedPermutation, SignedPermutation)>> {
        self.check_comparable(other)?;
        let labels = other.labels();
        let mut out = Vec::new();
        for block in &self.blocks {
            let anchor = &block[0];
            let a = labels.get(anchor).ok_or_else(|| missing(anchor))?;
            for w in &block[1..] {
                if labels.get(w).ok_or_else(|| missing(w))? != a {
                    out.push((anchor.clone(), w.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Self) -> Result<bool> {
        Ok(self.violations(other)?.is_empty())
    }

    /// Same blocks, regardless of provenance.
    pub fn same_partition(&self, other: &Self) -> Result<bool> {
        self.check_comparable(other)?;
        Ok(self.blocks == other.blocks)
    }

    /// The finest partition coarser than both.
    pub fn join(&self, other: &Self, provenance: Provenance) -> Result<Self> {
        self.check_comparable(other)?;
        let mut elements: Vec<&SignedPermutation> = self.blocks.iter().flatten().collect();
        elements.sort();
        let index: HashMap<&SignedPermutation, usize> =
            elements.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut uf = UnionFind::<usize>::new(elements.len());
        for block in self.blocks.iter().chain(other.blocks.iter()) {
            for w in &block[1..] {
                uf.union(index[&block[0]], index[w]);
            }
        }
        let mut groups: HashMap<usize, Vec<SignedPermutation>> = HashMap::new();
        for (i, w) in elements.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push((*w).clone());
        }
        Ok(Self::from_blocks(self.n, self.kind, provenance, groups.into_values().collect()))
    }

    /// Applies `w ↦ w^{-1}` blockwise; left and right kinds swap.
    pub fn inverse(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(SignedPermutation::inverse).collect())
            .collect();
        Self::from_blocks(self.n, self.kind.inverted(), self.provenance.clone(), blocks)
    }

    /// Relabels the kind, e.g. to compare blocks across kinds.
    pub fn with_kind(mut self, kind: CellKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// DOT rendering with one cluster per block and the given edges.
    pub fn to_dot(&self, edges: &[(SignedPermutation, SignedPermutation)]) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "digraph cells {{\n  // format_version {PARTITION_FORMAT_VERSION}; n = {}; kind = {}; {}\n",
            self.n, self.kind, self.provenance
        ));
        for (i, block) in self.blocks.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{i} {{\n"));
            for w in block {
                out.push_str(&format!("    \"{w}\";\n"));
            }
            out.push_str("  }\n");
        }
        for (a, b) in edges {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn missing(w: &SignedPermutation) -> Error {
    Error::PartitionMismatch(format!("{w} missing from partition"))
}

/// Out-neighbours `y → x` of the preorder graph: `x ≠ y` occurs in
/// `C_g C_y` (left), `C_y C_g` (right) or either (two-sided).
pub fn kl_graph(table: &KLTable, kind: CellKind) -> Vec<Vec<ElemId>> {
    table.ensure_all();
    let group = table.group().clone();
    let sides: &[Side] = match kind {
        CellKind::Left => &[Side::Left],
        CellKind::Right => &[Side::Right],
        CellKind::TwoSided => &[Side::Left, Side::Right],
    };
    let ids: Vec<ElemId> = group.ids().collect();
    table.install(|| {
        ids.par_iter()
            .map(|&y| {
                let mut out: Vec<ElemId> = Vec::new();
                for &side in sides {
                    for g in group.generators() {
                        out.extend(
                            table
                                .c_multiply(g, y, side)
                                .into_iter()
                                .map(|(x, _)| x)
                                .filter(|&x| x != y),
                        );
                    }
                }
                out.sort();
                out.dedup();
                out
            })
            .collect()
    })
}

/// Strongly connected components of an adjacency list, as id blocks.
pub fn strongly_connected(adjacency: &[Vec<ElemId>]) -> Vec<Vec<ElemId>> {
    let mut graph = DiGraph::<(), ()>::with_capacity(adjacency.len(), 0);
    let nodes: Vec<NodeIndex> = (0..adjacency.len()).map(|_| graph.add_node(())).collect();
    for (y, targets) in adjacency.iter().enumerate() {
        for x in targets {
            graph.add_edge(nodes[y], nodes[x.idx()], ());
        }
    }
    petgraph::algo::tarjan_scc(&graph)
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| ElemId(v.index() as u32)).collect())
        .collect()
}

fn partition_from_ids(
    group: &WeylGroup,
    kind: CellKind,
    provenance: Provenance,
    blocks: Vec<Vec<ElemId>>,
) -> CellPartition {
    let blocks = blocks
        .into_iter()
        .map(|b| b.into_iter().map(|x| group.element(x).clone()).collect())
        .collect();
    CellPartition::from_blocks(group.rank(), kind, provenance, blocks)
}

/// Kazhdan–Lusztig cells. Right cells are computed from right
/// multiplication and cross-checked against inverted left cells.
pub fn kl_cells(table: &KLTable, kind: CellKind) -> Result<CellPartition> {
    let group = table.group();
    let spec = table.spec();
    let provenance = Provenance::KazhdanLusztig { p: spec.p(), q: spec.q() };
    let direct = partition_from_ids(
        group,
        kind,
        provenance.clone(),
        strongly_connected(&kl_graph(table, kind)),
    );
    if kind == CellKind::Right {
        let left = partition_from_ids(
            group,
            CellKind::Left,
            provenance,
            strongly_connected(&kl_graph(table, CellKind::Left)),
        );
        if left.inverse() != direct {
            return Err(Error::Integrity(
                "right cells disagree with inverted left cells".into(),
            ));
        }
    }
    Ok(direct)
}

/// Edges of the preorder graph as windows, sorted.
pub fn kl_edges(table: &KLTable, kind: CellKind) -> Vec<(SignedPermutation, SignedPermutation)> {
    let group = table.group();
    let mut edges: Vec<_> = kl_graph(table, kind)
        .into_iter()
        .enumerate()
        .flat_map(|(y, xs)| {
            let y = group.element(ElemId(y as u32)).clone();
            xs.into_iter().map(move |x| (y.clone(), group.element(x).clone()))
        })
        .collect();
    edges.sort();
    edges
}

fn star_descents(x: &SignedPermutation, i: usize) -> Result<(bool, bool)> {
    let n = x.rank();
    if i == 0 || i + 2 > n {
        return Err(Error::ParameterOutOfRange(format!(
            "star index {i} must lie in [1, {}]",
            n.saturating_sub(2)
        )));
    }
    Ok((x.has_right_descent(Generator::S(i)), x.has_right_descent(Generator::S(i + 1))))
}

/// `x` has exactly one right descent among `s_i, s_{i+1}`.
pub fn star_domain(x: &SignedPermutation, i: usize) -> Result<bool> {
    let (a, b) = star_descents(x, i)?;
    Ok(a != b)
}

/// The unique element of `{x s_i, x s_{i+1}}` in the star domain.
pub fn star(x: &SignedPermutation, i: usize) -> Result<SignedPermutation> {
    if !star_domain(x, i)? {
        return Err(Error::Precondition(format!("{x} is outside the domain of *_{i}")));
    }
    let mut found = [Generator::S(i), Generator::S(i + 1)]
        .into_iter()
        .map(|g| x.right_mul(g))
        .filter(|y| star_domain(y, i).unwrap_or(false));
    let y = found.next().expect("one neighbour lies in the domain");
    debug_assert!(found.next().is_none());
    Ok(y)
}

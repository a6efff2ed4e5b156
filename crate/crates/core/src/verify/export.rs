use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cells::{self, CellKind, CellPartition};
use crate::domino::{self, DominoTableau};
use crate::error::{Error, Result};
use crate::group::SignedPermutation;
use crate::knuth::{self, RelationFamily, RelationTag};
use crate::laurent::ParamSpec;

use super::{Engine, Regime, RelationSource};

pub const EXPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportTarget {
    Cells,
    Tableaux,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
    Tsv,
}

impl FromStr for ExportTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cells" => Ok(ExportTarget::Cells),
            "tableaux" => Ok(ExportTarget::Tableaux),
            "graph" => Ok(ExportTarget::Graph),
            _ => Err(Error::ParameterOutOfRange(format!("unknown export target {s:?}"))),
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            "tsv" => Ok(ExportFormat::Tsv),
            _ => Err(Error::ParameterOutOfRange(format!("unknown export format {s:?}"))),
        }
    }
}

impl fmt::Display for ExportTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportTarget::Cells => "cells",
            ExportTarget::Tableaux => "tableaux",
            ExportTarget::Graph => "graph",
        })
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Json => "json",
            ExportFormat::Dot => "dot",
            ExportFormat::Tsv => "tsv",
        })
    }
}

/// What to export. Cells and graphs come from KL cells when `ratio` is
/// set and from the combinatorial side at `r` otherwise; tableaux need `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExportRequest {
    pub what: ExportTarget,
    pub format: ExportFormat,
    pub n: usize,
    pub kind: CellKind,
    pub ratio: Option<ParamSpec>,
    pub r: Option<usize>,
    pub source: RelationSource,
}

#[derive(Serialize)]
struct TableauxFile<'a> {
    format_version: u32,
    n: usize,
    r: usize,
    tableaux: Vec<TableauEntry<'a>>,
}

#[derive(Serialize)]
struct TableauEntry<'a> {
    w: &'a SignedPermutation,
    tableau: DominoTableau,
}

#[derive(Serialize)]
struct GraphFile<'a> {
    format_version: u32,
    n: usize,
    kind: CellKind,
    spec: Option<ParamSpec>,
    r: Option<usize>,
    edges: Vec<(SignedPermutation, SignedPermutation, Option<String>)>,
    blocks: &'a [Vec<SignedPermutation>],
}

fn unsupported(req: &ExportRequest) -> Error {
    Error::ParameterOutOfRange(format!("{} cannot be exported as {}", req.what, req.format))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Renders the requested export as text. Output depends only on the request.
pub fn export(engine: &Engine, req: &ExportRequest) -> Result<String> {
    match req.what {
        ExportTarget::Cells => export_cells(engine, req),
        ExportTarget::Tableaux => export_tableaux(engine, req),
        ExportTarget::Graph => export_graph(engine, req),
    }
}

fn partition(engine: &Engine, req: &ExportRequest) -> Result<CellPartition> {
    match (req.ratio, req.r) {
        (Some(spec), _) => engine.kl_cells(req.n, spec, req.kind),
        (None, Some(r)) => engine.combinatorial(req.n, r, Regime::Open, req.kind, req.source),
        (None, None) => Err(Error::ParameterOutOfRange("cells need a ratio or r".into())),
    }
}

fn export_cells(engine: &Engine, req: &ExportRequest) -> Result<String> {
    let p = partition(engine, req)?;
    match req.format {
        ExportFormat::Json => json(&p),
        ExportFormat::Tsv => {
            let mut out = format!("# format_version {EXPORT_FORMAT_VERSION}\nblock\tw\n");
            for (i, block) in p.blocks().iter().enumerate() {
                for w in block {
                    out.push_str(&format!("{i}\t{w}\n"));
                }
            }
            Ok(out)
        }
        ExportFormat::Dot => {
            // one edge per pair of distinct blocks joined in the KL graph
            let mut edges = Vec::new();
            if let Some(spec) = req.ratio {
                let table = engine.full_table(req.n, spec)?;
                let labels = p.labels();
                let mut seen = std::collections::BTreeSet::new();
                for (y, x) in cells::kl_edges(&table, req.kind) {
                    let (a, b) = (labels[&y], labels[&x]);
                    if a != b && seen.insert((a, b)) {
                        edges.push((p.blocks()[a][0].clone(), p.blocks()[b][0].clone()));
                    }
                }
            }
            Ok(p.to_dot(&edges))
        }
    }
}

fn export_tableaux(engine: &Engine, req: &ExportRequest) -> Result<String> {
    let r = req
        .r
        .ok_or_else(|| Error::ParameterOutOfRange("tableaux need r".into()))?;
    let g = engine.group(req.n)?;
    let entries: Vec<TableauEntry> = engine.install(|| {
        use rayon::prelude::*;
        g.elements()
            .par_iter()
            .map(|w| TableauEntry { w, tableau: domino::domino_insert(w, r) })
            .collect()
    });
    match req.format {
        ExportFormat::Json => json(&TableauxFile {
            format_version: EXPORT_FORMAT_VERSION,
            n: req.n,
            r,
            tableaux: entries,
        }),
        ExportFormat::Tsv => {
            let mut out = format!("# format_version {EXPORT_FORMAT_VERSION}\nw\tshape\trows\n");
            for e in entries {
                let rows: Vec<String> = e.tableau.to_ascii().lines().map(str::to_string).collect();
                out.push_str(&format!(
                    "{}\t{:?}\t{}\n",
                    e.w,
                    e.tableau.shape().parts(),
                    rows.join(" / ")
                ));
            }
            Ok(out)
        }
        ExportFormat::Dot => Err(unsupported(req)),
    }
}

fn export_graph(engine: &Engine, req: &ExportRequest) -> Result<String> {
    let (edges, p): (Vec<(SignedPermutation, SignedPermutation, Option<RelationTag>)>, _) =
        match (req.ratio, req.r, req.source) {
            (Some(spec), _, _) => {
                let table = engine.full_table(req.n, spec)?;
                let edges = cells::kl_edges(&table, req.kind)
                    .into_iter()
                    .map(|(y, x)| (y, x, None))
                    .collect();
                (edges, engine.kl_cells(req.n, spec, req.kind)?)
            }
            (None, Some(r), RelationSource::Knuth) => {
                if req.kind != CellKind::Right {
                    return Err(Error::ParameterOutOfRange(
                        "relation graphs are right-kind only".into(),
                    ));
                }
                let g = engine.group(req.n)?;
                let family = RelationFamily::domino(r.min(req.n + 1));
                let mut edges = Vec::new();
                for w in g.elements() {
                    for (v, tag) in knuth::relation_edges(w, &family) {
                        edges.push((w.clone(), v, Some(tag)));
                    }
                }
                edges.sort();
                (edges, knuth::generated_partition(&g, &family)?)
            }
            _ => {
                return Err(Error::ParameterOutOfRange(
                    "graph export needs a ratio, or r with the knuth relation source".into(),
                ))
            }
        };
    match req.format {
        ExportFormat::Json => json(&GraphFile {
            format_version: EXPORT_FORMAT_VERSION,
            n: req.n,
            kind: req.kind,
            spec: req.ratio,
            r: if req.ratio.is_some() { None } else { req.r },
            edges: edges
                .into_iter()
                .map(|(a, b, t)| (a, b, t.map(|t| t.to_string())))
                .collect(),
            blocks: p.blocks(),
        }),
        ExportFormat::Dot => {
            let plain: Vec<_> = edges.into_iter().map(|(a, b, _)| (a, b)).collect();
            Ok(p.to_dot(&plain))
        }
        ExportFormat::Tsv => {
            let mut out = format!("# format_version {EXPORT_FORMAT_VERSION}\nfrom\tto\trelation\n");
            for (a, b, t) in edges {
                let tag = t.map(|t| t.to_string()).unwrap_or_else(|| "KL".into());
                out.push_str(&format!("{a}\t{b}\t{tag}\n"));
            }
            Ok(out)
        }
    }
}

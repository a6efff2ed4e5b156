//! Refinement checks of combinatorial cells against Kazhdan–Lusztig cells,
//! the property suites, and file exports.

mod engine;
mod export;
mod props;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cells::CellKind;
use crate::error::{Error, Result};
use crate::group::SignedPermutation;
use crate::laurent::ParamSpec;

pub use engine::{Engine, CLI_RANK_BOUND};
pub use export::{export, ExportFormat, ExportRequest, ExportTarget, EXPORT_FORMAT_VERSION};
pub use props::{verify_props, Property};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// `ra < b < (r+1)a` or `b = ra`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Open,
    Equal,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Open => "open",
            Regime::Equal => "equal",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "open" => Ok(Regime::Open),
            "equal" => Ok(Regime::Equal),
            _ => Err(Error::ParameterOutOfRange(format!("unknown regime {s:?}"))),
        }
    }
}

/// How the combinatorial partition is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationSource {
    Domino,
    Knuth,
}

impl fmt::Display for RelationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationSource::Domino => "domino",
            RelationSource::Knuth => "knuth",
        })
    }
}

impl FromStr for RelationSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "domino" => Ok(RelationSource::Domino),
            "knuth" => Ok(RelationSource::Knuth),
            _ => Err(Error::ParameterOutOfRange(format!("unknown relation source {s:?}"))),
        }
    }
}

/// One line of a property report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Finding {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Finding { label: label.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub format_version: u32,
    pub check: String,
    pub n: usize,
    pub spec: Option<ParamSpec>,
    pub kind: Option<CellKind>,
    pub descriptor: Option<String>,
    pub kl_blocks: Option<usize>,
    pub combinatorial_blocks: Option<usize>,
    pub refines: Option<bool>,
    /// Informational only.
    pub equal: Option<bool>,
    pub violations: Vec<(SignedPermutation, SignedPermutation)>,
    pub findings: Vec<Finding>,
    pub passed: bool,
    /// Kept out of the JSON so reports stay byte-identical across runs.
    #[serde(skip)]
    pub duration: Duration,
}

impl VerificationReport {
    fn new(check: impl Into<String>, n: usize) -> Self {
        VerificationReport {
            format_version: REPORT_FORMAT_VERSION,
            check: check.into(),
            n,
            spec: None,
            kind: None,
            descriptor: None,
            kl_blocks: None,
            combinatorial_blocks: None,
            refines: None,
            equal: None,
            violations: Vec::new(),
            findings: Vec::new(),
            passed: true,
            duration: Duration::ZERO,
        }
    }

    fn conclude(mut self, started: Instant) -> Self {
        if !self.findings.is_empty() {
            self.passed = self.passed && self.findings.iter().all(|f| f.passed);
        }
        self.duration = started.elapsed();
        self
    }

    /// Human-readable lines for a terminal.
    pub fn summary(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut head = format!("[{verdict}] {} n={}", self.check, self.n);
        if let Some(spec) = self.spec {
            head.push_str(&format!(" b/a={spec}"));
        }
        if let Some(kind) = self.kind {
            head.push_str(&format!(" kind={kind}"));
        }
        let mut lines = vec![head];
        if let (Some(d), Some(k), Some(c)) =
            (&self.descriptor, self.kl_blocks, self.combinatorial_blocks)
        {
            lines.push(format!(
                "  {d}: {c} blocks, KL: {k} blocks, refines: {}, equal: {}",
                self.refines.unwrap_or(false),
                self.equal.unwrap_or(false)
            ));
        }
        for (x, y) in self.violations.iter().take(5) {
            lines.push(format!("  separated: {x} ~ {y}"));
        }
        if self.violations.len() > 5 {
            lines.push(format!("  ... {} more", self.violations.len() - 5));
        }
        for f in &self.findings {
            let mark = if f.passed { "ok " } else { "BAD" };
            lines.push(format!("  {mark} {}: {}", f.label, f.detail));
        }
        lines.push(format!("  ({:.2?})", self.duration));
        lines.join("\n")
    }
}

/// A refinement check of combinatorial cells against KL cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremCheck {
    pub n: usize,
    pub r: usize,
    pub regime: Regime,
    pub kind: CellKind,
    /// Overrides the default sample ratio in the open regime.
    pub ratio: Option<ParamSpec>,
    pub source: RelationSource,
}

impl TheoremCheck {
    pub fn new(n: usize, r: usize, regime: Regime, kind: CellKind) -> Self {
        TheoremCheck { n, r, regime, kind, ratio: None, source: RelationSource::Domino }
    }

    /// `(2r+1)/2` or the given ratio, which must lie strictly between `r`
    /// and `r + 1`, in the open regime; `r/1` at the wall.
    pub fn spec(&self) -> Result<ParamSpec> {
        let r = u32::try_from(self.r)
            .map_err(|_| Error::ParameterOutOfRange(format!("r = {} is too large", self.r)))?;
        match self.regime {
            Regime::Open => {
                let spec = self.ratio.unwrap_or_else(|| ParamSpec::open_sample(r));
                if !spec.in_open_interval(r) {
                    return Err(Error::Regime(format!(
                        "b/a = {spec} is not strictly between {r} and {}",
                        r + 1
                    )));
                }
                Ok(spec)
            }
            Regime::Equal => {
                if r == 0 {
                    return Err(Error::ParameterOutOfRange("the wall regime needs r >= 1".into()));
                }
                let spec = ParamSpec::integer(r)?;
                match self.ratio {
                    Some(other) if other != spec => Err(Error::Regime(format!(
                        "the wall regime at r = {r} fixes b/a = {spec}, got {other}"
                    ))),
                    _ => Ok(spec),
                }
            }
        }
    }
}

pub fn check_theorem(engine: &Engine, check: &TheoremCheck) -> Result<VerificationReport> {
    let started = Instant::now();
    let spec = check.spec()?;
    let comb = engine.combinatorial(check.n, check.r, check.regime, check.kind, check.source)?;
    let kl = engine.kl_cells(check.n, spec, check.kind)?;
    let violations = comb.violations(&kl)?;
    let mut report = VerificationReport::new(
        format!("check-theorem {} r={}", check.regime, check.r),
        check.n,
    );
    report.spec = Some(spec);
    report.kind = Some(check.kind);
    report.descriptor = Some(comb.provenance().to_string());
    report.kl_blocks = Some(kl.len());
    report.combinatorial_blocks = Some(comb.len());
    report.refines = Some(violations.is_empty());
    report.equal = Some(comb.same_partition(&kl)?);
    report.passed = violations.is_empty();
    report.violations = violations;
    Ok(report.conclude(started))
}

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cells::{self, CellKind};
use crate::domino;
use crate::error::{Error, Result};
use crate::group::{decompose, special, ElemId, Generator, SignedPermutation, WeylGroup};
use crate::knuth::{self, RelationFamily};
use crate::laurent::{Laurent, ParamSpec};

use super::{Engine, Finding, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    /// `M^t_{x,y} ≠ 0` and `τ(μ_{x,y}) = (-1)^{l-1}` for the pairs
    /// `x = r_1⋯r_l σ_[l+1,n]`, `y = r_2⋯r_l r_n σ_[l+1,n]`, `b ≥ (n-1)a`.
    M1,
    /// `a_{l-1} σ_[l,n]` lies below `a_l σ_[l,n]` in the left preorder,
    /// `(n-2)a < b ≤ (n-1)a`.
    M2,
    /// Exact value of the coefficient from [`crate::KLTable::verify_eq51`].
    Eq51,
    /// `α a_l σ β⁻¹ ∼_L a_l σ β⁻¹` for `b ≥ (n-1)a`.
    Quasi,
    /// Left cells are preserved by the `*`-operations.
    Star,
    /// Relation-generated right partitions equal the domino ones.
    Taskin,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::M1,
        Property::M2,
        Property::Eq51,
        Property::Quasi,
        Property::Star,
        Property::Taskin,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::M1 => "M1",
            Property::M2 => "M2",
            Property::Eq51 => "EQ51",
            Property::Quasi => "QUASI",
            Property::Star => "STAR",
            Property::Taskin => "TASKIN",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown property {s:?}")))
    }
}

/// Ratio used when none is given: `(n-1)/1`, or `1/1` for `n = 1`.
pub fn default_spec(n: usize) -> ParamSpec {
    ParamSpec::integer(n.saturating_sub(1).max(1) as u32).expect("positive")
}

/// Runs one property suite. `spec` defaults to [`default_spec`]; `r`
/// restricts the relation check to one core, otherwise every `r ≤ n` runs.
pub fn verify_props(
    engine: &Engine,
    n: usize,
    which: Property,
    spec: Option<ParamSpec>,
    r: Option<usize>,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let group = engine.group(n)?;
    let mut report = VerificationReport::new(format!("verify-props {which}"), n);
    let spec = spec.unwrap_or_else(|| default_spec(n));
    if which != Property::Taskin {
        report.spec = Some(spec);
    }
    report.findings = match which {
        Property::M1 => m1(engine, &group, spec)?,
        Property::M2 => {
            report.kind = Some(CellKind::Left);
            m2(engine, &group, spec)?
        }
        Property::Eq51 => eq51(engine, &group, spec)?,
        Property::Quasi => {
            report.kind = Some(CellKind::Left);
            quasi(engine, &group, spec)?
        }
        Property::Star => {
            report.kind = Some(CellKind::Left);
            star(engine, &group, spec)?
        }
        Property::Taskin => {
            report.kind = Some(CellKind::Right);
            taskin(engine, &group, r)?
        }
    };
    Ok(report.conclude(started))
}

fn at_least(spec: ParamSpec, bound: usize, what: &str) -> Result<()> {
    if spec.cmp_ratio(bound as u64, 1).is_lt() {
        return Err(Error::Regime(format!("{what} needs b/a ≥ {bound}, got {spec}")));
    }
    Ok(())
}

fn wall_interval(spec: ParamSpec, n: usize, what: &str) -> Result<()> {
    if n < 2 || spec.cmp_ratio(n as u64 - 2, 1).is_le() || spec.cmp_ratio(n as u64 - 1, 1).is_gt()
    {
        return Err(Error::Regime(format!(
            "{what} needs {} < b/a ≤ {} (n = {n}), got {spec}",
            n.saturating_sub(2),
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

fn sign(e: usize) -> BigInt {
    if e % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn id(group: &WeylGroup, w: &SignedPermutation) -> Result<ElemId> {
    group.id(w)
}

/// The pair `(x, y)` of the nonvanishing statement for `M^t`.
pub fn m1_pair(l: usize, n: usize) -> Result<(SignedPermutation, SignedPermutation)> {
    let sigma = special::sigma_interval(l + 1, n, n)?;
    let lower: Vec<usize> = (1..=l).collect();
    let upper: Vec<usize> = (2..=l).chain(std::iter::once(n)).collect();
    Ok((
        &special::r_product(&lower, n)? * &sigma,
        &special::r_product(&upper, n)? * &sigma,
    ))
}

/// `α(I) = c_{I ∩ [1,l-1]} c_{[l,n-1] ∖ I} σ_[l,n] a_l`.
pub fn interval_element(set: &[usize], l: usize, n: usize) -> Result<SignedPermutation> {
    let low: Vec<usize> = set.iter().copied().filter(|&i| i < l).collect();
    let high: Vec<usize> = (l..n).filter(|i| !set.contains(i)).collect();
    Ok(&(&(&special::c_set(&low, n)? * &special::c_set(&high, n)?)
        * &special::sigma_interval(l, n, n)?)
        * &special::a(l, n)?)
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn m1(engine: &Engine, group: &WeylGroup, spec: ParamSpec) -> Result<Vec<Finding>> {
    let n = group.rank();
    at_least(spec, n - 1, "the M^t nonvanishing statement")?;
    let table = engine.table(n, spec)?;
    let mut out = Vec::new();
    for l in 1..n {
        let (x, y) = m1_pair(l, n)?;
        let (xi, yi) = (id(group, &x)?, id(group, &y)?);
        let m = table.m_polynomial(Generator::T, xi, yi)?;
        let tau = table.mu_polynomial(xi, yi)?.tau();
        let mut ok = !m.is_zero() && tau == sign(l - 1);
        let mut detail =
            format!("x={x} y={y} M^t={} tau(mu)={tau}", m.pretty(spec));
        let mut bad = Vec::new();
        let low: Vec<usize> = (1..l).collect();
        let family = subsets(&low);
        for set in &family {
            let z = id(group, &interval_element(set, l, n)?)?;
            let value = table.mu_polynomial(z, yi)?.tau();
            if value != sign(l - 1 - set.len()) {
                bad.push(format!("I={set:?} gives {value}"));
            }
        }
        if id(group, &interval_element(&[], l, n)?)? != xi {
            bad.push("alpha(empty) differs from x".into());
        }
        if bad.is_empty() {
            detail.push_str(&format!("; tau(mu_(alpha(I),y)) = (-1)^(l-1-|I|) for {} sets I", family.len()));
        } else {
            ok = false;
            detail.push_str(&format!("; {}", bad.join(", ")));
        }
        out.push(Finding::new(format!("l={l}"), ok, detail));
    }
    if out.is_empty() {
        out.push(Finding::new("n=1", true, "no l in [1, n-1]"));
    }
    Ok(out)
}

fn reaches(adjacency: &[Vec<ElemId>], from: ElemId, to: ElemId) -> bool {
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([from]);
    seen[from.idx()] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            return true;
        }
        for &w in &adjacency[v.idx()] {
            if !seen[w.idx()] {
                seen[w.idx()] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

fn m2(engine: &Engine, group: &WeylGroup, spec: ParamSpec) -> Result<Vec<Finding>> {
    let n = group.rank();
    wall_interval(spec, n, "the left-preorder edge statement")?;
    let table = engine.full_table(n, spec)?;
    let graph = cells::kl_graph(&table, CellKind::Left);
    let mut out = Vec::new();
    for l in 1..n {
        let sigma = special::sigma_interval(l, n, n)?;
        let x = &special::a(l - 1, n)? * &sigma;
        let y = &special::a(l, n)? * &sigma;
        let coefficient = table.verify_eq51(l)?;
        let reachable = reaches(&graph, id(group, &y)?, id(group, &x)?);
        out.push(Finding::new(
            format!("l={l}"),
            !coefficient.is_zero() && reachable,
            format!(
                "{x} <-L- {y}: coefficient in C_(n-1) C_y = {}, reachable in generator graph: {reachable}",
                coefficient.pretty(spec)
            ),
        ));
    }
    Ok(out)
}

/// The stated value: `1` at `b = (n-1)a`, else `Q^{-1} q^{n-1} + Q q^{1-n}`.
pub fn eq51_stated(n: usize, spec: ParamSpec) -> Laurent {
    if spec.cmp_ratio(n as u64 - 1, 1).is_eq() {
        Laurent::one()
    } else {
        let k = n as i64 - 1;
        &Laurent::monomial(-1, k, spec) + &Laurent::monomial(1, -k, spec)
    }
}

fn eq51(engine: &Engine, group: &WeylGroup, spec: ParamSpec) -> Result<Vec<Finding>> {
    let n = group.rank();
    wall_interval(spec, n, "the coefficient identity")?;
    let table = engine.table(n, spec)?;
    let stated = eq51_stated(n, spec);
    let mut out = Vec::new();
    for l in 1..n {
        let mu = table.verify_eq51(l)?;
        let signed = stated.scale(&sign(l - 1));
        out.push(Finding::new(
            format!("l={l}"),
            mu == stated,
            format!(
                "mu = {}, stated {}, equals (-1)^(l-1) * stated: {}",
                mu.pretty(spec),
                stated.pretty(spec),
                mu == signed
            ),
        ));
    }
    Ok(out)
}

fn quasi(engine: &Engine, group: &WeylGroup, spec: ParamSpec) -> Result<Vec<Finding>> {
    let n = group.rank();
    at_least(spec, n - 1, "the quasi-asymptotic statement")?;
    let left = engine.kl_cells(n, spec, CellKind::Left)?;
    let mut checked = vec![0usize; n + 1];
    let mut failures: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    for w in group.elements() {
        let d = decompose(w);
        let base = &(&special::a(d.l, n)? * &d.sigma) * &d.beta.inverse();
        checked[d.l] += 1;
        if !left.same_block(w, &base) {
            failures[d.l].push(format!("{w} vs {base}"));
        }
    }
    Ok((0..=n)
        .map(|l| {
            let bad = &failures[l];
            let detail = if bad.is_empty() {
                format!("{} elements in the cell of a_l sigma beta^-1", checked[l])
            } else {
                format!("{} of {} separated, e.g. {}", bad.len(), checked[l], bad[0])
            };
            Finding::new(format!("l={l}"), bad.is_empty(), detail)
        })
        .collect())
}

fn star(engine: &Engine, group: &WeylGroup, spec: ParamSpec) -> Result<Vec<Finding>> {
    let n = group.rank();
    if n < 3 {
        return Ok(vec![Finding::new("n<3", true, "no *-operation")]);
    }
    let left = engine.kl_cells(n, spec, CellKind::Left)?;
    let labels = left.labels();
    let mut out = Vec::new();
    for i in 1..=n - 2 {
        let mut domain: Vec<(usize, usize)> = Vec::new();
        for w in group.elements() {
            if cells::star_domain(w, i)? {
                let image = cells::star(w, i)?;
                domain.push((labels[w], labels[&image]));
            }
        }
        let mut bad = 0usize;
        for (a, a_star) in &domain {
            for (b, b_star) in &domain {
                if (a == b) != (a_star == b_star) {
                    bad += 1;
                }
            }
        }
        out.push(Finding::new(
            format!("i={i}"),
            bad == 0,
            format!("{} elements, {} pairs, {bad} mismatches", domain.len(), domain.len().pow(2)),
        ));
    }
    Ok(out)
}

fn taskin(engine: &Engine, group: &WeylGroup, r: Option<usize>) -> Result<Vec<Finding>> {
    let n = group.rank();
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (0..=n).collect(),
    };
    let mut out = Vec::new();
    for r in rs {
        let (dom, gen) = engine.install(|| -> Result<_> {
            Ok((
                domino::combinatorial_cells(group, r, CellKind::Right),
                knuth::generated_partition(group, &RelationFamily::domino(r))?,
            ))
        })?;
        let equal = dom.same_partition(&gen)?;
        out.push(Finding::new(
            format!("r={r} equal tableaux"),
            equal,
            format!("domino {} blocks, {} {} blocks", dom.len(), RelationFamily::domino(r), gen.len()),
        ));
        if r >= 1 {
            let family = RelationFamily::joined(r)?;
            let (joined, gen) = engine.install(|| -> Result<_> {
                Ok((
                    domino::approx_cells(group, r, CellKind::Right)?,
                    knuth::generated_partition(group, &family)?,
                ))
            })?;
            out.push(Finding::new(
                format!("r={r} joined"),
                joined.same_partition(&gen)?,
                format!("domino join {} blocks, {family} {} blocks", joined.len(), gen.len()),
            ));
        }
    }
    Ok(out)
}

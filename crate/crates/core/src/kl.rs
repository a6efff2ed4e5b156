//! Kazhdan–Lusztig basis, polynomials `p*_{x,y}`, `M^s_{x,y}` and `μ_{x,y}`.
//!
//! Columns `C_y = Σ_x p*_{x,y} T_x` are computed lazily, one Bruhat lower
//! ideal at a time, stratum by stratum in length. Every column in a stratum
//! depends only on shorter columns, so a stratum is filled in parallel.

use std::path::Path;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{special, ElemId, Generator, SignedPermutation, WeylGroup};
use crate::hecke::{HeckeAlgebra, HeckeElement, Side};
use crate::laurent::{Laurent, ParamSpec, Part};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// The nonzero `p*_{x,y}` for a fixed `y`, sorted by `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    entries: Vec<(ElemId, Laurent)>,
}

impl Column {
    pub fn entries(&self) -> &[(ElemId, Laurent)] {
        &self.entries
    }

    pub fn get(&self, x: ElemId) -> Option<&Laurent> {
        self.entries
            .binary_search_by_key(&x, |(z, _)| *z)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// Nonzero `M^s_{z,y}` for fixed `(side, s, y)`, sorted by `z`.
pub type MList = Vec<(ElemId, Laurent)>;

pub struct KLTable {
    algebra: HeckeAlgebra,
    pool: rayon::ThreadPool,
    columns: Vec<OnceLock<Arc<Column>>>,
    m_lists: Vec<OnceLock<Arc<MList>>>,
}

impl std::fmt::Debug for KLTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let done = self.columns.iter().filter(|c| c.get().is_some()).count();
        write!(f, "KLTable(B{}, {}, {done} columns)", self.group().rank(), self.spec())
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    n: usize,
    p: u32,
    q: u32,
    entries: Vec<(Vec<i32>, Vec<i32>, Laurent)>,
    checksum: String,
}

fn cache_checksum(n: usize, p: u32, q: u32, entries: &[(Vec<i32>, Vec<i32>, Laurent)]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("{CACHE_FORMAT_VERSION}:{n}:{p}:{q}:").as_bytes());
    hasher.update(serde_json::to_vec(entries).expect("entries serialize"));
    hex::encode(hasher.finalize())
}

impl KLTable {
    /// A table using `jobs` worker threads (`0` picks the rayon default).
    pub fn new(group: Arc<WeylGroup>, spec: ParamSpec, jobs: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ParameterOutOfRange(format!("thread pool: {e}")))?;
        let order = group.order();
        let gens = group.rank();
        Ok(KLTable {
            algebra: HeckeAlgebra::new(group, spec),
            pool,
            columns: (0..order).map(|_| OnceLock::new()).collect(),
            m_lists: (0..2 * gens * order).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.algebra.group()
    }

    pub fn spec(&self) -> ParamSpec {
        self.algebra.spec()
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.algebra
    }

    /// Runs `f` inside the table's thread pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    pub fn computed_columns(&self) -> usize {
        self.columns.iter().filter(|c| c.get().is_some()).count()
    }

    fn m_slot(&self, side: Side, s: Generator, y: ElemId) -> usize {
        let order = self.group().order();
        let side = match side {
            Side::Left => 0,
            Side::Right => 1,
        };
        (side * self.group().rank() + s.index()) * order + y.idx()
    }

    fn is_descent(&self, side: Side, s: Generator, x: ElemId) -> bool {
        match side {
            Side::Left => self.group().is_left_descent(s, x),
            Side::Right => self.group().is_right_descent(x, s),
        }
    }

    fn ready(&self, y: ElemId) -> &Arc<Column> {
        self.columns[y.idx()].get().expect("column computed before use")
    }

    /// Computes every column of the lower ideal of `y`.
    pub fn ensure(&self, y: ElemId) {
        if self.columns[y.idx()].get().is_some() {
            return;
        }
        let missing: Vec<ElemId> = self
            .group()
            .lower_ideal(y)
            .into_iter()
            .filter(|x| self.columns[x.idx()].get().is_none())
            .collect();
        self.fill(missing);
    }

    /// Computes every column of the group.
    pub fn ensure_all(&self) {
        let missing: Vec<ElemId> = self
            .group()
            .ids()
            .filter(|x| self.columns[x.idx()].get().is_none())
            .collect();
        self.fill(missing);
    }

    fn fill(&self, missing: Vec<ElemId>) {
        if missing.is_empty() {
            return;
        }
        let g = self.group().clone();
        let mut strata: Vec<Vec<ElemId>> = vec![Vec::new(); g.by_length().len()];
        for x in missing {
            strata[g.length(x)].push(x);
        }
        self.pool.install(|| {
            for stratum in strata.into_iter().filter(|s| !s.is_empty()) {
                let mut keys: Vec<(Generator, ElemId)> = stratum
                    .iter()
                    .filter_map(|&w| {
                        let s = g.first_left_descent(w)?;
                        Some((s, g.lmul(s, w)))
                    })
                    .collect();
                keys.sort();
                keys.dedup();
                keys.par_iter().for_each(|&(s, y)| {
                    self.m_list_ready(Side::Left, s, y);
                });
                stratum.par_iter().for_each(|&w| {
                    let col = self.compute_column(w);
                    let _ = self.columns[w.idx()].set(Arc::new(col));
                });
            }
        });
        log::debug!("{self:?}");
    }

    fn compute_column(&self, w: ElemId) -> Column {
        let g = self.group();
        let Some(s) = g.first_left_descent(w) else {
            return Column { entries: vec![(w, Laurent::one())] };
        };
        let y = g.lmul(s, w);
        let wt = self.spec().weight(s);
        let mut acc: Vec<Laurent> = vec![Laurent::zero(); g.order()];
        let mut touched: Vec<ElemId> = Vec::new();
        let mut add = |x: ElemId, c: &Laurent, acc: &mut Vec<Laurent>| {
            if acc[x.idx()].is_zero() {
                touched.push(x);
            }
            acc[x.idx()] += c;
        };
        for (x, p) in self.ready(y).entries() {
            let sx = g.lmul(s, *x);
            add(sx, p, &mut acc);
            let shift = if g.length(sx) > g.length(*x) { -wt } else { wt };
            add(*x, &p.shift(shift), &mut acc);
        }
        let m_list = self.m_list_ready(Side::Left, s, y);
        for (z, m) in m_list.iter() {
            for (x, p) in self.ready(*z).entries() {
                add(*x, &-(m * p), &mut acc);
            }
        }
        touched.sort();
        touched.dedup();
        let entries: Vec<(ElemId, Laurent)> = touched
            .into_iter()
            .filter_map(|x| {
                let c = std::mem::take(&mut acc[x.idx()]);
                (!c.is_zero()).then_some((x, c))
            })
            .collect();
        for (x, c) in &entries {
            let ok = if *x == w { *c == Laurent::one() } else { c.lies_in(Part::Neg) };
            assert!(ok, "C_{} violates the normalization at {}", g.element(w), g.element(*x));
        }
        Column { entries }
    }

    fn m_list_ready(&self, side: Side, s: Generator, y: ElemId) -> Arc<MList> {
        self.m_lists[self.m_slot(side, s, y)]
            .get_or_init(|| Arc::new(self.compute_m_list(side, s, y)))
            .clone()
    }

    fn compute_m_list(&self, side: Side, s: Generator, y: ElemId) -> MList {
        let g = self.group();
        let wt = self.spec().weight(s);
        let mut candidates: Vec<(ElemId, &Laurent)> = self
            .ready(y)
            .entries()
            .iter()
            .filter(|(z, _)| *z != y && self.is_descent(side, s, *z))
            .map(|(z, p)| (*z, p))
            .collect();
        candidates.sort_by_key(|(z, _)| (std::cmp::Reverse(g.length(*z)), *z));
        let mut found: MList = Vec::new();
        for (z, p_zy) in candidates {
            let mut f = p_zy.shift(wt);
            for (u, m_u) in &found {
                if let Some(p_zu) = self.ready(*u).get(z) {
                    f -= &(p_zu * m_u);
                }
            }
            let m = &f.truncate(Part::NonNeg) + &f.truncate(Part::Pos).bar();
            debug_assert!(m.is_bar_invariant());
            if !m.is_zero() {
                found.push((z, m));
            }
        }
        found.sort_by_key(|(z, _)| *z);
        found
    }

    /// The column `C_y`.
    pub fn column(&self, y: ElemId) -> Arc<Column> {
        self.ensure(y);
        self.ready(y).clone()
    }

    /// `p*_{x,y}`, zero unless `x ≤ y`.
    pub fn p_star(&self, x: ElemId, y: ElemId) -> Laurent {
        self.column(y).get(x).cloned().unwrap_or_default()
    }

    /// `p_{x,y} = e^{φ(y) - φ(x)} p*_{x,y}`.
    pub fn p(&self, x: ElemId, y: ElemId) -> Laurent {
        self.p_star(x, y)
            .shift(self.algebra.weight(y) - self.algebra.weight(x))
    }

    /// `C_w` in the standard basis.
    pub fn kl_basis(&self, w: ElemId) -> HeckeElement {
        HeckeElement::from_terms(self.column(w).entries().iter().cloned())
    }

    /// All nonzero `M^s_{z,y}` on the given side; requires `s` to be an
    /// ascent of `y` on that side.
    pub fn m_list(&self, side: Side, s: Generator, y: ElemId) -> Result<Arc<MList>> {
        if self.is_descent(side, s, y) {
            return Err(Error::Precondition(format!(
                "{s} is a descent of {}",
                self.group().element(y)
            )));
        }
        self.ensure(y);
        Ok(self.m_list_ready(side, s, y))
    }

    /// `M^s_{x,y}` for left multiplication; requires `sx < x < y < sy`.
    pub fn m_polynomial(&self, s: Generator, x: ElemId, y: ElemId) -> Result<Laurent> {
        let g = self.group();
        if !(g.is_left_descent(s, x) && !g.is_left_descent(s, y) && g.length(x) < g.length(y)) {
            return Err(Error::Precondition(format!(
                "need {s}x < x < y < {s}y for x = {}, y = {}",
                g.element(x),
                g.element(y)
            )));
        }
        let list = self.m_list(Side::Left, s, y)?;
        Ok(list
            .binary_search_by_key(&x, |(z, _)| *z)
            .map(|i| list[i].1.clone())
            .unwrap_or_default())
    }

    /// `μ_{x,y}`; requires `tx < x < y < ty` and `ℓ_t(x) = ℓ_t(y)`.
    pub fn mu_polynomial(&self, x: ElemId, y: ElemId) -> Result<Laurent> {
        let g = self.group();
        let t = Generator::T;
        if !(g.is_left_descent(t, x)
            && !g.is_left_descent(t, y)
            && g.length(x) < g.length(y)
            && g.ell_t(x) == g.ell_t(y))
        {
            return Err(Error::Precondition(format!(
                "need tx < x < y < ty with equal t-lengths for x = {}, y = {}",
                g.element(x),
                g.element(y)
            )));
        }
        self.ensure(y);
        let mut chain: Vec<ElemId> = self
            .ready(y)
            .entries()
            .iter()
            .map(|(z, _)| *z)
            .filter(|&z| z != y && g.is_left_descent(t, z) && self.ready(z).get(x).is_some())
            .collect();
        if !chain.contains(&x) {
            chain.push(x);
        }
        chain.sort_by_key(|z| (std::cmp::Reverse(g.length(*z)), *z));
        let mut known: Vec<(ElemId, Laurent)> = Vec::new();
        for z in chain {
            let mut mu = self.p(z, y);
            for (u, mu_u) in &known {
                if self.ready(*u).get(z).is_some() {
                    mu -= &(&self.p(z, *u) * mu_u);
                }
            }
            if z == x {
                return Ok(mu);
            }
            known.push((z, mu));
        }
        unreachable!("x is part of the chain")
    }

    /// Expansion of `C_g C_y` (left) or `C_y C_g` (right) in the `C` basis.
    pub fn c_multiply(&self, g: Generator, y: ElemId, side: Side) -> Vec<(ElemId, Laurent)> {
        let grp = self.group();
        let gy = match side {
            Side::Left => grp.lmul(g, y),
            Side::Right => grp.rmul(y, g),
        };
        if grp.length(gy) < grp.length(y) {
            let w = self.spec().weight(g);
            return vec![(y, &Laurent::term(w, 1) + &Laurent::term(-w, 1))];
        }
        self.ensure(gy);
        let mut out: Vec<(ElemId, Laurent)> = self.m_list_ready(side, g, y).as_ref().clone();
        out.push((gy, Laurent::one()));
        out.sort_by_key(|(z, _)| *z);
        out
    }

    /// Rewrites an element given in the standard basis in the `C` basis.
    pub fn to_c_basis(&self, h: &HeckeElement) -> HeckeElement {
        let g = self.group();
        let mut rest = h.clone();
        let mut out = HeckeElement::zero();
        while let Some((x, c)) = rest
            .terms()
            .max_by_key(|(x, _)| (g.length(*x), *x))
            .map(|(x, c)| (x, c.clone()))
        {
            rest = rest.sub(&self.kl_basis(x).scale(&c));
            out.add_term(x, &c);
        }
        out
    }

    /// Rewrites an element given in the `C` basis in the standard basis.
    pub fn from_c_basis(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in h.terms() {
            out = out.add(&self.kl_basis(x).scale(c));
        }
        out
    }

    /// The coefficient of `C_{a_{l-1} σ_[l,n]}` in `C_{n-1} C_{a_l σ_[l,n]}`,
    /// where `C_{l-1} = 1`, `C_l = C_{s_l}` and
    /// `C_{j+1} = C_{s_{j+1}} C_j - C_{j-1}`. Defined for
    /// `(n-2)a < b ≤ (n-1)a`.
    pub fn verify_eq51(&self, l: usize) -> Result<Laurent> {
        let g = self.group().clone();
        let n = g.rank();
        if l == 0 || l >= n {
            return Err(Error::ParameterOutOfRange(format!("l = {l} must lie in [1, {}]", n - 1)));
        }
        let spec = self.spec();
        if spec.cmp_ratio(n as u64 - 2, 1).is_le() || spec.cmp_ratio(n as u64 - 1, 1).is_gt() {
            return Err(Error::Regime(format!(
                "b/a = {spec} is outside ({}, {}]",
                n - 2,
                n - 1
            )));
        }
        let h = &self.algebra;
        let mut prev = HeckeElement::basis(g.identity());
        let mut cur = h.c_generator(Generator::S(l));
        for j in l..n - 1 {
            let next = h.mul(&h.c_generator(Generator::S(j + 1)), &cur).sub(&prev);
            prev = std::mem::replace(&mut cur, next);
        }
        let sig = special::sigma_interval(l, n, n)?;
        let y = g.id(&(&special::a(l, n)? * &sig))?;
        let target = g.id(&(&special::a(l - 1, n)? * &sig))?;
        let product = h.mul(&cur, &self.kl_basis(y));
        Ok(self.to_c_basis(&product).coeff(target))
    }

    /// Writes every computed column to a checksummed JSON file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let g = self.group();
        let mut entries = Vec::new();
        for y in g.ids() {
            if let Some(col) = self.columns[y.idx()].get() {
                for (x, p) in col.entries() {
                    entries.push((
                        g.element(*x).window().to_vec(),
                        g.element(y).window().to_vec(),
                        p.clone(),
                    ));
                }
            }
        }
        let (n, p, q) = (g.rank(), self.spec().p(), self.spec().q());
        let checksum = cache_checksum(n, p, q, &entries);
        let file = CacheFile { format_version: CACHE_FORMAT_VERSION, n, p, q, entries, checksum };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&file)?)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads columns from a file written by [`KLTable::save`]. Any mismatch
    /// or corruption is an error and leaves the table untouched.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let bytes = std::fs::read(path)?;
        let file: CacheFile =
            serde_json::from_slice(&bytes).map_err(|e| Error::Cache(format!("unreadable: {e}")))?;
        let g = self.group();
        let spec = self.spec();
        if file.format_version != CACHE_FORMAT_VERSION {
            return Err(Error::Cache(format!("format version {}", file.format_version)));
        }
        if (file.n, file.p, file.q) != (g.rank(), spec.p(), spec.q()) {
            return Err(Error::Cache(format!(
                "cache is for n = {}, ratio {}/{}",
                file.n, file.p, file.q
            )));
        }
        if cache_checksum(file.n, file.p, file.q, &file.entries) != file.checksum {
            return Err(Error::Cache("checksum mismatch".into()));
        }
        let lookup = |w: &[i32]| -> Result<ElemId> {
            SignedPermutation::new(w.to_vec())
                .and_then(|w| g.id(&w))
                .map_err(|e| Error::Cache(e.to_string()))
        };
        let mut cols: std::collections::BTreeMap<ElemId, Vec<(ElemId, Laurent)>> =
            Default::default();
        for (x, y, p) in file.entries {
            cols.entry(lookup(&y)?).or_default().push((lookup(&x)?, p));
        }
        for (y, entries) in cols.iter_mut() {
            entries.sort_by_key(|(x, _)| *x);
            let col = Column { entries: std::mem::take(entries) };
            if col.get(*y) != Some(&Laurent::one()) {
                return Err(Error::Cache(format!("column {} lacks its diagonal", g.element(*y))));
            }
            *entries = col.entries;
        }
        let count = cols.len();
        for (y, entries) in cols {
            let _ = self.columns[y.idx()].set(Arc::new(Column { entries }));
        }
        Ok(count)
    }
}

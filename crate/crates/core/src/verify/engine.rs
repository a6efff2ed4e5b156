use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use crate::cells::{self, CellKind, CellPartition, Provenance};
use crate::domino;
use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::kl::KLTable;
use crate::knuth::{self, RelationFamily};
use crate::laurent::ParamSpec;

use super::{Regime, RelationSource};

/// Largest rank the front end accepts without an override.
pub const CLI_RANK_BOUND: usize = 5;

type TableKey = (usize, u32, u32);

/// Shared state for a verification run: groups, KL tables (optionally
/// backed by an on-disk cache) and a worker pool.
pub struct Engine {
    jobs: usize,
    rank_bound: usize,
    cache_dir: Option<PathBuf>,
    pool: rayon::ThreadPool,
    groups: Mutex<BTreeMap<usize, Arc<WeylGroup>>>,
    tables: Mutex<BTreeMap<TableKey, Arc<KLTable>>>,
    persisted: Mutex<BTreeSet<TableKey>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("jobs", &self.jobs)
            .field("rank_bound", &self.rank_bound)
            .field("cache_dir", &self.cache_dir)
            .finish()
    }
}

impl Engine {
    /// `jobs = 0` lets rayon pick the thread count.
    pub fn new(jobs: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::ParameterOutOfRange(format!("thread pool: {e}")))?;
        Ok(Engine {
            jobs,
            rank_bound: CLI_RANK_BOUND,
            cache_dir: None,
            pool,
            groups: Mutex::default(),
            tables: Mutex::default(),
            persisted: Mutex::default(),
        })
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn with_rank_bound(mut self, bound: usize) -> Self {
        self.rank_bound = bound;
        self
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    pub fn group(&self, n: usize) -> Result<Arc<WeylGroup>> {
        let mut groups = self.groups.lock().expect("group map poisoned");
        if let Some(g) = groups.get(&n) {
            return Ok(g.clone());
        }
        let g = Arc::new(WeylGroup::with_bound(n, self.rank_bound)?);
        groups.insert(n, g.clone());
        Ok(g)
    }

    pub fn cache_path(&self, n: usize, spec: ParamSpec) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("kl-n{n}-p{}-q{}.json", spec.p(), spec.q())))
    }

    /// The KL table for `(n, spec)`, seeded from the cache when a valid
    /// file exists. Columns are filled on demand.
    pub fn table(&self, n: usize, spec: ParamSpec) -> Result<Arc<KLTable>> {
        let key = (n, spec.p(), spec.q());
        let mut tables = self.tables.lock().expect("table map poisoned");
        if let Some(t) = tables.get(&key) {
            return Ok(t.clone());
        }
        let table = Arc::new(KLTable::new(self.group(n)?, spec, self.jobs)?);
        if let Some(path) = self.cache_path(n, spec).filter(|p| p.exists()) {
            self.seed(&table, &path, key)?;
        }
        tables.insert(key, table.clone());
        Ok(table)
    }

    fn seed(&self, table: &KLTable, path: &Path, key: TableKey) -> Result<()> {
        match table.load(path) {
            Ok(columns) => {
                log::info!("loaded {columns} columns from {}", path.display());
                if columns == table.group().order() {
                    self.persisted.lock().expect("poisoned").insert(key);
                }
            }
            Err(Error::Cache(why)) => {
                log::warn!("ignoring cache {}: {why}; recomputing", path.display());
            }
            Err(Error::Io(e)) => {
                log::warn!("ignoring cache {}: {e}; recomputing", path.display());
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }

    /// The table with every column computed; written back to the cache the
    /// first time.
    pub fn full_table(&self, n: usize, spec: ParamSpec) -> Result<Arc<KLTable>> {
        let table = self.table(n, spec)?;
        table.ensure_all();
        let key = (n, spec.p(), spec.q());
        if let Some(path) = self.cache_path(n, spec) {
            let mut persisted = self.persisted.lock().expect("poisoned");
            if !persisted.contains(&key) {
                match table.save(&path) {
                    Ok(()) => log::info!("wrote {}", path.display()),
                    Err(e) => log::warn!("could not write {}: {e}", path.display()),
                }
                persisted.insert(key);
            }
        }
        Ok(table)
    }

    pub fn kl_cells(&self, n: usize, spec: ParamSpec, kind: CellKind) -> Result<CellPartition> {
        let table = self.full_table(n, spec)?;
        cells::kl_cells(&table, kind)
    }

    /// The combinatorial partition compared against KL cells: equal domino
    /// tableaux at `r` (open regime) or the join at `r - 1, r` (wall),
    /// either from insertion or from the elementary relations.
    pub fn combinatorial(
        &self,
        n: usize,
        r: usize,
        regime: Regime,
        kind: CellKind,
        source: RelationSource,
    ) -> Result<CellPartition> {
        let g = self.group(n)?;
        // nothing changes past r = n - 1
        let r = r.min(n + 1);
        if regime == Regime::Equal && r == 0 {
            return Err(Error::ParameterOutOfRange("the wall regime needs r >= 1".into()));
        }
        match source {
            RelationSource::Domino => self.install(|| match regime {
                Regime::Open => Ok(domino::combinatorial_cells(&g, r, kind)),
                Regime::Equal => domino::approx_cells(&g, r, kind),
            }),
            RelationSource::Knuth => {
                let family = match regime {
                    Regime::Open => RelationFamily::domino(r),
                    Regime::Equal => RelationFamily::joined(r)?,
                };
                let right = knuth::generated_partition(&g, &family)?;
                Ok(match kind {
                    CellKind::Right => right,
                    CellKind::Left => right.inverse(),
                    CellKind::TwoSided => {
                        let left = right.inverse().with_kind(CellKind::Right);
                        let prov = Provenance::Combinatorial {
                            descriptor: format!("{family}, two-sided"),
                        };
                        right.join(&left, prov)?.with_kind(CellKind::TwoSided)
                    }
                })
            }
        }
    }
}

//! HOMFLY polynomial in the `(v, z)` normalisation
//! `v^-1 P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`.

mod cache;
mod naive;
mod trace;

use std::collections::HashSet;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use dashmap::DashMap;
use serde::Serialize;

use crate::diagram::{CanonicalCode, Diagram, Sign, UNDER_IN};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly2;

pub use cache::{read_cache_file, write_cache_records};
pub use naive::{naive_homfly, NAIVE_LIMIT};
pub use trace::{detect_cancellations, skein_trace, SkeinNode, SkeinRole, SkeinTrace, TraceStats, TRACE_LIMIT};

/// Crossing to resolve next, or `None` when the diagram is descending.
///
/// Components are walked in order of their least label, each from its least
/// label; the first crossing whose first visit is on the under-strand is
/// chosen. Switching it keeps every label in place, so repeated choices
/// terminate in a descending diagram.
pub fn choose_skein_crossing(d: &Diagram) -> Option<usize> {
    let table = d.edge_table();
    let mut visited = vec![false; d.crossing_count()];
    for cycle in d.components() {
        for e in cycle {
            let h = table.head[e as usize];
            if !visited[h.crossing] {
                if h.slot == UNDER_IN {
                    return Some(h.crossing);
                }
                visited[h.crossing] = true;
            }
        }
    }
    None
}

/// Skein step: `P(L) = v^2 P(switched) + v z P(smoothed)` at a positive
/// crossing, `P(L) = v^-2 P(switched) - v^-1 z P(smoothed)` at a negative one.
pub fn skein_combine(sign: Sign, switched: &LaurentPoly2, smoothed: &LaurentPoly2) -> LaurentPoly2 {
    match sign {
        Sign::Positive => switched.shift(2, 0) + smoothed.shift(1, 1),
        Sign::Negative => switched.shift(-2, 0) - smoothed.shift(-1, 1),
    }
}

/// `delta^(k-1)` for a `k`-component unlink, `delta = (v^-1 - v) / z`.
pub fn unlink_poly(components: usize) -> LaurentPoly2 {
    assert!(components >= 1, "an unlink has at least one component");
    LaurentPoly2::delta().pow(components as u32 - 1)
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Worker threads; 1 evaluates on the calling thread.
    pub jobs: usize,
    /// Wall-clock budget for a single [`Engine::homfly`] call.
    pub budget: Option<Duration>,
    /// Diagrams with fewer crossings than this are not split across threads.
    pub parallel_threshold: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            jobs: 1,
            budget: None,
            parallel_threshold: 9,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub expansions: u64,
    pub cache_hits: u64,
    pub cache_entries: usize,
}

/// Memoised skein evaluator. Cache keys are canonical codes of simplified,
/// connected diagrams, so entries are shared across calls and threads.
pub struct Engine {
    config: EngineConfig,
    pool: Option<rayon::ThreadPool>,
    cache: DashMap<CanonicalCode, LaurentPoly2>,
    persisted: Mutex<HashSet<CanonicalCode>>,
    expansions: AtomicU64,
    cache_hits: AtomicU64,
    deadline: Mutex<Option<Instant>>,
    aborted: AtomicBool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        let pool = (config.jobs > 1).then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.jobs)
                .build()
                .expect("failed to start worker threads")
        });
        Engine {
            config,
            pool,
            cache: DashMap::new(),
            persisted: Mutex::new(HashSet::new()),
            expansions: AtomicU64::new(0),
            cache_hits: AtomicU64::new(0),
            deadline: Mutex::new(None),
            aborted: AtomicBool::new(false),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            expansions: self.expansions.load(Ordering::Relaxed),
            cache_hits: self.cache_hits.load(Ordering::Relaxed),
            cache_entries: self.cache.len(),
        }
    }

    /// Sets an absolute deadline shared by all subsequent calls, overriding
    /// the per-call budget.
    pub fn set_deadline(&self, deadline: Option<Instant>) {
        *self.deadline.lock().unwrap() = deadline;
    }

    pub fn homfly(&self, d: &Diagram) -> Result<LaurentPoly2> {
        let mut guard = self.deadline.lock().unwrap();
        let own = guard.is_none() && self.config.budget.is_some();
        if own {
            *guard = self.config.budget.map(|b| Instant::now() + b);
        }
        let deadline = *guard;
        drop(guard);
        self.aborted.store(false, Ordering::Relaxed);

        let result = match &self.pool {
            Some(pool) => pool.install(|| self.eval(d, deadline)),
            None => self.eval(d, deadline),
        };
        if own {
            *self.deadline.lock().unwrap() = None;
        }
        result
    }

    fn check_budget(&self, deadline: Option<Instant>) -> Result<()> {
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded);
        }
        if let Some(t) = deadline {
            if Instant::now() >= t {
                self.aborted.store(true, Ordering::Relaxed);
                return Err(Error::BudgetExceeded);
            }
        }
        Ok(())
    }

    fn eval(&self, d: &Diagram, deadline: Option<Instant>) -> Result<LaurentPoly2> {
        let d = d.simplify();
        let (pieces, loops) = d.split_pieces();
        let k = pieces.len() + loops as usize;
        let mut acc = unlink_poly(k);
        for piece in &pieces {
            acc = acc * self.eval_connected(piece, deadline)?;
        }
        Ok(acc)
    }

    fn eval_connected(&self, d: &Diagram, deadline: Option<Instant>) -> Result<LaurentPoly2> {
        let key = d.canonical_code();
        if let Some(p) = self.cache.get(&key) {
            self.cache_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(p.clone());
        }
        self.check_budget(deadline)?;
        self.expansions.fetch_add(1, Ordering::Relaxed);

        let p = match choose_skein_crossing(d) {
            None => unlink_poly(d.num_components()),
            Some(i) => {
                let sign = d.crossings()[i].sign;
                let switched = d.switch_crossing(i)?;
                let smoothed = d.smooth_crossing(i)?;
                let (a, b) = if self.pool.is_some() && d.crossing_count() >= self.config.parallel_threshold {
                    rayon::join(|| self.eval(&switched, deadline), || self.eval(&smoothed, deadline))
                } else {
                    (self.eval(&switched, deadline), self.eval(&smoothed, deadline))
                };
                skein_combine(sign, &a?, &b?)
            }
        };
        self.cache.insert(key, p.clone());
        Ok(p)
    }

    /// Loads `hex(code) TAB json` records; returns how many were read.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        let records = read_cache_file(path)?;
        let n = records.len();
        let mut persisted = self.persisted.lock().unwrap();
        for (code, poly) in records {
            persisted.insert(code.clone());
            self.cache.insert(code, poly);
        }
        Ok(n)
    }

    /// Appends entries not yet on disk, in code order; returns how many.
    pub fn persist_cache(&self, path: &Path) -> Result<usize> {
        let mut persisted = self.persisted.lock().unwrap();
        let mut fresh: Vec<(CanonicalCode, LaurentPoly2)> = self
            .cache
            .iter()
            .filter(|e| !persisted.contains(e.key()))
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        fresh.sort_by(|a, b| a.0.cmp(&b.0));
        write_cache_records(path, &fresh)?;
        persisted.extend(fresh.iter().map(|(c, _)| c.clone()));
        Ok(fresh.len())
    }
}

/// Convenience wrapper: a fresh single-threaded engine.
pub fn homfly(d: &Diagram) -> Result<LaurentPoly2> {
    Engine::default().homfly(d)
}

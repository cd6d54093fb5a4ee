//! Thread-parallel drivers for the core searches.
//!
//! Work is cut into a fixed number of partitions that threads claim from a
//! shared counter. Partial results are merged in partition order, so the
//! output is the same for every worker count.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use bohemian_core::search::{self, merge, merge_chain_tables, ChainTable, MaxRecord, SearchSpec};
use bohemian_core::transitions::{candidates_from_chains, Candidate, FULL_ENVELOPE_MAX_N};
use bohemian_core::{Error, Population, Result, Scalar};
use num_traits::One;

pub const WORKERS_VAR: &str = "BOHEMIAN_WORKERS";
pub const BUDGET_VAR: &str = "BOHEMIAN_BUDGET";

/// Partitions per worker; enough slack to even out uneven prefixes.
const PARTS_PER_WORKER: usize = 8;

/// Worker count from `BOHEMIAN_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// Evaluation budget from `BOHEMIAN_BUDGET`, else the core default.
pub fn default_budget() -> std::result::Result<u128, String> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{BUDGET_VAR}={v:?} is not a non-negative integer")),
        Err(_) => Ok(search::DEFAULT_BUDGET),
    }
}

/// Runs `f(part)` for every `part < parts` on up to `workers` threads and
/// returns the results in partition order.
pub fn run_parts<T: Send>(workers: usize, parts: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = workers.clamp(1, parts.max(1));
    if workers == 1 {
        return (0..parts).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..parts).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let part = next.fetch_add(1, Ordering::Relaxed);
                if part >= parts {
                    break;
                }
                let value = f(part);
                slots.lock().unwrap()[part] = Some(value);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|v| v.expect("every partition ran")).collect()
}

fn parts_for(workers: usize) -> usize {
    if workers <= 1 {
        1
    } else {
        workers * PARTS_PER_WORKER
    }
}

/// [`search::search_max`] on `workers` threads. `elapsed` is wall-clock time.
pub fn search_max(spec: &SearchSpec, workers: usize) -> Result<MaxRecord> {
    spec.check()?;
    let start = Instant::now();
    let parts = parts_for(workers);
    let records = run_parts(workers, parts, |p| search::search_partition(spec, p, parts));
    let mut merged: Option<MaxRecord> = None;
    for r in records {
        let r = r?;
        merged = Some(match merged {
            None => r,
            Some(m) => merge(m, r, spec.collect_all),
        });
    }
    let mut record = merged.expect("at least one partition");
    record.elapsed = start.elapsed();
    Ok(record)
}

/// [`search::distinct_chains`] on `workers` threads.
pub fn distinct_chains(spec: &SearchSpec, workers: usize) -> Result<ChainTable> {
    spec.check()?;
    let parts = parts_for(workers);
    let tables = run_parts(workers, parts, |p| search::distinct_chains(spec, p, parts));
    let mut out = ChainTable::new();
    for t in tables {
        out = merge_chain_tables(out, t?);
    }
    Ok(out)
}

/// Every distinct determinant polynomial of `n x n` binary patterns.
pub fn all_candidates(n: usize, budget: u128, workers: usize) -> Result<Vec<Candidate>> {
    if n > FULL_ENVELOPE_MAX_N {
        return Err(Error::DimensionTooLarge { what: "the full envelope", max: FULL_ENVELOPE_MAX_N, n });
    }
    let spec = SearchSpec::new(n, Scalar::one(), Population::binary(Scalar::one())).budget(budget);
    Ok(candidates_from_chains(n, &distinct_chains(&spec, workers)?))
}

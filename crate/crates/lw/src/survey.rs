//! Parallel classification of every non-empty subset.

use lw_core::lattice::{survey_range, ClassifyOptions, Report};
use rayon::prelude::*;

const CHUNK: u32 = 1024;

/// Worker count: `LW_WORKERS` wins over the flag, the flag over the core count.
pub fn resolve_workers(flag: Option<usize>) -> usize {
    std::env::var("LW_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .or(flag)
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Reports for masks `1..=0xffff` in mask order, whatever the worker count.
pub fn survey(opts: &ClassifyOptions, workers: usize) -> lw_core::Result<Vec<Report>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let chunks: Vec<(u16, u16)> = (0..=u16::MAX as u32 / CHUNK)
        .map(|c| ((c * CHUNK).max(1) as u16, ((c + 1) * CHUNK - 1).min(u16::MAX as u32) as u16))
        .collect();
    let parts: Vec<Vec<Report>> =
        pool.install(|| chunks.par_iter().map(|&(lo, hi)| survey_range(lo..=hi, opts)).collect::<Result<_, _>>())?;
    Ok(parts.into_iter().flatten().collect())
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Counts {
    pub separable: usize,
    pub npt: usize,
    pub ppt_entangled: usize,
    pub unknown: usize,
    pub mismatches: Vec<u16>,
}

pub fn count(reports: &[Report]) -> Counts {
    let mut c = Counts::default();
    for r in reports {
        match r.classification.tag() {
            "Separable" => c.separable += 1,
            "NptEntangled" => c.npt += 1,
            "PptEntangled" => c.ppt_entangled += 1,
            _ => c.unknown += 1,
        }
        if r.cross_check_agrees() == Some(false) {
            c.mismatches.push(r.subset.mask());
        }
    }
    c
}

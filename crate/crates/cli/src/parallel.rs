//! Theorem checking fanned out over a thread pool.

use pnasync_core::theorems::{check_net, CheckConfig, Summary};
use pnasync_core::Net;
use rayon::iter::{ParallelBridge, ParallelIterator};

use crate::format::{serialize, NetDocument};

/// Checks every net on `jobs` threads (`0` picks the number of cores).
/// Violations come back sorted by check, then net text, then detail, so
/// the result does not depend on scheduling.
pub fn check_all<I>(nets: I, config: &CheckConfig, jobs: usize) -> Summary
where
    I: Iterator<Item = Net> + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let mut summary = pool.install(|| {
        nets.par_bridge()
            .map(|net| {
                let mut s = Summary::default();
                s.add(check_net(&net, config));
                s
            })
            .reduce(Summary::default, |mut a, b| {
                a.merge(b);
                a
            })
    });
    summary.violations.sort_by_cached_key(|v| {
        let text = serialize(&NetDocument { name: String::new(), net: v.net.clone() });
        (v.check, text, v.detail.clone())
    });
    summary
}

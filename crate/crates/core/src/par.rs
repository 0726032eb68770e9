//! Range reductions over scoped threads.

use std::thread;

/// Ranges shorter than this run on the calling thread.
const SEQUENTIAL_BELOW: u64 = 4096;

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get()).min(16)
}

/// Folds every index in `0..total` and merges the per-chunk results in
/// chunk order, so the answer does not depend on `workers` whenever `merge`
/// is associative.
pub fn reduce_range<A, I, F, M>(total: u64, workers: usize, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64) + Sync,
    M: Fn(A, A) -> A,
{
    let workers = workers.max(1) as u64;
    if workers == 1 || total < SEQUENTIAL_BELOW {
        let mut acc = init();
        for i in 0..total {
            fold(&mut acc, i);
        }
        return acc;
    }
    let chunk = total.div_ceil(workers);
    let parts: Vec<A> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (init, fold) = (&init, &fold);
                s.spawn(move || {
                    let mut acc = init();
                    for i in w * chunk..((w + 1) * chunk).min(total) {
                        fold(&mut acc, i);
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    parts.into_iter().reduce(merge).unwrap_or_else(init)
}

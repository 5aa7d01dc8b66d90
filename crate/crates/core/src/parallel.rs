//! Deterministic scoped-thread helpers.
//!
//! Scans are partitioned into contiguous chunks and the per-chunk results are
//! combined with an associative, commutative reduction, so the outcome is
//! identical for any worker count.

/// Applies `map` to every index in `0..len` and folds the results with
/// `reduce`, splitting the range over `workers` threads.
pub fn map_reduce<T, M, R>(len: usize, workers: usize, identity: T, map: M, reduce: R) -> T
where
    T: Send + Clone,
    M: Fn(usize) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let workers = workers.max(1).min(len.max(1));
    if workers == 1 {
        let mut acc = identity;
        for i in 0..len {
            acc = reduce(acc, map(i));
        }
        return acc;
    }
    let chunk = len.div_ceil(workers);
    let mut results: Vec<T> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let identity = identity.clone();
                let map = &map;
                let reduce = &reduce;
                scope.spawn(move || {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(len);
                    let mut acc = identity;
                    for i in lo..hi {
                        acc = reduce(acc, map(i));
                    }
                    acc
                })
            })
            .collect();
        for h in handles {
            results.push(h.join().expect("worker panicked"));
        }
    });
    let mut acc = identity;
    for r in results {
        acc = reduce(acc, r);
    }
    acc
}

/// Maximum of `map(i)` over `0..len`, or `floor` if the range is empty.
pub fn par_max<M>(len: usize, workers: usize, floor: i64, map: M) -> i64
where
    M: Fn(usize) -> i64 + Sync,
{
    map_reduce(len, workers, floor, map, i64::max)
}

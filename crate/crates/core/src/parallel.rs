//! Deterministic fork-join helper.
//!
//! Work is cut into jobs whose boundaries depend only on the problem size,
//! never on the thread count. Workers pull job indices from a shared atomic
//! counter and results are returned in job order, so any later fold sees the
//! same sequence regardless of scheduling. Exact integer reductions are
//! order-independent anyway; floating-point folds rely on this ordering for
//! bit-identical output.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

/// Runs `job(i)` for `i` in `0..n_jobs` on up to `threads` workers and
/// returns the results indexed by job.
pub fn run_jobs<T, F>(n_jobs: usize, threads: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = threads.max(1).min(n_jobs);
    if workers <= 1 {
        return (0..n_jobs).map(job).collect();
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, T)>();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let next = &next;
            let job = &job;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n_jobs {
                    break;
                }
                if tx.send((i, job(i))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut slots: Vec<Option<T>> = (0..n_jobs).map(|_| None).collect();
        for (i, value) in rx {
            slots[i] = Some(value);
        }
        slots
            .into_iter()
            .map(|s| s.expect("job completed"))
            .collect()
    })
}

/// Splits `0..n` into fixed-size chunks and returns their bounds.
/// The chunk size is a pure function of `n`, keeping reductions
/// schedule-independent.
pub fn fixed_chunks(n: u64, target_chunk: u64) -> Vec<(u64, u64)> {
    let chunk = target_chunk.max(1);
    let mut out = Vec::new();
    let mut lo = 0;
    while lo < n {
        let hi = (lo + chunk).min(n);
        out.push((lo, hi));
        lo = hi;
    }
    if out.is_empty() {
        out.push((0, 0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_are_in_job_order() {
        for threads in [1, 3, 8] {
            let out = run_jobs(37, threads, |i| i * i);
            assert_eq!(out, (0..37).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn chunk_geometry_ignores_thread_count() {
        let a = fixed_chunks(1000, 64);
        assert_eq!(a.first(), Some(&(0, 64)));
        assert_eq!(a.last(), Some(&(960, 1000)));
        assert_eq!(a.iter().map(|(l, h)| h - l).sum::<u64>(), 1000);
    }
}

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30; // 4 GiB

/// Shared progress counters for long enumerations.
///
/// Workers bump `done`; a front end may poll and render however it likes.
/// Purely advisory, never consulted for control flow.
#[derive(Debug, Default)]
pub struct Progress {
    done: AtomicU64,
    total: AtomicU64,
}

impl Progress {
    pub fn begin(&self, total: u64) {
        self.total.store(total, Ordering::Relaxed);
        self.done.store(0, Ordering::Relaxed);
    }

    pub fn advance(&self, amount: u64) {
        self.done.fetch_add(amount, Ordering::Relaxed);
    }

    /// Snapshot of (done, total).
    pub fn snapshot(&self) -> (u64, u64) {
        (
            self.done.load(Ordering::Relaxed),
            self.total.load(Ordering::Relaxed),
        )
    }
}

/// Execution knobs shared by every counting routine.
///
/// Results are bit-identical for any `threads` value: parallel work is cut
/// into chunks whose geometry depends only on the problem, and partial
/// results are folded in a canonical order.
#[derive(Debug, Clone)]
pub struct ComputeConfig {
    pub threads: usize,
    pub memory_budget_bytes: u64,
    pub progress: Arc<Progress>,
}

impl ComputeConfig {
    pub fn new(threads: usize, memory_budget_bytes: u64) -> Self {
        ComputeConfig {
            threads: threads.max(1),
            memory_budget_bytes,
            progress: Arc::new(Progress::default()),
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Checks an estimated allocation against the budget.
    pub(crate) fn charge(&self, needed_bytes: u64, hint: &'static str) -> crate::Result<()> {
        if needed_bytes > self.memory_budget_bytes {
            Err(crate::Error::ResourceExceeded {
                needed_bytes,
                budget_bytes: self.memory_budget_bytes,
                hint,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for ComputeConfig {
    fn default() -> Self {
        let threads = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        ComputeConfig::new(threads, DEFAULT_MEMORY_BUDGET)
    }
}

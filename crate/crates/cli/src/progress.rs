//! Stderr progress ticker for long-running commands: a line every five
//! seconds, suppressed by --quiet.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::{Duration, Instant};

use vmvt_core::config::Progress;

pub struct Ticker {
    stop: Arc<AtomicBool>,
    handle: Option<JoinHandle<()>>,
}

impl Ticker {
    pub fn start(progress: Arc<Progress>, quiet: bool) -> Ticker {
        let stop = Arc::new(AtomicBool::new(false));
        let handle = if quiet {
            None
        } else {
            let stop = stop.clone();
            Some(std::thread::spawn(move || {
                let started = Instant::now();
                let mut last_report = Instant::now();
                while !stop.load(Ordering::Relaxed) {
                    std::thread::sleep(Duration::from_millis(200));
                    if started.elapsed() >= Duration::from_secs(5)
                        && last_report.elapsed() >= Duration::from_secs(5)
                    {
                        let (done, total) = progress.snapshot();
                        if total > 0 {
                            eprintln!(
                                "... {done}/{total} ({:.1}%) after {:.0?}",
                                100.0 * done as f64 / total as f64,
                                started.elapsed()
                            );
                        }
                        last_report = Instant::now();
                    }
                }
            }))
        };
        Ticker { stop, handle }
    }
}

impl Drop for Ticker {
    fn drop(&mut self) {
        self.stop.store(true, Ordering::Relaxed);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

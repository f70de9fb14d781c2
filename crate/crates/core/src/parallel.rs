//! Worker pool shared by the pair scans.
//!
//! `TIGHT_EMBED_THREADS` bounds the number of workers; unset or invalid
//! values fall back to rayon's default.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "TIGHT_EMBED_THREADS";

static POOL: OnceLock<ThreadPool> = OnceLock::new();

fn configured_threads() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub fn pool() -> &'static ThreadPool {
    POOL.get_or_init(|| {
        let mut builder = ThreadPoolBuilder::new().thread_name(|i| format!("tight-embed-{i}"));
        if let Some(n) = configured_threads() {
            builder = builder.num_threads(n);
        }
        builder.build().expect("failed to build worker pool")
    })
}

/// Run `op` inside the bounded pool.
pub fn install<R: Send>(op: impl FnOnce() -> R + Send) -> R {
    pool().install(op)
}

/// All unordered index pairs `(i, j)` with `i < j`, in lexicographic order.
pub fn unordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

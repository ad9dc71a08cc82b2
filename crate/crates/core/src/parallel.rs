//! Row-blocked parallel maps with results independent of the thread count.
//!
//! Every output element is computed by exactly one closure call, so splitting
//! the index range across threads never changes a floating-point result.

use std::sync::atomic::{AtomicUsize, Ordering};

static THREADS: AtomicUsize = AtomicUsize::new(0);

/// Environment variable read once for the default worker count.
pub const THREADS_ENV: &str = "ZFNET_THREADS";

/// Worker threads used by Gram assembly, probing and network evaluation.
///
/// Defaults to the value of `ZFNET_THREADS`, or 1 when unset.
pub fn threads() -> usize {
    match THREADS.load(Ordering::Relaxed) {
        0 => {
            let n = std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&n| n > 0)
                .unwrap_or(1);
            THREADS.store(n, Ordering::Relaxed);
            n
        }
        n => n,
    }
}

pub fn set_threads(n: usize) {
    THREADS.store(n.max(1), Ordering::Relaxed);
}

/// Fills `out[i] = f(i)`.
pub(crate) fn fill<F>(out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync,
{
    let workers = threads().min(out.len().max(1));
    if workers <= 1 || out.len() < 64 {
        for (i, o) in out.iter_mut().enumerate() {
            *o = f(i);
        }
        return;
    }
    let chunk = out.len().div_ceil(workers);
    std::thread::scope(|s| {
        for (b, block) in out.chunks_mut(chunk).enumerate() {
            let f = &f;
            s.spawn(move || {
                for (i, o) in block.iter_mut().enumerate() {
                    *o = f(b * chunk + i);
                }
            });
        }
    });
}

/// Fills the rows of a row-major `rows × cols` buffer: `row(i, &mut out[i*cols..])`.
pub(crate) fn fill_rows<F>(out: &mut [f64], cols: usize, row: F)
where
    F: Fn(usize, &mut [f64]) + Sync,
{
    if cols == 0 {
        return;
    }
    let rows = out.len() / cols;
    let workers = threads().min(rows.max(1));
    if workers <= 1 {
        for (i, r) in out.chunks_mut(cols).enumerate() {
            row(i, r);
        }
        return;
    }
    let per = rows.div_ceil(workers);
    std::thread::scope(|s| {
        for (b, block) in out.chunks_mut(per * cols).enumerate() {
            let row = &row;
            s.spawn(move || {
                for (i, r) in block.chunks_mut(cols).enumerate() {
                    row(b * per + i, r);
                }
            });
        }
    });
}

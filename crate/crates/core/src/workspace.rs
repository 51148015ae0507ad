//! Per-thread heap accounting for measuring construction workspace.
//!
//! Install [`CountingAllocator`] as the `#[global_allocator]` of a binary or
//! test target, then wrap the code of interest in [`measure`].

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;
use std::sync::atomic::{AtomicBool, Ordering};

pub struct CountingAllocator;

static INSTALLED: AtomicBool = AtomicBool::new(false);

thread_local! {
    static LIVE: Cell<isize> = const { Cell::new(0) };
    static PEAK: Cell<isize> = const { Cell::new(0) };
}

fn record(delta: isize) {
    let _ = LIVE.try_with(|live| {
        let now = live.get() + delta;
        live.set(now);
        let _ = PEAK.try_with(|peak| {
            if now > peak.get() {
                peak.set(now);
            }
        });
    });
}

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        INSTALLED.store(true, Ordering::Relaxed);
        let p = System.alloc(layout);
        if !p.is_null() {
            record(layout.size() as isize);
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        INSTALLED.store(true, Ordering::Relaxed);
        let p = System.alloc_zeroed(layout);
        if !p.is_null() {
            record(layout.size() as isize);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        record(-(layout.size() as isize));
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let p = System.realloc(ptr, layout, new_size);
        if !p.is_null() {
            record(new_size as isize - layout.size() as isize);
        }
        p
    }
}

/// Whether [`CountingAllocator`] is the active global allocator.
pub fn is_installed() -> bool {
    // make sure at least one allocation has gone through since startup
    drop(Box::new(0u8));
    INSTALLED.load(Ordering::Relaxed)
}

/// Runs `f` and reports the peak number of heap bytes it held at once on
/// this thread, above what was live when it started. `None` when the
/// counting allocator is not installed.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, Option<usize>) {
    let installed = is_installed();
    let base = LIVE.with(Cell::get);
    let saved_peak = PEAK.with(|p| p.replace(base));
    let out = f();
    let peak = PEAK.with(|p| p.replace(saved_peak.max(p.get())));
    let bytes = (peak - base).max(0) as usize;
    (out, installed.then_some(bytes))
}

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Evaluates `f(0..n)` on up to `threads` worker threads; the output order
/// is the index order regardless of scheduling.
pub fn map_indexed<T: Send>(n: usize, threads: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = threads.clamp(1, n.max(1));
    if threads == 1 {
        return (0..n).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let v = f(i);
                slots.lock().expect("no poisoning")[i] = Some(v);
            });
        }
    });
    slots.into_inner().expect("no poisoning").into_iter().map(|v| v.expect("filled")).collect()
}

/// Default worker count: the `CHOW_THREADS` environment variable, else the
/// available parallelism.
pub fn default_threads() -> usize {
    std::env::var("CHOW_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_stable() {
        assert_eq!(map_indexed(10, 3, |i| i * i), (0..10).map(|i| i * i).collect::<Vec<_>>());
        assert_eq!(map_indexed(0, 4, |i| i), Vec::<usize>::new());
    }
}

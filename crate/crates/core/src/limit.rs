//! Bounded concurrency for provider calls.

use std::sync::{Condvar, Mutex};

/// Counting semaphore. `run` blocks while `max` calls are in flight.
#[derive(Debug)]
pub struct Limiter {
    max: usize,
    active: Mutex<usize>,
    freed: Condvar,
}

impl Limiter {
    pub fn new(max: usize) -> Self {
        Limiter {
            max: max.max(1),
            active: Mutex::new(0),
            freed: Condvar::new(),
        }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn run<T>(&self, f: impl FnOnce() -> T) -> T {
        {
            let mut active = self.active.lock().expect("limiter poisoned");
            while *active >= self.max {
                active = self.freed.wait(active).expect("limiter poisoned");
            }
            *active += 1;
        }
        struct Release<'a>(&'a Limiter);
        impl Drop for Release<'_> {
            fn drop(&mut self) {
                let mut active = self.0.active.lock().expect("limiter poisoned");
                *active -= 1;
                self.0.freed.notify_one();
            }
        }
        let _release = Release(self);
        f()
    }
}

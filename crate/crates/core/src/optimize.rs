//! Deterministic multi-start driver.
//!
//! Restarts are evaluated in fixed-size chunks. Inside a chunk they may run
//! on a rayon pool; results are merged in restart order, keeping the first
//! strictly smaller objective, so serial and parallel runs return the same
//! restart. The driver stops after the first chunk whose running best is
//! below the early-stop threshold.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const CHUNK: usize = 8;

/// Search budget and reproducibility controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    /// Number of random restarts.
    pub budget: usize,
    pub seed: u64,
    /// Worker threads for restarts; 0 runs serially.
    #[serde(skip)]
    pub threads: usize,
}

impl SearchOptions {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            budget,
            seed,
            threads: 0,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidParameter("search budget must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Best<T> {
    pub value: f64,
    pub point: T,
    pub restart: usize,
    pub restarts_run: usize,
}

pub(crate) fn multistart<T, F>(opts: &SearchOptions, stop_below: f64, run: F) -> Best<T>
where
    T: Send,
    F: Fn(usize) -> (f64, T) + Sync + Send,
{
    assert!(opts.budget >= 1);
    let pool = (opts.threads > 0).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool")
    });

    let mut best: Option<Best<T>> = None;
    let mut start = 0;
    while start < opts.budget {
        let end = (start + CHUNK).min(opts.budget);
        let results: Vec<(f64, T)> = match &pool {
            Some(pool) => pool.install(|| (start..end).into_par_iter().map(&run).collect()),
            None => (start..end).map(&run).collect(),
        };
        for (offset, (value, point)) in results.into_iter().enumerate() {
            let value = if value.is_nan() { f64::INFINITY } else { value };
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(Best {
                    value,
                    point,
                    restart: start + offset,
                    restarts_run: 0,
                });
            }
        }
        start = end;
        if best.as_ref().is_some_and(|b| b.value < stop_below) {
            break;
        }
    }
    let mut best = best.expect("budget >= 1");
    best.restarts_run = start;
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serial_and_parallel_agree() {
        let f = |r: usize| (((r * 7919) % 23) as f64, r);
        let a = multistart(&SearchOptions::new(50, 0), f64::NEG_INFINITY, f);
        let b = multistart(
            &SearchOptions::new(50, 0).with_threads(4),
            f64::NEG_INFINITY,
            f,
        );
        assert_eq!((a.value, a.restart), (b.value, b.restart));
        assert_eq!(a.restarts_run, 50);
        // ties go to the earliest restart
        assert_eq!(a.value, 0.0);
        assert_eq!(a.restart, 0);
    }

    #[test]
    fn early_stop_after_chunk() {
        let f = |r: usize| (if r == 3 { -1.0 } else { 1.0 }, ());
        let b = multistart(&SearchOptions::new(100, 0), 0.0, f);
        assert_eq!(b.restart, 3);
        assert_eq!(b.restarts_run, CHUNK);
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(SearchOptions::new(0, 1).validate().is_err());
    }
}

//! Execution strategy for independent work items. With the `parallel`
//! feature disabled every strategy runs sequentially.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Applies `f` to every item; output order matches input order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }

    /// `map` over an integer range.
    pub fn map_range<R, F>(self, range: std::ops::Range<i64>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(i64) -> R + Sync + Send,
    {
        self.map(range.collect(), f)
    }

    /// Runs `f` inside a thread pool limited to `jobs` workers (0 = default).
    pub fn with_jobs<R: Send>(self, jobs: usize, f: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel && jobs > 0 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(f);
            }
        }
        let _ = jobs;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_strategies_agree() {
        let items: Vec<u64> = (0..50).collect();
        let a = Exec::Sequential.map(items.clone(), |x| x * x);
        let b = Exec::Parallel.map(items, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(
            Exec::Parallel.with_jobs(2, || Exec::Parallel.map_range(0..4, |t| t + 1)),
            vec![1, 2, 3, 4]
        );
    }
}

//! Execution strategy for data-parallel loops. Results always come back in
//! input order, so parallel and sequential runs agree exactly.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and runs
    /// sequentially otherwise.
    #[default]
    Parallel,
}

impl Exec {
    /// `items.map(f)`, preserving order.
    pub fn map<T, R, G>(self, items: &[T], f: G) -> Vec<R>
    where
        T: Sync,
        R: Send,
        G: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, G: Fn(&T) -> R + Sync + Send>(items: &[T], f: G) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, G: Fn(&T) -> R + Sync + Send>(items: &[T], f: G) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Cap the global pool at `n` threads; a no-op without the `parallel`
/// feature or when the pool is already initialized.
pub fn init_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..100).collect();
        let a = Exec::Parallel.map(&xs, |x| x * x);
        let b = Exec::Sequential.map(&xs, |x| x * x);
        assert_eq!(a, b);
    }
}

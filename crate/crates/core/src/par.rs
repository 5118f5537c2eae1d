//! Sequential or rayon-backed iteration behind one switch.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How exhaustive sweeps are executed.
///
/// `Parallel` runs on the rayon global pool when the crate is built with the
/// `parallel` feature, and degrades to sequential iteration without it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// First (lowest index) `Some` produced by `f` over `range`.
    pub(crate) fn find_first<R, F>(self, range: Range<usize>, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().find_map_first(f),
            _ => range.into_iter().find_map(f),
        }
    }

    /// Ordered map over `range`.
    pub(crate) fn map<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).collect(),
            _ => range.into_iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(exec.find_first(0..1000, |i| (i % 97 == 96).then_some(i)), Some(96));
            assert_eq!(exec.map(0..5, |i| i * i), vec![0, 1, 4, 9, 16]);
        }
    }
}

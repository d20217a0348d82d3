//! Thin switch between rayon and plain iterators.

/// How a data-parallel loop is executed. `Parallel` degrades to sequential
/// execution when the crate is built without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

pub(crate) fn map_indices<R, F>(exec: Execution, n: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// First index (in index order) for which `f` yields `Some`, together with
/// the value. Deterministic regardless of execution mode.
pub(crate) fn find_first<R, F>(exec: Execution, n: u64, f: F) -> Option<(u64, R)>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().filter_map(|i| f(i).map(|r| (i, r))).find_first(|_| true)
        }
        _ => (0..n).find_map(|i| f(i).map(|r| (i, r))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = map_indices(Execution::Parallel, 100, |i| i * i);
        let b = map_indices(Execution::Sequential, 100, |i| i * i);
        assert_eq!(a, b);
        let pick = |i: u64| (i % 7 == 3 && i > 10).then_some(i * 2);
        assert_eq!(find_first(Execution::Parallel, 100, pick), Some((17, 34)));
        assert_eq!(find_first(Execution::Sequential, 100, pick), Some((17, 34)));
        assert_eq!(find_first(Execution::Sequential, 5, pick), None);
    }
}

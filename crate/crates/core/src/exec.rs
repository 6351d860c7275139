//! Execution strategy for the data-parallel loops.
//!
//! Word enumeration, Hutchinson expansion and containment sweeps are all
//! embarrassingly parallel maps over index ranges. With the `parallel`
//! feature (on by default) they run on the rayon global pool; without it,
//! or with [`Exec::Sequential`], they run on the calling thread. Both
//! paths produce identical output in identical order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Selects how inner loops are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

// Below this many items the rayon split overhead dominates.
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: usize = 1024;

impl Exec {
    /// Maps `f` over `0..len`, preserving index order.
    pub fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                if len < MIN_PARALLEL_LEN {
                    (0..len).map(f).collect()
                } else {
                    (0..len).into_par_iter().map(f).collect()
                }
            }
        }
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }

    /// Maximum of `f` over a slice, `f64::NEG_INFINITY` when empty.
    pub fn max_of<T, F>(self, items: &[T], f: F) -> f64
    where
        T: Sync,
        F: Fn(&T) -> f64 + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).fold(f64::NEG_INFINITY, f64::max),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                if items.len() < MIN_PARALLEL_LEN {
                    items.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
                } else {
                    items
                        .par_iter()
                        .map(f)
                        .reduce(|| f64::NEG_INFINITY, f64::max)
                }
            }
        }
    }

    pub fn is_parallel(self) -> bool {
        self != Exec::Sequential
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_default_agree() {
        let seq = Exec::Sequential.map_range(5000, |i| (i * i) as f64);
        let def = Exec::default().map_range(5000, |i| (i * i) as f64);
        assert_eq!(seq, def);
        let v: Vec<f64> = (0..3000).map(|i| ((i * 37) % 1001) as f64).collect();
        assert_eq!(
            Exec::Sequential.max_of(&v, |x| *x),
            Exec::default().max_of(&v, |x| *x)
        );
        assert_eq!(
            Exec::default().max_of(&[] as &[f64], |x| *x),
            f64::NEG_INFINITY
        );
    }
}

//! Data-parallel maps over independent items. With the `parallel` feature
//! the work is spread over the rayon pool; without it every map runs on the
//! calling thread. Results are always in input order.

use crate::reduction::{normal_form, NormalForm, Strategy};
use crate::syntax::Term;

/// Maps `f` over `items` on the calling thread.
pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_seq(items, f)
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Normal forms of many terms with the same strategy and fuel.
pub fn normalize_all(terms: &[Term], strategy: Strategy, fuel: usize, eta: bool) -> Vec<NormalForm> {
    map(terms, |t| normal_form(t, strategy, fuel, eta))
}

pub fn normalize_all_seq(terms: &[Term], strategy: Strategy, fuel: usize, eta: bool) -> Vec<NormalForm> {
    map_seq(terms, |t| normal_form(t, strategy, fuel, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{GenConfig, TermGen};
    use crate::reduction::DEFAULT_FUEL;

    #[test]
    fn parallel_matches_sequential() {
        let mut g = TermGen::new(9, GenConfig::default());
        let terms: Vec<Term> = (0..30).map(|_| g.typed(true).term).collect();
        let s = Strategy::Random(4);
        assert_eq!(normalize_all(&terms, s, DEFAULT_FUEL, false), normalize_all_seq(&terms, s, DEFAULT_FUEL, false));
    }
}

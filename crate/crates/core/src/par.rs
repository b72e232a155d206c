//! Data-parallel loop helpers. With the `parallel` feature the loops run on
//! the rayon pool; without it they run sequentially with identical results.

use crate::report::Tally;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when validators fan out over the rayon pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Runs `body(i, tally)` for every `i < n` and folds the tallies.
pub(crate) fn tally<F>(n: usize, cap: usize, body: F) -> Tally
where
    F: Fn(usize, &mut Tally) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .fold(
                || Tally::new(cap),
                |mut t, i| {
                    body(i, &mut t);
                    t
                },
            )
            .reduce(|| Tally::new(cap), Tally::merge)
            .finish()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut t = Tally::new(cap);
        for i in 0..n {
            body(i, &mut t);
        }
        t.finish()
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

//! Data-parallel kernels with a sequential fallback.
//!
//! With the `parallel` feature (default) the work is spread over a rayon
//! pool; without it the same algorithms run on one thread. Results are
//! bitwise identical either way: element maps preserve input order, and
//! floating-point reductions always sum fixed 4096-element chunks first
//! and then fold the partials in chunk order, so the grouping of the
//! non-associative additions does not depend on the execution strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::hash::{hash, Digest};
use crate::Result;

/// Additions per partial in the chunked reductions.
const CHUNK: usize = 4096;

/// Apply `f` to every element, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
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

/// Apply a fallible `f` to every element, preserving order; the first
/// error (in input order) wins.
pub fn try_map_slice<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        // collect per-element results first so the reported error does not
        // depend on scheduling
        let results: Vec<Result<U>> = items.par_iter().map(f).collect();
        results.into_iter().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

fn chunk_sum(chunk: &[f64]) -> f64 {
    let mut acc = 0.0;
    for v in chunk {
        acc += v;
    }
    acc
}

/// Sum with strategy-independent grouping: 4096-element partials folded in
/// chunk order.
pub fn sum_f64(values: &[f64]) -> f64 {
    let partials: Vec<f64> = {
        #[cfg(feature = "parallel")]
        {
            values.par_chunks(CHUNK).map(chunk_sum).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            values.chunks(CHUNK).map(chunk_sum).collect()
        }
    };
    chunk_sum(&partials)
}

/// Sum of `f(x)` over the slice, with the same fixed grouping as
/// [`sum_f64`].
pub fn sum_f64_by<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    let per_chunk = |chunk: &[T]| {
        let mut acc = 0.0;
        for item in chunk {
            acc += f(item);
        }
        acc
    };
    let partials: Vec<f64> = {
        #[cfg(feature = "parallel")]
        {
            items.par_chunks(CHUNK).map(per_chunk).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            items.chunks(CHUNK).map(per_chunk).collect()
        }
    };
    chunk_sum(&partials)
}

/// Hash every message under one spec, preserving input order.
pub fn hash_many(spec_id: &str, messages: &[Vec<u8>]) -> Result<Vec<Digest>> {
    // fail fast on unknown specs instead of once per message
    crate::registry::lookup(spec_id)?;
    try_map_slice(messages, |m| hash(spec_id, m))
}

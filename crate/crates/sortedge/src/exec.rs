//! Deterministic chunked execution with an optional rayon backend.
//!
//! Monte Carlo work is split into chunks of fixed size. Chunk `c` always draws
//! from the random stream `(seed, c)`, and chunk results are returned in chunk
//! order, so the output does not depend on the number of worker threads or on
//! whether the `parallel` feature is enabled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::ops::Range;

/// Random number generator used by every sampler in the crate.
pub type Rng = ChaCha8Rng;

/// Number of samples handled by one chunk (and one random stream).
pub const CHUNK: usize = 256;

/// How chunked work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Exec {
    /// Run chunks one after the other on the calling thread.
    Sequential,
    /// Run chunks on the rayon pool; identical to `Sequential` when the
    /// `parallel` feature is disabled.
    #[default]
    Parallel,
}

/// Returns the generator for stream `stream` of the master seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Splits `0..total` into chunks of [`CHUNK`] items and maps `f` over them.
///
/// `f` receives the chunk index, the item range and a generator seeded from
/// `(seed, chunk index)`. Results come back in chunk order.
pub fn map_chunks<T, F>(exec: Exec, total: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, Range<usize>, &mut Rng) -> T + Sync + Send,
{
    let chunks = total.div_ceil(CHUNK);
    let run = |c: usize| {
        let range = c * CHUNK..((c + 1) * CHUNK).min(total);
        let mut rng = stream_rng(seed, c as u64);
        f(c, range, &mut rng)
    };
    match exec {
        Exec::Sequential => (0..chunks).map(run).collect(),
        Exec::Parallel => par_map(chunks, run),
    }
}

/// Draws `total` independent values with `draw` and returns them in order.
pub fn sample_many<T, F>(exec: Exec, total: usize, seed: u64, draw: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut Rng) -> T + Sync + Send,
{
    map_chunks(exec, total, seed, |_, range, rng| {
        range.map(|_| draw(rng)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Maps `f` over `items`, in parallel when available, preserving order.
pub fn map_items<I, T, F>(exec: Exec, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        Exec::Parallel => par_map(items.len(), |i| f(&items[i])),
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Send, F: Fn(usize) -> T + Sync + Send>(len: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Send, F: Fn(usize) -> T + Sync + Send>(len: usize, f: F) -> Vec<T> {
    (0..len).map(f).collect()
}

/// Sizes the global worker pool and returns the backend to use: one job
/// means [`Exec::Sequential`]. Results never depend on this choice.
///
/// The pool can be sized once per process; later calls keep the first size.
pub fn configure_jobs(jobs: usize) -> Exec {
    if jobs == 1 {
        return Exec::Sequential;
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    Exec::Parallel
}

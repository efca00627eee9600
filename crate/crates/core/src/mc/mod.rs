//! Monte Carlo validation layer.
//!
//! Every stochastic routine here is reproducible from a single `u64` seed:
//! work is cut into fixed units (replications or fixed-size chunks), each
//! unit gets its own ChaCha stream derived from `(base_seed, unit index)`,
//! and partial results are folded in index order. Serial and parallel
//! execution therefore produce bit-identical output.

mod coupling;
mod goodhart;
mod selection;

pub use coupling::{simulate_coupling, simulate_coupling_with, CorrEstimate, SimConfig};
pub use goodhart::{
    amplified_noise_floor, attempts_under_pressure, best_of_k_median_approx, best_of_k_quantile,
    best_of_k_sample, best_of_k_samples, pressure_median_approx, Attempts, NoiseFloor,
    ParetoGaming, MAX_SAMPLED_ATTEMPTS,
};
pub use selection::{top_of_n_pairs, GaussianProxy};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How independent work units are scheduled. Output never depends on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Number of draws handled by one chunk in chunked samplers.
pub(crate) const CHUNK: usize = 8192;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of work unit `index` under `base_seed`.
pub fn stream_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(index))
}

/// The random stream of work unit `index` under `base_seed`.
pub fn stream_rng(base_seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(base_seed, index))
}

/// Runs `unit(i)` for `i in 0..units` and returns results in index order.
pub(crate) fn run_units<T, U>(units: usize, exec: Execution, unit: U) -> Vec<T>
where
    T: Send,
    U: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Serial => (0..units).map(unit).collect(),
        Execution::Parallel => (0..units).into_par_iter().map(unit).collect(),
    }
}

/// Draws `n` values in chunks of [`CHUNK`], each chunk on its own stream.
pub(crate) fn chunked_draws<T, D>(n: usize, seed: u64, exec: Execution, draw: D) -> Vec<T>
where
    T: Send,
    D: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
{
    let chunks = n.div_ceil(CHUNK);
    run_units(chunks, exec, |c| {
        let mut rng = stream_rng(seed, c as u64);
        let len = CHUNK.min(n - c * CHUNK);
        (0..len).map(|_| draw(&mut rng)).collect::<Vec<T>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_distinct_and_stable() {
        assert_ne!(stream_seed(1, 0), stream_seed(1, 1));
        assert_ne!(stream_seed(1, 0), stream_seed(2, 0));
        let a: u64 = stream_rng(7, 3).random();
        let b: u64 = stream_rng(7, 3).random();
        assert_eq!(a, b);
    }

    #[test]
    fn chunked_draws_schedule_free() {
        let n = 3 * CHUNK + 17;
        let serial = chunked_draws(n, 11, Execution::Serial, |r| r.random::<u32>());
        let parallel = chunked_draws(n, 11, Execution::Parallel, |r| r.random::<u32>());
        assert_eq!(serial.len(), n);
        assert_eq!(serial, parallel);
    }
}

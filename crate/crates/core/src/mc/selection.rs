//! Selection experiments on a jointly Gaussian score `C = T + E`.

use crate::error::{ensure, Error, Result};
use crate::Scalar;

use super::{run_units, stream_rng, Execution, CHUNK};

/// Latent value `T ~ N(0, var_t)` observed through `C = T + E`, `E ~ N(0, noise_var)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProxy<F> {
    pub var_t: F,
    pub noise_var: F,
}

impl<F: Scalar> GaussianProxy<F> {
    pub fn new(var_t: F, noise_var: F) -> Result<Self> {
        let var_t = ensure(var_t, "var_t", "> 0", |v| v > F::zero() && v.is_finite())?;
        let noise_var = ensure(noise_var, "noise_var", ">= 0", |v| {
            v >= F::zero() && v.is_finite()
        })?;
        Ok(Self { var_t, noise_var })
    }
}

/// For each of `n_trials` cohorts of `n_papers` i.i.d. papers, returns
/// `(C_max, T_{i*})` for the paper with the largest score.
///
/// With `n_papers = 1` this is a plain sample of `(C, T)`.
pub fn top_of_n_pairs<F: Scalar>(
    model: &GaussianProxy<F>,
    n_papers: usize,
    n_trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<(F, F)>> {
    if n_papers == 0 {
        return Err(Error::domain("n_papers", 0.0, ">= 1"));
    }
    let sd_t = model.var_t.sqrt();
    let sd_e = model.noise_var.sqrt();
    let chunks = n_trials.div_ceil(CHUNK);
    let parts = run_units(chunks, exec, |c| {
        let mut rng = stream_rng(seed, c as u64);
        let len = CHUNK.min(n_trials - c * CHUNK);
        (0..len)
            .map(|_| {
                let mut best = (F::neg_infinity(), F::zero());
                for _ in 0..n_papers {
                    let t = sd_t * F::standard_normal(&mut rng);
                    let score = t + sd_e * F::standard_normal(&mut rng);
                    if score > best.0 {
                        best = (score, t);
                    }
                }
                best
            })
            .collect::<Vec<_>>()
    });
    Ok(parts.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::ols;

    #[test]
    fn unselected_slope_is_signal_share() {
        let m = GaussianProxy::<f64>::new(2.0, 6.0).unwrap();
        let pairs = top_of_n_pairs(&m, 1, 200_000, 3, Execution::Parallel).unwrap();
        let fit = ols(&pairs);
        assert!((fit.slope - 0.25).abs() < 4.0 * fit.std_err);
    }

    #[test]
    fn schedule_free() {
        let m = GaussianProxy::new(1.0, 1.0).unwrap();
        let a = top_of_n_pairs(&m, 5, 20_000, 9, Execution::Serial).unwrap();
        let b = top_of_n_pairs(&m, 5, 20_000, 9, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn winner_has_the_max_score() {
        let m = GaussianProxy::new(1.0, 0.0).unwrap();
        let pairs = top_of_n_pairs(&m, 10, 1000, 1, Execution::Serial).unwrap();
        assert!(pairs.iter().all(|&(c, t)| c == t));
        assert!(top_of_n_pairs(&m, 0, 10, 1, Execution::Serial).is_err());
    }
}

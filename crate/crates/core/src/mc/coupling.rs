use crate::analytic::{MixingMode, ModelParams};
use crate::error::{Error, Result};
use crate::stats::CoMoments;
use crate::Scalar;

use super::{run_units, stream_rng, Execution};

/// Replication layout, seed, model and mixing mode of a coupling simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig<F> {
    pub replications: usize,
    pub samples_per_rep: usize,
    pub base_seed: u64,
    pub model: ModelParams<F>,
    pub mode: MixingMode,
}

impl<F: Scalar> SimConfig<F> {
    pub fn new(
        replications: usize,
        samples_per_rep: usize,
        base_seed: u64,
        model: ModelParams<F>,
        mode: MixingMode,
    ) -> Result<Self> {
        if replications < 1 {
            return Err(Error::domain("replications", replications as f64, ">= 1"));
        }
        if samples_per_rep < 2 {
            return Err(Error::domain("samples_per_rep", samples_per_rep as f64, ">= 2"));
        }
        Ok(Self {
            replications,
            samples_per_rep,
            base_seed,
            model,
            mode,
        })
    }
}

/// Pooled sample correlation of `(S, T)` with its Monte Carlo standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrEstimate<F> {
    pub rho_hat: F,
    /// Spread of the per-replication correlations divided by `sqrt(replications)`;
    /// with a single replication, the normal-theory `(1 − ρ²)/sqrt(n)`.
    pub std_err: F,
    pub n_total: usize,
    pub replication_rhos: Vec<F>,
}

/// Simulates the evaluation process literally and estimates `Corr(S, T)`.
pub fn simulate_coupling<F: Scalar>(cfg: &SimConfig<F>) -> Result<CorrEstimate<F>> {
    simulate_coupling_with(cfg, Execution::Parallel)
}

pub fn simulate_coupling_with<F: Scalar>(
    cfg: &SimConfig<F>,
    exec: Execution,
) -> Result<CorrEstimate<F>> {
    let cfg = SimConfig::new(
        cfg.replications,
        cfg.samples_per_rep,
        cfg.base_seed,
        ModelParams::new(cfg.model.var_t(), cfg.model.var_delta(), cfg.model.q())?,
        cfg.mode,
    )?;
    let sd_t = cfg.model.var_t().sqrt();
    let sd_delta = cfg.model.var_delta().sqrt();
    let q = cfg.model.q();
    let shrink = F::one() - q;

    let parts = run_units(cfg.replications, exec, |rep| {
        let mut rng = stream_rng(cfg.base_seed, rep as u64);
        let mut acc = CoMoments::new();
        for _ in 0..cfg.samples_per_rep {
            let t = sd_t * F::standard_normal(&mut rng);
            let delta = sd_delta * F::standard_normal(&mut rng);
            let s = match cfg.mode {
                MixingMode::LinearShrinkage => t + shrink * delta,
                MixingMode::BernoulliMixture => {
                    if F::open_unit(&mut rng) < q {
                        t
                    } else {
                        t + delta
                    }
                }
            };
            acc.push(s, t);
        }
        acc
    });

    let mut pooled = CoMoments::new();
    for part in &parts {
        pooled.merge(part);
    }
    let rho_hat = pooled.correlation();
    if !rho_hat.is_finite() {
        return Err(Error::DegenerateSignal("simulated scores have zero variance"));
    }
    let replication_rhos: Vec<F> = parts.iter().map(CoMoments::correlation).collect();
    let n_total = pooled.count();
    let std_err = if replication_rhos.len() >= 2 {
        let k = F::from_count(replication_rhos.len());
        crate::stats::sample_variance(&replication_rhos).sqrt() / k.sqrt()
    } else {
        (F::one() - rho_hat * rho_hat) / F::from_count(n_total).sqrt()
    };
    Ok(CorrEstimate {
        rho_hat,
        std_err,
        n_total,
        replication_rhos,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::truth_coupling;

    fn cfg(q: f64, r: f64, mode: MixingMode, reps: usize, n: usize, seed: u64) -> SimConfig<f64> {
        SimConfig::new(reps, n, seed, ModelParams::new(1.0, r, q).unwrap(), mode).unwrap()
    }

    #[test]
    fn full_verification_is_exact() {
        for mode in MixingMode::ALL {
            let est = simulate_coupling(&cfg(1.0, 7.0, mode, 8, 5_000, 3)).unwrap();
            assert!((est.rho_hat - 1.0).abs() <= 3.0 * est.std_err);
            assert_eq!(est.rho_hat, 1.0);
        }
    }

    #[test]
    fn no_verification_matches_closed_form() {
        for mode in MixingMode::ALL {
            let est = simulate_coupling(&cfg(0.0, 3.0, mode, 50, 20_000, 5)).unwrap();
            assert_eq!(est.n_total, 1_000_000);
            assert!((est.rho_hat - 0.5).abs() <= 0.01);
        }
    }

    #[test]
    fn half_verification_linear() {
        let est = simulate_coupling(&cfg(0.5, 5.0, MixingMode::LinearShrinkage, 50, 20_000, 9)).unwrap();
        assert!((est.rho_hat - 2.0 / 3.0).abs() <= 0.01);
    }

    #[test]
    fn bernoulli_closed_form_is_confirmed_by_simulation() {
        // The literal coin flip gives Cov(S,T) = Var T and Var S = Var T + (1 − q)Var Δ.
        let est = simulate_coupling(&cfg(0.5, 5.0, MixingMode::BernoulliMixture, 50, 20_000, 21)).unwrap();
        let closed: f64 = truth_coupling(0.5, 5.0, MixingMode::BernoulliMixture).unwrap();
        assert!((closed - 0.534_522_483_824_848_7).abs() < 1e-12);
        assert!((est.rho_hat - closed).abs() <= 4.0 * est.std_err);
        // and clearly rejects the shrinkage formula
        let lin = truth_coupling(0.5, 5.0, MixingMode::LinearShrinkage).unwrap();
        assert!((est.rho_hat - lin).abs() > 20.0 * est.std_err);
    }

    #[test]
    fn serial_and_parallel_are_bit_identical() {
        for mode in MixingMode::ALL {
            let c = cfg(0.3, 4.0, mode, 16, 3_000, 77);
            let a = simulate_coupling_with(&c, Execution::Serial).unwrap();
            let b = simulate_coupling_with(&c, Execution::Parallel).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.rho_hat.to_bits(), b.rho_hat.to_bits());
        }
    }

    #[test]
    fn single_replication_uses_normal_theory_error() {
        let est = simulate_coupling(&cfg(0.5, 1.0, MixingMode::LinearShrinkage, 1, 10_000, 1)).unwrap();
        assert!(est.std_err > 0.0 && est.std_err < 0.02);
    }

    #[test]
    fn config_invariants() {
        let m = ModelParams::new(1.0, 1.0, 0.5).unwrap();
        assert!(SimConfig::new(0, 10, 0, m, MixingMode::LinearShrinkage).is_err());
        assert!(SimConfig::new(1, 1, 0, m, MixingMode::LinearShrinkage).is_err());
    }

    #[test]
    fn single_precision_runs() {
        let m = ModelParams::<f32>::new(1.0, 3.0, 0.0).unwrap();
        let c = SimConfig::new(10, 10_000, 4, m, MixingMode::LinearShrinkage).unwrap();
        let est = simulate_coupling(&c).unwrap();
        assert!((est.rho_hat - 0.5).abs() < 0.02);
    }
}

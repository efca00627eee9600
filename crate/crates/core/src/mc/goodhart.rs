//! Best-of-K proxy selection with Pareto-distributed proxy gains.
//!
//! Each of `K` attempts yields a gain `X ~ Pareto(x_min, α)` and only the
//! best one is reported, `G_K = max X_i`. `P(G_K ≤ x) = F(x)^K`, so every
//! quantile of `G_K` grows like `K^(1/α)`; letting `K` grow exponentially
//! with pressure turns that into exponential growth in `Λ`.

use rand::Rng;

use crate::error::{ensure, Error, Result};
use crate::Scalar;

use super::{chunked_draws, Execution};

/// Largest integer attempt count the samplers will expand draw by draw.
pub const MAX_SAMPLED_ATTEMPTS: u64 = 1 << 24;

/// Pareto proxy gains and the pressure response of the number of attempts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoGaming<F> {
    x_min: F,
    alpha: F,
    k0: F,
    beta: F,
}

impl<F: Scalar> ParetoGaming<F> {
    /// `alpha > 2` is required so that the gain has finite variance.
    pub fn new(x_min: F, alpha: F, k0: F, beta: F) -> Result<Self> {
        let x_min = ensure(x_min, "x_min", "> 0", |v| v > F::zero() && v.is_finite())?;
        let alpha = ensure(alpha, "alpha", "> 2", |v| v > F::lit(2.0) && v.is_finite())?;
        let k0 = ensure(k0, "k0", ">= 1", |v| v >= F::one() && v.is_finite())?;
        let beta = ensure(beta, "beta", ">= 0", |v| v >= F::zero() && v.is_finite())?;
        Ok(Self {
            x_min,
            alpha,
            k0,
            beta,
        })
    }

    pub fn x_min(&self) -> F {
        self.x_min
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn k0(&self) -> F {
        self.k0
    }

    pub fn beta(&self) -> F {
        self.beta
    }

    /// One Pareto draw by inversion: `x_min · U^(−1/α)`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> F {
        self.x_min * F::open_unit(rng).powf(-self.alpha.recip())
    }
}

/// Attempt count at a given pressure, both real-valued and rounded for sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Attempts<F> {
    pub real: F,
    /// Nearest integer, at least 1; saturates at `u64::MAX`.
    pub integer: u64,
}

/// `K(Λ) = K₀·exp(β·(Λ − 1)₊)`.
pub fn attempts_under_pressure<F: Scalar>(g: &ParetoGaming<F>, pressure: F) -> Result<Attempts<F>> {
    let pressure = ensure(pressure, "pressure", "> 0", |v| v > F::zero())?;
    let excess = (pressure - F::one()).max(F::zero());
    let real = g.k0 * (g.beta * excess).exp();
    let integer = real.round().to_u64().unwrap_or(u64::MAX).max(1);
    Ok(Attempts { real, integer })
}

fn check_attempts(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k", 0.0, ">= 1"));
    }
    if k > MAX_SAMPLED_ATTEMPTS {
        return Err(Error::domain("k", k as f64, "<= 2^24 for sampling"));
    }
    Ok(())
}

/// One draw of `G_K`: the maximum of `k` independent Pareto gains.
pub fn best_of_k_sample<F: Scalar, R: Rng + ?Sized>(g: &ParetoGaming<F>, k: u64, rng: &mut R) -> Result<F> {
    check_attempts(k)?;
    Ok(max_of(g, k, rng))
}

fn max_of<F: Scalar, R: Rng + ?Sized>(g: &ParetoGaming<F>, k: u64, rng: &mut R) -> F {
    (0..k).fold(F::neg_infinity(), |best, _| best.max(g.draw(rng)))
}

/// `n` independent draws of `G_K`, reproducible from `seed`.
pub fn best_of_k_samples<F: Scalar>(
    g: &ParetoGaming<F>,
    k: u64,
    n: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<F>> {
    check_attempts(k)?;
    Ok(chunked_draws(n, seed, exec, |rng| max_of(g, k, rng)))
}

/// Exact quantile of `G_K`: `x_min·(1 − p^(1/K))^(−1/α)`; `K` may be fractional.
pub fn best_of_k_quantile<F: Scalar>(g: &ParetoGaming<F>, k: F, p: F) -> Result<F> {
    let k = ensure(k, "k", ">= 1", |v| v >= F::one())?;
    let p = ensure(p, "p", "in (0, 1)", |v| v > F::zero() && v < F::one())?;
    // 1 − p^(1/K) without cancellation for large K
    let tail = -(p.ln() / k).exp_m1();
    Ok(g.x_min * tail.powf(-g.alpha.recip()))
}

/// Large-`K` approximation of the median, `x_min·(K/ln 2)^(1/α)`.
pub fn best_of_k_median_approx<F: Scalar>(g: &ParetoGaming<F>, k: F) -> Result<F> {
    let k = ensure(k, "k", ">= 1", |v| v >= F::one())?;
    Ok(g.x_min * (k / F::LN_2()).powf(g.alpha.recip()))
}

/// Median approximation along the pressure path,
/// `x_min·(K₀/ln 2)^(1/α)·exp((β/α)(Λ − 1)₊)`.
pub fn pressure_median_approx<F: Scalar>(g: &ParetoGaming<F>, pressure: F) -> Result<F> {
    let pressure = ensure(pressure, "pressure", "> 0", |v| v > F::zero())?;
    let excess = (pressure - F::one()).max(F::zero());
    let base = g.x_min * (g.k0 / F::LN_2()).powf(g.alpha.recip());
    Ok(base * (g.beta / g.alpha * excess).exp())
}

/// Empirical spread of the centered selection term `G_K − E[G_K]` at `K = K(Λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseFloor<F> {
    pub attempts: Attempts<F>,
    pub mean: F,
    pub variance: F,
    /// Large-sample standard error of `variance`.
    pub std_err: F,
    pub n_draws: usize,
}

/// Estimates `Var(G_{K(Λ)})`, a lower bound on the proxy-error variance under gaming.
pub fn amplified_noise_floor<F: Scalar>(
    g: &ParetoGaming<F>,
    pressure: F,
    n_draws: usize,
    seed: u64,
) -> Result<NoiseFloor<F>> {
    if n_draws < 1000 {
        return Err(Error::domain("n_draws", n_draws as f64, ">= 1000"));
    }
    let attempts = attempts_under_pressure(g, pressure)?;
    let draws = best_of_k_samples(g, attempts.integer, n_draws, seed, Execution::Parallel)?;
    let (variance, std_err) = crate::stats::variance_with_error(&draws);
    Ok(NoiseFloor {
        attempts,
        mean: crate::stats::mean(&draws),
        variance,
        std_err,
        n_draws,
    })
}

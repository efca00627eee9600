//! Closed forms of the mixture evaluation model.
//!
//! A submission has latent value `T` and a proxy error `Δ` independent of it.
//! With probability `q` the reviewer sees decisive evidence, otherwise the
//! score leans on the proxy. Everything downstream is expressed through the
//! verification rate `q` and the noise-to-signal ratio `r = Var(Δ)/Var(T)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{ensure, Result};
#[cfg(test)]
use crate::error::Error;
use crate::Scalar;

/// How verification mixes with the proxy when forming the score `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MixingMode {
    /// `S = T + (1 − q)Δ`: the proxy error is shrunk by the verification rate.
    #[default]
    LinearShrinkage,
    /// Each paper is verified with probability `q` (`S = T`), otherwise `S = T + Δ`.
    BernoulliMixture,
}

impl MixingMode {
    pub const ALL: [MixingMode; 2] = [MixingMode::LinearShrinkage, MixingMode::BernoulliMixture];

    pub fn as_str(self) -> &'static str {
        match self {
            MixingMode::LinearShrinkage => "linear_shrinkage",
            MixingMode::BernoulliMixture => "bernoulli_mixture",
        }
    }
}

impl fmt::Display for MixingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MixingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linear_shrinkage" | "linear" => Ok(MixingMode::LinearShrinkage),
            "bernoulli_mixture" | "bernoulli" => Ok(MixingMode::BernoulliMixture),
            other => Err(format!(
                "unknown mixing mode `{other}` (expected linear_shrinkage or bernoulli_mixture)"
            )),
        }
    }
}

/// Variances of the latent value and proxy error plus the verification rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<F> {
    var_t: F,
    var_delta: F,
    q: F,
}

impl<F: Scalar> ModelParams<F> {
    pub fn new(var_t: F, var_delta: F, q: F) -> Result<Self> {
        let var_t = ensure(var_t, "var_t", "> 0", |v| v > F::zero() && v.is_finite())?;
        let var_delta = ensure(var_delta, "var_delta", ">= 0", |v| {
            v >= F::zero() && v.is_finite()
        })?;
        let q = check_rate(q)?;
        Ok(Self { var_t, var_delta, q })
    }

    /// Derives `q` from the pressure inputs of a venue.
    pub fn from_pressure(var_t: F, var_delta: F, pressure: &PressureInputs<F>) -> Result<Self> {
        let q = verification_rate(pressure.pressure())?;
        Self::new(var_t, var_delta, q)
    }

    pub fn var_t(&self) -> F {
        self.var_t
    }

    pub fn var_delta(&self) -> F {
        self.var_delta
    }

    pub fn q(&self) -> F {
        self.q
    }

    /// `r = Var(Δ) / Var(T)`.
    pub fn noise_ratio(&self) -> F {
        self.var_delta / self.var_t
    }

    pub fn truth_coupling(&self, mode: MixingMode) -> F {
        coupling_unchecked(self.q, self.noise_ratio(), mode)
    }
}

/// Claim rate, per-check cost, evidence fidelity and effective bandwidth of a venue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureInputs<F> {
    pub claim_rate: F,
    pub raw_cost: F,
    pub fidelity: F,
    pub bandwidth: F,
}

impl<F: Scalar> PressureInputs<F> {
    pub fn new(claim_rate: F, raw_cost: F, fidelity: F, bandwidth: F) -> Result<Self> {
        let claim_rate = ensure(claim_rate, "claim_rate", "> 0", |v| {
            v > F::zero() && v.is_finite()
        })?;
        let raw_cost = ensure(raw_cost, "raw_cost", "> 0", |v| v > F::zero() && v.is_finite())?;
        let fidelity = check_fidelity(fidelity)?;
        let bandwidth = ensure(bandwidth, "bandwidth", "> 0", |v| {
            v > F::zero() && v.is_finite()
        })?;
        Ok(Self {
            claim_rate,
            raw_cost,
            fidelity,
            bandwidth,
        })
    }

    pub fn effective_cost(&self) -> F {
        self.raw_cost / self.fidelity
    }

    /// `Λ = R·C_eff / B_eff`.
    pub fn pressure(&self) -> F {
        self.claim_rate * self.effective_cost() / self.bandwidth
    }
}

fn check_rate<F: Scalar>(q: F) -> Result<F> {
    ensure(q, "q", "in [0, 1]", |v| v >= F::zero() && v <= F::one())
}

fn check_fidelity<F: Scalar>(kappa: F) -> Result<F> {
    ensure(kappa, "fidelity", "in (0, 1]", |v| v > F::zero() && v <= F::one())
}

/// `C_eff = c / κ`: the cost of a decisive check once weak evidence is discounted.
pub fn effective_cost<F: Scalar>(raw_cost: F, fidelity: F) -> Result<F> {
    let raw_cost = ensure(raw_cost, "raw_cost", "> 0", |v| v > F::zero() && v.is_finite())?;
    let fidelity = check_fidelity(fidelity)?;
    Ok(raw_cost / fidelity)
}

/// Verification pressure `Λ = R·(c/κ)/B_eff`.
pub fn verification_pressure<F: Scalar>(p: &PressureInputs<F>) -> Result<F> {
    // Re-validate: the fields are public.
    let p = PressureInputs::new(p.claim_rate, p.raw_cost, p.fidelity, p.bandwidth)?;
    Ok(p.pressure())
}

/// `q = min{1, 1/Λ}`.
pub fn verification_rate<F: Scalar>(pressure: F) -> Result<F> {
    let pressure = ensure(pressure, "pressure", "> 0", |v| v > F::zero())?;
    Ok(F::one().min(pressure.recip()))
}

/// `Corr(S, T)` under the chosen mixing mode.
///
/// `LinearShrinkage` gives `(1 + (1−q)²r)^(−1/2)`; `BernoulliMixture` gives
/// `(1 + (1−q)r)^(−1/2)`. Both are exactly 1 at `q = 1`.
pub fn truth_coupling<F: Scalar>(q: F, r: F, mode: MixingMode) -> Result<F> {
    let q = check_rate(q)?;
    let r = ensure(r, "r", ">= 0", |v| v >= F::zero())?;
    Ok(coupling_unchecked(q, r, mode))
}

pub(crate) fn coupling_unchecked<F: Scalar>(q: F, r: F, mode: MixingMode) -> F {
    let miss = F::one() - q;
    let weight = match mode {
        MixingMode::LinearShrinkage => miss * miss,
        MixingMode::BernoulliMixture => miss,
    };
    if weight == F::zero() {
        return F::one();
    }
    (F::one() + weight * r).sqrt().recip()
}

/// Smallest verification rate that keeps `ρ ≥ ρ_min` under linear shrinkage.
///
/// The raw bound `1 − sqrt((ρ_min⁻² − 1)/r)` is clamped at 0 when the target
/// is already met without any verification.
pub fn coupling_budget<F: Scalar>(rho_min: F, r: F) -> Result<F> {
    let rho_min = ensure(rho_min, "rho_min", "in (0, 1)", |v| {
        v > F::zero() && v < F::one()
    })?;
    let r = ensure(r, "r", "> 0", |v| v > F::zero())?;
    let raw = F::one() - ((rho_min.powi(-2) - F::one()) / r).sqrt();
    Ok(raw.max(F::zero()))
}

/// Bandwidth needed to sustain a verification rate: `q_min · R · C_eff`.
pub fn bandwidth_requirement<F: Scalar>(q_min: F, claim_rate: F, effective_cost: F) -> Result<F> {
    let q_min = ensure(q_min, "q_min", "in [0, 1]", |v| v >= F::zero() && v <= F::one())?;
    let claim_rate = ensure(claim_rate, "claim_rate", "> 0", |v| {
        v > F::zero() && v.is_finite()
    })?;
    let effective_cost = ensure(effective_cost, "effective_cost", "> 0", |v| {
        v > F::zero() && v.is_finite()
    })?;
    Ok(q_min * claim_rate * effective_cost)
}

/// The noise ratio on the `ρ`-contour at pressure `Λ > 1` (with `q = 1/Λ`).
pub fn contour_noise_ratio<F: Scalar>(rho: F, pressure: F) -> Result<F> {
    let rho = ensure(rho, "rho", "in (0, 1)", |v| v > F::zero() && v < F::one())?;
    let pressure = ensure(pressure, "pressure", "> 1", |v| v > F::one())?;
    let miss = F::one() - pressure.recip();
    Ok((rho.powi(-2) - F::one()) / (miss * miss))
}

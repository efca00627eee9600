//! Estimators for the model's drivers from observable venue data.
//!
//! Audits give a noisy window on `r`: if the audited gain `Y′` stands in for
//! the latent value, `Var(Y′)` estimates `Var(T)` and `Var(Y − Y′)` estimates
//! `Var(Δ)`. Audit noise is not modeled, so `r_hat` is biased upward when
//! audits themselves are noisy.

mod io;

pub use io::{read_audit_csv, read_headroom_csv, write_audit_csv, AUDIT_HEADER, HEADROOM_HEADER};

use crate::analytic::PressureInputs;
use crate::error::{ensure, Error, Result};
use crate::mc::{chunked_draws, Execution};
use crate::stats::sample_variance;
use crate::Scalar;

/// A reported gain and its audited counterpart for one paper.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRecord<F> {
    pub paper_id: String,
    pub reported_gain: F,
    pub audited_gain: F,
}

impl<F: Scalar> AuditRecord<F> {
    pub fn new(paper_id: impl Into<String>, reported_gain: F, audited_gain: F) -> Result<Self> {
        let reported_gain = ensure(reported_gain, "reported_gain", "finite", F::is_finite)?;
        let audited_gain = ensure(audited_gain, "audited_gain", "finite", F::is_finite)?;
        Ok(Self {
            paper_id: paper_id.into(),
            reported_gain,
            audited_gain,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceDecomposition<F> {
    /// Sample variance of `Y − Y′`.
    pub var_delta_hat: F,
    /// Sample variance of `Y′`.
    pub var_t_hat: F,
    pub r_hat: F,
    pub n: usize,
}

/// Splits reported gains into signal and proxy-error variance, with `n − 1` denominators.
pub fn decompose_variance<F: Scalar>(records: &[AuditRecord<F>]) -> Result<VarianceDecomposition<F>> {
    if records.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: records.len(),
        });
    }
    let audited: Vec<F> = records.iter().map(|r| r.audited_gain).collect();
    let errors: Vec<F> = records
        .iter()
        .map(|r| r.reported_gain - r.audited_gain)
        .collect();
    let var_t_hat = sample_variance(&audited);
    if var_t_hat <= F::zero() {
        return Err(Error::DegenerateSignal("audited gains have zero variance"));
    }
    let var_delta_hat = sample_variance(&errors);
    Ok(VarianceDecomposition {
        var_delta_hat,
        var_t_hat,
        r_hat: var_delta_hat / var_t_hat,
        n: records.len(),
    })
}

/// Synthetic audits with `Y′ = T ~ N(0, var_t)` and `Y = T + Δ`, `Δ ~ N(0, var_delta)`.
pub fn synthetic_audits<F: Scalar>(n: usize, var_t: F, var_delta: F, seed: u64) -> Result<Vec<AuditRecord<F>>> {
    let var_t = ensure(var_t, "var_t", "> 0", |v| v > F::zero() && v.is_finite())?;
    let var_delta = ensure(var_delta, "var_delta", ">= 0", |v| v >= F::zero() && v.is_finite())?;
    let (sd_t, sd_d) = (var_t.sqrt(), var_delta.sqrt());
    let gains = chunked_draws(n, seed, Execution::Parallel, |rng| {
        let t = sd_t * F::standard_normal(rng);
        (t + sd_d * F::standard_normal(rng), t)
    });
    Ok(gains
        .into_iter()
        .enumerate()
        .map(|(i, (y, y_audit))| AuditRecord {
            paper_id: format!("p{:07}", i + 1),
            reported_gain: y,
            audited_gain: y_audit,
        })
        .collect())
}

/// Best reported value of a bounded metric per period.
#[derive(Debug, Clone, PartialEq)]
pub struct HeadroomSeries<F> {
    points: Vec<(i64, F)>,
}

impl<F: Scalar> HeadroomSeries<F> {
    /// Periods must be strictly increasing and metrics inside `[0, 1]`.
    pub fn new(points: Vec<(i64, F)>) -> Result<Self> {
        for (i, &(period, metric)) in points.iter().enumerate() {
            if !(metric >= F::zero() && metric <= F::one()) {
                return Err(Error::Format {
                    row: i + 1,
                    message: format!("best_metric {metric} outside [0, 1]"),
                });
            }
            if i > 0 && period <= points[i - 1].0 {
                return Err(Error::Format {
                    row: i + 1,
                    message: format!("period {period} does not increase"),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(i64, F)] {
        &self.points
    }
}

/// Default window of the rolling improvement variance.
pub const DEFAULT_HEADROOM_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct HeadroomStats<F> {
    /// `(period, 1 − M_t)` for every period.
    pub headroom: Vec<(i64, F)>,
    /// `(period, M_t − M_{t−1})` from the second period on.
    pub improvements: Vec<(i64, F)>,
    /// Sample variance of the last `window` improvements, keyed by the closing period.
    pub rolling_variance: Vec<(i64, F)>,
    pub window: usize,
}

/// Headroom, improvements and rolling improvement variance of a series.
///
/// A shrinking rolling variance is the saturation signal: true gains get smaller.
pub fn headroom_stats<F: Scalar>(series: &HeadroomSeries<F>, window: usize) -> Result<HeadroomStats<F>> {
    if window < 2 {
        return Err(Error::domain("window", window as f64, ">= 2"));
    }
    let pts = series.points();
    if pts.len() < window {
        return Err(Error::InsufficientData {
            needed: window,
            got: pts.len(),
        });
    }
    let headroom = pts.iter().map(|&(p, m)| (p, F::one() - m)).collect();
    let improvements: Vec<(i64, F)> = pts.windows(2).map(|w| (w[1].0, w[1].1 - w[0].1)).collect();
    let rolling_variance = improvements
        .windows(window)
        .map(|w| {
            let xs: Vec<F> = w.iter().map(|&(_, d)| d).collect();
            (w[window - 1].0, sample_variance(&xs))
        })
        .collect();
    Ok(HeadroomStats {
        headroom,
        improvements,
        rolling_variance,
        window,
    })
}

/// Venue-level counts from which pressure is estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VenueCounts<F> {
    pub claim_rate: F,
    /// Reviewer hours per period, the bandwidth proxy.
    pub reviewer_hours: F,
    pub mean_check_cost: F,
    pub fidelity: F,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureEstimate<F> {
    pub lambda_hat: F,
    pub q_hat: F,
}

pub fn estimate_pressure<F: Scalar>(v: &VenueCounts<F>) -> Result<PressureEstimate<F>> {
    let inputs = PressureInputs::new(v.claim_rate, v.mean_check_cost, v.fidelity, v.reviewer_hours)?;
    let lambda_hat = inputs.pressure();
    Ok(PressureEstimate {
        lambda_hat,
        q_hat: crate::analytic::verification_rate(lambda_hat)?,
    })
}

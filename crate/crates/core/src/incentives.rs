//! The researcher's effort problem.
//!
//! A researcher splits effort `e ∈ [0, 1]` between truth production `f(e)`
//! and proxy optimization, maximizing `U(e) = f(e) + (1 − q)γ(1 − e)`.
//! With `f` concave the optimum is characterized by `f′(e*) = (1 − q)γ`
//! in the interior and collapses to `e* = 0` once `(1 − q)γ ≥ f′(0)`.

use std::fmt;

use crate::error::{ensure, Result};
use crate::Scalar;

/// Concave truth-production families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EffortFamily<F> {
    /// `f(e) = a·ln(1 + b·e)`; finite `f′(0) = ab`, so collapse is reachable.
    Log { a: F, b: F },
    /// `f(e) = A·e^β` with `0 < β < 1`; `f′(0) = +∞`, so collapse never happens.
    Power { scale: F, exponent: F },
}

impl<F: Scalar> EffortFamily<F> {
    pub fn log(a: F, b: F) -> Result<Self> {
        let a = ensure(a, "a", "> 0", |v| v > F::zero() && v.is_finite())?;
        let b = ensure(b, "b", "> 0", |v| v > F::zero() && v.is_finite())?;
        Ok(EffortFamily::Log { a, b })
    }

    pub fn power(scale: F, exponent: F) -> Result<Self> {
        let scale = ensure(scale, "scale", "> 0", |v| v > F::zero() && v.is_finite())?;
        let exponent = ensure(exponent, "exponent", "in (0, 1)", |v| {
            v > F::zero() && v < F::one()
        })?;
        Ok(EffortFamily::Power { scale, exponent })
    }

    fn validated(self) -> Result<Self> {
        match self {
            EffortFamily::Log { a, b } => Self::log(a, b),
            EffortFamily::Power { scale, exponent } => Self::power(scale, exponent),
        }
    }

    /// Truth production `f(e)`.
    pub fn production(&self, e: F) -> F {
        match *self {
            EffortFamily::Log { a, b } => a * (b * e).ln_1p(),
            EffortFamily::Power { scale, exponent } => scale * e.powf(exponent),
        }
    }

    /// `f′(e)`. For the power family `f′(0)` is `+∞`.
    pub fn marginal(&self, e: F) -> F {
        match *self {
            EffortFamily::Log { a, b } => a * b / (F::one() + b * e),
            EffortFamily::Power { scale, exponent } => {
                if e == F::zero() {
                    F::infinity()
                } else {
                    scale * exponent * e.powf(exponent - F::one())
                }
            }
        }
    }

    /// Solves `f′(e) = x` on `(0, 1)`; callers ensure `f′(1) < x < f′(0)`.
    fn invert_marginal(&self, x: F) -> F {
        match *self {
            EffortFamily::Log { a, b } => (a * b / x - F::one()) / b,
            EffortFamily::Power { scale, exponent } => {
                (x / (scale * exponent)).powf((exponent - F::one()).recip())
            }
        }
    }
}

/// An effort problem: production family, proxy return `γ`, verification rate `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortSpec<F> {
    pub family: EffortFamily<F>,
    pub gamma: F,
    pub q: F,
}

impl<F: Scalar> EffortSpec<F> {
    pub fn new(family: EffortFamily<F>, gamma: F, q: F) -> Result<Self> {
        let family = family.validated()?;
        let gamma = check_gamma(gamma)?;
        let q = ensure(q, "q", "in [0, 1]", |v| v >= F::zero() && v <= F::one())?;
        Ok(Self { family, gamma, q })
    }

    /// The proxy incentive `(1 − q)γ`.
    pub fn proxy_incentive(&self) -> F {
        (F::one() - self.q) * self.gamma
    }

    /// `U(e) = f(e) + (1 − q)γ(1 − e)`.
    pub fn utility(&self, e: F) -> F {
        self.family.production(e) + self.proxy_incentive() * (F::one() - e)
    }
}

fn check_gamma<F: Scalar>(gamma: F) -> Result<F> {
    ensure(gamma, "gamma", "> 0", |v| v > F::zero() && v.is_finite())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EffortRegime {
    Interior,
    CollapsedAtZero,
    SaturatedAtOne,
}

impl EffortRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            EffortRegime::Interior => "interior",
            EffortRegime::CollapsedAtZero => "collapsed_at_zero",
            EffortRegime::SaturatedAtOne => "saturated_at_one",
        }
    }
}

impl fmt::Display for EffortRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortSolution<F> {
    pub e_star: F,
    pub regime: EffortRegime,
    /// `f′(e*) − (1 − q)γ`; zero (to rounding) in the interior.
    pub marginal_gap: F,
}

/// `f′(e)` for the problem's production family at effort `e ∈ [0, 1]`.
pub fn marginal_return<F: Scalar>(spec: &EffortSpec<F>, e: F) -> Result<F> {
    let e = ensure(e, "effort", "in [0, 1]", |v| v >= F::zero() && v <= F::one())?;
    Ok(spec.family.marginal(e))
}

/// Maximizes `U(e)` over `[0, 1]` in closed form.
///
/// Ties at `(1 − q)γ = f′(0)` are classified as collapse.
pub fn optimal_effort<F: Scalar>(spec: &EffortSpec<F>) -> EffortSolution<F> {
    solve_at(&spec.family, spec.proxy_incentive())
}

fn solve_at<F: Scalar>(family: &EffortFamily<F>, x: F) -> EffortSolution<F> {
    let (e_star, regime) = if x >= family.marginal(F::zero()) {
        (F::zero(), EffortRegime::CollapsedAtZero)
    } else if x <= family.marginal(F::one()) {
        (F::one(), EffortRegime::SaturatedAtOne)
    } else {
        let e = family.invert_marginal(x).max(F::zero()).min(F::one());
        (e, EffortRegime::Interior)
    };
    EffortSolution {
        e_star,
        regime,
        marginal_gap: family.marginal(e_star) - x,
    }
}

/// Smallest pressure `Λ ≥ 1` at which effort collapses when `q = 1/Λ`.
///
/// Equals `γ/(γ − f′(0))` for `γ > f′(0)`; `+∞` when collapse is unreachable.
pub fn collapse_pressure<F: Scalar>(family: &EffortFamily<F>, gamma: F) -> Result<F> {
    let family = family.validated()?;
    let gamma = check_gamma(gamma)?;
    let slope0 = family.marginal(F::zero());
    if slope0.is_infinite() || gamma <= slope0 {
        return Ok(F::infinity());
    }
    Ok(gamma / (gamma - slope0))
}

/// A point of the incentive-collapse curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffortPoint<F> {
    pub q: F,
    /// `(1 − q)γ`.
    pub incentive: F,
    pub solution: EffortSolution<F>,
}

/// Optimal effort along a grid of verification rates, ordered by increasing `(1 − q)γ`.
pub fn effort_curve<F: Scalar>(
    family: &EffortFamily<F>,
    gamma: F,
    q_grid: &[F],
) -> Result<Vec<EffortPoint<F>>> {
    let family = family.validated()?;
    let gamma = check_gamma(gamma)?;
    let mut points = q_grid
        .iter()
        .map(|&q| {
            let spec = EffortSpec::new(family, gamma, q)?;
            let x = spec.proxy_incentive();
            Ok(EffortPoint {
                q,
                incentive: x,
                solution: solve_at(&family, x),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| a.incentive.partial_cmp(&b.incentive).expect("finite incentives"));
    Ok(points)
}

//! Citations as a proxy for latent value.
//!
//! A field's normalized citation score `C = (Y − μ)/s` decomposes as
//! `C = T + (1 − q)Δ_C`. Under joint Gaussianity, `E[T | C = c] = ρ_C²·c`,
//! so one raw citation is worth `κ = ρ_C²/s` units of latent value, and the
//! exchange rate between two fields is the ratio of their `κ`s.
//!
//! `r_C` can be read as an effective number of independent proxy channels,
//! each as variable as the signal itself.

use crate::analytic::{coupling_unchecked, MixingMode};
use crate::error::{ensure, Error, Result};
use crate::mc::{top_of_n_pairs, Execution, GaussianProxy};
use crate::stats::{CoMoments, Regression};
use crate::Scalar;

/// Citation-market parameters of one field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile<F> {
    name: String,
    q: F,
    r_c: F,
    s: F,
    mu: F,
}

impl<F: Scalar> FieldProfile<F> {
    pub fn new(name: impl Into<String>, q: F, r_c: F, s: F, mu: F) -> Result<Self> {
        let q = ensure(q, "q", "in [0, 1]", |v| v >= F::zero() && v <= F::one())?;
        let r_c = ensure(r_c, "r_c", ">= 0", |v| v >= F::zero() && v.is_finite())?;
        let s = ensure(s, "s", "> 0", |v| v > F::zero() && v.is_finite())?;
        let mu = ensure(mu, "mu", ">= 0", |v| v >= F::zero() && v.is_finite())?;
        Ok(Self {
            name: name.into(),
            q,
            r_c,
            s,
            mu,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn q(&self) -> F {
        self.q
    }

    pub fn r_c(&self) -> F {
        self.r_c
    }

    pub fn s(&self) -> F {
        self.s
    }

    pub fn mu(&self) -> F {
        self.mu
    }

    /// `K = (1 − q)²·r_C`.
    pub fn k_factor(&self) -> F {
        let miss = F::one() - self.q;
        miss * miss * self.r_c
    }

    /// `ρ_C = (1 + K)^(−1/2)`.
    pub fn coupling(&self) -> F {
        coupling_unchecked(self.q, self.r_c, MixingMode::LinearShrinkage)
    }

    /// Maps raw citations to the normalized score `(y − μ)/s`.
    pub fn normalize(&self, y: F) -> F {
        (y - self.mu) / self.s
    }
}

/// Conditional law of the latent value given a citation score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalValue<F> {
    /// `E[T | C = c]`.
    pub mean: F,
    /// `Var(T | C = c)`.
    pub variance: F,
    /// `E[C − T | C = c]`.
    pub inflation: F,
}

pub fn citation_coupling<F: Scalar>(f: &FieldProfile<F>) -> F {
    f.coupling()
}

/// `E[T|C=c] = ρ²c`, `Var(T|C=c) = Var(T)(1 − ρ²)`, `E[C−T|C=c] = (1 − ρ²)c`.
pub fn conditional_value_normalized<F: Scalar>(
    f: &FieldProfile<F>,
    c: F,
    var_t: F,
) -> Result<ConditionalValue<F>> {
    let var_t = ensure(var_t, "var_t", "> 0", |v| v > F::zero() && v.is_finite())?;
    let share = f.coupling().powi(2);
    let mean = share * c;
    Ok(ConditionalValue {
        mean,
        variance: var_t * (F::one() - share),
        inflation: c - mean,
    })
}

/// The conditional law at raw citation count `y`, in latent units.
pub fn conditional_value_raw<F: Scalar>(
    f: &FieldProfile<F>,
    y: F,
    var_t: F,
) -> Result<ConditionalValue<F>> {
    conditional_value_normalized(f, f.normalize(y), var_t)
}

/// `κ_f = ρ_C²/s`: latent value per additional raw citation.
pub fn marginal_value_per_citation<F: Scalar>(f: &FieldProfile<F>) -> F {
    f.coupling().powi(2) / f.s
}

/// How many citations in `a` match one citation in `b`:
/// `κ_b/κ_a = (s_a/s_b)·(1 + K_a)/(1 + K_b)`.
pub fn exchange_rate<F: Scalar>(a: &FieldProfile<F>, b: &FieldProfile<F>) -> F {
    (a.s / b.s) * (F::one() + a.k_factor()) / (F::one() + b.k_factor())
}

/// Simulated winner's-curse regression for a field.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionCheck<F> {
    /// Regression of the selected paper's `T` on `C_max`.
    pub fit: Regression<F>,
    /// `(C_max, T_{i*})` for every cohort.
    pub pairs: Vec<(F, F)>,
}

/// Simulates `n_trials` cohorts of `n_papers` papers with unit latent variance,
/// selects the most cited paper in each, and regresses its `T` on `C_max`.
///
/// The slope estimates `ρ_C²`: selecting on the maximum does not change the
/// conditional law of the selected paper.
pub fn top_cited_selection_check<F: Scalar>(
    f: &FieldProfile<F>,
    n_papers: usize,
    n_trials: usize,
    seed: u64,
) -> Result<SelectionCheck<F>> {
    if n_papers < 2 {
        return Err(Error::domain("n_papers", n_papers as f64, ">= 2"));
    }
    if n_trials < 10_000 {
        return Err(Error::domain("n_trials", n_trials as f64, ">= 10000"));
    }
    let pairs = top_of_n_pairs(&field_proxy(f)?, n_papers, n_trials, seed, Execution::Parallel)?;
    let mut m = CoMoments::new();
    pairs.iter().for_each(|&(c, t)| m.push(c, t));
    Ok(SelectionCheck {
        fit: m.regress_y_on_x(),
        pairs,
    })
}

/// The field's normalized score as a Gaussian proxy with `Var(T) = 1`.
pub fn field_proxy<F: Scalar>(f: &FieldProfile<F>) -> Result<GaussianProxy<F>> {
    GaussianProxy::new(F::one(), f.k_factor())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(name: &str, q: f64, r_c: f64, s: f64, mu: f64) -> FieldProfile<f64> {
        FieldProfile::new(name, q, r_c, s, mu).unwrap()
    }

    #[test]
    fn worked_comparison() {
        let a = field("A", 0.1, 100.0, 5.0, 0.0);
        let b = field("B", 0.5, 5.0, 1.0, 0.0);
        assert!((a.k_factor() - 81.0).abs() < 1e-12);
        assert_eq!(b.k_factor(), 1.25);
        assert!((citation_coupling(&a) - 1.0 / 82f64.sqrt()).abs() < 1e-15);
        assert!((citation_coupling(&b) - 2.0 / 3.0).abs() < 1e-15);
        assert!((exchange_rate(&a, &b) - 1640.0 / 9.0).abs() < 1e-9);
        assert_eq!(citation_coupling(&field("C", 1.0, 1e6, 1.0, 0.0)), 1.0);
    }

    #[test]
    fn conditional_value_examples() {
        let perfect = field("P", 1.0, 3.0, 1.0, 0.0);
        let cv = conditional_value_normalized(&perfect, 2.5, 1.7).unwrap();
        assert_eq!((cv.mean, cv.variance, cv.inflation), (2.5, 0.0, 0.0));

        let b = field("B", 0.5, 5.0, 1.0, 0.0);
        let cv = conditional_value_normalized(&b, 9.0, 1.0).unwrap();
        assert!((cv.mean - 4.0).abs() < 1e-12);
        assert!((cv.inflation - 5.0).abs() < 1e-12);
        assert!((cv.variance - 5.0 / 9.0).abs() < 1e-12);
        assert!(conditional_value_normalized(&b, 9.0, 0.0).is_err());
    }

    #[test]
    fn raw_units() {
        let b = field("B", 0.5, 5.0, 2.0, 10.0);
        assert_eq!(conditional_value_raw(&b, 10.0, 1.0).unwrap().mean, 0.0);
        let cv = conditional_value_raw(&b, 28.0, 1.0).unwrap();
        assert!((cv.mean - 4.0).abs() < 1e-12);
        assert!(FieldProfile::new("bad", 0.5, 5.0, 0.0, 10.0).is_err());
        assert!(FieldProfile::new("bad", 0.5, 5.0, -1.0, 10.0).is_err());
    }

    #[test]
    fn marginal_value_examples() {
        let b = field("B", 0.5, 5.0, 1.0, 0.0);
        assert!((marginal_value_per_citation(&b) - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(marginal_value_per_citation(&field("U", 1.0, 2.0, 1.0, 0.0)), 1.0);
        let b2 = field("B2", 0.5, 5.0, 2.0, 0.0);
        let ratio = marginal_value_per_citation(&b2) / marginal_value_per_citation(&b);
        assert!((ratio - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exchange_rate_identities() {
        let a = field("A", 0.1, 100.0, 5.0, 3.0);
        let b = field("B", 0.5, 5.0, 1.0, 7.0);
        assert_eq!(exchange_rate(&a, &a), 1.0);
        assert!((exchange_rate(&a, &b) * exchange_rate(&b, &a) - 1.0).abs() < 1e-12);
        let kappa_ratio = marginal_value_per_citation(&b) / marginal_value_per_citation(&a);
        assert!((kappa_ratio / exchange_rate(&a, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_coupling_selection() {
        let p = field("P", 1.0, 5.0, 1.0, 0.0);
        let check = top_cited_selection_check(&p, 10, 10_000, 2).unwrap();
        assert_eq!(check.fit.slope, 1.0);
        assert!(check.fit.residual_ss.abs() < 1e-9);
        assert!(top_cited_selection_check(&p, 1, 10_000, 2).is_err());
        assert!(top_cited_selection_check(&p, 2, 9_999, 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn profile() -> impl Strategy<Value = FieldProfile<f64>> {
            (0.0f64..=1.0, 0.0f64..200.0, 0.01f64..100.0, 0.0f64..50.0)
                .prop_map(|(q, r, s, mu)| FieldProfile::new("f", q, r, s, mu).unwrap())
        }

        proptest! {
            #[test]
            fn mean_plus_inflation_is_the_score(f in profile(), c in -50.0f64..50.0, var_t in 0.01f64..10.0) {
                let cv = conditional_value_normalized(&f, c, var_t).unwrap();
                prop_assert!((cv.mean + cv.inflation - c).abs() <= 1e-12 * c.abs().max(1.0));
                prop_assert!(cv.variance >= 0.0);
            }

            #[test]
            fn exchange_rates_compose(a in profile(), b in profile(), c in profile()) {
                let direct = exchange_rate(&a, &c);
                let via = exchange_rate(&a, &b) * exchange_rate(&b, &c);
                prop_assert!((direct - via).abs() <= 1e-12 * direct.abs().max(1.0));
            }
        }
    }
}

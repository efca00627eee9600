//! Audit-rate choice as an evidence acquisition problem.
//!
//! An auditing policy is reduced to the share `q` of claims that receive a
//! decisive check. Its value is the truth-coupling it buys minus the cost of
//! the checks: `J(q) = ρ(q, r) − λ·c·q`.

use crate::analytic::{coupling_unchecked, MixingMode};
use crate::error::{ensure, Result};
use crate::Scalar;

/// Points of the coarse grid scanned before refinement.
pub const COARSE_GRID: usize = 1000;

/// Values of `J` closer than this are treated as ties, resolved toward smaller `q`.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyProblem<F> {
    r: F,
    lambda_cost: F,
    unit_cost: F,
    mode: MixingMode,
}

impl<F: Scalar> PolicyProblem<F> {
    pub fn new(r: F, lambda_cost: F, unit_cost: F, mode: MixingMode) -> Result<Self> {
        let r = ensure(r, "r", ">= 0", |v| v >= F::zero() && v.is_finite())?;
        let lambda_cost = ensure(lambda_cost, "lambda_cost", ">= 0", |v| {
            v >= F::zero() && v.is_finite()
        })?;
        let unit_cost = ensure(unit_cost, "unit_cost", "> 0", |v| v > F::zero() && v.is_finite())?;
        Ok(Self {
            r,
            lambda_cost,
            unit_cost,
            mode,
        })
    }

    pub fn r(&self) -> F {
        self.r
    }

    pub fn mode(&self) -> MixingMode {
        self.mode
    }

    /// `λ·c`, the marginal cost of auditing every claim.
    pub fn cost_weight(&self) -> F {
        self.lambda_cost * self.unit_cost
    }

    fn value(&self, q: F) -> F {
        coupling_unchecked(q, self.r, self.mode) - self.cost_weight() * q
    }
}

/// `J(q) = ρ(q, r) − λ·c·q`.
pub fn objective<F: Scalar>(p: &PolicyProblem<F>, q: F) -> Result<F> {
    let q = ensure(q, "q", "in [0, 1]", |v| v >= F::zero() && v <= F::one())?;
    Ok(p.value(q))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicySolution<F> {
    pub q_star: F,
    pub value: F,
    /// `ρ(q*, r)` under the problem's mixing mode.
    pub coupling: F,
}

/// Maximizes `J` on `[0, 1]`: a coarse grid locates the best bracket, then
/// golden-section search refines inside it.
pub fn optimize_audit_rate<F: Scalar>(p: &PolicyProblem<F>) -> PolicySolution<F> {
    let tie = F::lit(TIE_TOLERANCE);
    let last = F::from_count(COARSE_GRID - 1);
    let grid: Vec<(F, F)> = (0..COARSE_GRID)
        .map(|i| {
            let q = F::from_count(i) / last;
            (q, p.value(q))
        })
        .collect();
    let best = grid.iter().map(|&(_, v)| v).fold(F::neg_infinity(), F::max);
    let idx = grid
        .iter()
        .position(|&(_, v)| v >= best - tie)
        .expect("grid has a maximum");

    let lo = grid[idx.saturating_sub(1)].0;
    let hi = grid[(idx + 1).min(COARSE_GRID - 1)].0;
    let refined = golden_section_max(|q| p.value(q), lo, hi);

    let mut candidates = [grid[idx], (refined, p.value(refined))];
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite rates"));
    let top = candidates[0].1.max(candidates[1].1);
    let (q_star, value) = *candidates
        .iter()
        .find(|&&(_, v)| v >= top - tie)
        .expect("one candidate attains the max");
    PolicySolution {
        q_star,
        value,
        coupling: coupling_unchecked(q_star, p.r, p.mode),
    }
}

/// Maximizer of a unimodal `f` on `[lo, hi]`.
fn golden_section_max<F: Scalar>(f: impl Fn(F) -> F, mut lo: F, mut hi: F) -> F {
    let inv_phi = (F::lit(5.0).sqrt() - F::one()) / F::lit(2.0);
    let tol = F::epsilon().sqrt() * F::lit(1e-2);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    (lo + hi) / F::lit(2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest maximizer of `J` on an `n`-point grid, ties within 1e-12.
    fn grid_oracle(p: &PolicyProblem<f64>, n: usize) -> (f64, f64) {
        let vals: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let q = i as f64 / (n - 1) as f64;
                let rho = (1.0 + (1.0 - q).powi(2) * p.r()).powf(-0.5);
                (q, rho - p.cost_weight() * q)
            })
            .collect();
        let best = vals.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
        *vals.iter().find(|v| v.1 >= best - 1e-12).unwrap()
    }

    fn problem(r: f64, cost: f64) -> PolicyProblem<f64> {
        PolicyProblem::new(r, cost, 1.0, MixingMode::LinearShrinkage).unwrap()
    }

    #[test]
    fn objective_at_zero_is_baseline_coupling() {
        let p = problem(5.0, 0.3);
        assert!((objective(&p, 0.0).unwrap() - 6f64.powf(-0.5)).abs() < 1e-15);
        assert!(objective(&p, 1.2).is_err());
    }

    #[test]
    fn free_verification_is_full_verification() {
        for mode in MixingMode::ALL {
            let p = PolicyProblem::<f64>::new(5.0, 0.0, 3.0, mode).unwrap();
            let sol = optimize_audit_rate(&p);
            assert!((sol.q_star - 1.0).abs() < 1e-4, "{mode}: {}", sol.q_star);
            assert!((sol.value - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn expensive_verification_is_skipped() {
        let sol = optimize_audit_rate(&problem(0.5, 1.0));
        assert_eq!(sol.q_star, 0.0);
        for mode in MixingMode::ALL {
            let p = PolicyProblem::new(0.0, 0.01, 1.0, mode).unwrap();
            assert_eq!(optimize_audit_rate(&p).q_star, 0.0);
        }
    }

    #[test]
    fn interior_optimum_matches_oracle() {
        let p = problem(5.0, 0.1);
        let sol = optimize_audit_rate(&p);
        let (q_o, v_o) = grid_oracle(&p, 100_001);
        assert!(sol.q_star > 0.0 && sol.q_star < 1.0);
        assert!((sol.q_star - q_o).abs() <= 1e-4);
        assert!(sol.value >= v_o - 1e-12);
        assert!((sol.value - v_o).abs() <= 1e-8);
    }

    #[test]
    fn comparative_statics() {
        let rs: Vec<f64> = (0..20).map(|i| 0.1 * 1.4f64.powi(i)).collect();
        let costs: Vec<f64> = (0..20).map(|i| 0.005 * 1.35f64.powi(i)).collect();
        let q = |r: f64, c: f64| optimize_audit_rate(&problem(r, c)).q_star;
        for &r in &rs {
            for w in costs.windows(2) {
                assert!(q(r, w[1]) <= q(r, w[0]) + 1e-6, "r={r} cost {:?}", w);
            }
        }
        for &c in &costs {
            for w in rs.windows(2) {
                assert!(q(w[1], c) >= q(w[0], c) - 1e-6, "cost={c} r {:?}", w);
            }
        }
    }

    #[test]
    fn bernoulli_optimum_is_a_corner() {
        // ρ is convex in q under the coin-flip model, so J peaks at an endpoint
        for &(r, c) in &[(5.0, 0.1), (20.0, 0.5), (1.0, 0.05), (50.0, 0.9)] {
            let p = PolicyProblem::new(r, c, 1.0, MixingMode::BernoulliMixture).unwrap();
            let sol = optimize_audit_rate(&p);
            assert!(sol.q_star < 1e-4 || sol.q_star > 1.0 - 1e-4, "{r},{c}: {}", sol.q_star);
        }
    }

    #[test]
    fn single_precision_solver() {
        let p = PolicyProblem::<f32>::new(5.0, 0.1, 1.0, MixingMode::LinearShrinkage).unwrap();
        let sol = optimize_audit_rate(&p);
        let (q_o, _) = grid_oracle(&problem(5.0, 0.1), 100_001);
        assert!((sol.q_star as f64 - q_o).abs() < 1e-3);
    }
}

//! Streaming moments and small estimators shared by the simulation and estimation layers.

use crate::Scalar;

/// Running first and second moments of a pair `(x, y)`.
///
/// Updates use Welford's recurrence; [`CoMoments::merge`] is Chan's pairwise
/// combination, so partial accumulators can be built independently and
/// folded together in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoMoments<F> {
    n: usize,
    mean_x: F,
    mean_y: F,
    m2_x: F,
    m2_y: F,
    c_xy: F,
}

impl<F: Scalar> Default for CoMoments<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Scalar> CoMoments<F> {
    pub fn new() -> Self {
        Self {
            n: 0,
            mean_x: F::zero(),
            mean_y: F::zero(),
            m2_x: F::zero(),
            m2_y: F::zero(),
            c_xy: F::zero(),
        }
    }

    pub fn push(&mut self, x: F, y: F) {
        self.n += 1;
        let n = F::from_count(self.n);
        let dx = x - self.mean_x;
        self.mean_x = self.mean_x + dx / n;
        let dy = y - self.mean_y;
        self.mean_y = self.mean_y + dy / n;
        self.m2_x = self.m2_x + dx * (x - self.mean_x);
        self.m2_y = self.m2_y + dy * (y - self.mean_y);
        self.c_xy = self.c_xy + dx * (y - self.mean_y);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (F::from_count(self.n), F::from_count(other.n));
        let n = na + nb;
        let dx = other.mean_x - self.mean_x;
        let dy = other.mean_y - self.mean_y;
        let w = na * nb / n;
        self.m2_x = self.m2_x + other.m2_x + dx * dx * w;
        self.m2_y = self.m2_y + other.m2_y + dy * dy * w;
        self.c_xy = self.c_xy + other.c_xy + dx * dy * w;
        self.mean_x = self.mean_x + dx * nb / n;
        self.mean_y = self.mean_y + dy * nb / n;
        self.n += other.n;
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean_x(&self) -> F {
        self.mean_x
    }

    pub fn mean_y(&self) -> F {
        self.mean_y
    }

    /// Unbiased sample variance of `x`.
    pub fn var_x(&self) -> F {
        self.m2_x / F::from_count(self.n.saturating_sub(1).max(1))
    }

    pub fn var_y(&self) -> F {
        self.m2_y / F::from_count(self.n.saturating_sub(1).max(1))
    }

    /// Pearson correlation; NaN when either margin is constant.
    pub fn correlation(&self) -> F {
        // one square root of the product keeps corr(x, x) exactly 1
        let r = self.c_xy / (self.m2_x * self.m2_y).sqrt();
        r.max(-F::one()).min(F::one())
    }

    /// Least-squares regression of `y` on `x`.
    pub fn regress_y_on_x(&self) -> Regression<F> {
        let slope = self.c_xy / self.m2_x;
        let intercept = self.mean_y - slope * self.mean_x;
        let rss = (self.m2_y - slope * self.c_xy).max(F::zero());
        let std_err = if self.n > 2 {
            (rss / F::from_count(self.n - 2) / self.m2_x).sqrt()
        } else {
            F::nan()
        };
        Regression {
            slope,
            intercept,
            std_err,
            residual_ss: rss,
            n: self.n,
        }
    }
}

/// An ordinary least squares fit `y ≈ intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regression<F> {
    pub slope: F,
    pub intercept: F,
    /// Classical standard error of the slope.
    pub std_err: F,
    pub residual_ss: F,
    pub n: usize,
}

/// Fits `y` on `x` over a slice of pairs.
pub fn ols<F: Scalar>(pairs: &[(F, F)]) -> Regression<F> {
    let mut m = CoMoments::new();
    for &(x, y) in pairs {
        m.push(x, y);
    }
    m.regress_y_on_x()
}

pub fn mean<F: Scalar>(xs: &[F]) -> F {
    xs.iter().copied().sum::<F>() / F::from_count(xs.len())
}

/// Unbiased (`n − 1`) sample variance, two-pass.
pub fn sample_variance<F: Scalar>(xs: &[F]) -> F {
    let m = mean(xs);
    let ss: F = xs.iter().map(|&x| (x - m) * (x - m)).sum();
    ss / F::from_count(xs.len() - 1)
}

/// Sample variance together with a large-sample standard error
/// `sqrt((m₄ − s⁴)/n)`.
pub fn variance_with_error<F: Scalar>(xs: &[F]) -> (F, F) {
    let n = F::from_count(xs.len());
    let m = mean(xs);
    let (m2, m4) = xs.iter().fold((F::zero(), F::zero()), |(a, b), &x| {
        let d = (x - m) * (x - m);
        (a + d, b + d * d)
    });
    let var = m2 / F::from_count(xs.len() - 1);
    let pop_var = m2 / n;
    let fourth = m4 / n;
    let se = ((fourth - pop_var * pop_var).max(F::zero()) / n).sqrt();
    (var, se)
}

/// Median of a sample; averages the two middle values for even lengths.
pub fn median<F: Scalar>(xs: &[F]) -> F {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("median of NaN"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / F::lit(2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perfect_line() {
        let pairs: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 3.0 * i as f64 + 1.0)).collect();
        let fit = ols(&pairs);
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!(fit.residual_ss < 1e-18);
    }

    #[test]
    fn identical_margins_correlate_exactly() {
        let mut m = CoMoments::<f64>::new();
        for i in 0..1000 {
            let x = (i as f64 * 0.37).sin() * 3.1;
            m.push(x, x);
        }
        assert_eq!(m.correlation(), 1.0);
        assert_eq!(m.regress_y_on_x().slope, 1.0);
    }

    #[test]
    fn variance_and_median() {
        let xs = [1.0f64, 2.0, 3.0, 4.0];
        assert!((sample_variance(&xs) - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(median(&xs), 2.5);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
    }

    proptest! {
        #[test]
        fn merge_matches_single_pass(
            data in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 2..200),
            split in 0usize..200,
        ) {
            let split = split.min(data.len());
            let mut whole = CoMoments::new();
            data.iter().for_each(|&(x, y)| whole.push(x, y));
            let (mut a, mut b) = (CoMoments::new(), CoMoments::new());
            data[..split].iter().for_each(|&(x, y)| a.push(x, y));
            data[split..].iter().for_each(|&(x, y)| b.push(x, y));
            a.merge(&b);
            prop_assert_eq!(a.count(), whole.count());
            prop_assert!((a.var_x() - whole.var_x()).abs() <= 1e-9 * whole.var_x().max(1.0));
            prop_assert!((a.mean_y() - whole.mean_y()).abs() <= 1e-9);
            let (ca, cw) = (a.correlation(), whole.correlation());
            if cw.is_finite() {
                prop_assert!((ca - cw).abs() <= 1e-9);
            }
        }
    }
}

//! Parameter sweeps behind the phase diagram.

use crate::analytic::{
    contour_noise_ratio, coupling_unchecked, verification_rate, MixingMode,
};
use crate::error::{ensure, Error, Result};
use crate::Scalar;

/// `n` log-spaced points from `min` to `max`, both endpoints exact.
pub fn log_space<F: Scalar>(min: F, max: F, n: usize) -> Result<Vec<F>> {
    let min = ensure(min, "min", "> 0", |v| v > F::zero() && v.is_finite())?;
    let max = ensure(max, "max", ">= min", |v| v >= min && v.is_finite())?;
    if n == 0 {
        return Err(Error::domain("points", 0.0, ">= 1"));
    }
    if n == 1 {
        return Ok(vec![min]);
    }
    let ratio = max / min;
    let last = F::from_count(n - 1);
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                max
            } else {
                min * ratio.powf(F::from_count(i) / last)
            }
        })
        .collect())
}

/// Axes of the (Λ, r) phase diagram plus the contour levels to trace.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid<F> {
    pub lambda_min: F,
    pub lambda_max: F,
    pub lambda_points: usize,
    pub r_min: F,
    pub r_max: F,
    pub r_points: usize,
    pub contour_levels: Vec<F>,
    /// Pressures at which contour rows are emitted; defaults to the grid's `Λ > 1`.
    pub contour_lambdas: Option<Vec<F>>,
}

impl<F: Scalar> Default for PhaseGrid<F> {
    fn default() -> Self {
        Self {
            lambda_min: F::one(),
            lambda_max: F::lit(100.0),
            lambda_points: 100,
            r_min: F::lit(0.1),
            r_max: F::lit(60.0),
            r_points: 100,
            contour_levels: vec![F::lit(0.5), F::lit(0.7), F::lit(0.9)],
            contour_lambdas: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Grid,
    /// `r` solves `ρ(1/Λ, r) = level`.
    Contour,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRow<F> {
    pub lambda: F,
    pub r: F,
    pub q: F,
    pub rho: F,
    pub kind: RowKind,
}

/// Truth-coupling over the grid (Λ-major), followed by contour rows for each level.
pub fn phase_diagram<F: Scalar>(grid: &PhaseGrid<F>) -> Result<Vec<PhaseRow<F>>> {
    let lambdas = log_space(grid.lambda_min, grid.lambda_max, grid.lambda_points)?;
    let rs = log_space(grid.r_min, grid.r_max, grid.r_points)?;
    let mut rows = Vec::with_capacity(lambdas.len() * rs.len());
    for &lambda in &lambdas {
        let q = verification_rate(lambda)?;
        for &r in &rs {
            rows.push(PhaseRow {
                lambda,
                r,
                q,
                rho: coupling_unchecked(q, r, MixingMode::LinearShrinkage),
                kind: RowKind::Grid,
            });
        }
    }
    let contour_lambdas: Vec<F> = match &grid.contour_lambdas {
        Some(ls) => ls.clone(),
        None => lambdas.iter().copied().filter(|&l| l > F::one()).collect(),
    };
    for &level in &grid.contour_levels {
        for &lambda in &contour_lambdas {
            rows.push(PhaseRow {
                lambda,
                r: contour_noise_ratio(level, lambda)?,
                q: verification_rate(lambda)?,
                rho: level,
                kind: RowKind::Contour,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::truth_coupling;

    #[test]
    fn log_space_endpoints() {
        let xs = log_space(1.0f64, 100.0, 3).unwrap();
        assert_eq!(xs[0], 1.0);
        assert!((xs[1] - 10.0).abs() < 1e-12);
        assert_eq!(xs[2], 100.0);
        assert_eq!(log_space(2.0, 5.0, 1).unwrap(), vec![2.0]);
        assert!(log_space(0.0, 5.0, 3).is_err());
        assert!(log_space(6.0, 5.0, 3).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let rows = phase_diagram(&PhaseGrid::<f64>::default()).unwrap();
        let grid = rows.iter().filter(|r| r.kind == RowKind::Grid).count();
        let contour = rows.iter().filter(|r| r.kind == RowKind::Contour).count();
        assert_eq!(grid, 10_000);
        assert_eq!(contour, 3 * 99);
        assert!(rows[..10_000].iter().all(|r| r.kind == RowKind::Grid));
    }

    #[test]
    fn sub_capacity_rows_are_fully_coupled() {
        let g = PhaseGrid {
            lambda_min: 0.2,
            lambda_max: 50.0,
            lambda_points: 40,
            ..PhaseGrid::<f64>::default()
        };
        for row in phase_diagram(&g).unwrap() {
            if row.lambda <= 1.0 {
                assert_eq!(row.rho, 1.0);
                assert_eq!(row.q, 1.0);
            }
        }
    }

    #[test]
    fn contour_rows_hit_their_level() {
        let g = PhaseGrid {
            contour_lambdas: Some(vec![2.0, 5.0, 22.0]),
            ..PhaseGrid::<f64>::default()
        };
        let rows = phase_diagram(&g).unwrap();
        let contours: Vec<_> = rows.iter().filter(|r| r.kind == RowKind::Contour).collect();
        assert_eq!(contours.len(), 9);
        let first = contours[0];
        assert_eq!((first.lambda, first.rho), (2.0, 0.5));
        assert!((first.r - 12.0).abs() < 1e-12);
        for row in contours {
            let back = truth_coupling(1.0 / row.lambda, row.r, MixingMode::LinearShrinkage).unwrap();
            assert!((back - row.rho).abs() <= 1e-12);
        }
    }
}

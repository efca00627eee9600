//! Quantitative models of verification scarcity in peer review.
//!
//! * [`analytic`]: verification pressure, verification rate, truth-coupling
//!   and the coupling budget.
//! * [`incentives`]: the researcher's truth-vs-proxy effort problem and its
//!   collapse threshold.
//! * [`mc`]: reproducible Monte Carlo checks of the closed forms, including
//!   best-of-K Pareto gaming and selection experiments.
//! * [`citation`]: citation truth-coupling, winner's curse and cross-field
//!   exchange rates.
//! * [`estimation`]: audit-based variance decomposition, headroom statistics
//!   and pressure estimates from venue counts.
//! * [`policy`]: the audit-rate optimizer.
//! * [`sweep`]: the phase-diagram sweep.
//!
//! All models are generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar for the common cases.

pub mod analytic;
pub mod citation;
pub mod error;
pub mod estimation;
pub mod incentives;
pub mod mc;
pub mod policy;
mod scalar;
pub mod stats;
pub mod sweep;

pub use analytic::MixingMode;
pub use error::{Error, Result};
pub use incentives::EffortRegime;
pub use scalar::Scalar;

pub type ModelParamsF64 = analytic::ModelParams<f64>;
pub type ModelParamsF32 = analytic::ModelParams<f32>;
pub type PressureInputsF64 = analytic::PressureInputs<f64>;
pub type PressureInputsF32 = analytic::PressureInputs<f32>;
pub type EffortFamilyF64 = incentives::EffortFamily<f64>;
pub type EffortFamilyF32 = incentives::EffortFamily<f32>;
pub type EffortSpecF64 = incentives::EffortSpec<f64>;
pub type EffortSpecF32 = incentives::EffortSpec<f32>;
pub type EffortSolutionF64 = incentives::EffortSolution<f64>;
pub type SimConfigF64 = mc::SimConfig<f64>;
pub type CorrEstimateF64 = mc::CorrEstimate<f64>;
pub type ParetoGamingF64 = mc::ParetoGaming<f64>;
pub type ParetoGamingF32 = mc::ParetoGaming<f32>;
pub type FieldProfileF64 = citation::FieldProfile<f64>;
pub type FieldProfileF32 = citation::FieldProfile<f32>;
pub type ConditionalValueF64 = citation::ConditionalValue<f64>;
pub type AuditRecordF64 = estimation::AuditRecord<f64>;
pub type HeadroomSeriesF64 = estimation::HeadroomSeries<f64>;
pub type VenueCountsF64 = estimation::VenueCounts<f64>;
pub type PolicyProblemF64 = policy::PolicyProblem<f64>;
pub type PolicyProblemF32 = policy::PolicyProblem<f32>;
pub type PhaseGridF64 = sweep::PhaseGrid<f64>;

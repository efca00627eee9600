//! One function per subcommand, each turning a scenario into a table.

use std::fs::File;
use std::io::BufReader;

use truthcoupling::analytic::{truth_coupling, ModelParams, PressureInputs};
use truthcoupling::citation::{exchange_rate, marginal_value_per_citation, FieldProfile};
use truthcoupling::estimation::{
    decompose_variance, estimate_pressure, headroom_stats, read_audit_csv, read_headroom_csv,
    VenueCounts, DEFAULT_HEADROOM_WINDOW,
};
use truthcoupling::incentives::{effort_curve, EffortFamily};
use truthcoupling::mc::{
    attempts_under_pressure, best_of_k_median_approx, best_of_k_quantile, best_of_k_samples,
    simulate_coupling, stream_seed, Execution, ParetoGaming, SimConfig,
};
use truthcoupling::policy::{optimize_audit_rate, PolicyProblem};
use truthcoupling::stats::{median, variance_with_error};
use truthcoupling::sweep::{phase_diagram, PhaseGrid};
use truthcoupling::MixingMode;

use crate::config::{default_fields, FamilyBlock, ScenarioConfig, DEFAULT_SEED};
use crate::error::CliError;
use crate::table::{fmt_num, Table};

type Out = Result<Table, CliError>;

fn seed(cfg: &ScenarioConfig) -> u64 {
    cfg.base_seed.unwrap_or(DEFAULT_SEED)
}

pub fn phase(cfg: &ScenarioConfig) -> Out {
    let p = cfg.phase.clone().unwrap_or_default();
    let d = PhaseGrid::<f64>::default();
    let grid = PhaseGrid {
        lambda_min: p.lambda_min.unwrap_or(d.lambda_min),
        lambda_max: p.lambda_max.unwrap_or(d.lambda_max),
        lambda_points: p.lambda_points.unwrap_or(d.lambda_points),
        r_min: p.r_min.unwrap_or(d.r_min),
        r_max: p.r_max.unwrap_or(d.r_max),
        r_points: p.r_points.unwrap_or(d.r_points),
        contour_levels: p.contour_levels.unwrap_or(d.contour_levels),
        contour_lambdas: p.contour_lambdas.or(d.contour_lambdas),
    };
    let mut t = Table::new(&["lambda", "r", "q", "rho"]);
    for row in phase_diagram(&grid)? {
        t.push(vec![fmt_num(row.lambda), fmt_num(row.r), fmt_num(row.q), fmt_num(row.rho)]);
    }
    Ok(t)
}

pub fn collapse(cfg: &ScenarioConfig) -> Out {
    let e = cfg.effort.clone().unwrap_or_default();
    let family = match e.family {
        FamilyBlock::Log { a, b } => EffortFamily::log(a, b)?,
        FamilyBlock::Power { scale, exponent } => EffortFamily::power(scale, exponent)?,
    };
    let q_grid = match (e.q_grid, e.q_points) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("effort: give q_grid or q_points, not both".into()))
        }
        (Some(g), None) => g,
        (None, n) => {
            let n = n.unwrap_or(201);
            if n < 2 {
                return Err(CliError::Config("effort.q_points must be at least 2".into()));
            }
            (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
        }
    };
    let mut t = Table::new(&["x", "e_star", "regime"]);
    for p in effort_curve(&family, e.gamma, &q_grid)? {
        t.push(vec![
            fmt_num(p.incentive),
            fmt_num(p.solution.e_star),
            p.solution.regime.as_str().into(),
        ]);
    }
    Ok(t)
}

pub fn simulate(cfg: &ScenarioConfig) -> Out {
    let m = cfg.model.clone().unwrap_or_default();
    let model = match (m.q, &m.pressure) {
        (Some(q), None) => ModelParams::new(m.var_t, m.var_delta, q)?,
        (None, Some(p)) => {
            let inputs = PressureInputs::new(p.claim_rate, p.raw_cost, p.fidelity, p.bandwidth)?;
            ModelParams::from_pressure(m.var_t, m.var_delta, &inputs)?
        }
        _ => return Err(CliError::Config("model: give exactly one of q and pressure".into())),
    };
    let sim = cfg.sim.clone().unwrap_or_default();
    let mut t = Table::new(&[
        "q",
        "r",
        "mode",
        "rho_hat",
        "std_err",
        "n_total",
        "rho_closed_form",
    ]);
    for mode in sim.modes {
        let mode = MixingMode::from(mode);
        let sc = SimConfig::new(sim.replications, sim.samples_per_rep, seed(cfg), model, mode)?;
        let est = simulate_coupling(&sc)?;
        t.push(vec![
            fmt_num(model.q()),
            fmt_num(model.noise_ratio()),
            mode.as_str().into(),
            fmt_num(est.rho_hat),
            fmt_num(est.std_err),
            est.n_total.to_string(),
            fmt_num(truth_coupling(model.q(), model.noise_ratio(), mode)?),
        ]);
    }
    Ok(t)
}

pub fn goodhart(cfg: &ScenarioConfig) -> Out {
    let p = cfg.pareto.clone().unwrap_or_default();
    let g = ParetoGaming::new(p.x_min, p.alpha, p.k0, p.beta)?;
    let mut t = Table::new(&[
        "lambda",
        "k_real",
        "k_int",
        "median_exact",
        "median_approx",
        "median_empirical",
        "var_empirical",
        "var_std_err",
    ]);
    for (i, &lambda) in p.lambdas.iter().enumerate() {
        let k = attempts_under_pressure(&g, lambda)?;
        let draws = best_of_k_samples(
            &g,
            k.integer,
            p.n_draws,
            stream_seed(seed(cfg), i as u64),
            Execution::Parallel,
        )?;
        if draws.len() < 2 {
            return Err(CliError::Config("pareto.n_draws must be at least 2".into()));
        }
        let (var, var_se) = variance_with_error(&draws);
        t.push(vec![
            fmt_num(lambda),
            fmt_num(k.real),
            k.integer.to_string(),
            fmt_num(best_of_k_quantile(&g, k.real, 0.5)?),
            fmt_num(best_of_k_median_approx(&g, k.real)?),
            fmt_num(median(&draws)),
            fmt_num(var),
            fmt_num(var_se),
        ]);
    }
    Ok(t)
}

pub fn citations(cfg: &ScenarioConfig) -> Out {
    let blocks = cfg.fields.clone().unwrap_or_else(default_fields);
    if blocks.len() < 2 {
        return Err(CliError::Config("fields: need at least two profiles".into()));
    }
    let fields = blocks
        .into_iter()
        .map(|b| FieldProfile::new(b.name, b.q, b.r_c, b.s, b.mu))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "from",
        "to",
        "k_from",
        "k_to",
        "rho_from",
        "rho_to",
        "kappa_from",
        "kappa_to",
        "exchange_rate",
    ]);
    for a in &fields {
        for b in &fields {
            if std::ptr::eq(a, b) {
                continue;
            }
            t.push(vec![
                a.name().into(),
                b.name().into(),
                fmt_num(a.k_factor()),
                fmt_num(b.k_factor()),
                fmt_num(a.coupling()),
                fmt_num(b.coupling()),
                fmt_num(marginal_value_per_citation(a)),
                fmt_num(marginal_value_per_citation(b)),
                fmt_num(exchange_rate(a, b)),
            ]);
        }
    }
    Ok(t)
}

fn open(cfg: &ScenarioConfig, path: &std::path::Path) -> Result<BufReader<File>, CliError> {
    let full = cfg.resolve(path);
    File::open(&full)
        .map(BufReader::new)
        .map_err(|e| CliError::Config(format!("cannot open {}: {e}", full.display())))
}

pub fn estimate(cfg: &ScenarioConfig) -> Out {
    let e = cfg.estimate.clone().unwrap_or_default();
    if e.audit_csv.is_none() && e.headroom_csv.is_none() && e.venue.is_none() {
        return Err(CliError::Config(
            "estimate: give at least one of audit_csv, headroom_csv and venue".into(),
        ));
    }
    let mut t = Table::new(&["section", "period", "quantity", "value"]);
    let mut row = |section: &str, period: Option<i64>, quantity: &str, value: String| {
        t.push(vec![
            section.into(),
            period.map(|p| p.to_string()).unwrap_or_default(),
            quantity.into(),
            value,
        ]);
    };

    if let Some(path) = &e.audit_csv {
        let records = read_audit_csv::<f64, _>(open(cfg, path)?)?;
        let d = decompose_variance(&records)?;
        row("audit", None, "n", d.n.to_string());
        row("audit", None, "var_t_hat", fmt_num(d.var_t_hat));
        row("audit", None, "var_delta_hat", fmt_num(d.var_delta_hat));
        row("audit", None, "r_hat", fmt_num(d.r_hat));
    }
    if let Some(path) = &e.headroom_csv {
        let series = read_headroom_csv::<f64, _>(open(cfg, path)?)?;
        let s = headroom_stats(&series, e.window.unwrap_or(DEFAULT_HEADROOM_WINDOW))?;
        for &(p, h) in &s.headroom {
            row("headroom", Some(p), "headroom", fmt_num(h));
        }
        for &(p, d) in &s.improvements {
            row("headroom", Some(p), "improvement", fmt_num(d));
        }
        for &(p, v) in &s.rolling_variance {
            row("headroom", Some(p), "rolling_variance", fmt_num(v));
        }
    }
    if let Some(v) = &e.venue {
        let est = estimate_pressure(&VenueCounts {
            claim_rate: v.claim_rate,
            reviewer_hours: v.reviewer_hours,
            mean_check_cost: v.mean_check_cost,
            fidelity: v.fidelity,
        })?;
        row("pressure", None, "lambda_hat", fmt_num(est.lambda_hat));
        row("pressure", None, "q_hat", fmt_num(est.q_hat));
    }
    Ok(t)
}

pub fn optimize(cfg: &ScenarioConfig) -> Out {
    let p = cfg.policy.clone().unwrap_or_default();
    let mut t = Table::new(&[
        "r",
        "lambda_cost",
        "unit_cost",
        "mode",
        "q_star",
        "objective",
        "rho_at_q_star",
    ]);
    for &mode in &p.modes {
        let mode = MixingMode::from(mode);
        for &r in &p.r {
            for &lc in &p.lambda_cost {
                let sol = optimize_audit_rate(&PolicyProblem::new(r, lc, p.unit_cost, mode)?);
                t.push(vec![
                    fmt_num(r),
                    fmt_num(lc),
                    fmt_num(p.unit_cost),
                    mode.as_str().into(),
                    fmt_num(sol.q_star),
                    fmt_num(sol.value),
                    fmt_num(sol.coupling),
                ]);
            }
        }
    }
    Ok(t)
}

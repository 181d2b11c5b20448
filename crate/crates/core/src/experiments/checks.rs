//! Cross-solve consistency checks: scaling invariance, the Galilean
//! reduction, the gauge identities along a solve, and integrator order.

use serde::Serialize;

use crate::diagnostics::{hs_error, mass};
use crate::error::{LabError, Result};
use crate::evolution::{
    galilean_tau, scale_field, scale_transform, solve, Dealias, EquationSpec, SolveConfig, Trajectory,
};
use crate::experiments::ExperimentConfig;
use crate::field::SpectralField;
use crate::gauge::{gauged_residual, reconstruct_check, GaugeState, GaugedEquation, ResidualSeries};

/// Largest admissible relative mass in the top quarter of the dealiased band.
pub const RESOLUTION_LIMIT: f64 = 1e-10;

/// Rejects a state whose spectrum reaches the dealiasing cutoff.
pub fn check_resolution(u: &SpectralField, dealias: Dealias) -> Result<()> {
    let g = u.grid();
    let cutoff = dealias.cutoff(g);
    let edge = (3 * cutoff) / 4;
    let total: f64 = u.coeffs().iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return Ok(());
    }
    let tail: f64 = g
        .modes()
        .zip(u.coeffs())
        .filter(|(n, _)| n.abs() > edge)
        .map(|(_, c)| c.norm_sqr())
        .sum();
    let rel = tail / total;
    if rel > RESOLUTION_LIMIT {
        return Err(LabError::UnderResolved {
            tail: rel,
            limit: RESOLUTION_LIMIT,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingReport {
    pub lambda: f64,
    pub delta: f64,
    /// `sup_t ||S_lambda v(t) - v_lambda(t)||_{L^2}` on the dilated torus
    pub discrepancy: f64,
    /// `| ||S_lambda u0||_{L^2(T_lambda)} - lambda^{-1/2} ||u0||_{L^2(T)} |`, physical norms
    pub l2_identity_error: f64,
}

/// Solves renormalized ILW(delta) on the base torus, maps it with
/// `S_lambda`, and compares with a direct solve of ILW(lambda delta) on the
/// dilated torus from `S_lambda u0` with the step scaled by `lambda^2`.
pub fn run_scaling_check(cfg: &ExperimentConfig) -> Result<ScalingReport> {
    let delta = cfg.finite_delta()?;
    let lambda = cfg.scale_lambda.unwrap_or(2.0);
    let u0 = cfg.initial()?;
    let base = solve(&EquationSpec::renorm_ilw(delta)?, &u0, &cfg.solve_config())?;
    let mapped = scale_transform(&base, lambda)?;

    let v0 = scale_field(&u0, lambda)?;
    let mut scaled_cfg = cfg.solve_config();
    scaled_cfg.dt *= lambda * lambda;
    scaled_cfg.t_final *= lambda * lambda;
    let direct = solve(&EquationSpec::renorm_ilw(lambda * delta)?, &v0, &scaled_cfg)?;
    let aligned = Trajectory::new(
        *mapped.eq(),
        *mapped.grid(),
        mapped.dt(),
        direct.times().to_vec(),
        direct.fields().to_vec(),
    )?;

    let l2_identity_error = (mass(&v0).sqrt() - lambda.powf(-0.5) * mass(&u0).sqrt()).abs();
    Ok(ScalingReport {
        lambda,
        delta,
        discrepancy: hs_error(&mapped, &aligned, 0.0)?,
        l2_identity_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GalileanReport {
    pub delta: f64,
    pub mean: f64,
    /// translation speed `2 mu - 1/delta`
    pub shift: f64,
    /// `sup_t ||u_A(t) - u_B(t)||_{L^2}`
    pub discrepancy: f64,
}

/// Path A solves ILW(delta) from `u0`. Path B removes the mean `mu`, solves
/// renormalized ILW(delta), then translates by `(2 mu - 1/delta) t` and adds
/// `mu` back.
pub fn run_galilean_check(cfg: &ExperimentConfig) -> Result<GalileanReport> {
    let delta = cfg.finite_delta()?;
    let u0 = cfg.initial()?;
    let mu = u0.mean();
    let solve_cfg = cfg.solve_config();
    let path_a = solve(&EquationSpec::ilw(delta)?, &u0, &solve_cfg)?;
    let v = solve(&EquationSpec::renorm_ilw(delta)?, &u0.shift_mean(-mu), &solve_cfg)?;
    let shift = 2.0 * mu - 1.0 / delta;
    let path_b = galilean_tau(&v, shift)?;
    let path_b = path_b.map_fields(*path_a.eq(), *path_a.grid(), |_, f| Ok(f.shift_mean(mu)))?;
    Ok(GalileanReport {
        delta,
        mean: mu,
        shift,
        discrepancy: hs_error(&path_a, &path_b, 0.0)?,
    })
}

/// Residuals of one refinement level of the gauge check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeLevel {
    pub dt: f64,
    pub primitive: ResidualSeries,
    pub gauged: ResidualSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeCheckReport {
    pub delta: f64,
    pub levels: Vec<GaugeLevel>,
    /// Times at which every level has a residual.
    pub common_times: Vec<f64>,
    /// `max_common(coarse) / max_common(fine)` for the `F` equation, per halving
    pub primitive_ratios: Vec<f64>,
    /// the same for the `w` equation
    pub gauged_ratios: Vec<f64>,
    /// worst reconstruction residual over the coarsest level's snapshots
    pub max_reconstruction: f64,
    /// worst `||dx W - i P_{+,hi}(e^{iF} v)|| / ||v||` over the same snapshots
    pub max_dual_mismatch: f64,
}

#[derive(Serialize)]
pub struct GaugeSummary<'a> {
    pub delta: f64,
    pub dts: Vec<f64>,
    pub primitive_ratios: &'a [f64],
    pub gauged_ratios: &'a [f64],
    pub max_reconstruction: f64,
    pub max_dual_mismatch: f64,
}

impl GaugeCheckReport {
    /// CSV with header `dt,t,f_residual,w_residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dt,t,f_residual,w_residual\n");
        for level in &self.levels {
            for (k, t) in level.primitive.times.iter().enumerate() {
                out.push_str(&format!(
                    "{:.12e},{:.12e},{:.12e},{:.12e}\n",
                    level.dt, t, level.primitive.residuals[k], level.gauged.residuals[k]
                ));
            }
        }
        out
    }

    pub fn summary(&self) -> GaugeSummary<'_> {
        GaugeSummary {
            delta: self.delta,
            dts: self.levels.iter().map(|l| l.dt).collect(),
            primitive_ratios: &self.primitive_ratios,
            gauged_ratios: &self.gauged_ratios,
            max_reconstruction: self.max_reconstruction,
            max_dual_mismatch: self.max_dual_mismatch,
        }
    }
}

fn max_at(series: &ResidualSeries, times: &[f64]) -> Result<f64> {
    times.iter().try_fold(0.0f64, |acc, &t| {
        series
            .at(t)
            .map(|r| acc.max(r))
            .ok_or_else(|| LabError::Sampling(format!("no residual at t = {t}")))
    })
}

/// Solves renormalized ILW(delta) with `refinements` step sizes
/// `dt, dt/2, ...` at a fixed snapshot stride, and evaluates the `F` and
/// `w` residuals, the reconstruction identity and the dual formula.
pub fn run_gauge_check(cfg: &ExperimentConfig) -> Result<GaugeCheckReport> {
    let delta = cfg.finite_delta()?;
    let eq = EquationSpec::renorm_ilw(delta)?;
    let u0 = cfg.initial()?;
    let mut levels = Vec::with_capacity(cfg.refinements);
    let mut coarse: Option<Trajectory> = None;
    for k in 0..cfg.refinements {
        let mut solve_cfg = cfg.solve_config();
        solve_cfg.dt = cfg.dt / 2f64.powi(k as i32);
        let traj = solve(&eq, &u0, &solve_cfg)?;
        levels.push(GaugeLevel {
            dt: solve_cfg.dt,
            primitive: gauged_residual(&traj, delta, GaugedEquation::Primitive)?,
            gauged: gauged_residual(&traj, delta, GaugedEquation::Gauged)?,
        });
        if coarse.is_none() {
            coarse = Some(traj);
        }
    }
    let common_times = levels[0].primitive.times.clone();
    let mut primitive_ratios = Vec::new();
    let mut gauged_ratios = Vec::new();
    for pair in levels.windows(2) {
        primitive_ratios.push(max_at(&pair[0].primitive, &common_times)? / max_at(&pair[1].primitive, &common_times)?);
        gauged_ratios.push(max_at(&pair[0].gauged, &common_times)? / max_at(&pair[1].gauged, &common_times)?);
    }

    let mut max_reconstruction: f64 = 0.0;
    let mut max_dual_mismatch: f64 = 0.0;
    for v in coarse.expect("at least one level").fields() {
        let state = GaugeState::new(v)?;
        max_reconstruction = max_reconstruction.max(reconstruct_check(state.w(), v)?);
        let norm = v.l2_norm();
        if norm > 0.0 {
            max_dual_mismatch = max_dual_mismatch.max(state.dual_mismatch() / norm);
        }
    }
    Ok(GaugeCheckReport {
        delta,
        levels,
        common_times,
        primitive_ratios,
        gauged_ratios,
        max_reconstruction,
        max_dual_mismatch,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport {
    pub dts: Vec<f64>,
    /// `||u_{dt_k}(T) - u_{dt_{k+1}}(T)||_{L^2}`
    pub differences: Vec<f64>,
    /// `log2` of consecutive difference ratios
    pub orders: Vec<f64>,
}

/// Self-convergence study: solves with `dt, dt/2, ..., dt/2^halvings`
/// and estimates the order from successive final-state differences.
pub fn integrator_order(
    eq: &EquationSpec,
    u0: &SpectralField,
    dt: f64,
    t_final: f64,
    halvings: usize,
) -> Result<OrderReport> {
    if halvings < 2 {
        return Err(LabError::InvalidParameter("need at least two halvings".into()));
    }
    let dts: Vec<f64> = (0..=halvings).map(|k| dt / 2f64.powi(k as i32)).collect();
    let finals = dts
        .iter()
        .map(|&h| {
            let steps = (t_final / h).round() as usize;
            let traj = solve(eq, u0, &SolveConfig::new(h, t_final, steps))?;
            Ok(traj.last().expect("nonempty").clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let differences = finals
        .windows(2)
        .map(|w| Ok(w[0].sub(&w[1])?.l2_norm()))
        .collect::<Result<Vec<f64>>>()?;
    let orders = differences.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    Ok(OrderReport {
        dts,
        differences,
        orders,
    })
}

//! Deep-water limit: distance between ILW(delta) and BO solutions from the
//! same datum as delta grows.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::hs_error;
use crate::error::{LabError, Result};
use crate::evolution::{solve, Dealias, EquationSpec, Trajectory};
use crate::experiments::checks::check_resolution;
use crate::experiments::fit::{fit_loglog, FitOutcome};
use crate::experiments::ExperimentConfig;

/// Which member of the family is compared with BO.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// ILW(delta) against BO; includes the `delta^{-1}` transport.
    #[default]
    Original,
    /// Renormalized ILW(delta) against BO, mean-zero data only.
    Renormalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub delta: f64,
    pub s: f64,
    pub sup_error: f64,
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeSummary {
    pub s: f64,
    /// `None` when fewer than three points survive the noise floor.
    pub fit: Option<FitOutcome>,
    pub points_used: usize,
    /// `E(2 delta) / E(delta)` for consecutive doublings in the list.
    pub doubling_ratios: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub comparison: Comparison,
    pub rows: Vec<ConvergenceRow>,
    pub slopes: Vec<SlopeSummary>,
    pub noise_floor: f64,
}

#[derive(Serialize)]
pub struct DeepwaterSummary<'a> {
    pub comparison: Comparison,
    pub noise_floor: f64,
    pub slopes: &'a [SlopeSummary],
}

impl ConvergenceReport {
    /// CSV with columns `delta,s,sup_error,runtime_seconds`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta,s,sup_error,runtime_seconds\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.17e},{:.17e},{:.17e},{:.6}\n",
                r.delta, r.s, r.sup_error, r.runtime_seconds
            ));
        }
        out
    }

    pub fn summary(&self) -> DeepwaterSummary<'_> {
        DeepwaterSummary {
            comparison: self.comparison,
            noise_floor: self.noise_floor,
            slopes: &self.slopes,
        }
    }

    /// Errors for one Sobolev index, ordered by delta.
    pub fn errors(&self, s: f64) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.s == s)
            .map(|r| (r.delta, r.sup_error))
            .collect()
    }
}

pub(crate) fn validate_deltas(deltas: &[f64]) -> Result<()> {
    if deltas.len() < 4 {
        return Err(LabError::Config(format!(
            "delta_list needs at least 4 entries, got {}",
            deltas.len()
        )));
    }
    if deltas.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(LabError::Config(
            "delta_list entries must be finite and positive".into(),
        ));
    }
    if deltas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(LabError::Config("delta_list must be strictly increasing".into()));
    }
    Ok(())
}

fn member(comparison: Comparison, delta: f64) -> Result<EquationSpec> {
    match comparison {
        Comparison::Original => EquationSpec::ilw(delta),
        Comparison::Renormalized => EquationSpec::renorm_ilw(delta),
    }
}

/// Solves BO and every member of `delta_list` from the same datum (members
/// in parallel on `threads` workers) and fits `sup_t ||u_delta - u||_{H^s}`
/// against delta on a log-log scale.
pub fn run_deepwater(cfg: &ExperimentConfig, threads: usize) -> Result<ConvergenceReport> {
    validate_deltas(&cfg.delta_list)?;
    let u0 = cfg.initial()?;
    let solve_cfg = cfg.solve_config();
    let dealias = Dealias { fraction: cfg.dealias };
    let reference = solve(&EquationSpec::bo(), &u0, &solve_cfg)?;
    check_resolution(reference.last().expect("nonempty"), dealias)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| LabError::Config(format!("thread pool: {e}")))?;
    let members: Vec<(Trajectory, f64)> = pool.install(|| {
        cfg.delta_list
            .par_iter()
            .map(|&delta| -> Result<(Trajectory, f64)> {
                let start = Instant::now();
                let traj = solve(&member(cfg.comparison, delta)?, &u0, &solve_cfg)?;
                check_resolution(traj.last().expect("nonempty"), dealias)?;
                Ok((traj, start.elapsed().as_secs_f64()))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut rows = Vec::new();
    for (&delta, (traj, runtime)) in cfg.delta_list.iter().zip(&members) {
        for &s in &cfg.sobolev_s_list {
            rows.push(ConvergenceRow {
                delta,
                s,
                sup_error: hs_error(traj, &reference, s)?,
                runtime_seconds: *runtime,
            });
        }
    }

    let noise_floor = 1e3 * f64::EPSILON * u0.l2_norm();
    let min_fit = cfg.delta_min_fit.unwrap_or(cfg.delta_list[0]);
    let mut report = ConvergenceReport {
        comparison: cfg.comparison,
        rows,
        slopes: Vec::new(),
        noise_floor,
    };
    for &s in &cfg.sobolev_s_list {
        let series = report.errors(s);
        let usable: Vec<(f64, f64)> = series
            .iter()
            .copied()
            .filter(|(d, e)| *d >= min_fit && !(*e > 0.0 && *e < noise_floor))
            .collect();
        let fit = match fit_loglog(&usable) {
            Ok(f) => Some(f),
            Err(LabError::InsufficientData(_)) => None,
            Err(e) => return Err(e),
        };
        let doubling_ratios = series
            .windows(2)
            .filter(|w| (w[1].0 / w[0].0 - 2.0).abs() < 1e-12)
            .map(|w| (w[0].0, if w[0].1 == 0.0 { f64::NAN } else { w[1].1 / w[0].1 }))
            .collect();
        report.slopes.push(SlopeSummary {
            s,
            fit,
            points_used: usable.len(),
            doubling_ratios,
        });
    }
    Ok(report)
}

//! Time integration of the ILW family and the exact changes of variables
//! relating its members.

pub mod equation;
pub mod etdrk4;
pub mod trajectory;
pub mod transforms;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::fft;
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::multipliers::{self, MultiplierSpec};

pub use equation::{linear_symbol, EquationSpec, Variant};
pub use etdrk4::Etdrk4;
pub use trajectory::Trajectory;
pub use transforms::{galilean_tau, galilean_tau_field, gamma_inverse, gamma_transform, scale_field, scale_transform};

/// 2/3 rule: modes with `|n| > floor(fraction * N / 2)` are zeroed before and
/// after every pointwise product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dealias {
    pub fraction: f64,
}

impl Default for Dealias {
    fn default() -> Self {
        Self { fraction: 2.0 / 3.0 }
    }
}

impl Dealias {
    pub fn cutoff(&self, grid: &TorusGrid) -> i64 {
        (self.fraction * (grid.n_points() / 2) as f64).floor() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    pub dt: f64,
    pub t_final: f64,
    #[serde(default = "default_stride")]
    pub snapshot_stride: usize,
    #[serde(default = "default_dealias")]
    pub dealias: f64,
    /// Abort once `||u(t)||_{L2} > blowup_threshold * ||u0||_{L2}`.
    #[serde(default = "default_blowup")]
    pub blowup_threshold: f64,
}

fn default_stride() -> usize {
    1
}

fn default_dealias() -> f64 {
    2.0 / 3.0
}

fn default_blowup() -> f64 {
    10.0
}

impl SolveConfig {
    pub fn new(dt: f64, t_final: f64, snapshot_stride: usize) -> Self {
        Self {
            dt,
            t_final,
            snapshot_stride,
            dealias: default_dealias(),
            blowup_threshold: default_blowup(),
        }
    }

    pub fn validate(&self) -> Result<usize> {
        if !(self.dt > 0.0 && self.dt.is_finite()) || !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(LabError::InvalidParameter(format!(
                "dt and t_final must be positive (dt = {}, t_final = {})",
                self.dt, self.t_final
            )));
        }
        if self.dt > self.t_final {
            return Err(LabError::InvalidParameter("dt exceeds t_final".into()));
        }
        if self.snapshot_stride == 0 {
            return Err(LabError::InvalidParameter("snapshot_stride must be positive".into()));
        }
        if !(self.dealias > 0.0 && self.dealias <= 1.0) {
            return Err(LabError::InvalidParameter(format!(
                "dealias fraction must be in (0, 1], got {}",
                self.dealias
            )));
        }
        if !(self.blowup_threshold > 1.0) {
            return Err(LabError::InvalidParameter("blowup_threshold must exceed 1".into()));
        }
        let steps = (self.t_final / self.dt).round();
        if ((steps * self.dt) - self.t_final).abs() > 1e-9 * self.t_final {
            return Err(LabError::InvalidParameter(format!(
                "t_final = {} is not a whole number of steps of {}",
                self.t_final, self.dt
            )));
        }
        Ok(steps as usize)
    }
}

/// Dealiased `d/dx (u^2)` on raw coefficients in mode order.
pub(crate) fn nonlinear_coeffs(grid: &TorusGrid, u: &[Complex64], cutoff: i64) -> Result<Vec<Complex64>> {
    let n = grid.n_points();
    let half = (n / 2) as i64;
    let masked: Vec<Complex64> = u
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if (i as i64 - half).abs() <= cutoff {
                *c
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let mut buf = fft::synthesize(&masked, n);
    for c in buf.iter_mut() {
        *c = Complex64::new(c.re * c.re, 0.0);
    }
    let sq = fft::analyze(&buf, n);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..=(cutoff.min(half - 1)) {
        let xi = grid.frequency(k);
        let v = Complex64::new(0.0, xi) * sq[(half + k) as usize];
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(LabError::NonFinite("nonlinear term"));
        }
        out[(half + k) as usize] = v;
        if k > 0 {
            out[(half - k) as usize] = v.conj();
        }
    }
    Ok(out)
}

/// `d/dx (u^2)` with the 2/3 rule (or whatever fraction `dealias` carries).
pub fn nonlinear_rhs(u: &SpectralField, dealias: Dealias) -> Result<SpectralField> {
    let grid = *u.grid();
    let out = nonlinear_coeffs(&grid, u.coeffs(), dealias.cutoff(&grid))?;
    SpectralField::from_coeffs(grid, out)
}

fn linear_symbols(eq: &EquationSpec, grid: &TorusGrid) -> Vec<Complex64> {
    grid.modes().map(|n| eq.linear_symbol(grid.frequency(n))).collect()
}

/// One ETDRK4 step of `eq` (allocates the coefficients; use [`solve`] for
/// repeated stepping).
pub fn etdrk4_step(u: &SpectralField, eq: &EquationSpec, dt: f64) -> Result<SpectralField> {
    eq.validate()?;
    let grid = *u.grid();
    let stepper = Etdrk4::new(&linear_symbols(eq, &grid), dt);
    let cutoff = Dealias::default().cutoff(&grid);
    let next = stepper.step(u.coeffs(), |x| nonlinear_coeffs(&grid, x, cutoff))?;
    Ok(SpectralField::symmetrized(grid, next))
}

fn l2(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Integrates `eq` from `u0` with a fixed step, recording every
/// `snapshot_stride`-th state (the initial state included).
pub fn solve(eq: &EquationSpec, u0: &SpectralField, config: &SolveConfig) -> Result<Trajectory> {
    eq.validate()?;
    let steps = config.validate()?;
    if eq.variant == Variant::RenormIlw && !u0.is_mean_zero() {
        return Err(LabError::NonzeroMean(u0.mean()));
    }
    let grid = *u0.grid();
    let stepper = Etdrk4::new(&linear_symbols(eq, &grid), config.dt);
    let cutoff = Dealias {
        fraction: config.dealias,
    }
    .cutoff(&grid);
    let limit = config.blowup_threshold * u0.l2_norm();

    let mut times = vec![0.0];
    let mut fields = vec![u0.clone()];
    let mut u = u0.coeffs().to_vec();
    for step in 1..=steps {
        u = stepper.step(&u, |x| nonlinear_coeffs(&grid, x, cutoff))?;
        let t = step as f64 * config.dt;
        let norm = l2(&u);
        if !norm.is_finite() || norm > limit && limit > 0.0 {
            return Err(LabError::BlowUp { time: t, norm, limit });
        }
        if step % config.snapshot_stride == 0 {
            times.push(t);
            fields.push(SpectralField::symmetrized(grid, u.clone()));
        }
    }
    Trajectory::new(*eq, grid, config.dt, times, fields)
}

/// Exact linear BO evolution `S(t) f` sampled at the given times.
pub fn free_evolution(f: &SpectralField, times: &[f64]) -> Result<Trajectory> {
    let fields = times
        .iter()
        .map(|&t| multipliers::apply(&MultiplierSpec::BoPropagator { t }, f))
        .collect::<Result<Vec<_>>>()?;
    let dt = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    Trajectory::new(EquationSpec::bo(), *f.grid(), dt, times.to_vec(), fields)
}

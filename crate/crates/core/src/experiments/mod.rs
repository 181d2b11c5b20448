//! Experiment protocols driven by a JSON configuration, and their outputs.

pub mod checks;
pub mod deepwater;
pub mod fit;

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagnostics::conservation_report;
use crate::error::{LabError, Result};
use crate::evolution::{solve, Dealias, EquationSpec, SolveConfig, Variant};
use crate::field::SpectralField;
use crate::grid::TorusGrid;
use crate::multipliers::{self, MultiplierSpec};

pub use checks::{
    integrator_order, run_galilean_check, run_gauge_check, run_scaling_check, GalileanReport, GaugeCheckReport,
    OrderReport, ScalingReport,
};
pub use deepwater::{run_deepwater, Comparison, ConvergenceReport, ConvergenceRow, SlopeSummary};
pub use fit::{fit_loglog, FitOutcome, LogLogFit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Solve,
    Deepwater,
    GaugeCheck,
    ScalingCheck,
    GalileanCheck,
    Conserve,
    Symbols,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Solve => "solve",
            ExperimentKind::Deepwater => "deepwater",
            ExperimentKind::GaugeCheck => "gauge_check",
            ExperimentKind::ScalingCheck => "scaling_check",
            ExperimentKind::GalileanCheck => "galilean_check",
            ExperimentKind::Conserve => "conserve",
            ExperimentKind::Symbols => "symbols",
        }
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        const ALL: [ExperimentKind; 7] = [
            ExperimentKind::Solve,
            ExperimentKind::Deepwater,
            ExperimentKind::GaugeCheck,
            ExperimentKind::ScalingCheck,
            ExperimentKind::GalileanCheck,
            ExperimentKind::Conserve,
            ExperimentKind::Symbols,
        ];
        ALL.into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| LabError::Config(format!("unknown experiment `{s}`")))
    }
}

/// Equation block of the configuration. A missing or `null` depth means
/// infinite depth, which only BO accepts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationConfig {
    pub variant: Variant,
    #[serde(default)]
    pub delta: Option<f64>,
}

impl EquationConfig {
    pub fn spec(&self) -> Result<EquationSpec> {
        EquationSpec::new(self.variant, self.delta.unwrap_or(f64::INFINITY))
    }
}

fn default_a() -> f64 {
    0.1
}

fn default_b() -> f64 {
    0.05
}

/// Initial datum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialData {
    /// `mean + a cos(x / lambda) + b sin(2 x / lambda)`
    Profile {
        #[serde(default = "default_a")]
        a: f64,
        #[serde(default = "default_b")]
        b: f64,
        #[serde(default)]
        mean: f64,
    },
    /// Coefficients `[n, re, im]` for `n >= 0`; negative modes are mirrored.
    Coefficients { modes: Vec<(i64, f64, f64)> },
}

impl Default for InitialData {
    fn default() -> Self {
        InitialData::Profile {
            a: default_a(),
            b: default_b(),
            mean: 0.0,
        }
    }
}

impl InitialData {
    pub fn build(&self, grid: TorusGrid) -> Result<SpectralField> {
        match self {
            InitialData::Profile { a, b, mean } => {
                if ![a, b, mean].iter().all(|v| v.is_finite()) {
                    return Err(LabError::Config("profile parameters must be finite".into()));
                }
                Ok(SpectralField::from_positive_modes(grid, |n| match n {
                    0 => Complex64::new(*mean, 0.0),
                    1 => Complex64::new(0.5 * a, 0.0),
                    2 => Complex64::new(0.0, -0.5 * b),
                    _ => Complex64::new(0.0, 0.0),
                }))
            }
            InitialData::Coefficients { modes } => {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); (grid.max_mode() + 1) as usize];
                for &(n, re, im) in modes {
                    if n < 0 || n > grid.max_mode() {
                        return Err(LabError::Config(format!(
                            "mode {n} outside 0..={} for this grid",
                            grid.max_mode()
                        )));
                    }
                    if !(re.is_finite() && im.is_finite()) {
                        return Err(LabError::Config(format!("mode {n} has a non-finite coefficient")));
                    }
                    if n == 0 && im != 0.0 {
                        return Err(LabError::Config("the zero mode of a real field must be real".into()));
                    }
                    coeffs[n as usize] = Complex64::new(re, im);
                }
                Ok(SpectralField::from_positive_modes(grid, |n| coeffs[n as usize]))
            }
        }
    }
}

fn default_lambda() -> f64 {
    1.0
}

fn default_points() -> usize {
    256
}

fn default_dt() -> f64 {
    1e-3
}

fn default_t_final() -> f64 {
    1.0
}

fn default_stride() -> usize {
    1
}

fn default_s_list() -> Vec<f64> {
    vec![0.0]
}

fn default_dealias() -> f64 {
    2.0 / 3.0
}

fn default_blowup() -> f64 {
    10.0
}

fn default_refinements() -> usize {
    3
}

/// One experiment. Fields not used by the chosen experiment are ignored;
/// unknown fields are an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub equation: Option<EquationConfig>,
    /// Depths of the ILW family (deepwater).
    #[serde(default)]
    pub delta_list: Vec<f64>,
    /// Smallest depth entering the slope fit (deepwater); defaults to the first.
    #[serde(default)]
    pub delta_min_fit: Option<f64>,
    #[serde(default)]
    pub comparison: Comparison,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_points")]
    pub n_points: usize,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_final")]
    pub t_final: f64,
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default = "default_dealias")]
    pub dealias: f64,
    #[serde(default = "default_blowup")]
    pub blowup_threshold: f64,
    #[serde(default)]
    pub initial_data: InitialData,
    #[serde(default = "default_s_list")]
    pub sobolev_s_list: Vec<f64>,
    /// Dilation factor for the scaling check.
    #[serde(default)]
    pub scale_lambda: Option<f64>,
    /// Number of dt levels in the gauge check.
    #[serde(default = "default_refinements")]
    pub refinements: usize,
    /// Multiplier tabulated by the symbols experiment.
    #[serde(default)]
    pub symbol: Option<MultiplierSpec>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn grid(&self) -> Result<TorusGrid> {
        TorusGrid::new(self.lambda, self.n_points)
    }

    pub fn solve_config(&self) -> SolveConfig {
        SolveConfig {
            dt: self.dt,
            t_final: self.t_final,
            snapshot_stride: self.stride,
            dealias: self.dealias,
            blowup_threshold: self.blowup_threshold,
        }
    }

    pub fn initial(&self) -> Result<SpectralField> {
        self.initial_data.build(self.grid()?)
    }

    pub fn equation_spec(&self) -> Result<EquationSpec> {
        self.equation
            .as_ref()
            .ok_or_else(|| LabError::Config(format!("{} needs an `equation` block", self.experiment.name())))?
            .spec()
    }

    /// Finite depth of the equation block (checks that need one).
    pub fn finite_delta(&self) -> Result<f64> {
        let eq = self.equation_spec()?;
        if !eq.delta.is_finite() {
            return Err(LabError::Config(format!(
                "{} needs a finite delta",
                self.experiment.name()
            )));
        }
        Ok(eq.delta)
    }

    /// Checks everything that can be checked without running.
    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        self.solve_config().validate()?;
        self.initial()?;
        if self.sobolev_s_list.iter().any(|s| !s.is_finite()) {
            return Err(LabError::Config("sobolev_s_list entries must be finite".into()));
        }
        if self.threads == Some(0) {
            return Err(LabError::Config("threads must be positive".into()));
        }
        match self.experiment {
            ExperimentKind::Solve | ExperimentKind::Conserve => {
                self.equation_spec()?;
            }
            ExperimentKind::Deepwater => deepwater::validate_deltas(&self.delta_list)?,
            ExperimentKind::GaugeCheck | ExperimentKind::GalileanCheck => {
                self.finite_delta()?;
            }
            ExperimentKind::ScalingCheck => {
                self.finite_delta()?;
                let l = self.scale_lambda.unwrap_or(2.0);
                if !(l >= 1.0 && l.is_finite()) {
                    return Err(LabError::Config(format!("scale_lambda must be >= 1, got {l}")));
                }
            }
            ExperimentKind::Symbols => {
                self.symbol
                    .as_ref()
                    .ok_or_else(|| LabError::Config("symbols needs a `symbol` block".into()))?
                    .validate()?;
            }
        }
        if self.experiment == ExperimentKind::GaugeCheck && self.refinements < 2 {
            return Err(LabError::Config(
                "gauge_check needs at least two refinement levels".into(),
            ));
        }
        Ok(())
    }
}

/// Files written by [`run_experiment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutputs {
    pub files: Vec<PathBuf>,
}

fn write(dir: &Path, name: &str, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

/// `xi,re,im` for the multiplier at every retained frequency.
pub fn symbols_csv(spec: &MultiplierSpec, grid: &TorusGrid) -> Result<String> {
    spec.validate()?;
    let mut out = String::from("xi,re,im\n");
    for n in grid.modes() {
        let xi = grid.frequency(n);
        let m = multipliers::symbol(spec, xi);
        out.push_str(&format!("{xi:.17e},{:.17e},{:.17e}\n", m.re, m.im));
    }
    Ok(out)
}

fn pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Runs the configured experiment with `threads` workers where the
/// experiment is parallel, writing its outputs into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig, out_dir: &Path, threads: usize) -> Result<RunOutputs> {
    cfg.validate()?;
    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    match cfg.experiment {
        ExperimentKind::Solve => {
            let traj = solve(&cfg.equation_spec()?, &cfg.initial()?, &cfg.solve_config())?;
            checks::check_resolution(traj.last().expect("nonempty"), Dealias { fraction: cfg.dealias })?;
            let dir = out_dir.join("trajectory");
            traj.save(&dir)?;
            files.push(dir);
        }
        ExperimentKind::Conserve => {
            let traj = solve(&cfg.equation_spec()?, &cfg.initial()?, &cfg.solve_config())?;
            let report = conservation_report(&traj)?;
            write(out_dir, "conservation.csv", &report.to_csv(), &mut files)?;
            write(out_dir, "conservation_summary.json", &report.summary_json(), &mut files)?;
        }
        ExperimentKind::Deepwater => {
            let report = run_deepwater(cfg, threads)?;
            write(out_dir, "deepwater.csv", &report.to_csv(), &mut files)?;
            write(
                out_dir,
                "deepwater_summary.json",
                &pretty(&report.summary())?,
                &mut files,
            )?;
        }
        ExperimentKind::GaugeCheck => {
            let report = run_gauge_check(cfg)?;
            write(out_dir, "gauge_residuals.csv", &report.to_csv(), &mut files)?;
            write(out_dir, "gauge_summary.json", &pretty(&report.summary())?, &mut files)?;
        }
        ExperimentKind::ScalingCheck => {
            let report = run_scaling_check(cfg)?;
            write(out_dir, "scaling_summary.json", &pretty(&report)?, &mut files)?;
        }
        ExperimentKind::GalileanCheck => {
            let report = run_galilean_check(cfg)?;
            write(out_dir, "galilean_summary.json", &pretty(&report)?, &mut files)?;
        }
        ExperimentKind::Symbols => {
            let spec = cfg.symbol.expect("validated");
            write(out_dir, "symbols.csv", &symbols_csv(&spec, &cfg.grid()?)?, &mut files)?;
        }
    }
    Ok(RunOutputs { files })
}

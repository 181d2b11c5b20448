use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::evolution::equation::{EquationSpec, Variant};
use crate::field::SpectralField;
use crate::grid::TorusGrid;

/// Relative tolerance for "uniformly spaced" snapshot times.
const UNIFORM_TOL: f64 = 1e-9;

/// Time-stamped snapshots of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    eq: EquationSpec,
    grid: TorusGrid,
    /// Integrator step that produced the snapshots (informational).
    dt: f64,
    times: Vec<f64>,
    fields: Vec<SpectralField>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    eq: Variant,
    /// `null` encodes an infinite depth.
    delta: Option<f64>,
    lambda: f64,
    n_points: usize,
    dt: f64,
    times: Vec<f64>,
}

impl Trajectory {
    pub fn new(
        eq: EquationSpec,
        grid: TorusGrid,
        dt: f64,
        times: Vec<f64>,
        fields: Vec<SpectralField>,
    ) -> Result<Self> {
        if times.len() != fields.len() {
            return Err(LabError::LengthMismatch {
                expected: times.len(),
                got: fields.len(),
            });
        }
        if fields.iter().any(|f| *f.grid() != grid) {
            return Err(LabError::GridMismatch);
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(LabError::Sampling("snapshot times must increase".into()));
        }
        Ok(Self {
            eq,
            grid,
            dt,
            times,
            fields,
        })
    }

    pub fn eq(&self) -> &EquationSpec {
        &self.eq
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn fields(&self) -> &[SpectralField] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&SpectralField> {
        self.fields.last()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &SpectralField)> {
        self.times.iter().copied().zip(&self.fields)
    }

    /// Common spacing of the snapshot times, or an error if they are not
    /// uniform (fewer than two snapshots also fails).
    pub fn uniform_spacing(&self) -> Result<f64> {
        if self.times.len() < 2 {
            return Err(LabError::Sampling("need at least two snapshots".into()));
        }
        let span = self.times[self.times.len() - 1] - self.times[0];
        let h = span / (self.times.len() - 1) as f64;
        for (k, t) in self.times.iter().enumerate() {
            let expect = self.times[0] + k as f64 * h;
            if (t - expect).abs() > UNIFORM_TOL * span.max(h) {
                return Err(LabError::Sampling(format!(
                    "snapshot {k} at t = {t} breaks uniform spacing {h}"
                )));
            }
        }
        Ok(h)
    }

    /// Maps every snapshot through `f(t, field)`, keeping times.
    pub fn map_fields<F>(&self, eq: EquationSpec, grid: TorusGrid, mut f: F) -> Result<Self>
    where
        F: FnMut(f64, &SpectralField) -> Result<SpectralField>,
    {
        let fields = self
            .times
            .iter()
            .zip(&self.fields)
            .map(|(t, u)| f(*t, u))
            .collect::<Result<Vec<_>>>()?;
        Self::new(eq, grid, self.dt, self.times.clone(), fields)
    }

    pub(crate) fn with_times(mut self, times: Vec<f64>, dt: f64) -> Result<Self> {
        if times.len() != self.times.len() {
            return Err(LabError::LengthMismatch {
                expected: self.times.len(),
                got: times.len(),
            });
        }
        self.times = times;
        self.dt = dt;
        Ok(self)
    }

    /// Writes `manifest.json` plus one snapshot file per time into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let manifest = Manifest {
            eq: self.eq.variant,
            delta: self.eq.delta.is_finite().then_some(self.eq.delta),
            lambda: self.grid.lambda(),
            n_points: self.grid.n_points(),
            dt: self.dt,
            times: self.times.clone(),
        };
        fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
        for (k, f) in self.fields.iter().enumerate() {
            f.write_snapshot(&dir.join(snapshot_name(k)))?;
        }
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let manifest: Manifest = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json"))?)?;
        let eq = EquationSpec::new(manifest.eq, manifest.delta.unwrap_or(f64::INFINITY))?;
        let grid = TorusGrid::new(manifest.lambda, manifest.n_points)?;
        let fields = (0..manifest.times.len())
            .map(|k| SpectralField::read_snapshot(&dir.join(snapshot_name(k))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(eq, grid, manifest.dt, manifest.times, fields)
    }
}

fn snapshot_name(k: usize) -> String {
    format!("snapshot_{k:05}.json")
}

//! Spectral representation of fields on a [`TorusGrid`].
//!
//! Convention: `f(x) = sum_n fhat(n) e^{i n x / lambda}` with
//! `fhat(n) = (1 / 2 pi lambda) * integral f e^{-i n x / lambda} dx`, so the
//! coefficient of `cos(x)` at `n = +-1` is `1/2`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{LabError, Result};
use crate::fft;
use crate::grid::TorusGrid;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Tolerance used when accepting externally supplied coefficients as
/// Hermitian (relative to the largest coefficient).
const HERMITIAN_TOL: f64 = 1e-12;

/// Japanese bracket `<x> = (1 + x^2)^(1/2)`.
pub fn japanese(x: f64) -> f64 {
    x.hypot(1.0)
}

fn check_finite(coeffs: &[Complex64], what: &'static str) -> Result<()> {
    if coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(LabError::NonFinite(what))
    }
}

/// Fourier coefficients of a real-valued field.
///
/// Hermitian symmetry `c(-n) = conj(c(n))` holds exactly and the unpaired
/// mode `-N/2` is always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: TorusGrid) -> Self {
        Self {
            grid,
            coeffs: vec![ZERO; grid.n_points()],
        }
    }

    /// Accepts coefficients in mode order. They must be Hermitian up to a
    /// small relative tolerance; the stored field is then made exactly
    /// Hermitian from the non-negative modes.
    pub fn from_coeffs(grid: TorusGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n_points() {
            return Err(LabError::LengthMismatch {
                expected: grid.n_points(),
                got: coeffs.len(),
            });
        }
        check_finite(&coeffs, "spectral coefficients")?;
        let scale = coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        for n in 0..=grid.max_mode() {
            let p = coeffs[grid.index_of(n).unwrap()];
            let m = coeffs[grid.index_of(-n).unwrap()];
            if (p - m.conj()).norm() > HERMITIAN_TOL * scale {
                return Err(LabError::SymmetryViolation(n));
            }
        }
        Ok(Self::symmetrized(grid, coeffs))
    }

    /// Builds the field from coefficients without checking symmetry: the
    /// non-negative modes win and the negative ones are mirrored.
    pub(crate) fn symmetrized(grid: TorusGrid, mut coeffs: Vec<Complex64>) -> Self {
        let half = grid.n_points() / 2;
        coeffs[0] = ZERO;
        coeffs[half].im = 0.0;
        for k in 1..half {
            coeffs[half - k] = coeffs[half + k].conj();
        }
        Self { grid, coeffs }
    }

    /// Field with `c(n)` given for `n >= 0`; negative modes are mirrored.
    pub fn from_positive_modes<F>(grid: TorusGrid, mut f: F) -> Self
    where
        F: FnMut(i64) -> Complex64,
    {
        let mut coeffs = vec![ZERO; grid.n_points()];
        for n in 0..=grid.max_mode() {
            coeffs[grid.index_of(n).unwrap()] = f(n);
        }
        Self::symmetrized(grid, coeffs)
    }

    /// Samples `f` at the grid nodes and transforms.
    pub fn from_fn<F: Fn(f64) -> f64>(grid: TorusGrid, f: F) -> Result<Self> {
        let samples: Vec<f64> = grid.nodes().into_iter().map(f).collect();
        transform(grid, &samples)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of mode `n`; zero outside the retained range.
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.grid.index_of(n).map_or(ZERO, |i| self.coeffs[i])
    }

    /// The spatial mean, equal to the zero-mode coefficient.
    pub fn mean(&self) -> f64 {
        self.coeff(0).re
    }

    pub fn is_mean_zero(&self) -> bool {
        self.coeff(0) == ZERO
    }

    /// Coefficient l2 norm, i.e. the H^0 norm.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `(sum_n <n/lambda>^{2s} |c(n)|^2)^{1/2}`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| japanese(self.grid.frequency(n)).powf(2.0 * s) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Pointwise multiplication by a symbol evaluated at `n / lambda`.
    ///
    /// The symbol must map real fields to real fields; this is checked
    /// exactly on the output.
    pub fn apply_symbol<F>(&self, symbol: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let coeffs: Vec<Complex64> = self
            .grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| symbol(self.grid.frequency(n)) * c)
            .collect();
        check_finite(&coeffs, "multiplier output")?;
        let half = self.grid.n_points() / 2;
        for k in 0..half {
            if coeffs[half + k] != coeffs[half - k].conj() {
                return Err(LabError::SymmetryViolation(k as i64));
            }
        }
        Ok(Self::symmetrized(self.grid, coeffs))
    }

    /// Multiplication by a real weight per integer mode; symmetric weights
    /// (`w(-n) = w(n)`) keep the field real.
    pub fn apply_real_weight<F>(&self, weight: F) -> Self
    where
        F: Fn(i64) -> f64,
    {
        let coeffs = self
            .grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| c * weight(n))
            .collect();
        Self::symmetrized(self.grid, coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Adds a constant to the zero mode.
    pub fn shift_mean(&self, value: f64) -> Self {
        let mut out = self.clone();
        let i = self.grid.index_of(0).unwrap();
        out.coeffs[i] += value;
        out
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        if self.grid != other.grid {
            return Err(LabError::GridMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect();
        Ok(Self::symmetrized(self.grid, coeffs))
    }

    /// Real samples on a uniform grid of `len >= N` points of the same
    /// period (zero-padded spectrum).
    pub fn samples_on(&self, len: usize) -> Vec<f64> {
        fft::synthesize(&self.coeffs, len).into_iter().map(|c| c.re).collect()
    }

    pub fn to_complex(&self) -> ComplexField {
        ComplexField {
            grid: self.grid,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Same coefficients on a finer grid of the same period; the extra modes
    /// are zero.
    pub fn zero_padded(&self, n_points: usize) -> Result<Self> {
        let grid = self.grid.with_points(n_points)?;
        Ok(Self::from_positive_modes(grid, |n| self.coeff(n)))
    }

    pub fn to_snapshot_json(&self) -> String {
        let mut s = String::new();
        write!(
            s,
            "{{\"lambda\": {:.16e}, \"n_points\": {}, \"coeffs\": [",
            self.grid.lambda(),
            self.grid.n_points()
        )
        .unwrap();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            write!(s, "{:.16e}, {:.16e}", c.re, c.im).unwrap();
        }
        s.push_str("]}");
        s
    }

    pub fn from_snapshot_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Snapshot {
            lambda: f64,
            n_points: usize,
            coeffs: Vec<f64>,
        }
        let snap: Snapshot = serde_json::from_str(text)?;
        let grid = TorusGrid::new(snap.lambda, snap.n_points)?;
        if snap.coeffs.len() != 2 * snap.n_points {
            return Err(LabError::LengthMismatch {
                expected: 2 * snap.n_points,
                got: snap.coeffs.len(),
            });
        }
        let coeffs = snap
            .coeffs
            .chunks_exact(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        Self::from_coeffs(grid, coeffs)
    }

    pub fn write_snapshot(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_snapshot_json())?;
        Ok(())
    }

    pub fn read_snapshot(path: &Path) -> Result<Self> {
        Self::from_snapshot_json(&fs::read_to_string(path)?)
    }
}

/// Forward transform of real samples taken at the grid nodes.
///
/// The unpaired mode `-N/2` of the result is dropped.
pub fn transform(grid: TorusGrid, samples: &[f64]) -> Result<SpectralField> {
    if samples.len() != grid.n_points() {
        return Err(LabError::LengthMismatch {
            expected: grid.n_points(),
            got: samples.len(),
        });
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(LabError::NonFinite("samples"));
    }
    let buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let coeffs = fft::analyze(&buf, grid.n_points());
    Ok(SpectralField::symmetrized(grid, coeffs))
}

/// Samples of the field at the grid nodes.
pub fn inverse_transform(field: &SpectralField) -> Vec<f64> {
    field.samples_on(field.grid.n_points())
}

/// Fourier coefficients of a complex-valued field (no symmetry imposed).
///
/// Gauge variables such as `W = P_{+,hi}(e^{iF})` live here.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: TorusGrid,
    coeffs: Vec<Complex64>,
}

impl ComplexField {
    pub fn zeros(grid: TorusGrid) -> Self {
        Self {
            grid,
            coeffs: vec![ZERO; grid.n_points()],
        }
    }

    pub fn from_coeffs(grid: TorusGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n_points() {
            return Err(LabError::LengthMismatch {
                expected: grid.n_points(),
                got: coeffs.len(),
            });
        }
        check_finite(&coeffs, "complex coefficients")?;
        Ok(Self { grid, coeffs })
    }

    /// Transform of complex samples on a uniform grid of `samples.len() >= N`
    /// points with the same period, truncated to the modes of `grid`.
    pub fn from_samples(grid: TorusGrid, samples: &[Complex64]) -> Result<Self> {
        if samples.len() < grid.n_points() {
            return Err(LabError::LengthMismatch {
                expected: grid.n_points(),
                got: samples.len(),
            });
        }
        Self::from_coeffs(grid, fft::analyze(samples, grid.n_points()))
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.grid.index_of(n).map_or(ZERO, |i| self.coeffs[i])
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.grid
            .modes()
            .zip(&self.coeffs)
            .map(|(n, c)| japanese(self.grid.frequency(n)).powf(2.0 * s) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply_symbol<F>(&self, symbol: F) -> Self
    where
        F: Fn(f64) -> Complex64,
    {
        Self {
            grid: self.grid,
            coeffs: self
                .grid
                .modes()
                .zip(&self.coeffs)
                .map(|(n, c)| symbol(self.grid.frequency(n)) * c)
                .collect(),
        }
    }

    pub fn apply_real_weight<F>(&self, weight: F) -> Self
    where
        F: Fn(i64) -> f64,
    {
        Self {
            grid: self.grid,
            coeffs: self
                .grid
                .modes()
                .zip(&self.coeffs)
                .map(|(n, c)| c * weight(n))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        if self.grid != other.grid {
            return Err(LabError::GridMismatch);
        }
        Ok(Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn samples_on(&self, len: usize) -> Vec<Complex64> {
        fft::synthesize(&self.coeffs, len)
    }

    /// Product of two fields, computed on a grid of `2N` points so that every
    /// retained mode of the product is free of aliasing, then truncated back.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(LabError::GridMismatch);
        }
        let len = 2 * self.grid.n_points();
        let a = self.samples_on(len);
        let b = other.samples_on(len);
        let prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        Self::from_samples(self.grid, &prod)
    }

    /// Real part of the represented function, as a real field.
    pub fn real_part(&self) -> SpectralField {
        SpectralField::from_positive_modes(self.grid, |n| 0.5 * (self.coeff(n) + self.coeff(-n).conj()))
    }
}

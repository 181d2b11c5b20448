//! Discrete Bourgain-type norms of a windowed trajectory.
//!
//! The trajectory is multiplied by a smooth time window that vanishes at
//! both ends, zero-padded to a power of two at least twice its length, and
//! transformed in time with
//! `c(tau_m, n) = dt / sqrt(2 pi) * sum_k chi(t_k) u_k(n) e^{-i tau_m t_k}`,
//! `tau_m = 2 pi m / (L dt)`. With `dtau = 2 pi / (L dt)` this is an exact
//! Plancherel pair: `sum_m |c|^2 dtau = dt sum_k |chi u_k|^2`.
//!
//! Norms are taken on this one extension; they bound the restriction norms
//! from above and are not infima over extensions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::evolution::{free_evolution, Trajectory};
use crate::fft;
use crate::field::{japanese, SpectralField};
use crate::grid::TorusGrid;
use crate::projectors::{eta, lp_max_level, lp_symbol};

/// Time cutoff applied before the temporal transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeWindow {
    /// `eta` stretched so that its support is exactly the sampled interval.
    Bump,
    /// No cutoff. Accepted by [`build_spacetime`] but rejected by the norms,
    /// whose values would be dominated by the jump at the ends.
    Unit,
}

impl TimeWindow {
    /// Weight at `t` for a window centred at `center` with half-width `half`.
    pub fn weight(self, t: f64, center: f64, half: f64) -> f64 {
        match self {
            TimeWindow::Bump => eta((t - center).abs() / half * 1.6),
            TimeWindow::Unit => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// `l^2_n L^2_tau`
    X,
    /// `l^2_n L^1_tau`
    Z,
    /// `(sum_j ||Q_j u||_Z)^{1/2}`
    Ztilde,
    /// `X^{s,b} + Ztilde^{s,b-1/2}`
    Y,
}

/// Coefficients over (spatial mode, temporal frequency) of a windowed trajectory.
#[derive(Debug, Clone)]
pub struct SpaceTimeField {
    grid: TorusGrid,
    window: TimeWindow,
    step: f64,
    taus: Vec<f64>,
    /// row-major, one row of `taus.len()` entries per spatial mode
    coeffs: Vec<Complex64>,
    windowed: Vec<SpectralField>,
}

impl SpaceTimeField {
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn window(&self) -> TimeWindow {
        self.window
    }

    /// Sampling step of the trajectory.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Temporal frequencies in increasing order.
    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn d_tau(&self) -> f64 {
        2.0 * PI / (self.taus.len() as f64 * self.step)
    }

    /// Temporal profile of spatial mode `n`.
    pub fn row(&self, n: i64) -> &[Complex64] {
        let i = self.grid.index_of(n).expect("mode in range");
        let l = self.taus.len();
        &self.coeffs[i * l..(i + 1) * l]
    }

    /// The windowed snapshots `chi(t_k) u(t_k)`.
    pub fn windowed(&self) -> &[SpectralField] {
        &self.windowed
    }
}

/// Windows `traj` and transforms it in time. Needs uniform sampling.
pub fn build_spacetime(traj: &Trajectory, window: TimeWindow) -> Result<SpaceTimeField> {
    let step = traj.uniform_spacing()?;
    let grid = *traj.grid();
    let times = traj.times();
    let k = times.len();
    let t0 = times[0];
    let center = 0.5 * (t0 + times[k - 1]);
    let half = 0.5 * (times[k - 1] - t0);
    let windowed: Vec<SpectralField> = traj
        .iter()
        .map(|(t, u)| u.scale(window.weight(t, center, half)))
        .collect();

    let l = (2 * k).next_power_of_two();
    let n = grid.n_points();
    let norm = step / (2.0 * PI).sqrt();
    let taus: Vec<f64> = (0..l)
        .map(|i| 2.0 * PI * (i as f64 - (l / 2) as f64) / (l as f64 * step))
        .collect();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n * l];
    for i in 0..n {
        let mut buf: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); l];
        for (slot, f) in buf.iter_mut().zip(&windowed) {
            *slot = f.coeffs()[i];
        }
        fft::forward(&mut buf);
        // FFT index m maps to tau index m + l/2 (mod l); the shift to t0
        // is a pure phase
        for (j, tau) in taus.iter().enumerate() {
            let m = (j + l / 2) % l;
            coeffs[i * l + j] = buf[m] * norm * Complex64::from_polar(1.0, -tau * t0);
        }
    }
    Ok(SpaceTimeField {
        grid,
        window,
        step,
        taus,
        coeffs,
        windowed,
    })
}

fn require_bump(stf: &SpaceTimeField) -> Result<()> {
    if stf.window != TimeWindow::Bump {
        return Err(LabError::WindowMismatch(format!(
            "norms need the bump window, field was built with {:?}",
            stf.window
        )));
    }
    Ok(())
}

/// `(sum_n w(xi)^2 <xi>^{2s} ||<tau - |xi| xi>^b c(., n)||_{L^p_tau}^2)^{1/2}`.
fn mixed_norm<W: Fn(f64) -> f64>(stf: &SpaceTimeField, s: f64, b: f64, p: u8, weight: W) -> f64 {
    let g = &stf.grid;
    let dtau = stf.d_tau();
    let mut total = 0.0;
    for n in g.modes() {
        let xi = g.frequency(n);
        let w = weight(xi);
        if w == 0.0 {
            continue;
        }
        let curve = xi.abs() * xi;
        let row = stf.row(n);
        let inner = match p {
            1 => {
                stf.taus
                    .iter()
                    .zip(row)
                    .map(|(tau, c)| japanese(tau - curve).powf(b) * c.norm())
                    .sum::<f64>()
                    * dtau
            }
            _ => (stf
                .taus
                .iter()
                .zip(row)
                .map(|(tau, c)| japanese(tau - curve).powf(2.0 * b) * c.norm_sqr())
                .sum::<f64>()
                * dtau)
                .sqrt(),
        };
        total += (w * japanese(xi).powf(s) * inner).powi(2);
    }
    total.sqrt()
}

fn ztilde(stf: &SpaceTimeField, s: f64, b: f64) -> f64 {
    let g = &stf.grid;
    let top = lp_max_level(g.frequency(g.max_mode()).abs().max(g.frequency(g.min_mode()).abs()));
    (0..=top)
        .map(|j| mixed_norm(stf, s, b, 1, |xi| lp_symbol(j, xi)))
        .sum::<f64>()
        .sqrt()
}

/// Discrete `X^{s,b}`, `Z^{s,b}`, `Ztilde^{s,b}` or `Y^{s,b}` norm.
pub fn spacetime_norm(stf: &SpaceTimeField, kind: NormKind, s: f64, b: f64) -> Result<f64> {
    require_bump(stf)?;
    Ok(match kind {
        NormKind::X => mixed_norm(stf, s, b, 2, |_| 1.0),
        NormKind::Z => mixed_norm(stf, s, b, 1, |_| 1.0),
        NormKind::Ztilde => ztilde(stf, s, b),
        NormKind::Y => mixed_norm(stf, s, b, 2, |_| 1.0) + ztilde(stf, s, b - 0.5),
    })
}

/// `||chi u||_{L^4_{t,x}}` with the normalised spatial measure
/// `dx / (2 pi lambda)`, matching the coefficient norms.
pub fn l4_norm(stf: &SpaceTimeField) -> f64 {
    // u^4 has degree < 2N, so the 2N-point average is exact
    let len = 2 * stf.grid.n_points();
    let sum: f64 = stf
        .windowed
        .iter()
        .map(|f| f.samples_on(len).iter().map(|z| z.powi(4)).sum::<f64>() / len as f64)
        .sum();
    (stf.step * sum).powf(0.25)
}

/// `||u||_{L^4_{t,x}} / ||u||_{X^{0,3/8}}` for the windowed field.
pub fn strichartz_ratio(stf: &SpaceTimeField) -> Result<f64> {
    let x = spacetime_norm(stf, NormKind::X, 0.0, 0.375)?;
    if x == 0.0 {
        return Err(LabError::ZeroDenominator("X^{0,3/8} norm"));
    }
    Ok(l4_norm(stf) / x)
}

/// Ratios over random windowed free BO solutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrichartzSweep {
    pub ratios: Vec<f64>,
    pub sup: f64,
    pub argmax: usize,
}

/// Draws `draws` random data with modes `|n| <= band` (seeded), evolves
/// them freely on `[0, span]` with `samples` snapshots, and records the
/// Strichartz ratio of each.
pub fn strichartz_sweep(
    grid: TorusGrid,
    band: i64,
    span: f64,
    samples: usize,
    draws: usize,
    seed: u64,
) -> Result<StrichartzSweep> {
    if samples < 3 || draws == 0 || !(span > 0.0) || band < 1 || band > grid.max_mode() {
        return Err(LabError::InvalidParameter(format!(
            "sweep needs samples >= 3, draws >= 1, span > 0 and 1 <= band <= {}",
            grid.max_mode()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let times: Vec<f64> = (0..samples).map(|k| span * k as f64 / (samples - 1) as f64).collect();
    let mut ratios = Vec::with_capacity(draws);
    for _ in 0..draws {
        let f = SpectralField::from_positive_modes(grid, |n| {
            if n > band {
                Complex64::new(0.0, 0.0)
            } else if n == 0 {
                Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
            } else {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }
        });
        let traj = free_evolution(&f, &times)?;
        ratios.push(strichartz_ratio(&build_spacetime(&traj, TimeWindow::Bump)?)?);
    }
    let (argmax, sup) =
        ratios.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, r)| if r > acc.1 { (i, r) } else { acc },
        );
    Ok(StrichartzSweep { ratios, sup, argmax })
}

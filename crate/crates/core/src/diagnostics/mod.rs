//! Conserved quantities, trajectory error metrics and space-time norms.

pub mod spacetime;

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::evolution::{EquationSpec, Trajectory};
use crate::field::SpectralField;
use crate::multipliers::Depth;

pub use spacetime::{
    build_spacetime, l4_norm, spacetime_norm, strichartz_ratio, strichartz_sweep, NormKind, SpaceTimeField,
    StrichartzSweep, TimeWindow,
};

/// Mean value `mu = c(0)`.
pub fn mean(u: &SpectralField) -> f64 {
    u.mean()
}

/// `M(u) = int u^2 dx = 2 pi lambda sum_n |c(n)|^2`.
pub fn mass(u: &SpectralField) -> f64 {
    u.grid().period() * u.l2_norm().powi(2)
}

/// `int u^3 dx`, exact for the band-limited field: the coefficients of
/// `u^2` are formed without aliasing and paired with those of `u`.
pub fn cubic_integral(u: &SpectralField) -> f64 {
    let c = u.to_complex();
    let sq = c.product(&c).expect("same grid");
    let s: f64 = sq.coeffs().iter().zip(u.coeffs()).map(|(a, b)| (a * b.conj()).re).sum();
    u.grid().period() * s
}

/// `1/2 int u K u dx + 1/3 int u^3 dx` with the weight `K` of `eq`.
pub fn energy(u: &SpectralField, eq: &EquationSpec) -> f64 {
    let g = u.grid();
    let quad: f64 = g
        .modes()
        .zip(u.coeffs())
        .map(|(n, c)| eq.hamiltonian_weight(g.frequency(n)) * c.norm_sqr())
        .sum();
    0.5 * g.period() * quad + cubic_integral(u) / 3.0
}

/// ILW Hamiltonian `E_delta`; `delta = inf` gives the BO Hamiltonian.
pub fn hamiltonian(u: &SpectralField, delta: Depth) -> Result<f64> {
    let eq = if delta.is_infinite() {
        EquationSpec::bo()
    } else {
        EquationSpec::ilw(delta)?
    };
    Ok(energy(u, &eq))
}

/// Per-snapshot conserved quantities of a trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConservationReport {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub mass: Vec<f64>,
    pub hamiltonian: Vec<f64>,
    /// `max_t |mu(t) - mu(0)|`
    pub max_drift_mean: f64,
    /// `max_t |M(t) - M(0)| / |M(0)|` (absolute when `M(0) = 0`)
    pub max_drift_mass: f64,
    /// same for the Hamiltonian of the trajectory's equation
    pub max_drift_energy: f64,
}

#[derive(Serialize)]
struct DriftSummary {
    max_drift_mean: f64,
    max_drift_mass: f64,
    max_drift_energy: f64,
}

fn relative_drift(values: &[f64]) -> f64 {
    let v0 = values[0];
    let scale = if v0 == 0.0 { 1.0 } else { v0.abs() };
    values.iter().map(|v| (v - v0).abs() / scale).fold(0.0, f64::max)
}

impl ConservationReport {
    /// CSV with header `time,mean,mass,hamiltonian`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,mean,mass,hamiltonian\n");
        for k in 0..self.times.len() {
            out.push_str(&format!(
                "{:.12e},{:.17e},{:.17e},{:.17e}\n",
                self.times[k], self.mean[k], self.mass[k], self.hamiltonian[k]
            ));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&DriftSummary {
            max_drift_mean: self.max_drift_mean,
            max_drift_mass: self.max_drift_mass,
            max_drift_energy: self.max_drift_energy,
        })
        .expect("plain numbers serialize")
    }
}

pub fn conservation_report(traj: &Trajectory) -> Result<ConservationReport> {
    if traj.is_empty() {
        return Err(LabError::InsufficientData(0));
    }
    let eq = traj.eq();
    let mean: Vec<f64> = traj.fields().iter().map(|u| u.mean()).collect();
    let mass: Vec<f64> = traj.fields().iter().map(mass).collect();
    let hamiltonian: Vec<f64> = traj.fields().iter().map(|u| energy(u, eq)).collect();
    let max_drift_mean = mean.iter().map(|m| (m - mean[0]).abs()).fold(0.0, f64::max);
    Ok(ConservationReport {
        times: traj.times().to_vec(),
        max_drift_mean,
        max_drift_mass: relative_drift(&mass),
        max_drift_energy: relative_drift(&hamiltonian),
        mean,
        mass,
        hamiltonian,
    })
}

/// `sup_t ||a(t) - b(t)||_{H^s}` over common snapshots.
pub fn hs_error(a: &Trajectory, b: &Trajectory, s: f64) -> Result<f64> {
    if a.grid() != b.grid() {
        return Err(LabError::GridMismatch);
    }
    if a.len() != b.len() {
        return Err(LabError::Sampling(format!(
            "trajectories have {} and {} snapshots",
            a.len(),
            b.len()
        )));
    }
    let mut worst: f64 = 0.0;
    for ((ta, ua), (tb, ub)) in a.iter().zip(b.iter()) {
        if (ta - tb).abs() > 1e-12 * ta.abs().max(1.0) {
            return Err(LabError::Sampling(format!("snapshot times differ: {ta} vs {tb}")));
        }
        worst = worst.max(ua.sub(ub)?.sobolev_norm(s));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{solve, SolveConfig};
    use crate::grid::TorusGrid;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn unit(n: usize) -> TorusGrid {
        TorusGrid::new(1.0, n).unwrap()
    }

    fn cosine(g: TorusGrid) -> SpectralField {
        SpectralField::from_positive_modes(g, |n| Complex64::new(if n == 1 { 0.5 } else { 0.0 }, 0.0))
    }

    #[test]
    fn mass_and_mean_examples() {
        let g = unit(16);
        assert!((mass(&cosine(g)) - PI).abs() < 1e-15);
        let c = SpectralField::zeros(g).shift_mean(1.5);
        assert_eq!(mean(&c), 1.5);
        assert!((mass(&c) - 2.0 * PI * 2.25).abs() < 1e-14);
        assert_eq!(mass(&SpectralField::zeros(g)), 0.0);
        let g2 = TorusGrid::new(2.5, 32).unwrap();
        let f = SpectralField::from_fn(g2, |x| (x / 2.5).sin() + 0.2).unwrap();
        assert!((mass(&f) - g2.period() * f.sobolev_norm(0.0).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_examples() {
        let g = unit(32);
        let e1 = hamiltonian(&cosine(g), 1.0).unwrap();
        // mpmath: (pi/2)(coth(1) - 1)
        assert!((e1 - 0.491_714_676_619_541_377_35).abs() < 1e-14);
        let e_bo = hamiltonian(&cosine(g), f64::INFINITY).unwrap();
        assert!((e_bo - PI / 2.0).abs() < 1e-15);
        assert_eq!(hamiltonian(&SpectralField::zeros(g), 2.0).unwrap(), 0.0);
    }

    #[test]
    fn cubic_term_matches_quadrature() {
        let g = unit(64);
        let u = SpectralField::from_fn(g, |x| 0.3 + x.cos() + 0.5 * (2.0 * x).sin()).unwrap();
        let samples = u.samples_on(4096);
        let quad: f64 = samples.iter().map(|z| z.powi(3)).sum::<f64>() * 2.0 * PI / 4096.0;
        assert!((cubic_integral(&u) - quad).abs() < 1e-13);
    }

    #[test]
    fn report_on_zero_trajectory() {
        let g = unit(32);
        let traj = solve(
            &EquationSpec::bo(),
            &SpectralField::zeros(g),
            &SolveConfig::new(0.1, 0.5, 1),
        )
        .unwrap();
        let r = conservation_report(&traj).unwrap();
        assert!(r.mass.iter().chain(&r.hamiltonian).chain(&r.mean).all(|v| *v == 0.0));
        assert_eq!(r.max_drift_mass, 0.0);
        assert!(r.to_csv().starts_with("time,mean,mass,hamiltonian\n"));
    }

    #[test]
    fn hs_error_examples() {
        let g = unit(32);
        let u0 = SpectralField::from_fn(g, |x| 0.1 * x.sin()).unwrap();
        let a = solve(&EquationSpec::bo(), &u0, &SolveConfig::new(0.1, 0.5, 1)).unwrap();
        assert_eq!(hs_error(&a, &a, 1.0).unwrap(), 0.0);
        let eps = 1e-3;
        let bump = cosine(g).scale(eps);
        let b = a.map_fields(*a.eq(), g, |_, u| u.add(&bump)).unwrap();
        for s in [0.0, 0.5, 1.0] {
            let expect = eps * 2f64.powf(s / 2.0) / 2f64.sqrt();
            assert!((hs_error(&a, &b, s).unwrap() - expect).abs() < 1e-16);
        }
        let short = solve(&EquationSpec::bo(), &u0, &SolveConfig::new(0.1, 0.3, 1)).unwrap();
        assert!(matches!(hs_error(&a, &short, 0.0), Err(LabError::Sampling(_))));
    }
}

//! Exact changes of variables: the translation `tau_h u(t, x) = u(t, x + h t)`,
//! the mean-removing Galilean map `Gamma`, and the scaling `S_lambda`.

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::evolution::trajectory::Trajectory;
use crate::field::SpectralField;
use crate::grid::TorusGrid;

/// `u(x) -> u(x + shift)`: multiplies mode `n` by `e^{i (n/lambda) shift}`.
fn translate(field: &SpectralField, shift: f64) -> Result<SpectralField> {
    field.apply_symbol(|xi| {
        let theta = xi.abs() * shift;
        let s = if xi < 0.0 { -1.0 } else { 1.0 };
        Complex64::new(theta.cos(), s * theta.sin())
    })
}

/// `tau_h` at a single time `t`.
pub fn galilean_tau_field(field: &SpectralField, h: f64, t: f64) -> Result<SpectralField> {
    translate(field, h * t)
}

/// `tau_h` applied snapshot by snapshot. The equation tag is kept; callers
/// that use the shift as a change of equation relabel the result.
pub fn galilean_tau(traj: &Trajectory, h: f64) -> Result<Trajectory> {
    traj.map_fields(*traj.eq(), *traj.grid(), |t, u| galilean_tau_field(u, h, t))
}

/// `Gamma(u)(t, x) = u(t, x - 2 mu t) - mu`.
pub fn gamma_transform(traj: &Trajectory, mu: f64) -> Result<Trajectory> {
    traj.map_fields(*traj.eq(), *traj.grid(), |t, u| {
        Ok(galilean_tau_field(u, -2.0 * mu, t)?.shift_mean(-mu))
    })
}

/// Inverse of [`gamma_transform`]: `u(t, x) = v(t, x + 2 mu t) + mu`.
pub fn gamma_inverse(traj: &Trajectory, mu: f64) -> Result<Trajectory> {
    traj.map_fields(*traj.eq(), *traj.grid(), |t, u| {
        galilean_tau_field(&u.shift_mean(mu), 2.0 * mu, t)
    })
}

/// `S_lambda u(x) = lambda^{-1} u(x / lambda)` for a single field: same
/// integer modes on the dilated torus, coefficients divided by `lambda`.
pub fn scale_field(field: &SpectralField, lambda: f64) -> Result<SpectralField> {
    if !(lambda >= 1.0 && lambda.is_finite()) {
        return Err(LabError::InvalidParameter(format!(
            "scaling needs lambda >= 1, got {lambda}"
        )));
    }
    let g = field.grid();
    let target = TorusGrid::new(g.lambda() * lambda, g.n_points())?;
    let coeffs = field.coeffs().iter().map(|c| c / lambda).collect();
    Ok(SpectralField::symmetrized(target, coeffs))
}

/// `S_lambda u(t, x) = lambda^{-1} u(lambda^{-2} t, lambda^{-1} x)`.
///
/// A source snapshot at time `t` becomes a target snapshot at `lambda^2 t`,
/// so no temporal interpolation is needed. The depth of the equation tag is
/// multiplied by `lambda`.
pub fn scale_transform(traj: &Trajectory, lambda: f64) -> Result<Trajectory> {
    if traj.len() > 1 {
        traj.uniform_spacing()?;
    }
    let g = traj.grid();
    let target = TorusGrid::new(g.lambda() * lambda, g.n_points())?;
    let eq = traj.eq().with_depth_scaled(lambda);
    let mapped = traj.map_fields(eq, target, |_, u| scale_field(u, lambda))?;
    let times = traj.times().iter().map(|t| t * lambda * lambda).collect();
    mapped.with_times(times, traj.dt() * lambda * lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{free_evolution, EquationSpec};

    fn unit(n: usize) -> TorusGrid {
        TorusGrid::new(1.0, n).unwrap()
    }

    #[test]
    fn tau_zero_is_identity() {
        let g = unit(32);
        let f = SpectralField::from_fn(g, |x| x.sin() + 0.3 * (2.0 * x).cos()).unwrap();
        assert_eq!(galilean_tau_field(&f, 0.0, 3.0).unwrap(), f);
    }

    #[test]
    fn tau_cancels_travelling_wave() {
        let g = unit(32);
        let times: Vec<f64> = (0..5).map(|k| 0.25 * k as f64).collect();
        let fields = times
            .iter()
            .map(|&t| SpectralField::from_fn(g, |x| (x - t).cos()).unwrap())
            .collect();
        let traj = Trajectory::new(EquationSpec::bo(), g, 0.25, times, fields).unwrap();
        let still = galilean_tau(&traj, 1.0).unwrap();
        let c = SpectralField::from_fn(g, f64::cos).unwrap();
        for f in still.fields() {
            assert!(f.sub(&c).unwrap().l2_norm() < 1e-15);
        }
    }

    #[test]
    fn tau_is_an_isometry() {
        let g = TorusGrid::new(1.3, 64).unwrap();
        let a = SpectralField::from_fn(g, |x| (x / 1.3).sin().exp()).unwrap();
        let b = SpectralField::from_fn(g, |x| (2.0 * x / 1.3).cos()).unwrap();
        for s in [0.0, 0.5, 1.0, 2.0] {
            let d0 = a.sub(&b).unwrap().sobolev_norm(s);
            let d1 = galilean_tau_field(&a, 0.7, 1.9)
                .unwrap()
                .sub(&galilean_tau_field(&b, 0.7, 1.9).unwrap())
                .unwrap()
                .sobolev_norm(s);
            assert!((d0 - d1).abs() < 1e-14 * d0);
        }
    }

    #[test]
    fn gamma_roundtrip_and_constants() {
        let g = unit(32);
        let f = SpectralField::from_fn(g, |x| 0.4 + x.cos()).unwrap();
        let traj = free_evolution(&f, &[0.0, 0.1, 0.2, 0.3]).unwrap();
        let back = gamma_inverse(&gamma_transform(&traj, 0.4).unwrap(), 0.4).unwrap();
        for (a, b) in traj.fields().iter().zip(back.fields()) {
            assert!(a.sub(b).unwrap().l2_norm() < 1e-13);
        }
        let mz = free_evolution(&SpectralField::from_fn(g, f64::sin).unwrap(), &[0.0, 0.5]).unwrap();
        assert_eq!(gamma_transform(&mz, 0.0).unwrap(), mz);

        let c = SpectralField::from_fn(g, |_| 0.7).unwrap();
        let ct = Trajectory::new(EquationSpec::bo(), g, 0.1, vec![0.0, 0.1], vec![c.clone(), c]).unwrap();
        for f in gamma_transform(&ct, 0.7).unwrap().fields() {
            assert!(f.l2_norm() < 1e-15);
        }
    }

    #[test]
    fn scaling_of_initial_data() {
        let g = unit(32);
        let f = SpectralField::from_fn(g, |x| 0.1 * x.cos() + 0.05 * (2.0 * x).sin()).unwrap();
        for lambda in [1.0, 2.0, 3.5] {
            let s = scale_field(&f, lambda).unwrap();
            // physical L2 with the 2 pi lambda measure picks up lambda^{-1/2}
            let m_src = (f.grid().period()).sqrt() * f.l2_norm();
            let m_tgt = (s.grid().period()).sqrt() * s.l2_norm();
            assert!((m_tgt - lambda.powf(-0.5) * m_src).abs() < 1e-13 * m_src);
        }
        assert_eq!(scale_field(&f, 1.0).unwrap(), f);
        assert!(scale_field(&f, 0.5).is_err());
    }

    #[test]
    fn scaling_reads_source_at_rescaled_point() {
        let g = unit(32);
        let f = SpectralField::from_fn(g, |x| x.sin() + 0.5 * (3.0 * x).cos()).unwrap();
        let s = scale_field(&f, 2.0).unwrap();
        let tg = *s.grid();
        let expect = SpectralField::from_fn(tg, |x| 0.5 * ((x / 2.0).sin() + 0.5 * (1.5 * x).cos())).unwrap();
        assert!(s.sub(&expect).unwrap().l2_norm() < 1e-15);
    }
}

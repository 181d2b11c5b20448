//! The periodic Benjamin-Ono gauge transform applied to renormalized ILW:
//! the primitive `F`, the gauged variables `W = P_{+,hi}(e^{iF})` and
//! `w = dx W`, the gauged nonlinearity `N_delta(w, v)`, the reconstruction
//! of `P_{+,HI} v` from `w`, and time residuals of the gauged equations.
//!
//! `e^{iF}` is not band-limited. It is evaluated pointwise on a grid with
//! four times as many points and truncated back; the discarded tail is
//! measured and the evaluation is rejected when it is not negligible.
//! All other products are formed on a 2N grid, so they carry no aliasing.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{LabError, Result};
use crate::evolution::Trajectory;
use crate::fft;
use crate::field::{ComplexField, SpectralField};
use crate::grid::TorusGrid;
use crate::multipliers::{self, Depth, MultiplierSpec};
use crate::projectors::{sharp_project, smooth_project_complex, SharpKind, SmoothKind};

/// Largest admissible fraction of the mass of `e^{iF}` outside the retained modes.
pub const TAIL_LIMIT: f64 = 1e-10;

/// Oversampling factor of the grid on which `e^{iF}` is formed.
pub const OVERSAMPLE: usize = 4;

/// Built-in tolerance for the two formulas of `w`, relative to `max(||v||, ||w||)`.
const DUAL_TOL: f64 = 1e-10;

/// A mean coefficient below this (relative to `||v||`) is treated as round-off.
const MEAN_TOL: f64 = 1e-14;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn check_mean_zero(v: &SpectralField) -> Result<()> {
    let m = v.coeff(0).norm();
    if m > MEAN_TOL * v.l2_norm().max(f64::MIN_POSITIVE) {
        return Err(LabError::NonzeroMean(v.mean()));
    }
    Ok(())
}

/// `F = dx^{-1} P_{!=0} v`. Rejects `v` with a non-negligible mean.
pub fn mean_zero_primitive(v: &SpectralField) -> Result<SpectralField> {
    check_mean_zero(v)?;
    let g = *v.grid();
    Ok(SpectralField::from_positive_modes(g, |n| {
        if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            v.coeff(n) / Complex64::new(0.0, g.frequency(n))
        }
    }))
}

/// Truncates fine-grid samples to the modes of `grid` and returns the
/// coefficients with the relative tail mass that was dropped.
fn truncate_fine(grid: TorusGrid, samples: &[Complex64]) -> Result<(ComplexField, f64)> {
    let full = fft::analyze_full(samples);
    let total: f64 = full.iter().map(|c| c.norm_sqr()).sum();
    let coeffs = fft::fft_to_modes(&full, grid.n_points());
    let kept: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let tail = if total > 0.0 {
        ((total - kept) / total).max(0.0)
    } else {
        0.0
    };
    Ok((ComplexField::from_coeffs(grid, coeffs)?, tail))
}

/// `e^{i sign F}` on the fine grid, together with the relative tail mass.
fn exponential(f: &SpectralField, sign: f64) -> Result<(ComplexField, f64)> {
    let g = *f.grid();
    let fine = f.samples_on(OVERSAMPLE * g.n_points());
    let samples: Vec<Complex64> = fine.iter().map(|&x| Complex64::from_polar(1.0, sign * x)).collect();
    truncate_fine(g, &samples)
}

/// Everything derived from one mean-zero `v`.
#[derive(Debug, Clone)]
pub struct GaugeState {
    v: SpectralField,
    f: SpectralField,
    e_plus: ComplexField,
    e_minus: ComplexField,
    /// `e^{iF} v`, formed on the fine grid
    e_v: ComplexField,
    big_w: ComplexField,
    w: ComplexField,
    tail: f64,
    dual_mismatch: f64,
}

impl GaugeState {
    pub fn new(v: &SpectralField) -> Result<Self> {
        let g = *v.grid();
        let f = mean_zero_primitive(v)?;
        let (e_plus, tail) = exponential(&f, 1.0)?;
        if tail > TAIL_LIMIT {
            return Err(LabError::UnderResolved {
                tail,
                limit: TAIL_LIMIT,
            });
        }
        let (e_minus, _) = exponential(&f, -1.0)?;

        let len = OVERSAMPLE * g.n_points();
        let f_fine = f.samples_on(len);
        let v_fine = v.samples_on(len);
        let prod: Vec<Complex64> = f_fine
            .iter()
            .zip(&v_fine)
            .map(|(x, y)| Complex64::from_polar(1.0, *x) * y)
            .collect();
        let (e_v, _) = truncate_fine(g, &prod)?;

        let big_w = smooth_project_complex(&e_plus, SmoothKind::PlusHi);
        let w = big_w.apply_symbol(|xi| Complex64::new(0.0, xi));
        let w_alt = smooth_project_complex(&e_v, SmoothKind::PlusHi).scale(I);
        let dual_mismatch = w.sub(&w_alt)?.l2_norm();
        let scale = v.l2_norm().max(w.l2_norm());
        if dual_mismatch > DUAL_TOL * scale {
            return Err(LabError::InconsistentGauge(
                dual_mismatch / scale.max(f64::MIN_POSITIVE),
            ));
        }
        Ok(Self {
            v: v.clone(),
            f,
            e_plus,
            e_minus,
            e_v,
            big_w,
            w,
            tail,
            dual_mismatch,
        })
    }

    pub fn v(&self) -> &SpectralField {
        &self.v
    }

    /// The mean-zero primitive `F`.
    pub fn primitive(&self) -> &SpectralField {
        &self.f
    }

    /// Truncated `e^{iF}`.
    pub fn exp_plus(&self) -> &ComplexField {
        &self.e_plus
    }

    /// Truncated `e^{-iF}`.
    pub fn exp_minus(&self) -> &ComplexField {
        &self.e_minus
    }

    /// `W = P_{+,hi}(e^{iF})`.
    pub fn big_w(&self) -> &ComplexField {
        &self.big_w
    }

    /// `w = dx W`.
    pub fn w(&self) -> &ComplexField {
        &self.w
    }

    /// Relative mass of `e^{iF}` dropped by the truncation.
    pub fn tail_fraction(&self) -> f64 {
        self.tail
    }

    /// `||dx W - i P_{+,hi}(e^{iF} v)||`.
    pub fn dual_mismatch(&self) -> f64 {
        self.dual_mismatch
    }
}

/// `W = P_{+,hi}(e^{iF})`.
pub fn gauge_big_w(v: &SpectralField) -> Result<ComplexField> {
    Ok(GaugeState::new(v)?.big_w)
}

/// `w = dx W`, checked against `i P_{+,hi}(e^{iF} v)`.
pub fn gauge_w(v: &SpectralField) -> Result<ComplexField> {
    Ok(GaugeState::new(v)?.w)
}

/// The four terms of `N_delta(w, v)`, kept apart for diagnostics.
#[derive(Debug, Clone)]
pub struct NdeltaTerms {
    /// `-2 dx P_{+,hi}(W P_- dx v)`
    pub paraproduct: ComplexField,
    /// `-2 dx P_{+,hi}(P_lo e^{iF} P_- dx v)`
    pub low_exponential: ComplexField,
    /// `i dx P_{+,hi}(e^{iF} Q_delta v)`, zero for `delta = inf`
    pub depth: ComplexField,
    /// `-i P_0(v^2) w`
    pub mean_square: ComplexField,
}

impl NdeltaTerms {
    pub fn total(&self) -> Result<ComplexField> {
        self.paraproduct
            .add(&self.low_exponential)?
            .add(&self.depth)?
            .add(&self.mean_square)
    }

    pub fn as_array(&self) -> [&ComplexField; 4] {
        [&self.paraproduct, &self.low_exponential, &self.depth, &self.mean_square]
    }
}

fn dx(f: &ComplexField) -> ComplexField {
    f.apply_symbol(|xi| Complex64::new(0.0, xi))
}

/// `P_0(v^2)`, i.e. the mean of `v^2`.
fn mean_square(v: &SpectralField) -> f64 {
    v.coeffs().iter().map(|c| c.norm_sqr()).sum()
}

/// `N_delta` from an already built state.
pub fn ndelta_terms(state: &GaugeState, delta: Depth) -> Result<NdeltaTerms> {
    let g = *state.v.grid();
    let minus_dx_v = dx(&sharp_project_complex_real(&state.v, SharpKind::Minus));
    let outer = |f: ComplexField, c: Complex64| dx(&smooth_project_complex(&f, SmoothKind::PlusHi)).scale(c);

    let paraproduct = outer(state.big_w.product(&minus_dx_v)?, Complex64::new(-2.0, 0.0));
    let lo = smooth_project_complex(&state.e_plus, SmoothKind::Lo);
    let low_exponential = outer(lo.product(&minus_dx_v)?, Complex64::new(-2.0, 0.0));
    let depth = if delta.is_infinite() {
        ComplexField::zeros(g)
    } else {
        let qv = multipliers::apply(&MultiplierSpec::Qdelta { delta }, &state.v)?;
        outer(state.e_plus.product(&qv.to_complex())?, I)
    };
    let mean_sq = state.w.scale(Complex64::new(0.0, -mean_square(&state.v)));
    Ok(NdeltaTerms {
        paraproduct,
        low_exponential,
        depth,
        mean_square: mean_sq,
    })
}

fn sharp_project_complex_real(v: &SpectralField, kind: SharpKind) -> ComplexField {
    crate::projectors::sharp_project_complex(&v.to_complex(), kind)
}

/// `N_delta(w, v)`. The supplied `w` must agree with the gauge of `v`.
pub fn nonlinearity_ndelta(w: &ComplexField, v: &SpectralField, delta: Depth) -> Result<NdeltaTerms> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(LabError::InvalidParameter(format!(
            "depth must be in (0, inf], got {delta}"
        )));
    }
    let state = GaugeState::new(v)?;
    if *w.grid() != *v.grid() {
        return Err(LabError::GridMismatch);
    }
    let mismatch = w.sub(&state.w)?.l2_norm();
    let scale = state.w.l2_norm().max(v.l2_norm());
    if mismatch > DUAL_TOL * scale {
        return Err(LabError::InconsistentGauge(mismatch / scale.max(f64::MIN_POSITIVE)));
    }
    ndelta_terms(&state, delta)
}

/// `|| P_{+,HI} v - RHS ||` where the right-hand side rebuilds `P_{+,HI} v`
/// from `w` and `e^{+-iF}`:
///
/// `-i P_{+,HI}(e^{-iF} w) + P_{+,HI}(P_{+,hi} e^{-iF} P_lo(e^{iF} v))
///  - i P_{+,HI}(P_{+,HI} e^{-iF} dx P_{-,hi} e^{iF})`.
pub fn reconstruct_check(w: &ComplexField, v: &SpectralField) -> Result<f64> {
    let state = GaugeState::new(v)?;
    if *w.grid() != *v.grid() {
        return Err(LabError::GridMismatch);
    }
    Ok(reconstruction_residual(&state, w)?.l2_norm())
}

fn reconstruction_residual(state: &GaugeState, w: &ComplexField) -> Result<ComplexField> {
    let big = |f: &ComplexField| smooth_project_complex(f, SmoothKind::PlusBigHi);
    let lhs = big(&state.v.to_complex());
    let t1 = big(&state.e_minus.product(w)?).scale(-I);
    let t2 = big(&smooth_project_complex(&state.e_minus, SmoothKind::PlusHi)
        .product(&smooth_project_complex(&state.e_v, SmoothKind::Lo))?);
    let t3 =
        big(&big(&state.e_minus).product(&dx(&smooth_project_complex(&state.e_plus, SmoothKind::MinusHi)))?).scale(-I);
    lhs.sub(&t1)?.sub(&t2)?.sub(&t3)
}

/// Which gauged equation a residual refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugedEquation {
    /// `dt F - H dx^2 F = Q_delta v + v^2 - P_0(v^2)`
    Primitive,
    /// `dt w - H dx^2 w = N_delta(w, v)`
    Gauged,
}

/// Residual norms at the interior snapshot times.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ResidualSeries {
    pub times: Vec<f64>,
    pub residuals: Vec<f64>,
}

impl ResidualSeries {
    pub fn max(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Residual at time `t` (matched to 1e-9 relative), if present.
    pub fn at(&self, t: f64) -> Option<f64> {
        self.times
            .iter()
            .position(|s| (s - t).abs() <= 1e-9 * t.abs().max(1.0))
            .map(|k| self.residuals[k])
    }

    /// CSV with header `t,residual_l2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,residual_l2\n");
        for (t, r) in self.times.iter().zip(&self.residuals) {
            out.push_str(&format!("{t:.12e},{r:.12e}\n"));
        }
        out
    }
}

/// `H dx^2`, with symbol `i xi |xi|`.
fn hilbert_dxx(xi: f64) -> Complex64 {
    Complex64::new(0.0, xi * xi.abs())
}

fn real_square(v: &SpectralField) -> Result<SpectralField> {
    let c = v.to_complex();
    Ok(c.product(&c)?.real_part())
}

/// Residual of the `F` or `w` equation along a renormalized ILW trajectory,
/// with `dt` replaced by centered differences of the snapshots.
pub fn gauged_residual(traj: &Trajectory, delta: Depth, which: GaugedEquation) -> Result<ResidualSeries> {
    if traj.len() < 3 {
        return Err(LabError::InsufficientData(traj.len()));
    }
    let h = traj.uniform_spacing()?;
    let fields = traj.fields();
    let qdelta = MultiplierSpec::Qdelta { delta };
    qdelta.validate()?;

    // per snapshot: the evolved variable X and the right-hand side
    // H dx^2 X + RHS(v), both as complex coefficient vectors
    let pairs = fields
        .par_iter()
        .map(|v| -> Result<(ComplexField, ComplexField)> {
            match which {
                GaugedEquation::Primitive => {
                    let f = mean_zero_primitive(v)?;
                    let lin = f.apply_symbol(hilbert_dxx)?;
                    let rhs =
                        multipliers::apply(&qdelta, v)?.add(&sharp_project(&real_square(v)?, SharpKind::NonZero))?;
                    Ok((f.to_complex(), lin.add(&rhs)?.to_complex()))
                }
                GaugedEquation::Gauged => {
                    let state = GaugeState::new(v)?;
                    let lin = state.w.apply_symbol(hilbert_dxx);
                    let rhs = ndelta_terms(&state, delta)?.total()?;
                    Ok((state.w, lin.add(&rhs)?))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let residuals = (1..traj.len() - 1)
        .map(|k| -> Result<f64> {
            let dt_x = pairs[k + 1].0.sub(&pairs[k - 1].0)?.scale(Complex64::new(0.5 / h, 0.0));
            Ok(dt_x.sub(&pairs[k].1)?.l2_norm())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualSeries {
        times: traj.times()[1..traj.len() - 1].to_vec(),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{solve, EquationSpec, SolveConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit(n: usize) -> TorusGrid {
        TorusGrid::new(1.0, n).unwrap()
    }

    fn cosine(g: TorusGrid, amp: f64) -> SpectralField {
        SpectralField::from_positive_modes(g, |n| Complex64::new(if n == 1 { amp / 2.0 } else { 0.0 }, 0.0))
    }

    fn random_band_limited(g: TorusGrid, band: i64, amp: f64, rng: &mut ChaCha8Rng) -> SpectralField {
        SpectralField::from_positive_modes(g, |n| {
            if n == 0 || n > band {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(rng.gen_range(-amp..amp), rng.gen_range(-amp..amp))
            }
        })
    }

    // J_n(2), n = 2..11
    const BESSEL_J_AT_2: [f64; 10] = [
        0.352_834_028_615_637_719_15,
        0.128_943_249_474_402_051_1,
        0.033_995_719_807_568_434_146,
        0.007_039_629_755_871_685_484_2,
        0.001_202_428_971_789_993_275_5,
        0.000_174_944_074_868_274_168_51,
        2.217_955_228_792_590_408_8e-5,
        2.492_343_435_133_064_195_4e-6,
        2.515_386_282_716_736_709_6e-7,
        2.304_284_758_367_251_422_3e-8,
    ];

    #[test]
    fn primitive_examples() {
        let g = unit(32);
        let f = mean_zero_primitive(&cosine(g, 1.0)).unwrap();
        let sin = SpectralField::from_positive_modes(g, |n| Complex64::new(0.0, if n == 1 { -0.5 } else { 0.0 }));
        assert!(f.sub(&sin).unwrap().l2_norm() < 1e-16);
        let s2 = SpectralField::from_positive_modes(g, |n| Complex64::new(0.0, if n == 2 { -0.5 } else { 0.0 }));
        let f2 = mean_zero_primitive(&s2).unwrap();
        assert!((f2.coeff(2) - Complex64::new(-0.25, 0.0)).norm() < 1e-16);
        assert_eq!(
            mean_zero_primitive(&SpectralField::zeros(g)).unwrap(),
            SpectralField::zeros(g)
        );
        assert!(matches!(
            mean_zero_primitive(&cosine(g, 1.0).shift_mean(0.1)),
            Err(LabError::NonzeroMean(_))
        ));
    }

    #[test]
    fn primitive_derivative_is_v() {
        let g = TorusGrid::new(1.7, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = random_band_limited(g, 20, 1.0, &mut rng);
        let back = multipliers::apply(&MultiplierSpec::Dx, &mean_zero_primitive(&v).unwrap()).unwrap();
        assert!(back.sub(&v).unwrap().l2_norm() < 1e-15 * v.l2_norm());
    }

    #[test]
    fn gauge_of_zero() {
        let g = unit(64);
        let s = GaugeState::new(&SpectralField::zeros(g)).unwrap();
        assert_eq!(s.big_w().l2_norm(), 0.0);
        assert_eq!(s.w().l2_norm(), 0.0);
        let terms = ndelta_terms(&s, 2.0).unwrap();
        assert_eq!(terms.total().unwrap().l2_norm(), 0.0);
        assert_eq!(reconstruct_check(s.w(), s.v()).unwrap(), 0.0);
    }

    #[test]
    fn jacobi_anger_oracle() {
        // v = 2 cos x gives F = 2 sin x and e^{iF} = sum_n J_n(2) e^{inx}
        let g = unit(64);
        let s = GaugeState::new(&cosine(g, 2.0)).unwrap();
        for n in g.modes() {
            let got = s.big_w().coeff(n);
            let expect = if (2..=11).contains(&n) {
                BESSEL_J_AT_2[(n - 2) as usize]
            } else {
                0.0
            };
            if n >= 12 {
                assert!(got.norm() < 3e-9);
            } else {
                assert!((got - expect).norm() < 1e-15, "n={n}: {got}");
            }
            let w = s.w().coeff(n);
            assert!((w - I * n as f64 * got).norm() < 1e-15);
            if (2..=11).contains(&n) {
                assert!((w - I * n as f64 * expect).norm() < 1e-14);
            }
        }
        assert!(reconstruct_check(s.w(), s.v()).unwrap() < 1e-11);
    }

    #[test]
    fn exponential_is_unimodular() {
        let g = unit(256);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = random_band_limited(g, 16, 0.05, &mut rng);
        let s = GaugeState::new(&v).unwrap();
        let samples = s.exp_plus().samples_on(g.n_points());
        let worst = samples.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-13, "{worst}");
    }

    #[test]
    fn dual_formula_and_reconstruction_on_random_fields() {
        let g = unit(512);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let v = random_band_limited(g, 64, 0.01, &mut rng);
            let s = GaugeState::new(&v).unwrap();
            assert!(
                s.dual_mismatch() < 1e-12 * v.l2_norm(),
                "{}",
                s.dual_mismatch() / v.l2_norm()
            );
            let r = reconstruct_check(s.w(), &v).unwrap();
            assert!(r < 1e-11, "{r}");
        }
    }

    #[test]
    fn reconstruction_on_dilated_torus() {
        let g = TorusGrid::new(2.0, 256).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v = random_band_limited(g, 24, 0.02, &mut rng);
        let s = GaugeState::new(&v).unwrap();
        assert!(reconstruct_check(s.w(), &v).unwrap() < 1e-11);
    }

    #[test]
    fn under_resolved_exponential_is_rejected() {
        let g = unit(32);
        let v = SpectralField::from_positive_modes(g, |n| Complex64::new(if n == 10 { 30.0 } else { 0.0 }, 0.0));
        assert!(matches!(GaugeState::new(&v), Err(LabError::UnderResolved { .. })));
    }

    #[test]
    fn ndelta_structure() {
        let g = unit(64);
        let v = cosine(g, 1.0);
        let s = GaugeState::new(&v).unwrap();
        let terms = ndelta_terms(&s, f64::INFINITY).unwrap();
        assert_eq!(terms.depth.l2_norm(), 0.0);
        let expect = s.w().scale(Complex64::new(0.0, -0.5));
        assert!(terms.mean_square.sub(&expect).unwrap().l2_norm() < 1e-16);
        let finite = ndelta_terms(&s, 1.0).unwrap();
        assert!(finite.depth.l2_norm() > 0.0);
        assert_eq!(finite.paraproduct, terms.paraproduct);
    }

    #[test]
    fn inconsistent_pair_is_rejected() {
        let g = unit(64);
        let v = cosine(g, 1.0);
        let w = gauge_w(&v).unwrap();
        assert!(nonlinearity_ndelta(&w, &v, 2.0).is_ok());
        let other = gauge_w(&cosine(g, 1.5)).unwrap();
        assert!(matches!(
            nonlinearity_ndelta(&other, &v, 2.0),
            Err(LabError::InconsistentGauge(_))
        ));
    }

    fn renorm_trajectory(delta: f64, dt: f64, stride: usize) -> Trajectory {
        let g = unit(64);
        let v0 = SpectralField::from_positive_modes(g, |n| match n {
            1 => Complex64::new(0.05, 0.0),
            2 => Complex64::new(0.0, -0.025),
            _ => Complex64::new(0.0, 0.0),
        });
        let eq = if delta.is_infinite() {
            EquationSpec::bo()
        } else {
            EquationSpec::renorm_ilw(delta).unwrap()
        };
        solve(&eq, &v0, &SolveConfig::new(dt, 0.5, stride)).unwrap()
    }

    #[test]
    fn residuals_are_second_order_in_snapshot_spacing() {
        for which in [GaugedEquation::Primitive, GaugedEquation::Gauged] {
            for delta in [1.0, f64::INFINITY] {
                let coarse = gauged_residual(&renorm_trajectory(delta, 1e-3, 50), delta, which).unwrap();
                let fine = gauged_residual(&renorm_trajectory(delta, 1e-3, 25), delta, which).unwrap();
                let t = 0.25;
                let ratio = coarse.at(t).unwrap() / fine.at(t).unwrap();
                assert!((ratio - 4.0).abs() < 0.2, "{which:?} delta={delta}: ratio {ratio}");
            }
        }
    }

    #[test]
    fn residual_needs_three_snapshots() {
        let g = unit(32);
        let traj = Trajectory::new(
            EquationSpec::bo(),
            g,
            0.1,
            vec![0.0, 0.1],
            vec![SpectralField::zeros(g); 2],
        )
        .unwrap();
        assert!(matches!(
            gauged_residual(&traj, 1.0, GaugedEquation::Gauged),
            Err(LabError::InsufficientData(2))
        ));
        let traj = Trajectory::new(
            EquationSpec::bo(),
            g,
            0.1,
            vec![0.0, 0.1, 0.2],
            vec![SpectralField::zeros(g); 3],
        )
        .unwrap();
        let r = gauged_residual(&traj, 1.0, GaugedEquation::Gauged).unwrap();
        assert_eq!(r.residuals, vec![0.0]);
    }
}

//! Fourier multiplier operators: Hilbert transform, the finite-depth
//! operators `T_delta`, `G_delta`, `Q_delta`, derivatives, Bessel and Riesz
//! potentials, and the Benjamin-Ono linear propagator.
//!
//! Every symbol is evaluated as `sgn(xi) * g(|xi|)` or `g(|xi|)` so the
//! odd/even symmetry holds bit-for-bit and real fields stay real.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::field::{japanese, ComplexField, SpectralField};

/// Depth parameter `delta in (0, inf]`. `f64::INFINITY` is the deep-water
/// (Benjamin-Ono) member of the family.
pub type Depth = f64;

/// Cut-over for the asymptotic branch of [`stable_coth_minus_sgn`].
const ASYMPTOTIC_ARG: f64 = 350.0;
const TAYLOR_ARG: f64 = 1e-2;
const CONTINUED_FRACTION_ARG: f64 = 1.0;

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `coth(x) - sgn(x) = sgn(x) * 2 / (e^{2|x|} - 1)` without cancellation
/// or overflow.
pub fn stable_coth_minus_sgn(x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(LabError::InvalidParameter(format!(
            "coth(x) - sgn(x) needs finite nonzero x, got {x}"
        )));
    }
    let a = x.abs();
    let mag = if a > ASYMPTOTIC_ARG {
        let e = (-2.0 * a).exp();
        2.0 * e / (1.0 - e)
    } else {
        2.0 / (2.0 * a).exp_m1()
    };
    Ok(sgn(x) * mag)
}

/// Magnitude part of [`stable_coth_minus_sgn`] for `a > 0`, no error path.
fn coth_tail(a: f64) -> f64 {
    if a > ASYMPTOTIC_ARG {
        let e = (-2.0 * a).exp();
        2.0 * e / (1.0 - e)
    } else {
        2.0 / (2.0 * a).exp_m1()
    }
}

/// `coth(x) - 1/x`, extended continuously by 0 at `x = 0`.
///
/// Taylor series `x/3 - x^3/45 + 2x^5/945` below `1e-2`, Lambert's
/// continued fraction `x / (3 + x^2 / (5 + x^2 / (7 + ...)))` up to 1, and
/// the direct formula beyond.
pub fn stable_coth_minus_recip(x: f64) -> f64 {
    let a = x.abs();
    let mag = if a < TAYLOR_ARG {
        let a2 = a * a;
        a * (1.0 / 3.0 - a2 * (1.0 / 45.0 - a2 * (2.0 / 945.0)))
    } else if a < CONTINUED_FRACTION_ARG {
        let a2 = a * a;
        let mut tail = 0.0;
        for k in (1..=20).rev() {
            tail = a2 / ((2 * k + 1) as f64 + tail);
        }
        // tail = a^2 / (3 + a^2 / (5 + ...)), so divide once by a
        tail / a
    } else if a.is_finite() {
        1.0 + coth_tail(a) - 1.0 / a
    } else {
        1.0
    };
    sgn(x) * mag
}

/// The operator family as Fourier multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiplierSpec {
    /// `-i sgn(xi)`
    Hilbert,
    /// `-i coth(delta xi)`, 0 at the origin
    Tilbert { delta: Depth },
    /// `-i (coth(delta xi) - 1/(delta xi))`, 0 at the origin
    Gdelta { delta: Depth },
    /// `xi (coth(delta xi) - sgn(xi))`, identically 0 when `delta = inf`
    Qdelta { delta: Depth },
    /// `i xi`
    Dx,
    /// `1 / (i xi)`, 0 at the origin
    DxInv,
    /// `<xi>^s`
    Bessel { s: f64 },
    /// `|xi|^s`
    Riesz { s: f64 },
    /// `e^{i t |xi| xi}`
    BoPropagator { t: f64 },
}

/// How a symbol behaves under `xi -> -xi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    /// purely imaginary and odd (or unimodular with `m(-xi) = conj m(xi)`)
    ImaginaryOdd,
    RealEven,
}

impl MultiplierSpec {
    pub fn symmetry_class(&self) -> SymmetryClass {
        match self {
            MultiplierSpec::Hilbert
            | MultiplierSpec::Tilbert { .. }
            | MultiplierSpec::Gdelta { .. }
            | MultiplierSpec::Dx
            | MultiplierSpec::DxInv
            | MultiplierSpec::BoPropagator { .. } => SymmetryClass::ImaginaryOdd,
            MultiplierSpec::Qdelta { .. } | MultiplierSpec::Bessel { .. } | MultiplierSpec::Riesz { .. } => {
                SymmetryClass::RealEven
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let depth_ok = |d: f64| d > 0.0 && !d.is_nan();
        match *self {
            MultiplierSpec::Tilbert { delta } | MultiplierSpec::Gdelta { delta } | MultiplierSpec::Qdelta { delta }
                if !depth_ok(delta) =>
            {
                Err(LabError::InvalidParameter(format!(
                    "depth must be in (0, inf], got {delta}"
                )))
            }
            MultiplierSpec::Bessel { s } | MultiplierSpec::Riesz { s } if !s.is_finite() => {
                Err(LabError::InvalidParameter(format!("order must be finite, got {s}")))
            }
            MultiplierSpec::BoPropagator { t } if !t.is_finite() => {
                Err(LabError::InvalidParameter(format!("time must be finite, got {t}")))
            }
            _ => Ok(()),
        }
    }

    /// Short label used for file names and CSV headers.
    pub fn label(&self) -> String {
        match self {
            MultiplierSpec::Hilbert => "hilbert".into(),
            MultiplierSpec::Tilbert { delta } => format!("tilbert_delta{delta}"),
            MultiplierSpec::Gdelta { delta } => format!("gdelta_delta{delta}"),
            MultiplierSpec::Qdelta { delta } => format!("qdelta_delta{delta}"),
            MultiplierSpec::Dx => "dx".into(),
            MultiplierSpec::DxInv => "dxinv".into(),
            MultiplierSpec::Bessel { s } => format!("bessel_s{s}"),
            MultiplierSpec::Riesz { s } => format!("riesz_s{s}"),
            MultiplierSpec::BoPropagator { t } => format!("bo_propagator_t{t}"),
        }
    }
}

/// Symbol of `spec` at frequency `xi`.
pub fn symbol(spec: &MultiplierSpec, xi: f64) -> Complex64 {
    let s = sgn(xi);
    let a = xi.abs();
    match *spec {
        MultiplierSpec::Hilbert => Complex64::new(0.0, -s),
        MultiplierSpec::Tilbert { delta } => {
            if xi == 0.0 {
                Complex64::new(0.0, 0.0)
            } else if delta.is_infinite() {
                Complex64::new(0.0, -s)
            } else {
                Complex64::new(0.0, -s * (1.0 + coth_tail(delta * a)))
            }
        }
        MultiplierSpec::Gdelta { delta } => {
            if delta.is_infinite() {
                Complex64::new(0.0, -s)
            } else {
                Complex64::new(0.0, -s * stable_coth_minus_recip(delta * a))
            }
        }
        MultiplierSpec::Qdelta { delta } => Complex64::new(qdelta_symbol(delta, a), 0.0),
        MultiplierSpec::Dx => Complex64::new(0.0, xi),
        MultiplierSpec::DxInv => {
            if xi == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, -1.0 / xi)
            }
        }
        MultiplierSpec::Bessel { s: order } => Complex64::new(japanese(a).powf(order), 0.0),
        MultiplierSpec::Riesz { s: order } => {
            let v = if a == 0.0 {
                if order == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                a.powf(order)
            };
            Complex64::new(v, 0.0)
        }
        MultiplierSpec::BoPropagator { t } => {
            let phase = t * a * a;
            Complex64::new(phase.cos(), s * phase.sin())
        }
    }
}

/// `|xi| * 2 / (e^{2 delta |xi|} - 1)`, with the value 0 at the origin and
/// for `delta = inf`.
pub fn qdelta_symbol(delta: Depth, xi: f64) -> f64 {
    let a = xi.abs();
    if a == 0.0 || delta.is_infinite() {
        0.0
    } else {
        a * coth_tail(delta * a)
    }
}

/// Applies a multiplier to a real field. Fails if the output loses Hermitian
/// symmetry, which cannot happen for the symbols defined here.
pub fn apply(spec: &MultiplierSpec, field: &SpectralField) -> Result<SpectralField> {
    spec.validate()?;
    field.apply_symbol(|xi| symbol(spec, xi))
}

pub fn apply_complex(spec: &MultiplierSpec, field: &ComplexField) -> Result<ComplexField> {
    spec.validate()?;
    Ok(field.apply_symbol(|xi| symbol(spec, xi)))
}

/// Result of scanning `<n>^s |Q_delta(n)|` over the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingSup {
    pub sup_value: f64,
    /// `sup_value / (delta^{-1} (1 + delta^{-s}))`
    pub normalized_ratio: f64,
    /// Positive integer at which the supremum is attained.
    pub argmax: u64,
}

/// Supremum over `1 <= |n| <= n_max` of `<n>^s |Q_delta(n)|` and its ratio
/// to `delta^{-1}(1 + delta^{-s})`.
///
/// The scan runs in log space, so the ratio stays meaningful even when the
/// symbol itself underflows. For `delta >= 1` and `0 <= s <= 1` the
/// supremum sits at `|n| = 1`.
pub fn smoothing_sup(delta: Depth, s: f64, n_max: u64) -> Result<SmoothingSup> {
    if !(delta > 0.0) || !(s >= 0.0) || n_max < 1 {
        return Err(LabError::InvalidParameter(format!(
            "smoothing_sup needs delta > 0, s >= 0, n_max >= 1 (got {delta}, {s}, {n_max})"
        )));
    }
    if delta.is_infinite() {
        return Ok(SmoothingSup {
            sup_value: 0.0,
            normalized_ratio: 0.0,
            argmax: 1,
        });
    }
    let ln_norm = -delta.ln() + (1.0 + delta.powf(-s)).ln();
    let mut best = f64::NEG_INFINITY;
    let mut argmax = 1;
    for n in 1..=n_max {
        let x = n as f64;
        let y = 2.0 * delta * x;
        // ln(e^y - 1) = y + ln(1 - e^{-y})
        let ln_expm1 = if y > 30.0 {
            y + (-(-y).exp()).ln_1p()
        } else {
            y.exp_m1().ln()
        };
        let ln_val = 0.5 * s * x.mul_add(x, 1.0).ln() + (2.0 * x).ln() - ln_expm1;
        if ln_val > best {
            best = ln_val;
            argmax = n;
        }
    }
    Ok(SmoothingSup {
        sup_value: best.exp(),
        normalized_ratio: (best - ln_norm).exp(),
        argmax,
    })
}

use serde::Serialize;

use crate::error::{LabError, Result};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Result of fitting a power law to `(delta, error)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FitOutcome {
    Fitted(LogLogFit),
    /// Some error is exactly zero, so no logarithm exists.
    Degenerate {
        zero_errors: usize,
    },
}

impl FitOutcome {
    pub fn slope(&self) -> Option<f64> {
        match self {
            FitOutcome::Fitted(f) => Some(f.slope),
            FitOutcome::Degenerate { .. } => None,
        }
    }
}

/// Fits `ln E = slope ln delta + intercept`. Pairs with a zero error make
/// the fit degenerate; non-finite or negative values are rejected.
pub fn fit_loglog(pairs: &[(f64, f64)]) -> Result<FitOutcome> {
    if pairs
        .iter()
        .any(|(d, e)| !(d.is_finite() && *d > 0.0 && e.is_finite() && *e >= 0.0))
    {
        return Err(LabError::InvalidParameter(
            "log-log fit needs positive finite abscissae and non-negative finite errors".into(),
        ));
    }
    let zero_errors = pairs.iter().filter(|(_, e)| *e == 0.0).count();
    if zero_errors > 0 {
        return Ok(FitOutcome::Degenerate { zero_errors });
    }
    if pairs.len() < 3 {
        return Err(LabError::InsufficientData(pairs.len()));
    }
    let xs: Vec<f64> = pairs.iter().map(|(d, _)| d.ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|(_, e)| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LabError::ZeroDenominator("log-log fit abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(FitOutcome::Fitted(LogLogFit {
        slope,
        intercept,
        r_squared,
        points: pairs.len(),
    }))
}

//! Thin wrapper over `rustfft` with a per-thread plan cache and helpers to
//! move between storage (mode) order and FFT order.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(len)
        } else {
            p.plan_fft_inverse(len)
        }
    })
}

/// Unnormalised forward DFT: `X_m = sum_k x_k e^{-2 pi i m k / L}`.
pub fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// Unnormalised inverse DFT: `x_k = sum_m X_m e^{2 pi i m k / L}`.
pub fn inverse(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Maps coefficients stored in mode order `-N/2..N/2-1` onto an FFT buffer
/// of length `len >= N`, zero-padding the unused modes.
pub fn modes_to_fft(coeffs: &[Complex64], len: usize) -> Vec<Complex64> {
    let n = coeffs.len();
    debug_assert!(len >= n);
    let half = (n / 2) as i64;
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (i, c) in coeffs.iter().enumerate() {
        let mode = i as i64 - half;
        let slot = mode.rem_euclid(len as i64) as usize;
        buf[slot] = *c;
    }
    buf
}

/// Reads back the modes `-N/2..N/2-1` from an FFT-ordered buffer, dropping
/// everything else.
pub fn fft_to_modes(buf: &[Complex64], n: usize) -> Vec<Complex64> {
    let len = buf.len() as i64;
    let half = (n / 2) as i64;
    (0..n as i64)
        .map(|i| buf[(i - half).rem_euclid(len) as usize])
        .collect()
}

/// Physical-space samples of a coefficient vector on a grid of `len` points.
pub fn synthesize(coeffs: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut buf = modes_to_fft(coeffs, len);
    inverse(&mut buf);
    buf
}

/// Full normalised spectrum (`1/len` scaling) of `len` samples, in FFT order.
pub fn analyze_full(samples: &[Complex64]) -> Vec<Complex64> {
    let mut buf = samples.to_vec();
    forward(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Normalised spectrum truncated to `n` modes in storage order.
pub fn analyze(samples: &[Complex64], n: usize) -> Vec<Complex64> {
    fft_to_modes(&analyze_full(samples), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pad_and_truncate_are_inverse() {
        let coeffs: Vec<Complex64> = (0..8).map(|i| Complex64::new(i as f64, -(i as f64))).collect();
        let buf = modes_to_fft(&coeffs, 32);
        assert_eq!(fft_to_modes(&buf, 8), coeffs);
    }

    #[test]
    fn synthesize_then_analyze() {
        let coeffs: Vec<Complex64> = (0..8).map(|i| Complex64::new(0.5 * i as f64, 1.0)).collect();
        let s = synthesize(&coeffs, 24);
        let back = analyze(&s, 8);
        for (a, b) in coeffs.iter().zip(&back) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}

//! Littlewood-Paley bump, dyadic projectors `Q_j`, sharp indicator
//! projectors and the smooth high/low cutoffs built from the bump.

use crate::field::{ComplexField, SpectralField};

const PLATEAU: f64 = 5.0 / 4.0;
const SUPPORT: f64 = 8.0 / 5.0;

/// Quintic smoothstep on `[0, 1]`.
fn smoothstep(theta: f64) -> f64 {
    theta * theta * theta * (10.0 + theta * (-15.0 + 6.0 * theta))
}

/// The bump `eta`: identically 1 on `|r| <= 5/4`, 0 for `|r| >= 8/5`, and a
/// quintic smoothstep in between.
pub fn eta(r: f64) -> f64 {
    let r = r.abs();
    if r <= PLATEAU {
        1.0
    } else if r >= SUPPORT {
        0.0
    } else {
        smoothstep((SUPPORT - r) / (SUPPORT - PLATEAU))
    }
}

/// Dyadic symbol `phi_j`: `phi_0 = eta(|xi|)`,
/// `phi_j = eta(|xi| / 2^j) - eta(|xi| / 2^{j-1})`.
pub fn lp_symbol(j: u32, xi: f64) -> f64 {
    let r = xi.abs();
    if j == 0 {
        eta(r)
    } else {
        let hi = eta(r / f64::powi(2.0, j as i32));
        let lo = eta(r / f64::powi(2.0, j as i32 - 1));
        hi - lo
    }
}

/// Smallest `J` such that `phi_j` vanishes on `|xi| <= max_abs_xi` for every
/// `j > J`.
pub fn lp_max_level(max_abs_xi: f64) -> u32 {
    let mut j = 0u32;
    // phi_j is supported in |xi| >= (5/4) 2^{j-1}
    while PLATEAU * f64::powi(2.0, j as i32) <= max_abs_xi {
        j += 1;
    }
    j
}

/// Littlewood-Paley projector `Q_j`.
pub fn lp_project(field: &SpectralField, j: u32) -> SpectralField {
    let g = *field.grid();
    field.apply_real_weight(|n| lp_symbol(j, g.frequency(n)))
}

pub fn lp_project_complex(field: &ComplexField, j: u32) -> ComplexField {
    let g = *field.grid();
    field.apply_real_weight(|n| lp_symbol(j, g.frequency(n)))
}

/// Indicator-type frequency projectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SharpKind {
    /// `n >= 1`
    Plus,
    /// `n <= -1`
    Minus,
    /// `n != 0`
    NonZero,
    /// `n = 0`
    Zero,
    /// `|n| <= k`
    UpTo(u64),
}

impl SharpKind {
    pub fn weight(self, n: i64) -> f64 {
        let keep = match self {
            SharpKind::Plus => n >= 1,
            SharpKind::Minus => n <= -1,
            SharpKind::NonZero => n != 0,
            SharpKind::Zero => n == 0,
            SharpKind::UpTo(k) => n.unsigned_abs() <= k,
        };
        if keep {
            1.0
        } else {
            0.0
        }
    }

    /// Whether the projector maps real fields to real fields.
    pub fn preserves_reality(self) -> bool {
        !matches!(self, SharpKind::Plus | SharpKind::Minus)
    }
}

/// Smooth cutoffs built from `eta`, optionally composed with `P_+` / `P_-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothKind {
    /// `1 - eta(|xi|)`
    Hi,
    /// `1 - eta(|xi| / 4)`
    BigHi,
    /// `eta(|xi|)`
    Lo,
    /// `eta(|xi| / 4)`
    BigLo,
    PlusHi,
    PlusBigHi,
    MinusHi,
}

impl SmoothKind {
    /// Symbol at integer mode `n` with physical frequency `xi`.
    pub fn weight(self, n: i64, xi: f64) -> f64 {
        let hi = 1.0 - eta(xi);
        let big_hi = 1.0 - eta(xi / 4.0);
        match self {
            SmoothKind::Hi => hi,
            SmoothKind::BigHi => big_hi,
            SmoothKind::Lo => eta(xi),
            SmoothKind::BigLo => eta(xi / 4.0),
            SmoothKind::PlusHi => SharpKind::Plus.weight(n) * hi,
            SmoothKind::PlusBigHi => SharpKind::Plus.weight(n) * big_hi,
            SmoothKind::MinusHi => SharpKind::Minus.weight(n) * hi,
        }
    }

    pub fn preserves_reality(self) -> bool {
        matches!(
            self,
            SmoothKind::Hi | SmoothKind::BigHi | SmoothKind::Lo | SmoothKind::BigLo
        )
    }
}

/// Applies an indicator projector to a complex field. Use this for `P_+`
/// and `P_-`, whose output is complex-valued.
pub fn sharp_project_complex(field: &ComplexField, kind: SharpKind) -> ComplexField {
    field.apply_real_weight(|n| kind.weight(n))
}

/// Applies a reality-preserving indicator projector.
///
/// # Panics
/// For `P_+` / `P_-`; use [`sharp_project_complex`] there.
pub fn sharp_project(field: &SpectralField, kind: SharpKind) -> SpectralField {
    assert!(kind.preserves_reality(), "{kind:?} produces a complex field");
    field.apply_real_weight(|n| kind.weight(n))
}

pub fn smooth_project_complex(field: &ComplexField, kind: SmoothKind) -> ComplexField {
    let g = *field.grid();
    field.apply_real_weight(|n| kind.weight(n, g.frequency(n)))
}

/// Applies one of the symmetric smooth cutoffs (`P_hi`, `P_HI`, `P_lo`,
/// `P_LO`) to a real field.
///
/// # Panics
/// For the one-sided composites; use [`smooth_project_complex`] there.
pub fn smooth_project(field: &SpectralField, kind: SmoothKind) -> SpectralField {
    assert!(kind.preserves_reality(), "{kind:?} produces a complex field");
    let g = *field.grid();
    field.apply_real_weight(|n| kind.weight(n, g.frequency(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TorusGrid;
    use num_complex::Complex64;

    fn unit(n: usize) -> TorusGrid {
        TorusGrid::new(1.0, n).unwrap()
    }

    #[test]
    fn bump_values() {
        assert_eq!(lp_symbol(0, 1.0), 1.0);
        assert_eq!(lp_symbol(0, 2.0), 0.0);
        assert_eq!(eta(1.25), 1.0);
        assert_eq!(eta(1.6), 0.0);
        let mid = eta(1.425);
        assert!((mid - 0.5).abs() < 1e-12);
        let mut prev = 1.0;
        for k in 0..=100 {
            let v = eta(1.25 + 0.35 * k as f64 / 100.0);
            assert!(v <= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn partition_of_unity() {
        for big_j in 1..12u32 {
            let limit = f64::powi(2.0, big_j as i32 - 1);
            for lambda in [1.0, 2.0, 3.0] {
                let mut xi = 0.0;
                while xi <= limit {
                    let s: f64 = (0..=big_j).map(|j| lp_symbol(j, xi)).sum();
                    assert!((s - 1.0).abs() < 1e-15, "J={big_j} xi={xi} sum={s}");
                    xi += 1.0 / lambda;
                }
            }
        }
    }

    #[test]
    fn q_projectors_on_cosine() {
        let f = SpectralField::from_positive_modes(unit(32), |n| Complex64::new(if n == 1 { 0.5 } else { 0.0 }, 0.0));
        assert_eq!(lp_project(&f, 0), f);
        assert_eq!(lp_project(&f, 1).l2_norm(), 0.0);
    }

    #[test]
    fn littlewood_paley_reassembles() {
        let g = unit(64);
        let f = SpectralField::from_positive_modes(g, |n| Complex64::new(1.0 / (1 + n) as f64, 0.3 * n as f64 / 31.0));
        let top = lp_max_level(32.0);
        let mut acc = SpectralField::zeros(g);
        for j in 0..=top {
            acc = acc.add(&lp_project(&f, j)).unwrap();
        }
        assert!(acc.sub(&f).unwrap().l2_norm() < 1e-15);
    }

    #[test]
    fn sharp_projectors() {
        let g = unit(16);
        let f = SpectralField::from_fn(g, f64::cos).unwrap();
        let plus = sharp_project_complex(&f.to_complex(), SharpKind::Plus);
        assert!((plus.coeff(1).re - 0.5).abs() < 1e-15);
        assert_eq!(plus.coeff(-1).norm(), 0.0);

        let shifted = SpectralField::from_fn(g, |x| 3.0 + x.cos()).unwrap();
        let nz = sharp_project(&shifted, SharpKind::NonZero);
        assert!(nz.sub(&f).unwrap().l2_norm() < 1e-15);

        let two = SpectralField::from_fn(g, |x| x.cos() + (5.0 * x).cos()).unwrap();
        assert!(sharp_project(&two, SharpKind::UpTo(1)).sub(&f).unwrap().l2_norm() < 1e-15);
    }

    #[test]
    fn projector_identities_at_symbol_level() {
        for n in -200i64..200 {
            for lambda in [1.0, 1.5, 4.0] {
                let xi = n as f64 / lambda;
                let s = SharpKind::Plus.weight(n) + SharpKind::Minus.weight(n) + SharpKind::Zero.weight(n);
                assert_eq!(s, 1.0);
                assert_eq!(SmoothKind::Lo.weight(n, xi) + SmoothKind::Hi.weight(n, xi), 1.0);
                assert_eq!(SmoothKind::BigLo.weight(n, xi) + SmoothKind::BigHi.weight(n, xi), 1.0);
            }
        }
    }

    #[test]
    fn smooth_cutoffs_on_integers() {
        for n in -20i64..=20 {
            let xi = n as f64;
            let hi = SmoothKind::Hi.weight(n, xi);
            if n.abs() <= 1 {
                assert_eq!(hi, 0.0);
            } else {
                assert_eq!(hi, 1.0);
            }
            let lo = SmoothKind::BigLo.weight(n, xi);
            if n.abs() <= 5 {
                assert_eq!(lo, 1.0);
            } else if n.abs() >= 7 {
                assert_eq!(lo, 0.0);
            }
        }
        let g = unit(16);
        let mut c = vec![Complex64::new(0.0, 0.0); 16];
        c[g.index_of(1).unwrap()] = Complex64::new(1.0, 0.0);
        let e = ComplexField::from_coeffs(g, c).unwrap();
        assert_eq!(smooth_project_complex(&e, SmoothKind::PlusHi).l2_norm(), 0.0);
    }

    #[test]
    fn hi_is_sum_of_upper_blocks() {
        for k in 0..4000 {
            let xi = k as f64 * 0.01;
            let hi: f64 = (1..=12).map(|j| lp_symbol(j, xi)).sum();
            let big_hi: f64 = (3..=12).map(|j| lp_symbol(j, xi)).sum();
            assert!((hi - (1.0 - eta(xi))).abs() < 1e-15);
            assert!((big_hi - (1.0 - eta(xi / 4.0))).abs() < 1e-15);
        }
    }
}

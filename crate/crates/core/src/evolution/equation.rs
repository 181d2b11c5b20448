use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::multipliers::{stable_coth_minus_recip, Depth};

/// Which evolution is being solved. All share the form
/// `u_t = L u + d/dx (u^2)` with a purely imaginary dispersive symbol `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `u_t - G_delta u_xx = (u^2)_x`
    Ilw,
    /// `v_t - T_delta v_xx = (v^2)_x`, posed on mean-zero data
    RenormIlw,
    /// `u_t - H u_xx = (u^2)_x`
    Bo,
    /// `v_t - (3/delta) G_delta v_xx = (v^2)_x`
    ScaledIlw,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Ilw => "ilw",
            Variant::RenormIlw => "renorm_ilw",
            Variant::Bo => "bo",
            Variant::ScaledIlw => "scaled_ilw",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationSpec {
    pub variant: Variant,
    /// Depth; `INFINITY` for BO (and ignored there).
    pub delta: Depth,
}

impl EquationSpec {
    pub fn new(variant: Variant, delta: Depth) -> Result<Self> {
        let eq = Self { variant, delta };
        eq.validate()?;
        Ok(eq)
    }

    pub fn ilw(delta: Depth) -> Result<Self> {
        Self::new(Variant::Ilw, delta)
    }

    pub fn renorm_ilw(delta: Depth) -> Result<Self> {
        Self::new(Variant::RenormIlw, delta)
    }

    pub fn scaled_ilw(delta: Depth) -> Result<Self> {
        Self::new(Variant::ScaledIlw, delta)
    }

    pub fn bo() -> Self {
        Self {
            variant: Variant::Bo,
            delta: f64::INFINITY,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.variant {
            Variant::Bo => Ok(()),
            _ if self.delta.is_finite() && self.delta > 0.0 => Ok(()),
            _ => Err(LabError::InvalidParameter(format!(
                "{} needs a finite positive depth, got {}",
                self.variant.name(),
                self.delta
            ))),
        }
    }

    /// The same equation with depth `delta * factor` (BO is unchanged).
    pub fn with_depth_scaled(&self, factor: f64) -> Self {
        match self.variant {
            Variant::Bo => *self,
            _ => Self {
                variant: self.variant,
                delta: self.delta * factor,
            },
        }
    }

    /// Real even weight `k(xi)` with `L(xi) = i xi k(xi)`, i.e. the symbol of
    /// the self-adjoint operator in the Hamiltonian `1/2 int u K u + 1/3 int u^3`.
    pub fn hamiltonian_weight(&self, xi: f64) -> f64 {
        let a = xi.abs();
        if a == 0.0 {
            return 0.0;
        }
        match self.variant {
            Variant::Bo => a,
            Variant::Ilw => a * stable_coth_minus_recip(self.delta * a),
            Variant::RenormIlw => a + crate::multipliers::qdelta_symbol(self.delta, a),
            Variant::ScaledIlw => 3.0 / self.delta * a * stable_coth_minus_recip(self.delta * a),
        }
    }

    /// Linear dispersive symbol `L(xi)`; the linear flow is `e^{t L(xi)}`.
    pub fn linear_symbol(&self, xi: f64) -> Complex64 {
        Complex64::new(0.0, xi * self.hamiltonian_weight(xi))
    }
}

/// Free-function form of [`EquationSpec::linear_symbol`].
pub fn linear_symbol(eq: &EquationSpec, xi: f64) -> Complex64 {
    eq.linear_symbol(xi)
}

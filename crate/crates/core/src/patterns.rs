//! Normalized power radiation patterns for the radar antenna and RIS cells.
//!
//! The pattern shape `F(θ, φ)` and the linear gain are independent: the gain
//! scales the link budget, the shape only weights it by direction. Nothing
//! radiates behind the aperture (`θ > π/2`).

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternShape {
    Isotropic,
    CosineExponent { exponent_q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternModel {
    pub shape: PatternShape,
    /// Linear gain (≥ 1).
    pub gain: f64,
}

impl PatternModel {
    pub fn isotropic(gain: f64) -> Self {
        Self {
            shape: PatternShape::Isotropic,
            gain,
        }
    }

    pub fn cosine(exponent_q: f64, gain: f64) -> Self {
        Self {
            shape: PatternShape::CosineExponent { exponent_q },
            gain,
        }
    }

    /// `cos^q` shape with `q` chosen so the half-power beamwidth is `hpbw`.
    pub fn cosine_hpbw(hpbw: f64, gain: f64) -> Result<Self> {
        Ok(Self::cosine(q_from_hpbw(hpbw)?, gain))
    }

    /// Unit-cell pattern used throughout the paper scenarios: 45° HPBW, 4 dB.
    pub fn default_unit_cell() -> Self {
        Self::cosine_hpbw(45f64.to_radians(), crate::units::db_to_linear(4.0))
            .expect("45° is a valid beamwidth")
    }

    /// Normalized power pattern at polar angle `theta` (azimuth unused by the
    /// supported shapes, kept for the general `F(θ, φ)` signature).
    pub fn evaluate(&self, theta: f64, _phi: f64) -> f64 {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return 0.0;
        }
        match self.shape {
            PatternShape::Isotropic => 1.0,
            PatternShape::CosineExponent { exponent_q } => {
                if exponent_q == 0.0 {
                    1.0
                } else {
                    theta.cos().max(0.0).powf(exponent_q).min(1.0)
                }
            }
        }
    }
}

/// Cosine exponent with `cos(hpbw/2)^q = 1/2`.
pub fn q_from_hpbw(hpbw: f64) -> Result<f64> {
    if !(hpbw > 0.0 && hpbw < std::f64::consts::PI) {
        return Err(Error::InvalidBeamwidth(hpbw));
    }
    Ok(0.5f64.ln() / (hpbw / 2.0).cos().ln())
}

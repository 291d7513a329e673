//! The radar ↔ RIS ↔ target power cascade.
//!
//! Two evaluation routes are provided and are expected to agree under
//! maximum alignment in the far field:
//!
//! * the element-sum route ([`dual_ris_received_power`],
//!   [`single_ris_received_power`]) which coherently adds every cell's
//!   contribution using the actual per-cell geometry and phase state;
//! * the closed form ([`closed_form_max_dual`], [`closed_form_max_single`])
//!   which assumes all cells add in phase with centre-geometry pattern
//!   factors.

mod cascade;
mod closed_form;
mod scenario;
mod stages;

pub use cascade::{
    dual_ris_received_power, single_ris_received_power, v_sum_single, w_sum_ris1, w_sum_ris2,
};
pub use closed_form::{
    closed_form_brackets, closed_form_max_dual, closed_form_max_single, radar_bracket, ris_bracket,
    ClosedFormBrackets,
};
pub use scenario::{Layout, Panels, Scenario};
pub use stages::{intermediate_cascade, intermediate_cascade_at, StagePowers};

use crate::geometry::Vec3;
use crate::patterns::PatternModel;
use crate::units::{linear_to_db, BOLTZMANN};

/// Monostatic radar: one antenna for transmit and receive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadarNode {
    pub position: Vec3,
    /// Transmit power `P_t`, watts.
    pub pt: f64,
    /// Antenna shape `F_rad` and gain `G_t`.
    pub pattern: PatternModel,
    /// Unit vector along the main lobe.
    pub boresight: Vec3,
}

impl RadarNode {
    /// Antenna pattern factor toward `point`.
    pub fn pattern_toward(&self, point: Vec3) -> f64 {
        let Some(d) = (point - self.position).normalized() else {
            return 0.0;
        };
        let theta = d.dot(self.boresight).clamp(-1.0, 1.0).acos();
        self.pattern.evaluate(theta, 0.0)
    }
}

/// Point target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub position: Vec3,
    /// Radar cross-section `σ`, m².
    pub rcs: f64,
}

/// Receiver noise and pulse integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub t0: f64,
    pub bandwidth: f64,
    /// System loss `L`, linear (≥ 1).
    pub loss: f64,
    /// Number of coherently integrated pulses `P_N`.
    pub pulses: u32,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            t0: 290.0,
            bandwidth: 1e6,
            loss: 1.0,
            pulses: 1,
        }
    }
}

impl NoiseModel {
    /// `k·T0·B·L`, watts.
    pub fn noise_power(&self) -> f64 {
        BOLTZMANN * self.t0 * self.bandwidth * self.loss
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snr {
    pub linear: f64,
    pub db: f64,
}

/// Output of one cascade evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeResult {
    /// Received power, watts.
    pub pr: f64,
    pub snr_linear: f64,
    pub snr_db: f64,
    pub path_loss_db: f64,
    /// `|Σ W|` over RIS-1 (or `|Σ V|` for a single panel).
    pub sum1_mag: f64,
    /// `|Σ W|` over RIS-2; `None` for a single panel.
    pub sum2_mag: Option<f64>,
}

impl CascadeResult {
    pub(crate) fn new(pt: f64, pr: f64, noise: &NoiseModel, sum1_mag: f64, sum2_mag: Option<f64>) -> Self {
        let s = snr(pr, noise);
        Self {
            pr,
            snr_linear: s.linear,
            snr_db: s.db,
            path_loss_db: path_loss_db(pt, pr),
            sum1_mag,
            sum2_mag,
        }
    }

    pub fn pr_dbw(&self) -> f64 {
        linear_to_db(self.pr)
    }
}

/// `SNR = P_r·P_N / (k·T0·B·L)`. Zero power maps to `-inf` dB.
pub fn snr(pr: f64, noise: &NoiseModel) -> Snr {
    let linear = pr * f64::from(noise.pulses) / noise.noise_power();
    Snr {
        linear,
        db: linear_to_db(linear),
    }
}

/// `10·log10(P_t / P_r)`; `+inf` when nothing is received.
pub fn path_loss_db(pt: f64, pr: f64) -> f64 {
    if pr <= 0.0 {
        f64::INFINITY
    } else {
        linear_to_db(pt / pr)
    }
}

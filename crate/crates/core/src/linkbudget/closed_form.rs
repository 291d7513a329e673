//! Maximum-alignment closed forms.
//!
//! Under ideal phasing every cell adds in phase and the received power
//! factors into a radar bracket and one bracket per panel. Pattern factors
//! are taken at the panel-centre geometry and amplitudes at the panel mean.

use std::f64::consts::PI;

use crate::error::Result;
use crate::ris::RisPanel;
use crate::units::linear_to_db;

use super::Scenario;

/// `P_t G_t² λ² σ / ((4π)³ r₁⁴)`
pub fn radar_bracket(pt: f64, gt: f64, wavelength: f64, rcs: f64, r1: f64) -> f64 {
    pt * gt * gt * wavelength * wavelength * rcs / ((4.0 * PI).powi(3) * r1.powi(4))
}

/// Per-panel factor `G² r_x² r_y² J⁴ K⁴ η⁴ F² / ((4π)² r⁴)`.
///
/// Its value in dB is the panel's contribution to SNR; positive means the
/// extra reflection gains more than the hop it adds costs.
#[allow(clippy::too_many_arguments)]
pub fn ris_bracket(gain: f64, rx: f64, ry: f64, rows: usize, cols: usize, eta: f64, f_comb: f64, distance: f64) -> f64 {
    let cells = (rows * cols) as f64;
    gain.powi(2) * (rx * ry).powi(2) * cells.powi(4) * eta.powi(4) * f_comb.powi(2)
        / ((4.0 * PI).powi(2) * distance.powi(4))
}

/// Linear bracket values of the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormBrackets {
    pub radar: f64,
    pub first_ris: f64,
    /// `None` for a single panel.
    pub second_ris: Option<f64>,
}

impl ClosedFormBrackets {
    pub fn received_power(&self) -> f64 {
        self.radar * self.first_ris * self.second_ris.unwrap_or(1.0)
    }

    pub fn radar_db(&self) -> f64 {
        linear_to_db(self.radar)
    }

    pub fn first_ris_db(&self) -> f64 {
        linear_to_db(self.first_ris)
    }

    pub fn second_ris_db(&self) -> Option<f64> {
        self.second_ris.map(linear_to_db)
    }
}

fn mean_eta(panel: &RisPanel) -> f64 {
    panel.eta().iter().sum::<f64>() / panel.len() as f64
}

/// Brackets for either topology.
///
/// The first panel's bracket carries the target range `r₂` and the second
/// panel's bracket the inter-panel range `r_RIS`, matching how the
/// distances pair up in the closed form.
pub fn closed_form_brackets(scenario: &Scenario, wavelength: f64) -> Result<ClosedFormBrackets> {
    let g = scenario.center_geometry()?;
    let radar = &scenario.radar;
    let p1 = scenario.panels.first();
    let pat1 = p1.pattern();
    let f_rad = radar.pattern_toward(p1.center());
    let radar_b = radar_bracket(radar.pt, radar.pattern.gain, wavelength, scenario.target.rcs, g.r1());

    let bracket = |p: &RisPanel, f_comb: f64, distance: f64| {
        ris_bracket(p.gain(), p.rx(), p.ry(), p.rows(), p.cols(), mean_eta(p), f_comb, distance)
    };

    match (scenario.panels.second(), g.ris_out, g.ris_in) {
        (Some(p2), Some(out), Some(inb)) => {
            let f1 = f_rad * pat1.evaluate(g.radar.theta, g.radar.phi) * pat1.evaluate(out.theta, out.phi);
            let pat2 = p2.pattern();
            let f2 = pat2.evaluate(inb.theta, inb.phi) * pat2.evaluate(g.target.theta, g.target.phi);
            Ok(ClosedFormBrackets {
                radar: radar_b,
                first_ris: bracket(p1, f1, g.r2()),
                second_ris: Some(bracket(p2, f2, out.distance)),
            })
        }
        _ => {
            let f1 = f_rad * pat1.evaluate(g.radar.theta, g.radar.phi) * pat1.evaluate(g.target.theta, g.target.phi);
            Ok(ClosedFormBrackets {
                radar: radar_b,
                first_ris: bracket(p1, f1, g.r2()),
                second_ris: None,
            })
        }
    }
}

/// Maximum received power for the dual-panel chain, watts.
pub fn closed_form_max_dual(scenario: &Scenario, wavelength: f64) -> Result<f64> {
    if !scenario.is_dual() {
        return Err(crate::Error::InvalidScenario("dual-RIS scenario required".into()));
    }
    Ok(closed_form_brackets(scenario, wavelength)?.received_power())
}

/// Maximum received power for the single-panel chain, watts.
pub fn closed_form_max_single(scenario: &Scenario, wavelength: f64) -> Result<f64> {
    if scenario.is_dual() {
        return Err(crate::Error::InvalidScenario("single-RIS scenario required".into()));
    }
    Ok(closed_form_brackets(scenario, wavelength)?.received_power())
}

//! Element-sum evaluation of the received power.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{element_geometry, ElementGeometry, Vec3};
use crate::summation::ComplexSum;

use super::{CascadeResult, Panels, Scenario};

/// Per-cell links of one panel, row-major.
///
/// `inbound` is the leg whose phase enters the round-trip exponent twice
/// (radar for RIS-1 and single panels, target for RIS-2); `outbound` is the
/// other hop.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CellLink {
    pub inbound: ElementGeometry,
    pub outbound: ElementGeometry,
    /// Extra pattern factor folded into the cell amplitude (`F_rad` on RIS-1).
    pub extra_pattern: f64,
}

/// Links for the panel at path position `index`.
///
/// * dual, RIS-1: radar / RIS-2 centre, with `F_rad`
/// * dual, RIS-2: target / RIS-1 centre
/// * single: radar / target, with `F_rad`
pub(crate) fn panel_links(scenario: &Scenario, index: usize) -> Result<Vec<CellLink>> {
    let radar = &scenario.radar;
    let (panel, inbound_pt, outbound_pt, with_radar) = match (&scenario.panels, index) {
        (Panels::Single(p), 0) => (p, radar.position, scenario.target.position, true),
        (Panels::Dual(a, b), 0) => (a, radar.position, b.center(), true),
        (Panels::Dual(a, b), 1) => (b, scenario.target.position, a.center(), false),
        _ => return Err(Error::InvalidScenario(format!("no panel at index {index}"))),
    };
    panel
        .cells()
        .map(|(j, k)| {
            let c: Vec3 = panel.cell_center(j, k);
            Ok(CellLink {
                inbound: element_geometry(c, inbound_pt, panel.frame())?,
                outbound: element_geometry(c, outbound_pt, panel.frame())?,
                extra_pattern: if with_radar { radar.pattern_toward(c) } else { 1.0 },
            })
        })
        .collect()
}

/// Which distance law the outbound hop follows inside the coherent sum.
#[derive(Clone, Copy)]
enum OutboundLaw {
    /// `1/√r`: the inter-panel hop is shared between the two panel sums.
    SharedHop,
    /// `1/r`: the hop belongs to this panel alone (single-panel target leg).
    FullHop,
}

fn coherent_sum(scenario: &Scenario, index: usize, law: OutboundLaw, wavelength: f64) -> Result<Complex64> {
    let panel = match index {
        0 => scenario.panels.first(),
        _ => scenario
            .panels
            .second()
            .ok_or_else(|| Error::InvalidScenario("second panel required".into()))?,
    };
    let links = panel_links(scenario, index)?;
    let pattern = panel.pattern();
    let sum: ComplexSum = links
        .iter()
        .zip(panel.eta())
        .zip(panel.phase_tx().iter().zip(panel.phase_rx()))
        .map(|((l, &eta), (&phi, &phi2))| {
            let f = l.extra_pattern
                * pattern.evaluate(l.inbound.theta, l.inbound.phi)
                * pattern.evaluate(l.outbound.theta, l.outbound.phi);
            let (r_in, r_out) = (l.inbound.distance, l.outbound.distance);
            let spread = match law {
                OutboundLaw::SharedHop => r_in * r_out.sqrt(),
                OutboundLaw::FullHop => r_in * r_out,
            };
            let exponent = (2.0 * TAU * r_in + TAU * r_out) / wavelength - phi - phi2;
            Complex64::from_polar(f.sqrt() * eta / spread, -exponent)
        })
        .collect();
    Ok(sum.value())
}

fn require_dual(scenario: &Scenario) -> Result<()> {
    if !scenario.is_dual() {
        return Err(Error::InvalidScenario("dual-RIS scenario required".into()));
    }
    Ok(())
}

/// `Σ W_{j,k}` over RIS-1.
pub fn w_sum_ris1(scenario: &Scenario, wavelength: f64) -> Result<Complex64> {
    require_dual(scenario)?;
    coherent_sum(scenario, 0, OutboundLaw::SharedHop, wavelength)
}

/// `Σ W_{m,n}` over RIS-2.
pub fn w_sum_ris2(scenario: &Scenario, wavelength: f64) -> Result<Complex64> {
    require_dual(scenario)?;
    coherent_sum(scenario, 1, OutboundLaw::SharedHop, wavelength)
}

/// `Σ V_{j,k}` over the only panel of a single-RIS scenario.
pub fn v_sum_single(scenario: &Scenario, wavelength: f64) -> Result<Complex64> {
    if scenario.is_dual() {
        return Err(Error::InvalidScenario("single-RIS scenario required".into()));
    }
    coherent_sum(scenario, 0, OutboundLaw::FullHop, wavelength)
}

/// Received power for radar → RIS-1 → RIS-2 → target → RIS-2 → RIS-1 → radar:
///
/// `P_t σ λ² G_t² G_1² G_2² (A_1 A_2)² / (4π)⁷ · |Σ W_{j,k}|⁴ |Σ W_{m,n}|⁴`
pub fn dual_ris_received_power(scenario: &Scenario, wavelength: f64) -> Result<CascadeResult> {
    let s1 = w_sum_ris1(scenario, wavelength)?.norm();
    let s2 = w_sum_ris2(scenario, wavelength)?.norm();
    let (p1, p2) = (scenario.panels.first(), scenario.panels.second().expect("dual"));
    let radar = &scenario.radar;
    let gt = radar.pattern.gain;
    let scale = radar.pt * scenario.target.rcs * wavelength.powi(2) * (gt * p1.gain() * p2.gain()).powi(2)
        * (p1.cell_area() * p2.cell_area()).powi(2)
        / (4.0 * PI).powi(7);
    let pr = scale * s1.powi(4) * s2.powi(4);
    Ok(CascadeResult::new(radar.pt, pr, &scenario.noise, s1, Some(s2)))
}

/// Received power for radar → RIS → target → RIS → radar:
///
/// `P_t σ λ² G_t² G_1² A_1² / (4π)⁵ · |Σ V_{j,k}|⁴`
pub fn single_ris_received_power(scenario: &Scenario, wavelength: f64) -> Result<CascadeResult> {
    let s1 = v_sum_single(scenario, wavelength)?.norm();
    let p1 = scenario.panels.first();
    let radar = &scenario.radar;
    let scale = radar.pt * scenario.target.rcs * wavelength.powi(2) * (radar.pattern.gain * p1.gain()).powi(2)
        * p1.cell_area().powi(2)
        / (4.0 * PI).powi(5);
    let pr = scale * s1.powi(4);
    Ok(CascadeResult::new(radar.pt, pr, &scenario.noise, s1, None))
}

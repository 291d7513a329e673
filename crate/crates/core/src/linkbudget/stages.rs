//! Stage-by-stage powers along the dual-panel path, for diagnostics.
//!
//! Per-cell quantities are taken at a reference cell on each panel (the
//! panel-centre cell by default). The partial coherent sums use the one-way
//! phase of the stage they describe.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::summation::ComplexSum;

use super::cascade::{panel_links, CellLink};
use super::Scenario;

/// `P1 … P7` in watts, in path order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StagePowers(pub [f64; 7]);

impl StagePowers {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based stage lookup (`stage(1)` is `P1`).
    pub fn stage(&self, n: usize) -> f64 {
        self.0[n - 1]
    }
}

/// Stage powers with the panel-centre cells as reference.
pub fn intermediate_cascade(scenario: &Scenario, wavelength: f64) -> Result<StagePowers> {
    let (p1, p2) = match (&scenario.panels.first(), scenario.panels.second()) {
        (a, Some(b)) => (*a, b),
        _ => return Err(Error::InvalidScenario("dual-RIS scenario required".into())),
    };
    let ref1 = p1.center_cell();
    let ref2 = p2.center_cell();
    intermediate_cascade_at(scenario, wavelength, ref1, ref2)
}

/// Stage powers with explicit 1-based reference cells on RIS-1 and RIS-2.
pub fn intermediate_cascade_at(
    scenario: &Scenario,
    wavelength: f64,
    (j, k): (usize, usize),
    (m, n): (usize, usize),
) -> Result<StagePowers> {
    let (p1, p2) = match (&scenario.panels.first(), scenario.panels.second()) {
        (a, Some(b)) => (*a, b),
        _ => return Err(Error::InvalidScenario("dual-RIS scenario required".into())),
    };
    let links1 = panel_links(scenario, 0)?;
    let links2 = panel_links(scenario, 1)?;
    let (i1, i2) = (p1.index(j, k)?, p2.index(m, n)?);
    let (c1, c2) = (&links1[i1], &links2[i2]);
    let (f1, f2) = (p1.pattern(), p2.pattern());
    let f = |pat: &crate::patterns::PatternModel, g: &crate::geometry::ElementGeometry| pat.evaluate(g.theta, g.phi);

    let pt = scenario.radar.pt;
    let gt = scenario.radar.pattern.gain;
    let sigma = scenario.target.rcs;
    let (g1, g2) = (p1.gain(), p2.gain());
    let (a1, a2) = (p1.cell_area(), p2.cell_area());
    let (eta1, eta2) = (p1.eta()[i1], p2.eta()[i2]);
    let four_pi = 4.0 * PI;

    // RIS-1 cell: inbound = radar, outbound = RIS-2.
    let r_r = c1.inbound.distance;
    let r_ris_jk = c1.outbound.distance;
    let f_rad = c1.extra_pattern;
    let f_r1 = f(f1, &c1.inbound);
    let f_r2 = f(f1, &c1.outbound);
    // RIS-2 cell: inbound = target, outbound = RIS-1.
    let r_t = c2.inbound.distance;
    let r_ris_mn = c2.outbound.distance;
    let f_t1 = f(f2, &c2.outbound);
    let f_t2 = f(f2, &c2.inbound);

    let s1 = forward_sum_ris1(p1, &links1, wavelength);
    let s2 = forward_sum_ris2(p2, &links2, wavelength);
    let w2 = super::w_sum_ris2(scenario, wavelength)?;

    let pw1 = pt * gt * f_rad * f_r1 * a1 / (four_pi * r_r * r_r);
    let pw2 = pt * gt * f_rad * f_r1 * a1 / (four_pi.powi(2) * r_r * r_r * r_ris_jk * r_ris_jk)
        * eta1
        * eta1
        * g1
        * f_r2
        * f_t1
        * a2;
    let pw3 = pt * gt * g1 * a1 * a2 * f_t1 / four_pi.powi(2) * s1.norm_sqr();
    let pw4 = pw3 * eta2 * eta2 * g2 * f_t2 / (four_pi * r_t * r_t);
    let pw5 = pt * gt * g1 * g2 * a1 * a2 / four_pi.powi(3) * s1.norm_sqr() * s2.norm_sqr();
    let pw6 = pw5 * sigma / (four_pi * r_t * r_t) * f_t2 * a2 * f_r2 * a1 * eta2 * eta2 * g2
        / (four_pi * r_ris_mn * r_ris_mn)
        * f_t1;
    let pw7 = pt * gt * sigma * g1 * g2 * g2 * (a1 * a2).powi(2) / four_pi.powi(5)
        * f_r2
        * s1.norm_sqr()
        * w2.norm_sqr().powi(2);

    Ok(StagePowers([pw1, pw2, pw3, pw4, pw5, pw6, pw7]))
}

/// `Σ √F_comb η / (r^r r^RIS) · e^{−i(2π r^r/λ − φ + 2π r^RIS/λ)}`
fn forward_sum_ris1(panel: &crate::ris::RisPanel, links: &[CellLink], wavelength: f64) -> Complex64 {
    let pat = panel.pattern();
    let acc: ComplexSum = links
        .iter()
        .zip(panel.eta())
        .zip(panel.phase_tx())
        .map(|((l, &eta), &phi)| {
            let fc = l.extra_pattern
                * pat.evaluate(l.inbound.theta, l.inbound.phi)
                * pat.evaluate(l.outbound.theta, l.outbound.phi);
            let (r_r, r_ris) = (l.inbound.distance, l.outbound.distance);
            let e = TAU * (r_r + r_ris) / wavelength - phi;
            Complex64::from_polar(fc.sqrt() * eta / (r_r * r_ris), -e)
        })
        .collect();
    acc.value()
}

/// `Σ √F_comb η / r^t · e^{−i(2π r^t/λ − φ)}`
fn forward_sum_ris2(panel: &crate::ris::RisPanel, links: &[CellLink], wavelength: f64) -> Complex64 {
    let pat = panel.pattern();
    let acc: ComplexSum = links
        .iter()
        .zip(panel.eta())
        .zip(panel.phase_tx())
        .map(|((l, &eta), &phi)| {
            let fc = pat.evaluate(l.outbound.theta, l.outbound.phi) * pat.evaluate(l.inbound.theta, l.inbound.phi);
            let r_t = l.inbound.distance;
            let e = TAU * r_t / wavelength - phi;
            Complex64::from_polar(fc.sqrt() * eta / r_t, -e)
        })
        .collect();
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkbudget::{Layout, NoiseModel, RadarNode, Target};
    use crate::patterns::{PatternModel, PatternShape};
    use crate::ris::RisPanel;
    use crate::geometry::Vec3;
    use approx::assert_relative_eq;

    #[test]
    fn seven_stages() {
        let s = Layout::default().dual().unwrap();
        let p = intermediate_cascade(&s, crate::DEFAULT_WAVELENGTH).unwrap();
        assert_eq!(p.len(), 7);
        assert!(p.as_slice().iter().all(|x| x.is_finite() && *x >= 0.0));
    }

    #[test]
    fn first_stage_unit_sphere_flux() {
        let iso = PatternModel::isotropic(1.0);
        let area = 0.01;
        let radar = RadarNode {
            position: Vec3::new(0.05, 0.05, 1.0),
            pt: 1.0,
            pattern: iso,
            boresight: -Vec3::Z,
        };
        let frame = crate::geometry::PanelFrame::new(Vec3::ZERO, Vec3::X, Vec3::Y).unwrap();
        let p1 = RisPanel::new(frame, 1, 1, 0.1, 0.1, 1.0, iso).unwrap();
        let p2 = RisPanel::centered(Vec3::new(0.0, 0.0, 10.0), -Vec3::Z, Vec3::X, 1, 1, 0.1, 1.0, iso).unwrap();
        let s = Scenario::dual(
            radar,
            p1,
            p2,
            Target {
                position: Vec3::new(0.0, 0.0, 5.0),
                rcs: 1.0,
            },
            NoiseModel::default(),
        )
        .unwrap();
        let st = intermediate_cascade(&s, 0.2).unwrap();
        assert_relative_eq!(st.stage(1), area / (4.0 * PI), max_relative = 1e-12);
    }

    #[test]
    fn second_to_first_stage_ratio() {
        let l = Layout {
            fold_deg: 20.0,
            cell_shape: PatternShape::CosineExponent { exponent_q: 3.0 },
            ..Default::default()
        };
        let s = l.dual().unwrap();
        let st = intermediate_cascade(&s, l.wavelength).unwrap();
        let (p1, p2) = (s.panels.first(), s.panels.second().unwrap());
        let l1 = panel_links(&s, 0).unwrap();
        let l2 = panel_links(&s, 1).unwrap();
        let (c1, c2) = (l1[p1.index(5, 5).unwrap()], l2[p2.index(5, 5).unwrap()]);
        let expect = 0.8f64.powi(2)
            * p1.gain()
            * p1.pattern().evaluate(c1.outbound.theta, 0.0)
            * p2.pattern().evaluate(c2.outbound.theta, 0.0)
            * p2.cell_area()
            / (4.0 * PI * c1.outbound.distance.powi(2));
        assert_relative_eq!(st.stage(2) / st.stage(1), expect, max_relative = 1e-12);
    }

    #[test]
    fn requires_two_panels() {
        let s = Layout::default().single().unwrap();
        assert!(intermediate_cascade(&s, crate::DEFAULT_WAVELENGTH).is_err());
    }
}

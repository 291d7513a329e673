use crate::error::{Error, Result};
use crate::geometry::{center_geometry, CenterGeometry, Vec3};
use crate::patterns::{PatternModel, PatternShape};
use crate::ris::{PhasingMode, RisPanel};
use crate::units::db_to_linear;

use super::cascade::panel_links;
use super::{NoiseModel, RadarNode, Target};

/// One panel (radar → RIS → target → RIS → radar) or two panels
/// (radar → RIS-1 → RIS-2 → target and back).
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Panels {
    Single(RisPanel),
    Dual(RisPanel, RisPanel),
}

impl Panels {
    pub fn first(&self) -> &RisPanel {
        match self {
            Panels::Single(p) | Panels::Dual(p, _) => p,
        }
    }

    pub fn second(&self) -> Option<&RisPanel> {
        match self {
            Panels::Single(_) => None,
            Panels::Dual(_, p) => Some(p),
        }
    }

    pub fn count(&self) -> usize {
        match self {
            Panels::Single(_) => 1,
            Panels::Dual(..) => 2,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &RisPanel> {
        std::iter::once(self.first()).chain(self.second())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub radar: RadarNode,
    pub target: Target,
    pub panels: Panels,
    pub noise: NoiseModel,
}

impl Scenario {
    pub fn new(radar: RadarNode, panels: Panels, target: Target, noise: NoiseModel) -> Result<Self> {
        let s = Self {
            radar,
            target,
            panels,
            noise,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn dual(radar: RadarNode, first: RisPanel, second: RisPanel, target: Target, noise: NoiseModel) -> Result<Self> {
        Self::new(radar, Panels::Dual(first, second), target, noise)
    }

    pub fn single(radar: RadarNode, panel: RisPanel, target: Target, noise: NoiseModel) -> Result<Self> {
        Self::new(radar, Panels::Single(panel), target, noise)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidScenario(m));
        if !(self.radar.pt >= 0.0 && self.radar.pt.is_finite()) {
            return bad(format!("transmit power must be non-negative, got {}", self.radar.pt));
        }
        if self.radar.boresight.normalized().is_none() {
            return bad("radar boresight must be non-zero".into());
        }
        if !(self.target.rcs > 0.0 && self.target.rcs.is_finite()) {
            return bad(format!("target RCS must be positive, got {}", self.target.rcs));
        }
        let n = &self.noise;
        if !(n.t0 > 0.0 && n.bandwidth > 0.0 && n.loss >= 1.0 && n.pulses >= 1) {
            return bad(format!("invalid noise model {n:?}"));
        }
        if !self.radar.position.is_finite() || !self.target.position.is_finite() {
            return bad("non-finite node position".into());
        }
        self.center_geometry().map(|_| ())
    }

    pub fn is_dual(&self) -> bool {
        matches!(self.panels, Panels::Dual(..))
    }

    pub fn center_geometry(&self) -> Result<CenterGeometry> {
        let centers: Vec<_> = self.panels.iter().map(|p| (p.center(), p.frame())).collect();
        center_geometry(self.radar.position, &centers, self.target.position)
    }

    /// Applies a phasing mode to each panel (in path order).
    pub fn with_phasing(&self, modes: &[PhasingMode], wavelength: f64) -> Result<Self> {
        if modes.len() != self.panels.count() {
            return Err(Error::InvalidScenario(format!(
                "{} phasing modes for {} panels",
                modes.len(),
                self.panels.count()
            )));
        }
        let phased: Vec<RisPanel> = self
            .panels
            .iter()
            .zip(modes)
            .enumerate()
            .map(|(i, (panel, mode))| match mode {
                PhasingMode::UniformZero => {
                    let n = panel.len();
                    panel.clone().with_symmetric_phases(vec![0.0; n])
                }
                PhasingMode::Explicit { phase_tx, phase_rx } => {
                    panel.clone().with_phases(phase_tx.clone(), phase_rx.clone())
                }
                PhasingMode::RoundTripConjugate => {
                    let links = panel_links(self, i)?;
                    let inbound: Vec<f64> = links.iter().map(|l| l.inbound.distance).collect();
                    let outbound: Vec<f64> = links.iter().map(|l| l.outbound.distance).collect();
                    panel.synthesize_conjugate_phases(&inbound, &outbound, wavelength)
                }
            })
            .collect::<Result<_>>()?;
        let mut it = phased.into_iter();
        let panels = match self.panels {
            Panels::Single(_) => Panels::Single(it.next().expect("one panel")),
            Panels::Dual(..) => Panels::Dual(it.next().expect("first panel"), it.next().expect("second panel")),
        };
        Ok(Self {
            panels,
            ..self.clone()
        })
    }

    /// Every panel set to round-trip conjugate phasing.
    pub fn conjugate_phased(&self, wavelength: f64) -> Result<Self> {
        let modes = vec![PhasingMode::RoundTripConjugate; self.panels.count()];
        self.with_phasing(&modes, wavelength)
    }

    /// Single-panel scenario sharing RIS-1 and the radar leg: the target is
    /// placed at the current target range along the RIS-1 → RIS-2 direction.
    /// A single-panel scenario is returned unchanged.
    pub fn single_counterpart(&self) -> Result<Self> {
        let Panels::Dual(a, b) = &self.panels else {
            return Ok(self.clone());
        };
        let r2 = self.target.position.distance(b.center());
        let dir = (b.center() - a.center())
            .normalized()
            .ok_or_else(|| Error::DegenerateGeometry("coincident panel centres".into()))?;
        Self::single(
            self.radar,
            a.clone(),
            Target {
                position: a.center() + dir * r2,
                ..self.target
            },
            self.noise,
        )
    }

    /// Replaces the panel at path position `index` (0 or 1).
    pub fn with_panel(&self, index: usize, panel: RisPanel) -> Result<Self> {
        let panels = match (&self.panels, index) {
            (Panels::Single(_), 0) => Panels::Single(panel),
            (Panels::Dual(_, b), 0) => Panels::Dual(panel, b.clone()),
            (Panels::Dual(a, _), 1) => Panels::Dual(a.clone(), panel),
            _ => return Err(Error::InvalidScenario(format!("no panel at index {index}"))),
        };
        Ok(Self {
            panels,
            ..self.clone()
        })
    }
}

/// Parametric placement used by the built-in presets and the sweeps.
///
/// RIS-1 sits at the origin facing `+z`. The radar lies at `r1` and RIS-2 at
/// `r_ris` from RIS-1, each `fold_deg` off its normal on opposite sides.
/// RIS-2 is tilted so RIS-1 and the target both sit `fold_deg` off its normal
/// with opposite azimuths (the maximum-alignment condition). With
/// `fold_deg = 0` every link is on boresight and all pattern factors are 1.
///
/// The single-panel counterpart keeps RIS-1 and puts the target at `r2` along
/// the RIS-1 → RIS-2 direction, so both layouts share the radar leg and the
/// RIS-1 pattern factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub wavelength: f64,
    pub pt_dbw: f64,
    pub gt_db: f64,
    /// Radar antenna shape; `None` derives a `cos^q` lobe whose hemispherical
    /// directivity `2(q+1)` equals the antenna gain.
    pub radar_shape: Option<PatternShape>,
    pub cell_shape: PatternShape,
    pub ris_gain_db: f64,
    pub cells1: (usize, usize),
    pub cells2: (usize, usize),
    /// Cell size as a fraction of the wavelength.
    pub spacing_fraction: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub rcs: f64,
    pub r1: f64,
    pub r_ris: f64,
    pub r2: f64,
    pub fold_deg: f64,
    pub noise: NoiseModel,
}

impl Default for Layout {
    /// Table-1 style defaults: 30 dBW, 30 dB antenna, 4 dB / 45° cells at
    /// λ/2, η = 0.8, σ = 0.02 m², r1 = 250 m, r_RIS = 50 m.
    fn default() -> Self {
        Self {
            wavelength: crate::DEFAULT_WAVELENGTH,
            pt_dbw: 30.0,
            gt_db: 30.0,
            radar_shape: None,
            cell_shape: PatternModel::default_unit_cell().shape,
            ris_gain_db: 4.0,
            cells1: (10, 10),
            cells2: (10, 10),
            spacing_fraction: 0.5,
            eta1: 0.8,
            eta2: 0.8,
            rcs: 0.02,
            r1: 250.0,
            r_ris: 50.0,
            r2: 100.0,
            fold_deg: 0.0,
            noise: NoiseModel::default(),
        }
    }
}

impl Layout {
    /// Same cell count on both panels.
    pub fn with_cells(mut self, n: usize) -> Self {
        self.cells1 = (n, n);
        self.cells2 = (n, n);
        self
    }

    pub fn spacing(&self) -> f64 {
        self.spacing_fraction * self.wavelength
    }

    pub fn radar_pattern(&self) -> PatternModel {
        let gain = db_to_linear(self.gt_db);
        let shape = self.radar_shape.unwrap_or(PatternShape::CosineExponent {
            exponent_q: (gain / 2.0 - 1.0).max(0.0),
        });
        PatternModel { shape, gain }
    }

    pub fn cell_pattern(&self) -> PatternModel {
        PatternModel {
            shape: self.cell_shape,
            gain: db_to_linear(self.ris_gain_db),
        }
    }

    fn placements(&self) -> Placements {
        let a = self.fold_deg.to_radians();
        let toward_ris2 = Vec3::new(a.sin(), 0.0, a.cos());
        let radar = Vec3::new(-a.sin(), 0.0, a.cos()) * self.r1;
        let c2 = toward_ris2 * self.r_ris;
        let back = -toward_ris2;
        let rot = |v: Vec3, b: f64| Vec3::new(v.x * b.cos() + v.z * b.sin(), v.y, -v.x * b.sin() + v.z * b.cos());
        Placements {
            radar,
            c2,
            n2: rot(back, a),
            target_dual: c2 + rot(back, 2.0 * a) * self.r2,
            target_single: toward_ris2 * self.r2,
        }
    }

    fn radar_node(&self, position: Vec3) -> RadarNode {
        RadarNode {
            position,
            pt: db_to_linear(self.pt_dbw),
            pattern: self.radar_pattern(),
            boresight: (-position).normalized().unwrap_or(-Vec3::Z),
        }
    }

    fn panel(&self, center: Vec3, normal: Vec3, (rows, cols): (usize, usize), eta: f64) -> Result<RisPanel> {
        RisPanel::centered(center, normal, Vec3::Y, rows, cols, self.spacing(), eta, self.cell_pattern())
    }

    /// Dual-panel scenario with conjugate phasing applied.
    pub fn dual(&self) -> Result<Scenario> {
        let p = self.placements();
        let s = Scenario::dual(
            self.radar_node(p.radar),
            self.panel(Vec3::ZERO, Vec3::Z, self.cells1, self.eta1)?,
            self.panel(p.c2, p.n2, self.cells2, self.eta2)?,
            Target {
                position: p.target_dual,
                rcs: self.rcs,
            },
            self.noise,
        )?;
        s.conjugate_phased(self.wavelength)
    }

    /// Single-panel counterpart (RIS-1 only) with conjugate phasing applied.
    pub fn single(&self) -> Result<Scenario> {
        let p = self.placements();
        let s = Scenario::single(
            self.radar_node(p.radar),
            self.panel(Vec3::ZERO, Vec3::Z, self.cells1, self.eta1)?,
            Target {
                position: p.target_single,
                rcs: self.rcs,
            },
            self.noise,
        )?;
        s.conjugate_phased(self.wavelength)
    }
}

struct Placements {
    radar: Vec3,
    c2: Vec3,
    n2: Vec3,
    target_dual: Vec3,
    target_single: Vec3,
}

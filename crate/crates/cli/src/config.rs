//! TOML scenario documents.
//!
//! All dB quantities are converted to linear here and nowhere else.

use std::path::Path;

use ris_radar::patterns::q_from_hpbw;
use ris_radar::units::db_to_linear;
use ris_radar::{NoiseModel, PanelFrame, PatternModel, PatternShape, PhasingMode, RadarNode, RisPanel, Scenario, Target, Vec3};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

const DEFAULT_CELL_HPBW_DEG: f64 = 45.0;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub wavelength_m: f64,
    pub radar: RadarDoc,
    pub panels: Spanned<Vec<Spanned<PanelDoc>>>,
    pub target: TargetDoc,
    pub noise: NoiseDoc,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadarDoc {
    pub position: [f64; 3],
    pub pt_dbw: f64,
    pub gt_db: f64,
    pub pattern: RadarPatternDoc,
    /// Defaults to the direction of the first panel's centre.
    pub boresight: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadarPatternDoc {
    /// `cos^q` lobe with hemispherical directivity `2(q+1)` equal to the gain.
    GainMatched,
    Isotropic,
    CosineExponent { exponent_q: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub center: [f64; 3],
    pub u_axis: [f64; 3],
    pub v_axis: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhasingDoc {
    UniformZero,
    RoundTripConjugate,
    Explicit,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PanelDoc {
    pub frame: FrameDoc,
    pub rows: usize,
    pub cols: usize,
    pub spacing_fraction_of_lambda: f64,
    pub gain_db: f64,
    pub eta: f64,
    pub phasing_mode: PhasingDoc,
    pub phase_bits: Option<u32>,
    pub hpbw_deg: Option<f64>,
    /// Row-major radians, `phasing_mode = "explicit"` only.
    pub phase_tx_rad: Option<Vec<f64>>,
    pub phase_rx_rad: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetDoc {
    pub position: [f64; 3],
    pub rcs_m2: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseDoc {
    pub t0_k: f64,
    pub b_hz: f64,
    pub l_db: f64,
    pub pulses: u32,
}

/// A validated document with its source, for line-anchored messages.
#[derive(Debug, Clone)]
pub struct Config {
    pub doc: ConfigDocument,
    source: String,
    name: String,
}

/// Scenario ready for evaluation, plus how its phases are to be set.
#[derive(Debug, Clone)]
pub struct Built {
    /// Geometry and amplitudes; all phases zero.
    pub base: Scenario,
    pub wavelength: f64,
    pub modes: Vec<PhasingMode>,
    pub bits: Vec<Option<u32>>,
}

impl Built {
    /// Scenario with each panel's configured phasing (and quantization) applied.
    pub fn phased(&self) -> Result<Scenario, CliError> {
        let mut s = self.base.with_phasing(&self.modes, self.wavelength)?;
        for (i, bits) in self.bits.iter().enumerate() {
            if let Some(b) = *bits {
                let p = s.panels.iter().nth(i).expect("panel").clone().quantized(b);
                s = s.with_panel(i, p)?;
            }
        }
        Ok(s)
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let source = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&source, &path.display().to_string())
    }

    pub fn parse(source: &str, name: &str) -> Result<Self, CliError> {
        let doc: ConfigDocument = toml::from_str(source).map_err(|e| {
            let at = e.span().map(|s| format!(" at line {}", line_of(source, s.start))).unwrap_or_default();
            CliError::Config(format!("{name}{at}: {}", e.message()))
        })?;
        let cfg = Self {
            doc,
            source: source.to_string(),
            name: name.to_string(),
        };
        cfg.check_values()?;
        Ok(cfg)
    }

    fn err_at(&self, offset: usize, msg: impl std::fmt::Display) -> CliError {
        CliError::Config(format!("{} at line {}: {msg}", self.name, line_of(&self.source, offset)))
    }

    fn check_values(&self) -> Result<(), CliError> {
        let d = &self.doc;
        let n = d.panels.get_ref().len();
        if !(1..=2).contains(&n) {
            return Err(self.err_at(d.panels.span().start, format!("field `panels` must hold 1 or 2 panels, found {n}")));
        }
        let top = |field: &str, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Config(format!("{}: field `{field}` out of range", self.name)))
            }
        };
        top("wavelength_m", d.wavelength_m > 0.0 && d.wavelength_m.is_finite())?;
        top("radar.pt_dbw", d.radar.pt_dbw.is_finite())?;
        top("radar.gt_db", d.radar.gt_db.is_finite())?;
        top("radar.position", finite3(d.radar.position))?;
        top("radar.boresight", d.radar.boresight.is_none_or(finite3))?;
        top("target.position", finite3(d.target.position))?;
        top("target.rcs_m2", d.target.rcs_m2 > 0.0 && d.target.rcs_m2.is_finite())?;
        top("noise.t0_k", d.noise.t0_k > 0.0 && d.noise.t0_k.is_finite())?;
        top("noise.b_hz", d.noise.b_hz > 0.0 && d.noise.b_hz.is_finite())?;
        top("noise.l_db", d.noise.l_db >= 0.0 && d.noise.l_db.is_finite())?;
        top("noise.pulses", d.noise.pulses >= 1)?;
        if let RadarPatternDoc::CosineExponent { exponent_q } = d.radar.pattern {
            top("radar.pattern.exponent_q", exponent_q >= 0.0 && exponent_q.is_finite())?;
        }
        for (i, p) in d.panels.get_ref().iter().enumerate() {
            let at = p.span().start;
            let p = p.get_ref();
            let field = |f: &str, ok: bool| {
                if ok {
                    Ok(())
                } else {
                    Err(self.err_at(at, format!("field `panels[{i}].{f}` out of range")))
                }
            };
            field("rows", p.rows >= 1)?;
            field("cols", p.cols >= 1)?;
            field(
                "spacing_fraction_of_lambda",
                p.spacing_fraction_of_lambda > 0.0 && p.spacing_fraction_of_lambda.is_finite(),
            )?;
            field("gain_db", p.gain_db.is_finite())?;
            field("eta", (0.0..=1.0).contains(&p.eta))?;
            field("hpbw_deg", p.hpbw_deg.is_none_or(|h| h > 0.0 && h < 180.0))?;
            field("phase_bits", p.phase_bits.is_none_or(|b| (1..=16).contains(&b)))?;
            field("frame.center", finite3(p.frame.center))?;
            let explicit = p.phasing_mode == PhasingDoc::Explicit;
            let cells = p.rows * p.cols;
            let grid_ok = |g: &Option<Vec<f64>>| match g {
                Some(v) => explicit && v.len() == cells && v.iter().all(|x| x.is_finite()),
                None => !explicit,
            };
            field("phase_tx_rad", grid_ok(&p.phase_tx_rad))?;
            field("phase_rx_rad", grid_ok(&p.phase_rx_rad))?;
        }
        Ok(())
    }

    /// Builds the scenario. `cells` resizes every panel to `n × n`.
    pub fn build(&self, cells: Option<usize>) -> Result<Built, CliError> {
        let d = &self.doc;
        let lam = d.wavelength_m;
        let mut panels = Vec::new();
        let mut modes = Vec::new();
        let mut bits = Vec::new();
        for (i, sp) in d.panels.get_ref().iter().enumerate() {
            let p = sp.get_ref();
            let frame = panel_frame(&p.frame).map_err(|m| self.err_at(sp.span().start, format!("panels[{i}].frame: {m}")))?;
            let (rows, cols) = cells.map_or((p.rows, p.cols), |n| (n, n));
            let s = p.spacing_fraction_of_lambda * lam;
            let q = q_from_hpbw(p.hpbw_deg.unwrap_or(DEFAULT_CELL_HPBW_DEG).to_radians())?;
            let pattern = PatternModel::cosine(q, db_to_linear(p.gain_db));
            let frame = frame.centered_at(frame.origin(), rows, cols, s, s);
            let panel = RisPanel::new(frame, rows, cols, s, s, p.eta, pattern)?;
            panel.check_spacing(lam);
            modes.push(match p.phasing_mode {
                PhasingDoc::UniformZero => PhasingMode::UniformZero,
                PhasingDoc::RoundTripConjugate => PhasingMode::RoundTripConjugate,
                PhasingDoc::Explicit if cells.is_some() => {
                    return Err(self.err_at(sp.span().start, format!("panels[{i}]: explicit phases cannot be resized")))
                }
                PhasingDoc::Explicit => PhasingMode::Explicit {
                    phase_tx: p.phase_tx_rad.clone().unwrap_or_default(),
                    phase_rx: p.phase_rx_rad.clone().unwrap_or_default(),
                },
            });
            bits.push(p.phase_bits);
            panels.push(panel);
        }

        let radar_pos = Vec3::from(d.radar.position);
        let boresight = match d.radar.boresight {
            Some(b) => Vec3::from(b),
            None => panels[0].center() - radar_pos,
        };
        let gain = db_to_linear(d.radar.gt_db);
        let shape = match d.radar.pattern {
            RadarPatternDoc::GainMatched => PatternShape::CosineExponent {
                exponent_q: (gain / 2.0 - 1.0).max(0.0),
            },
            RadarPatternDoc::Isotropic => PatternShape::Isotropic,
            RadarPatternDoc::CosineExponent { exponent_q } => PatternShape::CosineExponent { exponent_q },
        };
        let radar = RadarNode {
            position: radar_pos,
            pt: db_to_linear(d.radar.pt_dbw),
            pattern: PatternModel { shape, gain },
            boresight: boresight.normalized().ok_or_else(|| {
                CliError::Geometry("radar boresight is zero (radar at the first panel centre?)".into())
            })?,
        };
        let target = Target {
            position: Vec3::from(d.target.position),
            rcs: d.target.rcs_m2,
        };
        let noise = NoiseModel {
            t0: d.noise.t0_k,
            bandwidth: d.noise.b_hz,
            loss: db_to_linear(d.noise.l_db),
            pulses: d.noise.pulses,
        };
        let mut it = panels.into_iter();
        let first = it.next().expect("checked panel count");
        let base = match it.next() {
            Some(second) => Scenario::dual(radar, first, second, target, noise)?,
            None => Scenario::single(radar, first, target, noise)?,
        };
        Ok(Built {
            base,
            wavelength: lam,
            modes,
            bits,
        })
    }
}

/// Frame centred on `center`. Axes are normalized and `v` is made exactly
/// orthogonal to `u`; axes more than 1e-6 from orthogonal are rejected.
fn panel_frame(f: &FrameDoc) -> Result<PanelFrame, String> {
    let u = Vec3::from(f.u_axis).normalized().ok_or("u_axis must be non-zero")?;
    let v = Vec3::from(f.v_axis).normalized().ok_or("v_axis must be non-zero")?;
    let c = u.dot(v);
    if c.abs() > 1e-6 {
        return Err(format!("u_axis and v_axis are not orthogonal (cos = {c:.3e})"));
    }
    let v = (v - u * c).normalized().ok_or("degenerate axes")?;
    PanelFrame::new(Vec3::from(f.center), u, v).map_err(|e| e.to_string())
}

fn finite3(v: [f64; 3]) -> bool {
    v.iter().all(|x| x.is_finite())
}

fn line_of(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].matches('\n').count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"
wavelength_m = 0.2142

[radar]
position = [0.0, 0.0, 250.0]
pt_dbw = 30.0
gt_db = 30.0
pattern = { kind = "gain_matched" }

[[panels]]
frame = { center = [0.0, 0.0, 0.0], u_axis = [1.0, 0.0, 0.0], v_axis = [0.0, 1.0, 0.0] }
rows = 10
cols = 10
spacing_fraction_of_lambda = 0.5
gain_db = 4.0
eta = 0.8
phasing_mode = "round_trip_conjugate"

[[panels]]
frame = { center = [0.0, 0.0, 50.0], u_axis = [1.0, 0.0, 0.0], v_axis = [0.0, -1.0, 0.0] }
rows = 10
cols = 10
spacing_fraction_of_lambda = 0.5
gain_db = 4.0
eta = 0.8
phasing_mode = "round_trip_conjugate"

[target]
position = [0.0, 0.0, -50.0]
rcs_m2 = 0.02

[noise]
t0_k = 290.0
b_hz = 1e6
l_db = 0.0
pulses = 1
"#;

    #[test]
    fn parses_and_builds() {
        let c = Config::parse(DUAL, "dual.toml").unwrap();
        let b = c.build(None).unwrap();
        assert!(b.base.is_dual());
        assert_eq!(b.base.radar.pt, 1000.0);
        assert!((b.base.radar.boresight.z + 1.0).abs() < 1e-12);
        let g = b.base.center_geometry().unwrap();
        assert!((g.r1() - 250.0).abs() < 1e-9);
        assert!((g.r2() - 100.0).abs() < 1e-9);
        assert!(b.phased().is_ok());
    }

    #[test]
    fn three_panels_name_the_field() {
        let block = &DUAL[DUAL.rfind("[[panels]]").unwrap()..DUAL.find("[target]").unwrap()];
        let extra = DUAL.replace("[target]", &format!("{block}[target]"));
        let err = Config::parse(&extra, "x.toml").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("panels"), "{msg}");
        assert!(msg.contains("line"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_field_is_line_anchored() {
        let bad = DUAL.replace("rcs_m2 = 0.02", "rcs_m2 = 0.02\nrcs_dbsm = -17");
        let msg = Config::parse(&bad, "x.toml").unwrap_err().to_string();
        assert!(msg.contains("rcs_dbsm") && msg.contains("line"), "{msg}");
    }

    #[test]
    fn out_of_range_eta() {
        let bad = DUAL.replacen("eta = 0.8", "eta = 1.5", 1);
        let msg = Config::parse(&bad, "x.toml").unwrap_err().to_string();
        assert!(msg.contains("panels[0].eta"), "{msg}");
    }

    #[test]
    fn resize_override() {
        let b = Config::parse(DUAL, "d").unwrap().build(Some(4)).unwrap();
        assert_eq!(b.base.panels.first().len(), 16);
        assert_eq!(b.base.panels.second().unwrap().len(), 16);
    }

    #[test]
    fn non_orthogonal_frame() {
        let bad = DUAL.replacen("v_axis = [0.0, 1.0, 0.0]", "v_axis = [0.5, 1.0, 0.0]", 1);
        let c = Config::parse(&bad, "x").unwrap();
        assert_eq!(c.build(None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn explicit_phases_need_grids() {
        let bad = DUAL.replacen("\"round_trip_conjugate\"", "\"explicit\"", 1);
        assert!(Config::parse(&bad, "x").is_err());
    }
}

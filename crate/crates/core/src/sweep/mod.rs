//! Parameter sweeps over a base scenario, single vs dual comparison, and the
//! report writers.

mod output;
mod table;

pub use output::{emit_csv, emit_svg_plot, format_sig6, PlotStyle, CSV_HEADER};
pub use table::{check_table2, table2_report, Table2Mismatch, Table2Row, TABLE2_CELLS, TABLE2_EXPECTED};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linkbudget::{
    closed_form_max_dual, closed_form_max_single, dual_ris_received_power, path_loss_db,
    single_ris_received_power, snr, Panels, Scenario,
};

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Range from the last panel centre to the target, metres.
    RisTargetDistance,
    /// Cells per side on every panel.
    CellsPerSide,
    /// Radar to RIS-1 centre, metres.
    R1,
    /// RIS-1 centre to RIS-2 centre, metres (RIS-2 and target move rigidly).
    RRis,
    /// Integrated pulses.
    Pulses,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::RisTargetDistance => "ris_target_distance",
            SweepAxis::CellsPerSide => "cells_per_side",
            SweepAxis::R1 => "r1",
            SweepAxis::RRis => "r_ris",
            SweepAxis::Pulses => "pulses",
        }
    }

    fn is_integer(self) -> bool {
        matches!(self, SweepAxis::CellsPerSide | SweepAxis::Pulses)
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ris_target_distance" | "r2" => SweepAxis::RisTargetDistance,
            "cells_per_side" | "cells" => SweepAxis::CellsPerSide,
            "r1" => SweepAxis::R1,
            "r_ris" => SweepAxis::RRis,
            "pulses" => SweepAxis::Pulses,
            other => return Err(Error::InvalidSweep(format!("unknown axis `{other}`"))),
        })
    }
}

/// Which route evaluates each point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    ElementSum,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base_scenario: Scenario,
    pub wavelength: f64,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub compare_single_dual: bool,
    pub mark_far_field: bool,
    pub method: Method,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidSweep("no axis values".into()));
        }
        if self.values.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidSweep("axis values must be positive and finite".into()));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSweep("axis values must be strictly increasing".into()));
        }
        if self.axis.is_integer() && self.values.iter().any(|v| v.fract() != 0.0) {
            return Err(Error::InvalidSweep(format!("{} takes integer values", self.axis.name())));
        }
        if self.axis == SweepAxis::RRis && !self.base_scenario.is_dual() {
            return Err(Error::InvalidSweep("r_ris needs a dual-RIS scenario".into()));
        }
        if self.wavelength.is_nan() || self.wavelength <= 0.0 {
            return Err(Error::InvalidSweep("wavelength must be positive".into()));
        }
        Ok(())
    }

    /// Far-field ranges worth marking on this axis (one per panel, deduplicated).
    pub fn far_field_markers(&self) -> Vec<f64> {
        if !self.mark_far_field {
            return Vec::new();
        }
        let panels = &self.base_scenario.panels;
        let mut marks: Vec<f64> = match self.axis {
            SweepAxis::RisTargetDistance => {
                let mut m = vec![panels.iter().last().expect("panel").far_field_distance(self.wavelength)];
                if self.compare_single_dual {
                    m.push(panels.first().far_field_distance(self.wavelength));
                }
                m
            }
            SweepAxis::R1 => vec![panels.first().far_field_distance(self.wavelength)],
            _ => Vec::new(),
        };
        marks.sort_by(f64::total_cmp);
        marks.dedup();
        marks
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub snr_single_db: Option<f64>,
    pub snr_dual_db: Option<f64>,
    pub pr_dual_w: Option<f64>,
    pub path_loss_dual_db: Option<f64>,
    /// Per panel (path order): radar and target links at or beyond the
    /// panel's far-field range.
    pub far_field_ok: Vec<bool>,
    pub error: Option<String>,
}

impl SweepRow {
    fn failed(axis_value: f64, e: Error) -> Self {
        Self {
            axis_value,
            snr_single_db: None,
            snr_dual_db: None,
            pr_dual_w: None,
            path_loss_dual_db: None,
            far_field_ok: Vec::new(),
            error: Some(e.to_string()),
        }
    }

    pub fn all_far_field(&self) -> bool {
        self.error.is_none() && !self.far_field_ok.is_empty() && self.far_field_ok.iter().all(|&b| b)
    }

    /// `snr_dual_db − snr_single_db` when both are present.
    pub fn dual_advantage_db(&self) -> Option<f64> {
        Some(self.snr_dual_db? - self.snr_single_db?)
    }
}

/// Scenario for one sweep point (phases not yet synthesized).
pub fn apply_axis(base: &Scenario, axis: SweepAxis, value: f64) -> Result<Scenario> {
    let mut s = base.clone();
    match axis {
        SweepAxis::RisTargetDistance => {
            let c = base.panels.iter().last().expect("panel").center();
            let dir = (base.target.position - c)
                .normalized()
                .ok_or_else(|| Error::DegenerateGeometry("target at panel centre".into()))?;
            s.target.position = c + dir * value;
        }
        SweepAxis::R1 => {
            let c = base.panels.first().center();
            let dir = (base.radar.position - c)
                .normalized()
                .ok_or_else(|| Error::DegenerateGeometry("radar at panel centre".into()))?;
            s.radar.position = c + dir * value;
        }
        SweepAxis::RRis => {
            let Panels::Dual(a, b) = &base.panels else {
                return Err(Error::InvalidSweep("r_ris needs a dual-RIS scenario".into()));
            };
            let dir = (b.center() - a.center())
                .normalized()
                .ok_or_else(|| Error::DegenerateGeometry("coincident panel centres".into()))?;
            let shift = a.center() + dir * value - b.center();
            s = s.with_panel(1, b.clone().translated(shift)?)?;
            s.target.position = s.target.position + shift;
        }
        SweepAxis::CellsPerSide => {
            let n = value as usize;
            s.panels = match &base.panels {
                Panels::Single(p) => Panels::Single(p.resized(n, n)?),
                Panels::Dual(a, b) => Panels::Dual(a.resized(n, n)?, b.resized(n, n)?),
            };
        }
        SweepAxis::Pulses => {
            if value > f64::from(u32::MAX) {
                return Err(Error::InvalidSweep(format!("{value} pulses out of range")));
            }
            s.noise.pulses = value as u32;
        }
    }
    Scenario::new(s.radar, s.panels, s.target, s.noise)
}

fn far_field_flags(scenario: &Scenario, wavelength: f64) -> Result<Vec<bool>> {
    let g = scenario.center_geometry()?;
    Ok(match &scenario.panels {
        Panels::Single(p) => {
            let ff = p.far_field_distance(wavelength);
            vec![g.r1() >= ff && g.r2() >= ff]
        }
        Panels::Dual(a, b) => vec![
            g.r1() >= a.far_field_distance(wavelength),
            g.r2() >= b.far_field_distance(wavelength),
        ],
    })
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> Result<SweepRow> {
    let lam = spec.wavelength;
    let point = apply_axis(&spec.base_scenario, spec.axis, value)?;
    let phased = point.conjugate_phased(lam)?;
    let noise = phased.noise;
    let pt = phased.radar.pt;

    let single_pr = |s: &Scenario| -> Result<f64> {
        match spec.method {
            Method::ElementSum => Ok(single_ris_received_power(s, lam)?.pr),
            Method::ClosedForm => closed_form_max_single(s, lam),
        }
    };

    let mut row = SweepRow {
        axis_value: value,
        snr_single_db: None,
        snr_dual_db: None,
        pr_dual_w: None,
        path_loss_dual_db: None,
        far_field_ok: far_field_flags(&phased, lam)?,
        error: None,
    };

    if phased.is_dual() {
        let pr = match spec.method {
            Method::ElementSum => dual_ris_received_power(&phased, lam)?.pr,
            Method::ClosedForm => closed_form_max_dual(&phased, lam)?,
        };
        row.snr_dual_db = Some(snr(pr, &noise).db);
        row.pr_dual_w = Some(pr);
        row.path_loss_dual_db = Some(path_loss_db(pt, pr));
        if spec.compare_single_dual {
            let single = point.single_counterpart()?.conjugate_phased(lam)?;
            row.snr_single_db = Some(snr(single_pr(&single)?, &noise).db);
        }
    } else {
        row.snr_single_db = Some(snr(single_pr(&phased)?, &noise).db);
    }
    Ok(row)
}

/// One row per axis value, in order. Points are evaluated in parallel; a
/// failing point yields a row with `error` set and the sweep continues.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .values
        .par_iter()
        .map(|&v| evaluate_point(spec, v).unwrap_or_else(|e| SweepRow::failed(v, e)))
        .collect())
}

/// How dual compares with single over a set of rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    DualBetter,
    DualWorse,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub failed: usize,
    /// First axis value where the sign of `dual − single` flips.
    pub crossover: Option<f64>,
    /// Comparison over rows where every link is in the far field.
    pub far_field: Option<Comparison>,
    pub far_field_points: usize,
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let diffs: Vec<(f64, f64, bool)> = rows
        .iter()
        .filter_map(|r| r.dual_advantage_db().map(|d| (r.axis_value, d, r.all_far_field())))
        .collect();
    let crossover = diffs
        .windows(2)
        .find(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0))
        .map(|w| w[1].0);
    let ff: Vec<f64> = diffs.iter().filter(|d| d.2).map(|d| d.1).collect();
    let far_field = if ff.is_empty() {
        None
    } else if ff.iter().all(|&d| d > 0.0) {
        Some(Comparison::DualBetter)
    } else if ff.iter().all(|&d| d < 0.0) {
        Some(Comparison::DualWorse)
    } else {
        Some(Comparison::Mixed)
    };
    SweepSummary {
        rows: rows.len(),
        failed: rows.iter().filter(|r| r.error.is_some()).count(),
        crossover,
        far_field,
        far_field_points: ff.len(),
    }
}

/// `n` logarithmically spaced values from `from` to `to` inclusive.
pub fn log_space(from: f64, to: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![from],
        _ => {
            let (a, b) = (from.ln(), to.ln());
            (0..n)
                .map(|i| match i {
                    0 => from,
                    i if i == n - 1 => to,
                    i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
                })
                .collect()
        }
    }
}

/// `n` evenly spaced values from `from` to `to` inclusive.
pub fn lin_space(from: f64, to: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..n)
            .map(|i| if i == n - 1 { to } else { from + (to - from) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

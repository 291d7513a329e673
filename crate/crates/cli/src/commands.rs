use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use ris_radar::linkbudget::{
    closed_form_max_dual, closed_form_max_single, dual_ris_received_power, single_ris_received_power,
    CascadeResult,
};
use ris_radar::sweep::{
    check_table2, emit_csv, emit_svg_plot, lin_space, log_space, run_sweep, summarize, table2_report, Comparison,
    Method, PlotStyle, SweepAxis, SweepSpec,
};
use ris_radar::units::db_to_linear;

use crate::config::{Built, Config};
use crate::error::CliError;
use crate::{Overrides, SnrArgs, SweepArgs, Table2Args};

fn load(path: &Path, o: &Overrides) -> Result<Built, CliError> {
    let mut cfg = Config::load(path)?;
    if let Some(p) = o.pt_dbw {
        cfg.doc.radar.pt_dbw = p;
    }
    if let Some(n) = o.pulses {
        cfg.doc.noise.pulses = n;
    }
    if let Some(l) = o.wavelength_m {
        cfg.doc.wavelength_m = l;
    }
    if o.pulses == Some(0) || o.wavelength_m.is_some_and(|l| !(l > 0.0 && l.is_finite())) || o.cells == Some(0) {
        return Err(CliError::Config("override out of range".into()));
    }
    cfg.build(o.cells)
}

pub fn snr(a: &SnrArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let built = load(&a.config, &a.overrides)?;
    let s = built.phased()?;
    let lam = built.wavelength;
    let r = match (a.method, s.is_dual()) {
        (crate::MethodArg::ElementSum, true) => dual_ris_received_power(&s, lam)?,
        (crate::MethodArg::ElementSum, false) => single_ris_received_power(&s, lam)?,
        (crate::MethodArg::ClosedForm, dual) => {
            let pr = if dual { closed_form_max_dual(&s, lam)? } else { closed_form_max_single(&s, lam)? };
            let snr = ris_radar::linkbudget::snr(pr, &s.noise);
            CascadeResult {
                pr,
                snr_linear: snr.linear,
                snr_db: snr.db,
                path_loss_db: ris_radar::linkbudget::path_loss_db(s.radar.pt, pr),
                sum1_mag: f64::NAN,
                sum2_mag: None,
            }
        }
    };
    print_result(out, &r).map_err(|e| CliError::Io(e.to_string()))
}

fn print_result(out: &mut dyn Write, r: &CascadeResult) -> io::Result<()> {
    let mag = |m: Option<f64>| match m {
        Some(v) if v.is_finite() => format!("{v:.9e}"),
        _ => "n/a".to_string(),
    };
    writeln!(out, "pr_w             {:.9e}", r.pr)?;
    writeln!(out, "pr_dbw           {:.6}", r.pr_dbw())?;
    writeln!(out, "snr_db           {:.6}", r.snr_db)?;
    writeln!(out, "path_loss_db     {:.6}", r.path_loss_db)?;
    writeln!(out, "sum1_mag         {}", mag(Some(r.sum1_mag)))?;
    writeln!(out, "sum2_mag         {}", mag(r.sum2_mag))
}

pub fn table2(a: &Table2Args, out: &mut dyn Write) -> Result<(), CliError> {
    let lam = a.wavelength_m;
    if !(lam > 0.0 && lam.is_finite()) {
        return Err(CliError::Config(format!("wavelength must be positive, got {lam}")));
    }
    let rows = table2_report(lam, lam / 2.0, db_to_linear(4.0), 0.8, 50.0);
    let w = |e: io::Error| CliError::Io(e.to_string());
    writeln!(out, "{:<7} {:>9} {:>9} {:>14} {:>11}", "config", "elements", "size_m", "far_field_m", "effect_db").map_err(w)?;
    for r in &rows {
        writeln!(
            out,
            "{:<7} {:>9} {:>9} {:>14.4} {:>11.2}",
            r.config,
            format!("{0}x{0}", r.cells_per_side),
            format!("~{}", r.size_m),
            r.far_field_m,
            r.effect_db
        )
        .map_err(w)?;
    }
    if a.check {
        let bad = check_table2(&rows);
        if !bad.is_empty() {
            let msg: Vec<String> = bad.iter().map(|m| m.to_string()).collect();
            return Err(CliError::CheckFailed(msg.join("; ")));
        }
        writeln!(out, "check: all rows within tolerance").map_err(w)?;
    }
    Ok(())
}

fn axis_values(a: &SweepArgs, axis: SweepAxis) -> Result<Vec<f64>, CliError> {
    let mut v = match (&a.values, a.from, a.to, a.points) {
        (Some(v), ..) => v.clone(),
        (None, Some(from), Some(to), Some(n)) => {
            if !(from > 0.0 && to > from && n >= 1) {
                return Err(CliError::Config("need 0 < --from < --to and --points >= 1".into()));
            }
            if a.linear {
                lin_space(from, to, n)
            } else {
                log_space(from, to, n)
            }
        }
        _ => return Err(CliError::Config("give --values or --from/--to/--points".into())),
    };
    if matches!(axis, SweepAxis::CellsPerSide | SweepAxis::Pulses) && a.values.is_none() {
        v.iter_mut().for_each(|x| *x = x.round());
        v.dedup();
    }
    Ok(v)
}

pub fn sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let axis: SweepAxis = a.axis.parse()?;
    let built = load(&a.config, &a.overrides)?;
    let values = axis_values(a, axis)?;
    let spec = SweepSpec {
        base_scenario: built.base.clone(),
        wavelength: built.wavelength,
        axis,
        values,
        compare_single_dual: a.compare_single_dual,
        mark_far_field: !a.no_far_field_markers,
        method: Method::from(a.method),
    };
    let rows = run_sweep(&spec)?;

    match &a.csv {
        Some(p) => emit_csv(&rows, BufWriter::new(create(p)?))?,
        None => emit_csv(&rows, &mut *out)?,
    }
    if let Some(p) = &a.svg {
        let (lo, hi) = (spec.values[0], spec.values[spec.values.len() - 1]);
        let style = PlotStyle {
            title: format!("SNR vs {}", axis.name()),
            x_label: axis.name().to_string(),
            y_label: "SNR (dB)".into(),
            x_log: !a.linear && hi / lo >= 10.0,
            far_field_markers: spec.far_field_markers(),
            ..Default::default()
        };
        emit_svg_plot(&rows, &style, BufWriter::new(create(p)?))?;
    }

    let s = summarize(&rows);
    let crossover = s.crossover.map_or("none".to_string(), |x| format!("{x}"));
    let ff = match s.far_field {
        None => "no far-field comparison points".to_string(),
        Some(Comparison::DualBetter) => format!("dual > single at all {} far-field points", s.far_field_points),
        Some(Comparison::DualWorse) => format!("dual < single at all {} far-field points", s.far_field_points),
        Some(Comparison::Mixed) => format!("mixed over {} far-field points", s.far_field_points),
    };
    let msg = format!("rows: {}, failed: {}, crossover: {crossover}, {ff}", s.rows, s.failed);
    let written = if a.csv.is_some() { writeln!(out, "{msg}") } else { writeln!(err, "{msg}") };
    written.map_err(|e| CliError::Io(e.to_string()))
}

fn create(p: &Path) -> Result<File, CliError> {
    File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
}

pub fn validate(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let built = Config::load(path)?.build(None)?;
    built.phased()?;
    let cells: usize = built.base.panels.iter().map(|p| p.len()).sum();
    writeln!(
        out,
        "ok: {} panel(s), {cells} cells, wavelength {} m",
        built.base.panels.count(),
        built.wavelength
    )
    .map_err(|e| CliError::Io(e.to_string()))
}

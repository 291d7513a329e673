//! The five-configuration panel table: size, far-field range and per-panel
//! SNR effect.

use crate::geometry::far_field_distance;
use crate::linkbudget::ris_bracket;
use crate::units::linear_to_db;

/// Cells per side of the five reference configurations.
pub const TABLE2_CELLS: [usize; 5] = [10, 19, 28, 37, 46];

/// Reference `(far-field m, effect dB)` per configuration.
pub const TABLE2_EXPECTED: [(f64, f64); 5] = [
    (10.7142, -44.62),
    (38.6631, -22.32),
    (83.9664, -8.85),
    (146.6199, 0.84),
    (226.6236, 8.4),
];

pub const FAR_FIELD_TOL_M: f64 = 0.01;
pub const EFFECT_TOL_DB: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub config: usize,
    pub cells_per_side: usize,
    /// Side length rounded to whole metres.
    pub size_m: f64,
    pub far_field_m: f64,
    pub effect_db: f64,
}

/// Rows for the five configurations. `gain` and `eta` are linear; the
/// effect is the panel bracket with boresight patterns at range `r_ris`.
pub fn table2_report(wavelength: f64, spacing: f64, gain: f64, eta: f64, r_ris: f64) -> Vec<Table2Row> {
    TABLE2_CELLS
        .iter()
        .enumerate()
        .map(|(i, &n)| Table2Row {
            config: i + 1,
            cells_per_side: n,
            size_m: (n as f64 * spacing).round(),
            far_field_m: far_field_distance(n, spacing, wavelength),
            effect_db: linear_to_db(ris_bracket(gain, spacing, spacing, n, n, eta, 1.0, r_ris)),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Mismatch {
    pub config: usize,
    pub column: &'static str,
    pub got: f64,
    pub expected: f64,
}

impl std::fmt::Display for Table2Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "config {}: {} = {:.4}, expected {:.4}",
            self.config, self.column, self.got, self.expected
        )
    }
}

/// Compares rows against [`TABLE2_EXPECTED`]; empty means all within tolerance.
pub fn check_table2(rows: &[Table2Row]) -> Vec<Table2Mismatch> {
    let mut out = Vec::new();
    for (row, &(ff, eff)) in rows.iter().zip(TABLE2_EXPECTED.iter()) {
        if (row.far_field_m - ff).abs() > FAR_FIELD_TOL_M {
            out.push(Table2Mismatch {
                config: row.config,
                column: "far_field_m",
                got: row.far_field_m,
                expected: ff,
            });
        }
        if (row.effect_db - eff).abs() > EFFECT_TOL_DB {
            out.push(Table2Mismatch {
                config: row.config,
                column: "effect_db",
                got: row.effect_db,
                expected: eff,
            });
        }
    }
    out
}

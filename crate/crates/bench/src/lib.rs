//! Fixtures shared by the criterion benches.

use ris_radar::{Layout, Scenario};

/// Conjugate-phased dual scenario with `n × n` panels in the far field.
pub fn far_field_dual(n: usize) -> (Scenario, f64) {
    let layout = Layout {
        r1: 1000.0,
        r_ris: 1000.0,
        r2: 1000.0,
        ..Layout::default()
    }
    .with_cells(n);
    (layout.dual().expect("valid layout"), layout.wavelength)
}

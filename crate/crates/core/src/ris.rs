//! RIS panel state and phase-profile synthesis.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{self, PanelFrame, Vec3};
use crate::patterns::PatternModel;

/// Which pass of the monostatic round trip a reflection belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hop {
    /// Outbound pass, phase `φ`.
    First,
    /// Return pass, phase `φ′`.
    Second,
}

/// How a panel's phase grids are set before evaluation.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum PhasingMode {
    UniformZero,
    #[default]
    RoundTripConjugate,
    /// Externally supplied row-major grids (radians) for both passes.
    Explicit { phase_tx: Vec<f64>, phase_rx: Vec<f64> },
}

/// A rectangular grid of unit cells.
///
/// Cell `(j, k)` (1-based) sits at row `j` along the frame's `u_axis` and
/// column `k` along `v_axis`. Grids are stored row-major. Cell size equals
/// cell spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct RisPanel {
    frame: PanelFrame,
    rows: usize,
    cols: usize,
    rx: f64,
    ry: f64,
    eta: Vec<f64>,
    phase_tx: Vec<f64>,
    phase_rx: Vec<f64>,
    pattern: PatternModel,
}

impl RisPanel {
    /// Panel with uniform amplitude `eta` and all phases zero.
    pub fn new(
        frame: PanelFrame,
        rows: usize,
        cols: usize,
        rx: f64,
        ry: f64,
        eta: f64,
        pattern: PatternModel,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidScenario("panel needs at least one cell".into()));
        }
        if !(rx > 0.0 && ry > 0.0 && rx.is_finite() && ry.is_finite()) {
            return Err(Error::InvalidScenario(format!("cell size must be positive, got {rx} x {ry}")));
        }
        check_eta(eta)?;
        let n = rows * cols;
        Ok(Self {
            frame,
            rows,
            cols,
            rx,
            ry,
            eta: vec![eta; n],
            phase_tx: vec![0.0; n],
            phase_rx: vec![0.0; n],
            pattern,
        })
    }

    /// Panel of `rows × cols` cells centred on `center`, facing `normal`.
    #[allow(clippy::too_many_arguments)]
    pub fn centered(
        center: Vec3,
        normal: Vec3,
        u_hint: Vec3,
        rows: usize,
        cols: usize,
        spacing: f64,
        eta: f64,
        pattern: PatternModel,
    ) -> Result<Self> {
        let frame = PanelFrame::facing(center, normal, u_hint)?.centered_at(center, rows, cols, spacing, spacing);
        Self::new(frame, rows, cols, spacing, spacing, eta, pattern)
    }

    pub fn frame(&self) -> &PanelFrame {
        &self.frame
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rx(&self) -> f64 {
        self.rx
    }

    pub fn ry(&self) -> f64 {
        self.ry
    }

    pub fn cell_area(&self) -> f64 {
        self.rx * self.ry
    }

    pub fn pattern(&self) -> &PatternModel {
        &self.pattern
    }

    pub fn gain(&self) -> f64 {
        self.pattern.gain
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn phase_tx(&self) -> &[f64] {
        &self.phase_tx
    }

    pub fn phase_rx(&self) -> &[f64] {
        &self.phase_rx
    }

    pub fn center(&self) -> Vec3 {
        self.frame.origin()
            + self.frame.u_axis() * (self.rows as f64 * self.rx / 2.0)
            + self.frame.v_axis() * (self.cols as f64 * self.ry / 2.0)
    }

    /// Row-major storage index of 1-based cell `(j, k)`.
    pub fn index(&self, j: usize, k: usize) -> Result<usize> {
        if j == 0 || k == 0 || j > self.rows || k > self.cols {
            return Err(Error::IndexOutOfRange {
                j,
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((j - 1) * self.cols + (k - 1))
    }

    pub fn cell_center(&self, j: usize, k: usize) -> Vec3 {
        geometry::cell_center(&self.frame, j, k, self.rx, self.ry)
    }

    /// 1-based `(j, k)` pairs in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.rows).flat_map(move |j| (1..=self.cols).map(move |k| (j, k)))
    }

    /// Cell whose centre is closest to the panel centre (rounded down for
    /// even sizes).
    pub fn center_cell(&self) -> (usize, usize) {
        (self.rows.div_ceil(2), self.cols.div_ceil(2))
    }

    /// Largest panel side, in metres.
    pub fn aperture(&self) -> f64 {
        (self.rows as f64 * self.rx).max(self.cols as f64 * self.ry)
    }

    pub fn far_field_distance(&self, wavelength: f64) -> f64 {
        let d = self.aperture();
        2.0 * d * d / wavelength
    }

    /// Whether cell dimensions lie in `[λ/10, λ/2]`; logs a warning if not.
    pub fn check_spacing(&self, wavelength: f64) -> bool {
        let (lo, hi) = (wavelength / 10.0, wavelength / 2.0);
        let ok = [self.rx, self.ry]
            .iter()
            .all(|&s| s >= lo * (1.0 - 1e-9) && s <= hi * (1.0 + 1e-9));
        if !ok {
            log::warn!(
                "cell size {} x {} m outside [{lo}, {hi}] m for wavelength {wavelength} m",
                self.rx,
                self.ry
            );
        }
        ok
    }

    /// `Γ = η·e^{iφ}` for cell `(j, k)` on the given pass.
    pub fn reflection_coefficient(&self, j: usize, k: usize, hop: Hop) -> Result<Complex64> {
        let i = self.index(j, k)?;
        let phase = match hop {
            Hop::First => self.phase_tx[i],
            Hop::Second => self.phase_rx[i],
        };
        Ok(Complex64::from_polar(self.eta[i], phase))
    }

    pub fn with_eta_grid(mut self, eta: Vec<f64>) -> Result<Self> {
        self.check_len(eta.len())?;
        eta.iter().try_for_each(|&e| check_eta(e))?;
        self.eta = eta;
        Ok(self)
    }

    pub fn with_uniform_eta(self, eta: f64) -> Result<Self> {
        let n = self.len();
        self.with_eta_grid(vec![eta; n])
    }

    pub fn with_phases(mut self, phase_tx: Vec<f64>, phase_rx: Vec<f64>) -> Result<Self> {
        self.check_len(phase_tx.len())?;
        self.check_len(phase_rx.len())?;
        if phase_tx.iter().chain(&phase_rx).any(|p| !p.is_finite()) {
            return Err(Error::InvalidScenario("non-finite phase".into()));
        }
        self.phase_tx = phase_tx.into_iter().map(wrap_phase).collect();
        self.phase_rx = phase_rx.into_iter().map(wrap_phase).collect();
        Ok(self)
    }

    /// Same phase `φ = φ′` on both passes.
    pub fn with_symmetric_phases(self, phases: Vec<f64>) -> Result<Self> {
        let rx = phases.clone();
        self.with_phases(phases, rx)
    }

    /// Adds `offset` to every phase of the chosen passes.
    pub fn with_phase_offset(mut self, offset: f64, tx: bool, rx: bool) -> Self {
        if tx {
            self.phase_tx.iter_mut().for_each(|p| *p = wrap_phase(*p + offset));
        }
        if rx {
            self.phase_rx.iter_mut().for_each(|p| *p = wrap_phase(*p + offset));
        }
        self
    }

    /// Phases that zero the round-trip exponent
    /// `4π·r_in/λ − φ + 2π·r_out/λ − φ′` of every cell, split evenly between
    /// the two passes (`φ = φ′`).
    ///
    /// `inbound` is the per-cell distance to the node visited twice (radar for
    /// RIS-1, target for RIS-2); `outbound` the per-cell distance across the
    /// inter-panel (or target) hop.
    pub fn synthesize_conjugate_phases(&self, inbound: &[f64], outbound: &[f64], wavelength: f64) -> Result<Self> {
        self.check_len(inbound.len())?;
        self.check_len(outbound.len())?;
        if wavelength.is_nan() || wavelength <= 0.0 {
            return Err(Error::InvalidScenario(format!("wavelength must be positive, got {wavelength}")));
        }
        let phases: Vec<f64> = inbound
            .iter()
            .zip(outbound)
            .map(|(&r_in, &r_out)| TAU * r_in / wavelength + PI * r_out / wavelength)
            .collect();
        self.clone().with_symmetric_phases(phases)
    }

    /// Same panel moved rigidly by `shift`.
    pub fn translated(mut self, shift: Vec3) -> Result<Self> {
        let f = &self.frame;
        self.frame = PanelFrame::new(f.origin() + shift, f.u_axis(), f.v_axis())?;
        Ok(self)
    }

    /// `rows × cols` panel with the same centre, orientation, cell size,
    /// pattern and mean amplitude. Phases are reset to zero.
    pub fn resized(&self, rows: usize, cols: usize) -> Result<Self> {
        let eta = if self.eta.iter().all(|&e| e == self.eta[0]) {
            self.eta[0]
        } else {
            self.eta.iter().sum::<f64>() / self.len() as f64
        };
        let frame = self.frame.centered_at(self.center(), rows, cols, self.rx, self.ry);
        Self::new(frame, rows, cols, self.rx, self.ry, eta.clamp(0.0, 1.0), self.pattern)
    }

    /// Rounds every phase to the nearest of `2^bits` uniform levels.
    pub fn quantized(mut self, bits: u32) -> Self {
        let step = TAU / f64::from(1u32 << bits.min(31));
        let q = |p: f64| wrap_phase((p / step).round() * step);
        self.phase_tx.iter_mut().for_each(|p| *p = q(*p));
        self.phase_rx.iter_mut().for_each(|p| *p = q(*p));
        self
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::ShapeMismatch {
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidScenario(format!("cell amplitude {eta} outside [0, 1]")));
    }
    Ok(())
}

/// Maps a phase into `[0, 2π)`.
pub fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

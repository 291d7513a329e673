//! Received power, SNR and path loss for monostatic radar detection through
//! one or two reconfigurable intelligent surfaces (RIS) when the direct
//! radar–target path is blocked.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: placement, per-cell distances/angles, far-field range
//! * [`patterns`]: normalized power patterns and gains
//! * [`ris`]: panel state and conjugate phase synthesis
//! * [`linkbudget`]: coherent element sums, closed forms, SNR, stage powers
//! * [`sweep`]: parameter sweeps, the RIS-effect table, CSV/SVG output

pub mod error;
pub mod geometry;
pub mod linkbudget;
pub mod patterns;
pub mod ris;
pub mod summation;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};
pub use geometry::{CenterGeometry, ElementGeometry, PanelFrame, Vec3};
pub use linkbudget::{CascadeResult, Layout, NoiseModel, Panels, RadarNode, Scenario, Target};
pub use patterns::{PatternModel, PatternShape};
pub use ris::{Hop, PhasingMode, RisPanel};

/// Default L-band wavelength in metres (f ≈ 1.3996 GHz). Half of it is the
/// 0.1071 m cell spacing behind the built-in far-field table.
pub const DEFAULT_WAVELENGTH: f64 = 0.2142;

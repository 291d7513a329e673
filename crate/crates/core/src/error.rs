use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invalid panel frame: {0}")]
    InvalidFrame(String),

    #[error("invalid beamwidth {0} rad: must lie in (0, π)")]
    InvalidBeamwidth(f64),

    #[error("cell index ({j}, {k}) outside {rows}x{cols} panel")]
    IndexOutOfRange {
        j: usize,
        k: usize,
        rows: usize,
        cols: usize,
    },

    #[error("grid shape mismatch: expected {expected} values, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("report output: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

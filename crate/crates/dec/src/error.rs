//! Error types for grid construction, stepping and measurement.

use crate::complex::Axis;

/// Errors from building complexes, configuring simulations or running
/// measurements.
#[derive(Debug, thiserror::Error)]
pub enum DecError {
    /// Fewer than four cells along an axis; the periodic images of a cell
    /// would overlap its own stencil.
    #[error("grid extent {extent} along {axis} is too small; need at least 4 cells per axis")]
    GridTooSmall { axis: Axis, extent: u32 },

    /// Non-positive or non-finite grid spacing.
    #[error("grid spacing must be positive and finite, got {h}")]
    NonpositiveSpacing { h: f64 },

    /// Time step too large for the stability bound `c·dt <= h/sqrt(3)`.
    #[error(
        "time step {dt} violates the stability bound c*dt <= h/sqrt(3) = {limit} \
         (set relax_stability to allow up to c*dt = h for axis-aligned runs)"
    )]
    UnstableTimeStep { dt: f64, limit: f64 },

    /// Time step beyond even the relaxed axis-aligned bound `c·dt <= h`.
    #[error("time step {dt} exceeds the relaxed bound c*dt <= h = {limit}; the scheme diverges")]
    TimeStepBeyondRelaxedBound { dt: f64, limit: f64 },

    /// A time step that is zero, negative, NaN or infinite.
    #[error("time step must be positive and finite, got {dt}")]
    BadTimeStep { dt: f64 },

    /// The initial magnetic cochain carries flux out of closed volumes.
    #[error(
        "initial magnetic cochain has nonzero divergence (max |d2 b| = {max_divergence}); \
         initialize b as a curl or as an exactly solenoidal mode"
    )]
    InitialDivergence { max_divergence: f64 },

    /// A cochain of the wrong length for its degree.
    #[error("cochain of degree {degree} has length {got}, expected {expected}")]
    CochainLength {
        degree: u8,
        got: usize,
        expected: usize,
    },

    /// Wavelength that does not divide the grid evenly, so the periodic
    /// boundary would clip the wave.
    #[error(
        "wavelength of {wavelength_cells} cells does not divide the grid extent {extent} \
         along {axis}; periodic runs need a commensurate wavelength"
    )]
    NonCommensurateWavelength {
        axis: Axis,
        wavelength_cells: u32,
        extent: u32,
    },

    /// Wavelengths shorter than four cells alias on the grid.
    #[error("wavelength of {wavelength_cells} cells is too short; need at least 4 cells")]
    WavelengthTooShort { wavelength_cells: u32 },

    /// Polarization must be perpendicular to the propagation axis.
    #[error("polarization {polarization} must differ from the propagation axis {axis}")]
    LongitudinalPolarization { axis: Axis, polarization: Axis },

    /// Material constants must be positive.
    #[error("material constant {name} must be positive and finite, got {value}")]
    BadMaterial { name: &'static str, value: f64 },

    /// Invalid measurement request.
    #[error("measurement needs {name} >= {minimum}, got {got}")]
    BadMeasurement {
        name: &'static str,
        minimum: u32,
        got: u32,
    },

    /// The measured profile lost the feature it was tracking.
    #[error("wave tracking lost: {0}")]
    TrackingLost(String),

    /// Configuration document errors.
    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed dump file.
    #[error("dump format error: {0}")]
    DumpFormat(String),

    /// I/O failure reading or writing dumps and logs.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

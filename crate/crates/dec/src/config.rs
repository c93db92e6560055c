//! JSON-configurable runs.
//!
//! A [`SimConfig`] document describes a complete run: grid, time step, step
//! count, initial condition, optional current source, material system and
//! diagnostics cadence. [`SimConfig::build`] turns it into a ready
//! [`Simulation`] plus the sampled source.
//!
//! ```json
//! {
//!   "dims": [64, 8, 8],
//!   "h": 1.0,
//!   "courant": 0.5,
//!   "steps": 1000,
//!   "initial": {
//!     "type": "plane_wave",
//!     "axis": "x",
//!     "cells_per_wavelength": 16,
//!     "polarization": "y"
//!   },
//!   "diagnostics_every": 100
//! }
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{Axis, CubicalComplex, GridDims};
use crate::error::DecError;
use crate::sim::{stable_dt_limit, Materials, Simulation, StepSource};
use crate::wave::{launch_plane_wave, PlaneWave};

fn default_amplitude() -> f64 {
    1.0
}

fn default_cadence() -> u64 {
    1
}

/// Initial field configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    /// Both cochains zero.
    Zero,
    /// An exact discrete plane-wave eigenmode.
    PlaneWave {
        axis: Axis,
        cells_per_wavelength: u32,
        polarization: Axis,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
        #[serde(default)]
        phase: f64,
    },
}

/// Current source configuration. The source is static in time; it drives the
/// electric update and charges the volumes through discrete continuity.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceConfig {
    #[default]
    None,
    /// A Gaussian ball of current density along an axis:
    /// `amplitude * exp(-|p - center|^2 / radius^2)`, with the distance taken
    /// to the nearest periodic image.
    CurrentPulse {
        axis: Axis,
        /// Center in physical coordinates.
        center: [f64; 3],
        /// Gaussian radius in physical units; must be positive.
        radius: f64,
        amplitude: f64,
    },
}

/// Material system selection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "snake_case", deny_unknown_fields)]
pub enum MaterialConfig {
    /// `eps0 = mu0 = c = 1`.
    #[default]
    Normalized,
    /// CODATA vacuum constants.
    Si,
    /// Explicit constants.
    Custom { eps0: f64, mu0: f64 },
}

impl MaterialConfig {
    pub fn resolve(self) -> Result<Materials, DecError> {
        match self {
            MaterialConfig::Normalized => Ok(Materials::normalized()),
            MaterialConfig::Si => Ok(Materials::si_vacuum()),
            MaterialConfig::Custom { eps0, mu0 } => Materials::new(eps0, mu0),
        }
    }
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Cells per axis, `[nx, ny, nz]`, each at least 4.
    pub dims: [u32; 3],
    /// Grid spacing.
    pub h: f64,
    /// Explicit time step. Mutually exclusive with `courant`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Time step as a fraction of the stability bound `h / (c * sqrt(3))`:
    /// `dt = courant * h / (c * sqrt(3))`. Defaults to `0.5` when neither
    /// field is given. Mutually exclusive with `dt`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub courant: Option<f64>,
    /// Leapfrog steps to run.
    pub steps: u64,
    /// Initial field configuration.
    pub initial: InitialCondition,
    /// Optional current source.
    #[serde(default)]
    pub source: SourceConfig,
    /// Emit diagnostics every this many steps (and at step 0).
    #[serde(default = "default_cadence")]
    pub diagnostics_every: u64,
    /// Widen the stability bound to `c*dt <= h` for deliberately degenerate
    /// axis-aligned runs.
    #[serde(default)]
    pub relax_stability: bool,
    /// Material system (defaults to normalized units).
    #[serde(default)]
    pub materials: MaterialConfig,
}

impl SimConfig {
    /// Parses a JSON document.
    pub fn from_json(text: &str) -> Result<Self, DecError> {
        serde_json::from_str(text).map_err(|e| DecError::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// Resolves the time step according to the `dt`/`courant` fields.
    pub fn resolve_dt(&self, h: f64, c: f64) -> Result<f64, DecError> {
        let limit = stable_dt_limit(h, c);
        match (self.dt, self.courant) {
            (Some(_), Some(_)) => Err(DecError::Config(
                "give either dt or courant, not both".into(),
            )),
            (Some(dt), None) => Ok(dt),
            (None, Some(nu)) => {
                if nu <= 0.0 || !nu.is_finite() {
                    return Err(DecError::Config(format!(
                        "courant must be positive and finite, got {nu}"
                    )));
                }
                Ok(nu * limit)
            }
            (None, None) => Ok(0.5 * limit),
        }
    }

    /// Builds the grid, the initial state and the sampled source.
    pub fn build(&self) -> Result<(Simulation, Option<StepSource>), DecError> {
        let dims = GridDims::new(self.dims[0], self.dims[1], self.dims[2]);
        let complex = Arc::new(CubicalComplex::new(dims, self.h)?);
        let materials = self.materials.resolve()?;
        let dt = self.resolve_dt(self.h, materials.light_speed())?;

        let (e, b) = match &self.initial {
            InitialCondition::Zero => (
                vec![0.0; complex.edge_count()],
                vec![0.0; complex.face_count()],
            ),
            InitialCondition::PlaneWave {
                axis,
                cells_per_wavelength,
                polarization,
                amplitude,
                phase,
            } => {
                let wave = PlaneWave {
                    axis: *axis,
                    polarization: *polarization,
                    cells_per_wavelength: *cells_per_wavelength,
                    amplitude: *amplitude,
                    phase: *phase,
                };
                launch_plane_wave(&complex, &wave, materials, dt)?
            }
        };

        let source = match &self.source {
            SourceConfig::None => None,
            SourceConfig::CurrentPulse {
                axis,
                center,
                radius,
                amplitude,
            } => {
                if *radius <= 0.0 || !radius.is_finite() {
                    return Err(DecError::Config(format!(
                        "current pulse radius must be positive, got {radius}"
                    )));
                }
                let lengths = [
                    f64::from(dims.nx) * self.h,
                    f64::from(dims.ny) * self.h,
                    f64::from(dims.nz) * self.h,
                ];
                let (axis, center, radius, amplitude) = (*axis, *center, *radius, *amplitude);
                Some(StepSource::from_current_density(&complex, move |p| {
                    let mut r2 = 0.0;
                    for q in 0..3 {
                        let mut d = (p[q] - center[q]).rem_euclid(lengths[q]);
                        if d > lengths[q] / 2.0 {
                            d -= lengths[q];
                        }
                        r2 += d * d;
                    }
                    let mag = amplitude * (-r2 / (radius * radius)).exp();
                    let mut j = [0.0; 3];
                    j[axis.index()] = mag;
                    j
                }))
            }
        };

        let sim = Simulation::new(complex, e, b, dt, materials, self.relax_stability)?;
        Ok((sim, source))
    }
}

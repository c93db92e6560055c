//! Discrete exterior calculus field solver on periodic cubical grids.
//!
//! The continuous picture — electric field as a 1-form, magnetic flux as a
//! 2-form, charge as a 3-form — discretizes onto a uniform periodic grid of
//! cubes by storing integrals over cells: line integrals on edges, fluxes on
//! faces, charges in volumes. The exterior derivative becomes a signed
//! incidence matrix in each degree, and the two structural identities
//! `d1 d0 = 0` and `d2 d1 = 0` hold exactly in integer arithmetic, so the
//! discrete magnetic field stays solenoidal and charge is conserved by
//! construction rather than by accuracy.
//!
//! The solver advances the staggered leapfrog pair
//!
//! ```text
//! b^{n+1/2} = b^{n-1/2} - dt * d1 e^n
//! e^{n+1}   = e^n + (dt/eps0) * hodge1^{-1} (d1^T (hodge2 b^{n+1/2} / mu0) - j)
//! ```
//!
//! with diagonal metric (Hodge) weights from midpoint quadrature. Update
//! kernels are pure gathers and run either sequentially or partitioned across
//! threads (the `parallel` feature, on by default); both produce bit-identical
//! states.
//!
//! * [`complex`] builds the grid and its incidence operators;
//! * [`sample`] maps smooth fields onto cochains by the midpoint rule;
//! * [`sim`] owns the leapfrog state, stability checks and diagnostics;
//! * [`wave`] launches exact plane-wave eigenmodes and measures propagation
//!   speed against the discrete dispersion relation;
//! * [`config`] describes runs as JSON documents;
//! * [`io`] reads and writes raw cochain dumps and the diagnostics CSV.

pub mod complex;
pub mod config;
pub mod error;
pub mod incidence;
pub mod io;
pub mod sample;
pub mod sim;
pub mod wave;

pub use complex::{Axis, CubicalComplex, GridDims};
pub use config::{InitialCondition, MaterialConfig, SimConfig, SourceConfig};
pub use error::DecError;
pub use incidence::IncidenceOperator;
pub use sim::{stable_dt_limit, Diagnostics, Materials, Simulation, StepSource, Threading};
pub use wave::{
    dispersion_omega, launch_plane_wave, measure_wave_speed, predicted_speed, PlaneWave,
    WaveSpeedReport,
};

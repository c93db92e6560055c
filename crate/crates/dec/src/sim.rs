//! Leapfrog field evolution on the cubical complex.
//!
//! The electric 1-cochain `e` lives at integer time steps, the magnetic
//! 2-cochain `b` at half steps, and the update pair is the standard staggered
//! scheme:
//!
//! ```text
//! b^{n+1/2} = b^{n-1/2} - dt * d1 e^n
//! e^{n+1}   = e^n + (dt/eps0) * hodge1^{-1} (d1^T (hodge2 b^{n+1/2} / mu0) - j)
//! ```
//!
//! Charge is carried as a 3-cochain and advanced by the discrete continuity
//! update `rho^{n+1} = rho^n - dt * d2 (flux of j)`, which conserves total
//! charge exactly; the reported charge residual measures only the rounding of
//! that identity.
//!
//! Both updates are pure gathers (every output cell reads a fixed stencil of
//! inputs in a fixed order), so the parallel kernels produce bit-identical
//! results to the sequential ones and repeated runs are deterministic.

use std::sync::Arc;

use crate::complex::CubicalComplex;
use crate::error::DecError;
use crate::incidence::IncidenceOperator;

/// Vacuum material constants. The default is the normalized system
/// `eps0 = mu0 = c = 1`; SI values are available for dimensional runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Materials {
    pub eps0: f64,
    pub mu0: f64,
}

impl Default for Materials {
    fn default() -> Self {
        Self::normalized()
    }
}

impl Materials {
    /// Normalized units: permittivity, permeability and wave speed all 1.
    pub fn normalized() -> Self {
        Self { eps0: 1.0, mu0: 1.0 }
    }

    /// CODATA vacuum constants in SI units.
    pub fn si_vacuum() -> Self {
        Self {
            eps0: 8.854_187_812_8e-12,
            mu0: 1.256_637_062_12e-6,
        }
    }

    pub fn new(eps0: f64, mu0: f64) -> Result<Self, DecError> {
        if eps0 <= 0.0 || !eps0.is_finite() {
            return Err(DecError::BadMaterial {
                name: "eps0",
                value: eps0,
            });
        }
        if mu0 <= 0.0 || !mu0.is_finite() {
            return Err(DecError::BadMaterial {
                name: "mu0",
                value: mu0,
            });
        }
        Ok(Self { eps0, mu0 })
    }

    /// Wave speed `1/sqrt(eps0 * mu0)`.
    pub fn light_speed(&self) -> f64 {
        1.0 / (self.eps0 * self.mu0).sqrt()
    }
}

/// Which update kernel to run. Both produce bit-identical cochains; the
/// parallel kernel partitions rows across worker threads.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Threading {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// A current source for one step: the same physical current density sampled
/// two ways. `edge_current` drives the electric update (line integrals on
/// edges); `face_flux` drives the charge bookkeeping (fluxes through faces).
#[derive(Debug, Clone, PartialEq)]
pub struct StepSource {
    pub edge_current: Vec<f64>,
    pub face_flux: Vec<f64>,
}

impl StepSource {
    /// Samples a static current density onto both cochains.
    pub fn from_current_density(
        complex: &CubicalComplex,
        j: impl Fn([f64; 3]) -> [f64; 3] + Copy,
    ) -> Self {
        Self {
            edge_current: crate::sample::sample_edges(complex, j),
            face_flux: crate::sample::sample_faces(complex, j),
        }
    }

    pub fn validate(&self, complex: &CubicalComplex) -> Result<(), DecError> {
        if self.edge_current.len() != complex.edge_count() {
            return Err(DecError::CochainLength {
                degree: 1,
                got: self.edge_current.len(),
                expected: complex.edge_count(),
            });
        }
        if self.face_flux.len() != complex.face_count() {
            return Err(DecError::CochainLength {
                degree: 2,
                got: self.face_flux.len(),
                expected: complex.face_count(),
            });
        }
        Ok(())
    }
}

/// Instantaneous health metrics of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// Largest magnetic flux out of any closed volume, `max |d2 b|`.
    pub div_b: f64,
    /// Largest rounding residual of the discrete continuity update at the
    /// most recent step (zero when no source is attached).
    pub charge_residual: f64,
    /// Field energy `(e^T (eps0 hodge1) e + b^T (hodge2 / mu0) b) / 2`.
    pub energy: f64,
}

/// Owned state of a leapfrog run: the grid, the material constants, the field
/// cochains and the step counter. The complex is shared and immutable; a
/// `Simulation` is the single owner of its mutable state.
#[derive(Debug, Clone)]
pub struct Simulation {
    complex: Arc<CubicalComplex>,
    materials: Materials,
    dt: f64,
    threading: Threading,
    e: Vec<f64>,
    b: Vec<f64>,
    rho: Vec<f64>,
    step_index: u64,
    last_charge_residual: f64,
    curl_scratch: Vec<f64>,
    flux_scratch: Vec<f64>,
    edge_scratch: Vec<f64>,
    vol_scratch: Vec<f64>,
}

/// Stability bound for the isotropic grid: `c * dt <= h / sqrt(3)`.
pub fn stable_dt_limit(h: f64, c: f64) -> f64 {
    h / (c * 3f64.sqrt())
}

/// Comparison slack for the stability checks, so a `dt` computed as an exact
/// fraction of the bound is never rejected for a rounding ulp.
const STABILITY_SLACK: f64 = 1.0 + 1e-12;

/// Tolerance scale for the solenoidal check of the initial magnetic cochain.
const INITIAL_DIV_TOL: f64 = 1e-12;

impl Simulation {
    /// Starts a run from an electric cochain at `t = 0` and a magnetic
    /// cochain at `t = -dt/2`.
    ///
    /// Construction refuses time steps beyond the stability bound
    /// `c*dt <= h/sqrt(3)`. For deliberately degenerate axis-aligned runs the
    /// `relax_stability` flag widens the bound to `c*dt <= h`, which is stable
    /// only for fields uniform in the transverse directions; anything beyond
    /// that is always refused. The initial magnetic cochain must be
    /// solenoidal (`d2 b = 0` up to round-off) or the run is refused, since a
    /// spurious initial divergence would persist forever.
    pub fn new(
        complex: Arc<CubicalComplex>,
        e: Vec<f64>,
        b: Vec<f64>,
        dt: f64,
        materials: Materials,
        relax_stability: bool,
    ) -> Result<Self, DecError> {
        if e.len() != complex.edge_count() {
            return Err(DecError::CochainLength {
                degree: 1,
                got: e.len(),
                expected: complex.edge_count(),
            });
        }
        if b.len() != complex.face_count() {
            return Err(DecError::CochainLength {
                degree: 2,
                got: b.len(),
                expected: complex.face_count(),
            });
        }
        if dt <= 0.0 || !dt.is_finite() {
            return Err(DecError::BadTimeStep { dt });
        }
        let c = materials.light_speed();
        let h = complex.spacing();
        let strict_limit = stable_dt_limit(h, c);
        let relaxed_limit = h / c;
        if relax_stability {
            if dt > relaxed_limit * STABILITY_SLACK {
                return Err(DecError::TimeStepBeyondRelaxedBound {
                    dt,
                    limit: relaxed_limit,
                });
            }
        } else if dt > strict_limit * STABILITY_SLACK {
            return Err(DecError::UnstableTimeStep {
                dt,
                limit: strict_limit,
            });
        }

        let mut div = vec![0.0; complex.volume_count()];
        complex.d2().apply_sequential(&b, &mut div);
        let max_divergence = max_abs(&div);
        let b_scale = max_abs(&b).max(1.0);
        if max_divergence > INITIAL_DIV_TOL * b_scale {
            return Err(DecError::InitialDivergence { max_divergence });
        }

        let cells = complex.volume_count();
        let edges = complex.edge_count();
        let faces = complex.face_count();
        Ok(Self {
            complex,
            materials,
            dt,
            threading: Threading::default(),
            e,
            b,
            rho: vec![0.0; cells],
            step_index: 0,
            last_charge_residual: 0.0,
            curl_scratch: vec![0.0; faces],
            flux_scratch: vec![0.0; faces],
            edge_scratch: vec![0.0; edges],
            vol_scratch: vec![0.0; cells],
        })
    }

    /// Replaces the charge cochain (defaults to zero).
    pub fn with_charge(mut self, rho: Vec<f64>) -> Result<Self, DecError> {
        if rho.len() != self.complex.volume_count() {
            return Err(DecError::CochainLength {
                degree: 3,
                got: rho.len(),
                expected: self.complex.volume_count(),
            });
        }
        self.rho = rho;
        Ok(self)
    }

    pub fn set_threading(&mut self, threading: Threading) {
        self.threading = threading;
    }

    pub fn threading(&self) -> Threading {
        self.threading
    }

    pub fn complex(&self) -> &Arc<CubicalComplex> {
        &self.complex
    }

    pub fn materials(&self) -> Materials {
        self.materials
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn step_index(&self) -> u64 {
        self.step_index
    }

    /// Time of the electric cochain, `step_index * dt`.
    pub fn time(&self) -> f64 {
        self.step_index as f64 * self.dt
    }

    /// Electric 1-cochain at the current integer step.
    pub fn electric(&self) -> &[f64] {
        &self.e
    }

    /// Magnetic 2-cochain at the trailing half step `time() - dt/2`.
    pub fn magnetic(&self) -> &[f64] {
        &self.b
    }

    /// Charge 3-cochain at the current integer step.
    pub fn charge(&self) -> &[f64] {
        &self.rho
    }

    /// Advances one leapfrog step, optionally driven by a current source.
    ///
    /// The source cochains must match the grid (checked by
    /// [`StepSource::validate`]; mismatched lengths panic here).
    pub fn step(&mut self, source: Option<&StepSource>) {
        let th = self.threading;
        let dt = self.dt;

        // Magnetic half step: b <- b - dt * (d1 e).
        apply(self.complex.d1(), th, &self.e, &mut self.curl_scratch);
        axpy(th, &mut self.b, -dt, &self.curl_scratch);

        // Metric-weighted flux g = hodge2 .* b / mu0, then the dual curl
        // d1^T g back onto edges.
        let inv_mu0 = 1.0 / self.materials.mu0;
        weighted_scale(
            th,
            &mut self.flux_scratch,
            self.complex.hodge2(),
            &self.b,
            inv_mu0,
        );
        apply(
            self.complex.d1_transpose(),
            th,
            &self.flux_scratch,
            &mut self.edge_scratch,
        );

        // Electric full step: e <- e + (dt/eps0) * (dual_curl - j) / hodge1.
        let gain = dt / self.materials.eps0;
        let j = source.map(|s| {
            assert_eq!(s.edge_current.len(), self.e.len(), "edge current length");
            s.edge_current.as_slice()
        });
        advance_electric(
            th,
            &mut self.e,
            gain,
            &self.edge_scratch,
            j,
            self.complex.hodge1(),
        );

        // Charge bookkeeping by discrete continuity. The update is defined to
        // satisfy the continuity identity exactly, so the residual we record
        // is pure rounding.
        if let Some(src) = source {
            assert_eq!(src.face_flux.len(), self.flux_scratch.len(), "face flux length");
            self.complex
                .d2()
                .apply_sequential(&src.face_flux, &mut self.vol_scratch);
            let mut worst = 0.0f64;
            for (r, &q) in self.rho.iter_mut().zip(self.vol_scratch.iter()) {
                let old = *r;
                let new = old - dt * q;
                let residual = ((new - old) / dt + q).abs();
                worst = worst.max(residual);
                *r = new;
            }
            self.last_charge_residual = worst;
        } else {
            self.last_charge_residual = 0.0;
        }

        self.step_index += 1;
    }

    /// Advances `steps` leapfrog steps under a fixed source.
    pub fn run(&mut self, steps: u64, source: Option<&StepSource>) {
        for _ in 0..steps {
            self.step(source);
        }
    }

    /// Field energy, accumulated in index order so the value is deterministic.
    pub fn energy(&self) -> f64 {
        let h1 = self.complex.hodge1();
        let h2 = self.complex.hodge2();
        let inv_mu0 = 1.0 / self.materials.mu0;
        let mut acc = 0.0;
        for (i, &ei) in self.e.iter().enumerate() {
            acc += self.materials.eps0 * h1[i] * ei * ei;
        }
        for (f, &bf) in self.b.iter().enumerate() {
            acc += inv_mu0 * h2[f] * bf * bf;
        }
        0.5 * acc
    }

    /// Computes the instantaneous diagnostics triple.
    pub fn diagnostics(&self) -> Diagnostics {
        let mut div = vec![0.0; self.complex.volume_count()];
        self.complex.d2().apply_sequential(&self.b, &mut div);
        Diagnostics {
            div_b: max_abs(&div),
            charge_residual: self.last_charge_residual,
            energy: self.energy(),
        }
    }
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

fn apply(op: &IncidenceOperator, threading: Threading, x: &[f64], out: &mut [f64]) {
    match threading {
        Threading::Sequential => op.apply_sequential(x, out),
        #[cfg(feature = "parallel")]
        Threading::Parallel => op.apply_parallel(x, out),
    }
}

/// `y[i] += a * x[i]`, element-independent in both kernels.
fn axpy(threading: Threading, y: &mut [f64], a: f64, x: &[f64]) {
    debug_assert_eq!(y.len(), x.len());
    match threading {
        Threading::Sequential => {
            for (yi, xi) in y.iter_mut().zip(x.iter()) {
                *yi += a * *xi;
            }
        }
        #[cfg(feature = "parallel")]
        Threading::Parallel => {
            use rayon::prelude::*;
            y.par_iter_mut()
                .zip(x.par_iter())
                .for_each(|(yi, xi)| *yi += a * *xi);
        }
    }
}

/// `out[i] = w[i] * x[i] * a`.
fn weighted_scale(threading: Threading, out: &mut [f64], w: &[f64], x: &[f64], a: f64) {
    debug_assert_eq!(out.len(), x.len());
    debug_assert_eq!(out.len(), w.len());
    match threading {
        Threading::Sequential => {
            for i in 0..out.len() {
                out[i] = w[i] * x[i] * a;
            }
        }
        #[cfg(feature = "parallel")]
        Threading::Parallel => {
            use rayon::prelude::*;
            out.par_iter_mut()
                .enumerate()
                .for_each(|(i, o)| *o = w[i] * x[i] * a);
        }
    }
}

/// `e[i] += gain * (curl[i] - j[i]) / h1[i]` (the `j` term only when present),
/// with identical per-element arithmetic in both kernels.
fn advance_electric(
    threading: Threading,
    e: &mut [f64],
    gain: f64,
    curl: &[f64],
    j: Option<&[f64]>,
    h1: &[f64],
) {
    debug_assert_eq!(e.len(), curl.len());
    debug_assert_eq!(e.len(), h1.len());
    let update = |i: usize, ei: &mut f64| {
        let drive = match j {
            Some(j) => curl[i] - j[i],
            None => curl[i],
        };
        *ei += gain * drive / h1[i];
    };
    match threading {
        Threading::Sequential => {
            for (i, ei) in e.iter_mut().enumerate() {
                update(i, ei);
            }
        }
        #[cfg(feature = "parallel")]
        Threading::Parallel => {
            use rayon::prelude::*;
            e.par_iter_mut().enumerate().for_each(|(i, ei)| update(i, ei));
        }
    }
}

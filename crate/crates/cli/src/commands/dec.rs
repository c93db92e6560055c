//! Numerical subcommands: run a leapfrog simulation from a config file and
//! measure plane-wave propagation speed against the dispersion prediction.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use maxform_dec::io::{csv_row, write_cochain_dump, CSV_HEADER};
use maxform_dec::{
    measure_wave_speed, predicted_speed, stable_dt_limit, Axis, CubicalComplex, GridDims,
    Materials, SimConfig,
};
use serde::Serialize;

use crate::{emit_json, Failure, Format};

fn input(message: impl Into<String>) -> Failure {
    Failure::Input(message.into())
}

/// Runs the configured simulation, streaming one diagnostics row per
/// cadence point (step 0, every `diagnostics_every` steps, and the final
/// step) as CSV to standard output or `--csv`.
pub fn simulate(
    config: &Path,
    csv: Option<&Path>,
    dump: Option<&Path>,
) -> Result<i32, Failure> {
    let text = fs::read_to_string(config)
        .map_err(|e| input(format!("cannot read `{}`: {}", config.display(), e)))?;
    let cfg = SimConfig::from_json(&text)
        .map_err(|e| input(format!("config `{}`: {}", config.display(), e)))?;
    let (mut sim, source) = cfg
        .build()
        .map_err(|e| input(format!("config `{}`: {}", config.display(), e)))?;

    let mut out: Box<dyn Write> = match csv {
        Some(path) => Box::new(
            fs::File::create(path)
                .map_err(|e| input(format!("cannot create `{}`: {}", path.display(), e)))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let io_fail = |e: std::io::Error| input(format!("cannot write diagnostics: {}", e));

    writeln!(out, "{}", CSV_HEADER).map_err(io_fail)?;
    let cadence = cfg.diagnostics_every.max(1);
    let mut emit = |sim: &maxform_dec::Simulation| -> Result<(), Failure> {
        let row = csv_row(sim.step_index(), sim.time(), &sim.diagnostics());
        writeln!(out, "{}", row).map_err(io_fail)
    };
    emit(&sim)?;
    for step in 1..=cfg.steps {
        sim.step(source.as_ref());
        if step % cadence == 0 || step == cfg.steps {
            emit(&sim)?;
        }
    }

    if let Some(prefix) = dump {
        let dims = sim.complex().dims();
        let with_suffix = |suffix: &str| -> PathBuf {
            let mut name = prefix.as_os_str().to_os_string();
            name.push(suffix);
            PathBuf::from(name)
        };
        write_cochain_dump(&with_suffix("-e.decf"), 1, dims, sim.electric())
            .map_err(|e| input(format!("cannot write field dump: {}", e)))?;
        write_cochain_dump(&with_suffix("-b.decf"), 2, dims, sim.magnetic())
            .map_err(|e| input(format!("cannot write field dump: {}", e)))?;
    }
    Ok(0)
}

/// Knobs for the speed measurement; all values are validated by the grid
/// and launcher constructors.
pub struct WaveSpeedArgs {
    pub axis: Axis,
    pub cells_per_wavelength: u32,
    pub wavelengths: u32,
    pub transverse: u32,
    pub spacing: f64,
    pub courant: f64,
    pub periods: u32,
}

#[derive(Serialize)]
struct WaveSpeedJson {
    measured: f64,
    predicted: f64,
    speed_error: f64,
    measurement_gap: f64,
    steps: u64,
    dt: f64,
}

/// Launches the requested eigenmode, tracks a zero crossing over whole
/// periods, and reports the measured phase velocity next to the
/// dispersion-relation prediction (both in units of the continuum speed).
pub fn wave_speed(format: Format, args: &WaveSpeedArgs) -> Result<i32, Failure> {
    let along = args
        .cells_per_wavelength
        .checked_mul(args.wavelengths)
        .ok_or_else(|| Failure::Usage("axis extent overflows".into()))?;
    let mut dims = [args.transverse; 3];
    dims[args.axis.index()] = along;
    let dims = GridDims { nx: dims[0], ny: dims[1], nz: dims[2] };

    let complex = CubicalComplex::new(dims, args.spacing)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let complex = Arc::new(complex);
    let materials = Materials::normalized();
    if !args.courant.is_finite() || args.courant <= 0.0 || args.courant > 1.0 {
        return Err(Failure::Usage(format!(
            "--courant must lie in (0, 1], got {}",
            args.courant
        )));
    }
    let dt = args.courant * stable_dt_limit(args.spacing, materials.light_speed());

    let outcome = measure_wave_speed(
        &complex,
        args.axis,
        args.cells_per_wavelength,
        args.periods,
        dt,
        materials,
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;

    let predicted = predicted_speed(
        args.cells_per_wavelength,
        args.spacing,
        dt,
        materials.light_speed(),
    );
    let payload = WaveSpeedJson {
        measured: outcome.speed,
        predicted,
        speed_error: (outcome.speed - 1.0).abs(),
        measurement_gap: (outcome.speed - predicted).abs(),
        steps: outcome.steps,
        dt: outcome.dt,
    };
    match format {
        Format::Text => {
            println!("measured {}", payload.measured);
            println!("predicted {}", payload.predicted);
            println!("speed-error {}", payload.speed_error);
            println!("measurement-gap {}", payload.measurement_gap);
            println!("steps {}", payload.steps);
            println!("dt {}", payload.dt);
        }
        Format::Json => emit_json(&payload),
    }
    Ok(0)
}

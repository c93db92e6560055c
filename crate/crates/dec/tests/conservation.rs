//! Structural conservation: solenoidal magnetic flux, energy stability and
//! charge continuity over long runs.

use std::sync::Arc;

use maxform_dec::{
    launch_plane_wave, stable_dt_limit, Axis, CubicalComplex, GridDims, Materials, PlaneWave,
    SimConfig, Simulation,
};

fn complex(nx: u32, ny: u32, nz: u32, h: f64) -> Arc<CubicalComplex> {
    Arc::new(CubicalComplex::new(GridDims::new(nx, ny, nz), h).unwrap())
}

fn plane_wave_sim() -> Simulation {
    let c = complex(64, 8, 8, 1.0);
    let m = Materials::normalized();
    let dt = 0.5 * stable_dt_limit(1.0, m.light_speed());
    let (e, b) = launch_plane_wave(&c, &PlaneWave::along(Axis::X, 16), m, dt).unwrap();
    Simulation::new(c, e, b, dt, m, false).unwrap()
}

/// For a transverse-uniform mode every volume's flux balance cancels
/// identical stored values pairwise, so `d2 b` is exactly zero — the same
/// floating-point value at step 0 and after 1000 source-free steps.
#[test]
fn plane_wave_divergence_is_bitwise_zero_for_a_thousand_steps() {
    let mut sim = plane_wave_sim();
    let complex = sim.complex().clone();
    let check_exact = |sim: &Simulation| {
        let mut div = vec![0.0; complex.volume_count()];
        complex.d2().apply_sequential(sim.magnetic(), &mut div);
        assert!(div.iter().all(|&x| x == 0.0), "divergence leaked");
    };
    check_exact(&sim);
    for _ in 0..10 {
        sim.run(100, None);
        check_exact(&sim);
    }
    assert_eq!(sim.step_index(), 1000);
    assert_eq!(sim.diagnostics().div_b, 0.0);
}

/// A generic curl-initialized field is solenoidal to round-off and stays
/// below 1e-12 for 1000 steps.
#[test]
fn generic_fields_keep_divergence_below_rounding_after_a_thousand_steps() {
    let c = complex(16, 16, 16, 0.5);
    let m = Materials::normalized();
    let dt = 0.5 * stable_dt_limit(0.5, m.light_speed());
    // A deterministic but unstructured smooth potential and field.
    let a = maxform_dec::sample::sample_edges(&c, |p| {
        [
            (p[1] * 2.3).sin() * (p[2] * 0.7).cos(),
            (p[2] * 1.9 + 0.4).sin() * (p[0] * 1.1).cos(),
            (p[0] * 2.7).sin() + (p[1] * 0.9).sin(),
        ]
    });
    let mut b = vec![0.0; c.face_count()];
    c.d1().apply_sequential(&a, &mut b);
    let e = maxform_dec::sample::sample_edges(&c, |p| {
        [
            (p[2] * 2.1).cos(),
            (p[0] * 1.7 + 1.0).sin(),
            (p[1] * 2.9).sin() * 0.5,
        ]
    });
    let mut sim = Simulation::new(c, e, b, dt, m, false).unwrap();
    assert!(sim.diagnostics().div_b <= 1e-12);
    sim.run(1000, None);
    let d = sim.diagnostics();
    assert!(d.div_b <= 1e-12, "divergence {} beyond rounding", d.div_b);
}

/// Plane-wave energy is constant: relative drift stays below 1e-6 over 1000
/// steps (checked at every hundredth step).
#[test]
fn plane_wave_energy_drifts_less_than_one_part_per_million() {
    let mut sim = plane_wave_sim();
    let initial = sim.energy();
    assert!(initial > 0.0);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        sim.run(100, None);
        worst = worst.max((sim.energy() / initial - 1.0).abs());
    }
    assert!(worst <= 1e-6, "energy drift {worst}");
}

/// And below 1e-5 over ten thousand steps.
#[test]
fn plane_wave_energy_stays_put_for_ten_thousand_steps() {
    let mut sim = plane_wave_sim();
    let initial = sim.energy();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        sim.run(1000, None);
        worst = worst.max((sim.energy() / initial - 1.0).abs());
    }
    assert!(worst <= 1e-5, "energy drift {worst}");
}

/// A driven run keeps the continuity residual at rounding level and
/// conserves total charge exactly (the flux sums telescope).
#[test]
fn driven_runs_conserve_charge_to_rounding() {
    let cfg = SimConfig::from_json(
        r#"{
            "dims": [16, 16, 16],
            "h": 1.0,
            "courant": 0.5,
            "steps": 1000,
            "initial": { "type": "zero" },
            "source": {
                "type": "current_pulse",
                "axis": "x",
                "center": [8.0, 8.0, 8.0],
                "radius": 2.0,
                "amplitude": 0.05
            },
            "diagnostics_every": 100
        }"#,
    )
    .unwrap();
    let (mut sim, source) = cfg.build().unwrap();
    let src = source.expect("configured source");
    let mut worst_residual = 0.0f64;
    for _ in 0..10 {
        sim.run(100, Some(&src));
        worst_residual = worst_residual.max(sim.diagnostics().charge_residual);
    }
    assert_eq!(sim.step_index(), 1000);
    assert!(
        worst_residual <= 1e-12,
        "continuity residual {worst_residual}"
    );
    let total: f64 = sim.charge().iter().sum();
    assert!(total.abs() <= 1e-10, "net charge {total}");
    // The pulse really deposited charge separation somewhere.
    assert!(sim.charge().iter().any(|&r| r.abs() > 1e-3));
}

//! The two formulations must agree verdict-for-verdict: a 3D field state
//! satisfies the homogeneous (or inhomogeneous) pair exactly when its
//! spacetime repackaging satisfies the corresponding unified equation.
//! Exercised on exact solutions, on generic violating states, and on mixed
//! states that satisfy one group while violating the other.

mod common;

use common::{random_field3, random_form, random_vacuum_field3, seeded};
use maxform_core::em3::{maxwell3_residuals, EmField3};
use maxform_core::em4::{maxwell4_residuals, spacetime_field};
use maxform_core::forms::Chart;

/// Checks both directions of the correspondence on one state and reports
/// whether each spacetime equation held.
fn assert_verdicts_agree(label: &str, f3: &EmField3) -> (bool, bool) {
    let r3 = maxwell3_residuals(f3);
    let f4 = spacetime_field(f3);
    let r4 = maxwell4_residuals(&f4).expect("the lift always attaches a current");

    let homogeneous3 = r3.faraday.is_provably_zero() && r3.gauss_magnetic.is_provably_zero();
    let homogeneous4 = r4.homogeneous.is_provably_zero();
    assert_eq!(
        homogeneous3, homogeneous4,
        "{label}: homogeneous verdicts split (3D {homogeneous3}, spacetime {homogeneous4})"
    );

    let inhomogeneous3 = r3.gauss_electric.is_provably_zero() && r3.ampere.is_provably_zero();
    let inhomogeneous4 = r4.inhomogeneous.is_provably_zero();
    assert_eq!(
        inhomogeneous3, inhomogeneous4,
        "{label}: inhomogeneous verdicts split (3D {inhomogeneous3}, spacetime {inhomogeneous4})"
    );

    (homogeneous4, inhomogeneous4)
}

#[test]
fn exact_solutions_lift_to_exact_solutions() {
    let mut rng = seeded(0x0e15_0001);
    for case in 0..50 {
        let f3 = random_vacuum_field3(&mut rng);
        let (homogeneous, inhomogeneous) = assert_verdicts_agree("exact", &f3);
        assert!(homogeneous && inhomogeneous, "case {case}: wave family stopped solving");
    }
}

#[test]
fn generic_states_are_judged_identically_on_both_charts() {
    let mut rng = seeded(0x0e15_0002);
    let mut refuted = 0;
    for _ in 0..30 {
        let f3 = random_field3(&mut rng);
        let (homogeneous, inhomogeneous) = assert_verdicts_agree("generic", &f3);
        if !homogeneous || !inhomogeneous {
            refuted += 1;
        }
    }
    assert!(refuted >= 15, "generator produced mostly accidental solutions ({refuted}/30)");
}

#[test]
fn corrupted_sources_refute_only_the_inhomogeneous_group() {
    let mut rng = seeded(0x0e15_0003);
    let mut refuted = 0;
    for case in 0..20 {
        let mut f3 = random_vacuum_field3(&mut rng);
        f3.rho = random_form(&mut rng, Chart::Euclidean3, 3);
        f3.j = random_form(&mut rng, Chart::Euclidean3, 2);
        let (homogeneous, inhomogeneous) = assert_verdicts_agree("mixed", &f3);
        assert!(homogeneous, "case {case}: sources must not disturb the homogeneous pair");
        if !inhomogeneous {
            refuted += 1;
        }
    }
    assert!(refuted >= 10, "generator produced mostly zero sources ({refuted}/20)");
}

//! Covariance under a rapidity-ζ boost in the (x⁰, x¹) plane: pulls the
//! field state back along the boost and verifies the invariance of the
//! interval, naturality of the exterior derivative, and the field
//! equations of the boosted state.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;

use maxform_core::em4::maxwell4_residuals;
use maxform_core::expr::ScalarExpr;
use maxform_core::forms::{boost_x, Chart, DifferentialForm};
use serde::Serialize;

use crate::documents::{load_json, Field4Doc};
use crate::report::{JsonReport, Report};
use crate::{Failure, Format};

/// JSON payload: the verification lines plus the boosted state as a field
/// document, ready to feed back into `verify maxwell4`.
#[derive(Serialize)]
struct BoostJson<'a> {
    #[serde(flatten)]
    report: JsonReport<'a>,
    boosted: Field4Doc,
}

pub fn boost(format: Format, zeta: &str, file: &Path) -> Result<i32, Failure> {
    let zeta = BigRational::from_str(zeta)
        .map_err(|e| Failure::Input(format!("rapidity `{}`: {}", zeta, e)))?;
    let doc: Field4Doc = load_json(file)?;
    let field = doc.resolve()?;

    let map = boost_x(zeta);
    let boosted_faraday = field.faraday().pullback(&map);
    let boosted_current = field
        .four_current_form()
        .expect("document resolution always attaches a current")
        .pullback(&map);

    let mut report = Report::new();

    // The quadratic interval s² = x₀² − x₁² − x₂² − x₃², compared with its
    // pullback; provably zero exactly when the boost is an isometry.
    let x = |i: u8| ScalarExpr::var(Chart::Minkowski4.coord_name(i));
    let interval = DifferentialForm::scalar(
        Chart::Minkowski4,
        x(0).pow(2) - x(1).pow(2) - x(2).pow(2) - x(3).pow(2),
    );
    let interval_residual = interval.pullback(&map).sub(&interval);
    report.push(
        "s2-invariance",
        interval_residual.zeroness(),
        interval_residual.simplified().to_string(),
    );

    // d commutes with the pullback: d(F∘L) − (dF)∘L.
    let naturality = boosted_faraday
        .ext_d()
        .sub(&field.faraday().ext_d().pullback(&map));
    report.push("d-naturality", naturality.zeroness(), naturality.simplified().to_string());

    // The boosted state must satisfy the same field equations it started
    // with; its residuals are the pullbacks of the original residuals.
    let boosted =
        maxform_core::em4::EmField4::new(boosted_faraday).with_current(boosted_current);
    let residuals = maxwell4_residuals(&boosted)
        .map_err(|e| Failure::Input(e.to_string()))?;
    for (name, residual) in residuals.labeled() {
        report.push(
            format!("boosted {}", name),
            residual.zeroness(),
            residual.simplified().to_string(),
        );
    }

    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => {
            let payload = BoostJson {
                report: JsonReport { equations: &report.equations, overall: report.overall() },
                boosted: Field4Doc::from_field(&boosted),
            };
            let mut text =
                serde_json::to_string_pretty(&payload).expect("report serialization");
            text.push('\n');
            print!("{}", text);
        }
    }
    Ok(report.exit_code())
}

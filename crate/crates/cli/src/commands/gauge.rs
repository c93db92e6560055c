//! Gauge-transformation subcommands. Both print the transformed potential;
//! with `--format json` the output document round-trips into the
//! verification subcommands.

use std::path::Path;

use maxform_core::em3::gauge_transform3;
use maxform_core::em4::gauge4 as gauge_transform4;
use maxform_core::expr::{parse_expr, ScalarExpr};
use maxform_core::forms::Chart;

use crate::documents::{load_json, Potential3Doc, Potential4Doc};
use crate::{emit_json, Failure, Format};

fn gauge_function(chart: Chart, text: &str) -> Result<ScalarExpr, Failure> {
    let vars = chart.variables();
    parse_expr(text, &vars)
        .map_err(|e| Failure::Input(format!("gauge function `{}`: {}", text, e)))
}

pub fn gauge3(format: Format, lambda: &str, file: &Path) -> Result<i32, Failure> {
    let doc: Potential3Doc = load_json(file)?;
    let (p, _, _) = doc.resolve()?;
    let lam = gauge_function(Chart::Euclidean3, lambda)?;
    let transformed = gauge_transform3(&p, &lam);
    match format {
        Format::Text => {
            println!("A' = {}", transformed.a);
            println!("Phi' = {}", transformed.phi);
        }
        Format::Json => emit_json(&doc.with_potential(&transformed)),
    }
    Ok(0)
}

pub fn gauge4(format: Format, lambda: &str, file: &Path) -> Result<i32, Failure> {
    let doc: Potential4Doc = load_json(file)?;
    let p = doc.resolve()?;
    let lam = gauge_function(Chart::Minkowski4, lambda)?;
    let transformed = gauge_transform4(&p, &lam);
    match format {
        Format::Text => println!("I' = {}", transformed.i),
        Format::Json => emit_json(&Potential4Doc::from_potential(&transformed)),
    }
    Ok(0)
}

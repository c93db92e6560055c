//! Verification subcommands: the 3D and spacetime field systems, the
//! second-order potential equations, the decoupled wave equations, the
//! Lorenz gauge condition, and charge conservation.

use std::path::Path;

use maxform_core::em3::{
    lorenz_residual3, maxwell3_residuals, potential_equation_residuals, wave_residuals3,
};
use maxform_core::em4::{continuity_residual, maxwell4_residuals, potential_ops};

use crate::documents::{load_json, Field3Doc, Field4Doc, Potential3Doc, Potential4Doc};
use crate::report::Report;
use crate::{emit_report, Failure, Format};

pub fn maxwell3(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Field3Doc = load_json(file)?;
    let field = doc.resolve()?;
    let residuals = maxwell3_residuals(&field);
    let mut report = Report::new();
    for (name, residual) in residuals.labeled() {
        report.push(name, residual.zeroness(), residual.simplified().to_string());
    }
    Ok(emit_report(&report, format))
}

pub fn maxwell4(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Field4Doc = load_json(file)?;
    let field = doc.resolve()?;
    let residuals = maxwell4_residuals(&field)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let mut report = Report::new();
    for (name, residual) in residuals.labeled() {
        report.push(name, residual.zeroness(), residual.simplified().to_string());
    }
    Ok(emit_report(&report, format))
}

pub fn potential3(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Potential3Doc = load_json(file)?;
    let (p, rho, j) = doc.resolve()?;
    let (q1, q2) = potential_equation_residuals(&p, &rho, &j);
    let mut report = Report::new();
    report.push("phi-equation", q1.zeroness(), q1.simplified().to_string());
    report.push("A-equation", q2.zeroness(), q2.simplified().to_string());
    Ok(emit_report(&report, format))
}

pub fn wave3(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Potential3Doc = load_json(file)?;
    let (p, rho, j) = doc.resolve()?;
    let (w1, w2) = wave_residuals3(&p, &rho, &j);
    let mut report = Report::new();
    report.push("phi-wave", w1.zeroness(), w1.simplified().to_string());
    report.push("A-wave", w2.zeroness(), w2.simplified().to_string());
    Ok(emit_report(&report, format))
}

pub fn lorenz3(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Potential3Doc = load_json(file)?;
    let (p, _, _) = doc.resolve()?;
    let residual = lorenz_residual3(&p);
    let mut report = Report::new();
    report.push("lorenz", residual.is_zero(), residual.normalize().to_expr().to_string());
    Ok(emit_report(&report, format))
}

pub fn lorenz4(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Potential4Doc = load_json(file)?;
    let p = doc.resolve()?;
    let residual = potential_ops(&p).lorenz;
    let mut report = Report::new();
    report.push("lorenz", residual.is_zero(), residual.normalize().to_expr().to_string());
    Ok(emit_report(&report, format))
}

pub fn continuity(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: Field4Doc = load_json(file)?;
    let field = doc.resolve()?;
    let jt = field
        .four_current_form()
        .expect("document resolution always attaches a current");
    let residual = continuity_residual(jt);
    let mut report = Report::new();
    report.push("deltaJ=0", residual.is_zero(), residual.normalize().to_expr().to_string());
    Ok(emit_report(&report, format))
}

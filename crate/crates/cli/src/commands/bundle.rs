//! Two-level compatibility report for a cover of local potentials: the
//! overlap compatibility equations, triple-overlap phase consistency, and
//! agreement of the local curvatures.

use std::path::Path;

use maxform_core::bundle::{curvature_agreement, BundleDoc};

use crate::documents::load_json;
use crate::report::Report;
use crate::{emit_report, Failure, Format};

pub fn bundle_check(format: Format, file: &Path) -> Result<i32, Failure> {
    let doc: BundleDoc = load_json(file)?;
    let (potentials, transitions) = doc
        .resolve()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let curvature = curvature_agreement(&potentials, &transitions)
        .map_err(|e| Failure::Input(e.to_string()))?;

    let mut report = Report::new();
    for o in &curvature.cocycle.overlaps {
        let name = format!("cocycle[{},{}]", o.charts.0, o.charts.1);
        report.push(name, o.verdict, o.residual.simplified().to_string());
    }
    for t in &curvature.cocycle.triples {
        let name = format!("triple[{},{},{}]", t.charts.0, t.charts.1, t.charts.2);
        report.push(name, t.verdict, t.residual.simplified().to_string());
    }
    for o in &curvature.overlaps {
        let name = format!("curvature[{},{}]", o.charts.0, o.charts.1);
        report.push(name, o.verdict, o.residual.simplified().to_string());
    }
    Ok(emit_report(&report, format))
}

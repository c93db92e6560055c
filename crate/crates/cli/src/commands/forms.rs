//! Pointwise operator subcommands over command-line form literals:
//! exterior derivative, Hodge star, codifferential, wedge product, and the
//! Laplacian.

use maxform_core::forms::{parse_form, Chart, DifferentialForm};

use crate::{emit_form, Failure, Format};

fn parse(text: &str, chart: Chart) -> Result<DifferentialForm, Failure> {
    parse_form(text, chart)
        .map_err(|e| Failure::Input(format!("form literal `{}`: {}", text, e)))
}

pub fn deriv(chart: Chart, format: Format, text: &str) -> Result<i32, Failure> {
    emit_form(&parse(text, chart)?.ext_d(), format);
    Ok(0)
}

pub fn star(chart: Chart, format: Format, text: &str) -> Result<i32, Failure> {
    emit_form(&parse(text, chart)?.hodge(), format);
    Ok(0)
}

pub fn codiff(chart: Chart, format: Format, text: &str) -> Result<i32, Failure> {
    let form = parse(text, chart)?;
    if form.degree() == 0 {
        return Err(Failure::Input(
            "the codifferential needs a form of degree at least 1".into(),
        ));
    }
    emit_form(&form.codiff(), format);
    Ok(0)
}

pub fn wedge(chart: Chart, format: Format, left: &str, right: &str) -> Result<i32, Failure> {
    let result = parse(left, chart)?.wedge(&parse(right, chart)?);
    emit_form(&result, format);
    Ok(0)
}

pub fn laplacian(chart: Chart, format: Format, text: &str) -> Result<i32, Failure> {
    if chart != Chart::Euclidean3 {
        return Err(Failure::Usage(
            "the laplacian subcommand is defined on the euclidean3 chart only".into(),
        ));
    }
    emit_form(&parse(text, chart)?.laplacian(), format);
    Ok(0)
}

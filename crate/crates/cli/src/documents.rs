//! JSON document formats read and written by the subcommands.
//!
//! Three families of documents exist:
//!
//! * **3D documents** carry whole differential forms, one form document per
//!   member (see the form-document format in the core crate). Missing
//!   `d`/`h` members are filled in from the vacuum constitutive relations
//!   `D = ε₀∗E`, `H = (1/μ₀)∗B`; missing sources default to zero.
//! * **Spacetime documents** carry component functions of `x0..x3` as
//!   expression strings, mirroring the usual (E, B, ρ, J) and (Φ, A)
//!   component views. The Faraday form, four-current, and potential 1-form
//!   are assembled from them.
//! * **Bundle documents** are defined in the core crate and used verbatim.
//!
//! Every loader maps malformed content to [`Failure::Input`] with the
//! offending member named, so the binary can exit with the input-error
//! code instead of panicking inside a constructor.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use maxform_core::em3::{EmField3, Potential3};
use maxform_core::em4::{assemble_faraday, four_current, EmField4, Potential4};
use maxform_core::expr::{parse_expr, ScalarExpr};
use maxform_core::forms::{Chart, DifferentialForm, FormDoc};

use crate::Failure;

fn input(message: impl Into<String>) -> Failure {
    Failure::Input(message.into())
}

/// Reads a file and deserializes it as JSON, naming the file in failures.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read `{}`: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| input(format!("cannot parse `{}`: {}", path.display(), e)))
}

/// Converts one named form-document member, enforcing its chart and degree.
fn form_member(
    name: &str,
    doc: &FormDoc,
    chart: Chart,
    degree: u8,
) -> Result<DifferentialForm, Failure> {
    let form = doc
        .to_form()
        .map_err(|e| input(format!("member `{}`: {}", name, e)))?;
    if form.chart() != chart {
        return Err(input(format!(
            "member `{}` must live on the {} chart, found {}",
            name,
            chart.name(),
            form.chart().name()
        )));
    }
    if form.degree() != degree {
        return Err(input(format!(
            "member `{}` must have degree {}, found {}",
            name,
            degree,
            form.degree()
        )));
    }
    Ok(form)
}

/// Parses one named spacetime component expression.
fn spacetime_expr(name: &str, text: &str) -> Result<ScalarExpr, Failure> {
    let vars = Chart::Minkowski4.variables();
    parse_expr(text, &vars).map_err(|e| input(format!("component `{}` = `{}`: {}", name, text, e)))
}

/// 3D field document: named members, each a form document. `e` and `b`
/// are required; `d` and `h` default to the constitutive images of `e`
/// and `b`; `j` and `rho` default to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Field3Doc {
    pub e: FormDoc,
    pub b: FormDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<FormDoc>,
}

impl Field3Doc {
    pub fn resolve(&self) -> Result<EmField3, Failure> {
        const E3: Chart = Chart::Euclidean3;
        let e = form_member("e", &self.e, E3, 1)?;
        let b = form_member("b", &self.b, E3, 2)?;
        let d = match &self.d {
            Some(doc) => form_member("d", doc, E3, 2)?,
            None => e.hodge().scale(&ScalarExpr::eps0()),
        };
        let h = match &self.h {
            Some(doc) => form_member("h", doc, E3, 1)?,
            None => b.hodge().scale(&ScalarExpr::mu0().pow(-1)),
        };
        let j = match &self.j {
            Some(doc) => form_member("j", doc, E3, 2)?,
            None => DifferentialForm::zero(E3, 2),
        };
        let rho = match &self.rho {
            Some(doc) => form_member("rho", doc, E3, 3)?,
            None => DifferentialForm::zero(E3, 3),
        };
        Ok(EmField3::new(e, h, d, b, j, rho))
    }
}

/// 3D potential document: `a` (degree 1) and `phi` (degree 0) as form
/// documents, plus optional `rho` (degree 3) and `j` (degree 2) sources
/// used by the second-order verifications.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Potential3Doc {
    pub a: FormDoc,
    pub phi: FormDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<FormDoc>,
}

impl Potential3Doc {
    pub fn resolve(&self) -> Result<(Potential3, DifferentialForm, DifferentialForm), Failure> {
        const E3: Chart = Chart::Euclidean3;
        let a = form_member("a", &self.a, E3, 1)?;
        let phi = form_member("phi", &self.phi, E3, 0)?;
        let rho = match &self.rho {
            Some(doc) => form_member("rho", doc, E3, 3)?,
            None => DifferentialForm::zero(E3, 3),
        };
        let j = match &self.j {
            Some(doc) => form_member("j", doc, E3, 2)?,
            None => DifferentialForm::zero(E3, 2),
        };
        Ok((Potential3::new(a, phi), rho, j))
    }

    /// Repackages a transformed potential with the original sources, so a
    /// `gauge3` output document feeds straight back into `verify`.
    pub fn with_potential(&self, p: &Potential3) -> Potential3Doc {
        Potential3Doc {
            a: FormDoc::from_form(&p.a),
            phi: FormDoc::from_form(&p.phi),
            rho: self.rho.clone(),
            j: self.j.clone(),
        }
    }
}

/// Spacetime field document: component functions of `x0..x3` as expression
/// strings. `rho` and `j` default to zero (a source-free field).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Field4Doc {
    pub e: [String; 3],
    pub b: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<[String; 3]>,
}

impl Field4Doc {
    pub fn resolve(&self) -> Result<EmField4, Failure> {
        let comp = |label: &str, texts: &[String; 3]| -> Result<[ScalarExpr; 3], Failure> {
            Ok([
                spacetime_expr(&format!("{}1", label), &texts[0])?,
                spacetime_expr(&format!("{}2", label), &texts[1])?,
                spacetime_expr(&format!("{}3", label), &texts[2])?,
            ])
        };
        let e = comp("E", &self.e)?;
        let b = comp("B", &self.b)?;
        let rho = match &self.rho {
            Some(text) => spacetime_expr("rho", text)?,
            None => ScalarExpr::zero(),
        };
        let j = match &self.j {
            Some(texts) => comp("J", texts)?,
            None => [ScalarExpr::zero(), ScalarExpr::zero(), ScalarExpr::zero()],
        };
        Ok(assemble_faraday(e, b).with_current(four_current(rho, j)))
    }

    /// The component view of a field state, e.g. a boosted output. The
    /// four-current is unpacked through J̃ = ρdx⁰ − (1/c)ΣJᵢdxⁱ.
    pub fn from_field(f: &EmField4) -> Field4Doc {
        let (e, b) = f.components();
        let (rho, j) = match f.four_current_form() {
            Some(jt) => {
                let rho = jt.coeff(&[0]);
                let j = [1u8, 2, 3].map(|i| (-jt.coeff(&[i]) * ScalarExpr::c()).to_string());
                (Some(rho.to_string()), Some(j))
            }
            None => (None, None),
        };
        Field4Doc {
            e: e.map(|x| x.to_string()),
            b: b.map(|x| x.to_string()),
            rho,
            j,
        }
    }
}

/// Spacetime potential document: the component view (Φ, A) as expression
/// strings, packaged as I = −Φdx⁰ + c(A₁dx¹ + A₂dx² + A₃dx³).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Potential4Doc {
    pub phi: String,
    pub a: [String; 3],
}

impl Potential4Doc {
    pub fn resolve(&self) -> Result<Potential4, Failure> {
        let phi = spacetime_expr("phi", &self.phi)?;
        let a1 = spacetime_expr("A1", &self.a[0])?;
        let a2 = spacetime_expr("A2", &self.a[1])?;
        let a3 = spacetime_expr("A3", &self.a[2])?;
        let c = ScalarExpr::c;
        let i = DifferentialForm::one_form(
            Chart::Minkowski4,
            &[-phi, c() * a1, c() * a2, c() * a3],
        );
        Ok(Potential4::new(i))
    }

    pub fn from_potential(p: &Potential4) -> Potential4Doc {
        let (phi, a) = p.components();
        Potential4Doc {
            phi: phi.to_string(),
            a: a.map(|x| x.to_string()),
        }
    }
}

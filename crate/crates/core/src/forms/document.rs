//! JSON-serializable documents describing differential forms.
//!
//! A document names its chart, states the form degree, and lists terms as
//! `{basis, coeff}` pairs, with the coefficient in the expression grammar:
//!
//! ```json
//! {"chart": "minkowski4", "degree": 2,
//!  "terms": [{"basis": [0, 1], "coeff": "-E1(x0,x1,x2,x3)"}]}
//! ```
//!
//! Printing a form and reading the document back yields an equal form, so
//! command output can feed later commands.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Chart, DifferentialForm};
use crate::expr::{parse_expr, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    /// Strictly increasing 0-based coordinate positions.
    pub basis: Vec<u8>,
    /// Coefficient in the expression grammar.
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub chart: String,
    pub degree: u8,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("degree {degree} exceeds the dimension {dim} of chart `{chart}`")]
    BadDegree { chart: &'static str, dim: u8, degree: u8 },
    #[error(
        "basis {basis:?} is not a strictly increasing multi-index of length {degree} \
         with positions below {dim}"
    )]
    BadBasis { basis: Vec<u8>, degree: u8, dim: u8 },
    #[error("basis {0:?} appears in more than one term")]
    DuplicateBasis(Vec<u8>),
    #[error("invalid coefficient `{text}`: {source}")]
    Coefficient {
        text: String,
        #[source]
        source: ParseError,
    },
}

impl FormDoc {
    pub fn from_form(form: &DifferentialForm) -> FormDoc {
        FormDoc {
            chart: form.chart().name().to_string(),
            degree: form.degree(),
            terms: form
                .terms()
                .map(|(basis, coeff)| TermDoc {
                    basis: basis.clone(),
                    coeff: coeff.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<DifferentialForm, DocError> {
        let chart = Chart::parse_name(&self.chart)
            .ok_or_else(|| DocError::UnknownChart(self.chart.clone()))?;
        if self.degree > chart.dim() {
            return Err(DocError::BadDegree {
                chart: chart.name(),
                dim: chart.dim(),
                degree: self.degree,
            });
        }
        let vars = chart.variables();
        let mut seen = BTreeSet::new();
        let mut form = DifferentialForm::zero(chart, self.degree);
        for term in &self.terms {
            let well_formed = term.basis.len() == usize::from(self.degree)
                && term.basis.windows(2).all(|w| w[0] < w[1])
                && term.basis.iter().all(|&i| i < chart.dim());
            if !well_formed {
                return Err(DocError::BadBasis {
                    basis: term.basis.clone(),
                    degree: self.degree,
                    dim: chart.dim(),
                });
            }
            if !seen.insert(term.basis.clone()) {
                return Err(DocError::DuplicateBasis(term.basis.clone()));
            }
            let coeff = parse_expr(&term.coeff, &vars).map_err(|source| {
                DocError::Coefficient { text: term.coeff.clone(), source }
            })?;
            form.insert(term.basis.clone(), coeff);
        }
        Ok(form)
    }
}

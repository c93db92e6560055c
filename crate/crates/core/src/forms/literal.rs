//! Parser for form literals such as `-E1(x1,x2,x3,t) dx2^dx3 + c dx1`.
//!
//! A form literal is a sum of terms. Each term is a product of scalar
//! factors (parsed with the coefficient-expression grammar) and basis
//! factors `dxK` chained with `^`; the `*` between a scalar factor and a
//! basis chain may be omitted, so the output of the form printer parses
//! back. Identifiers of the shape `d<coordinate>` always denote basis
//! covectors and cannot name opaque functions. Dividing by a basis covector
//! is rejected, all terms must have the same degree (a repeated covector
//! such as `dx1^dx1` still counts toward its term's degree even though the
//! term vanishes), and `0` denotes the zero 0-form.

use super::{sort_sign, Chart, DifferentialForm};
use crate::expr::parse::{tokenize, ParseError, Parser, Tok};
use crate::expr::{ScalarExpr, Zeroness};

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

/// Position of the coordinate named by a `d<coordinate>` identifier, if the
/// identifier denotes a basis covector of `chart`.
fn dx_position(name: &str, chart: Chart) -> Option<u8> {
    let rest = name.strip_prefix('d')?;
    (0..chart.dim()).find(|&i| chart.coord_name(i) == rest)
}

fn peek_dx(p: &Parser<'_>, chart: Chart) -> Option<u8> {
    match p.peek() {
        Some(Tok::Ident(name)) => dx_position(name, chart),
        _ => None,
    }
}

/// One parsed term: its scalar coefficient and the basis covector positions
/// in the order written (repeats preserved).
struct FormTerm {
    coeff: ScalarExpr,
    basis: Vec<u8>,
}

fn form_term(p: &mut Parser<'_>, chart: Chart) -> Result<FormTerm, ParseError> {
    let mut coeff = ScalarExpr::one();
    let mut basis: Vec<u8> = Vec::new();
    let mut first = true;
    loop {
        if !first {
            if p.eat(&Tok::Star) {
                // explicit product; fall through to the factor below
            } else if p.peek() == Some(&Tok::Slash) {
                let slash_at = p.offset();
                p.bump();
                if peek_dx(p, chart).is_some() {
                    return Err(syntax(p.offset(), "cannot divide by a basis covector"));
                }
                let rhs = p.factor()?;
                if rhs.is_zero() == Zeroness::ProvenZero {
                    return Err(syntax(slash_at, "division by a provably zero expression"));
                }
                coeff = coeff / rhs;
                continue;
            } else if !matches!(
                p.peek(),
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
            ) {
                // Not a juxtaposed factor: the term ends here.
                return Ok(FormTerm { coeff, basis });
            }
        }
        first = false;
        if let Some(pos) = peek_dx(p, chart) {
            p.bump();
            basis.push(pos);
            // A `^` continues the chain only when a covector follows;
            // `dx1^2` is rejected rather than read as a power.
            while p.peek() == Some(&Tok::Caret) {
                match p.peek_at(1) {
                    Some(Tok::Ident(name)) => {
                        let Some(next) = dx_position(name, chart) else {
                            return Err(syntax(
                                p.offset(),
                                "expected basis covector after `^`",
                            ));
                        };
                        p.bump();
                        p.bump();
                        basis.push(next);
                    }
                    _ => {
                        return Err(syntax(p.offset(), "expected basis covector after `^`"))
                    }
                }
            }
        } else {
            coeff = coeff * p.factor()?;
        }
    }
}

/// Parses a form literal against `chart`. Scalar coefficients may use the
/// chart coordinates and `t`.
pub fn parse_form(text: &str, chart: Chart) -> Result<DifferentialForm, ParseError> {
    let toks = tokenize(text)?;
    let vars = chart.variables();
    let mut p = Parser::new(&toks, text.len(), &vars);

    let mut form: Option<DifferentialForm> = None;
    let mut negate = p.eat(&Tok::Minus);
    loop {
        let term_at = p.offset();
        let FormTerm { coeff, basis } = form_term(&mut p, chart)?;
        let degree = u8::try_from(basis.len())
            .map_err(|_| syntax(term_at, "degree exceeds the chart dimension"))?;
        if degree > chart.dim() {
            return Err(syntax(
                term_at,
                format!(
                    "term of degree {} exceeds the chart dimension {}",
                    degree,
                    chart.dim()
                ),
            ));
        }
        match &form {
            None => form = Some(DifferentialForm::zero(chart, degree)),
            Some(f) if f.degree() != degree => {
                return Err(syntax(
                    term_at,
                    format!("term of degree {} in a form of degree {}", degree, f.degree()),
                ));
            }
            Some(_) => {}
        }
        let form = form.as_mut().expect("initialized above");
        let mut idx = basis;
        if let Some(sign) = sort_sign(&mut idx) {
            let mut coeff = if negate { -coeff } else { coeff };
            if sign < 0 {
                coeff = -coeff;
            }
            form.accumulate(idx, coeff);
        }
        // A repeated covector annihilates the term; it contributed only its
        // degree, which is already checked.

        if p.eat(&Tok::Plus) {
            negate = false;
        } else if p.eat(&Tok::Minus) {
            negate = true;
        } else {
            break;
        }
    }
    p.expect_eof()?;
    Ok(form.expect("at least one term was parsed"))
}

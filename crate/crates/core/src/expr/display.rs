//! Precedence-aware printing.
//!
//! Output of the printer re-parses to a structurally equal tree for every
//! tree the parser can produce. Derivative tags on opaque symbols print as
//! `D[1,2](name)(args)`; tagged symbols only arise from differentiation and
//! have no input syntax.

use super::{Node, NormalForm, ScalarExpr};
use num_traits::{One, Signed};
use std::fmt;

// Binding strengths: additive 1, multiplicative 2, power base 3, atom 4.
// Unary minus and negative literals print at strength 1.
fn prec(e: &ScalarExpr) -> u8 {
    match e.node() {
        Node::Rat(r) => {
            if r.is_negative() {
                1
            } else if r.denom().is_one() {
                4
            } else {
                2
            }
        }
        Node::Const(_) | Node::Var(_) | Node::Fun(..) | Node::Opaque(_) => 4,
        Node::Neg(_) => 1,
        Node::Add(..) | Node::Sub(..) => 1,
        Node::Mul(..) | Node::Div(..) => 2,
        Node::Pow(..) => 3,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &ScalarExpr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &ScalarExpr) -> fmt::Result {
    match e.node() {
        Node::Rat(r) => {
            if r.denom().is_one() {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            }
        }
        Node::Const(k) => write!(f, "{}", k.name()),
        Node::Var(v) => write!(f, "{}", v),
        Node::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, 2)
        }
        Node::Add(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " + ")?;
            write_at(f, b, 2)
        }
        Node::Sub(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " - ")?;
            write_at(f, b, 2)
        }
        Node::Mul(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "*")?;
            write_at(f, b, 3)
        }
        Node::Div(a, b) => {
            write_at(f, a, 2)?;
            write!(f, "/")?;
            write_at(f, b, 3)
        }
        Node::Pow(a, n) => {
            write_at(f, a, 4)?;
            write!(f, "^{}", n)
        }
        Node::Fun(fun, a) => {
            write!(f, "{}(", fun.name())?;
            write_expr(f, a)?;
            write!(f, ")")
        }
        Node::Opaque(op) => {
            if !op.derivs.is_empty() {
                write!(f, "D[")?;
                for (i, d) in op.derivs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", d)?;
                }
                write!(f, "]({})", op.name)?;
            } else {
                write!(f, "{}", op.name)?;
            }
            write!(f, "(")?;
            for (i, a) in op.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write_expr(f, a)?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, &self.to_expr())
    }
}

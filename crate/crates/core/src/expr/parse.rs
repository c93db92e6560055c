//! Recursive-descent parser for the coefficient expression grammar.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' ['-'] integer)?
//! base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! `sin`, `cos`, `exp`, `sinh`, `cosh` are built-in unary functions; `pi`,
//! `c`, `eps0`, `mu0` are named constants; any other identifier followed by
//! `(` introduces an opaque function symbol whose argument list is its
//! declaration. Bare identifiers must be coordinates of the active chart
//! (or `t`); anything else is an unknown-identifier error. Numbers are
//! unsigned integers; rationals are written with `/`.
//!
//! The printer's notation for differentiated opaque symbols,
//! `D[0,1](f)(x1,x2)`, is also accepted, so printed expressions parse back
//! to equal values.

use super::{Func, PhysConst, ScalarExpr, Zeroness};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdent { offset: usize, name: String },
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n = BigInt::parse_bytes(&bytes[i..j], 10)
                    .ok_or_else(|| syntax(i, "invalid number"))?;
                i = j;
                toks.push(Token { tok: Tok::Num(n), offset: start });
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let name = std::str::from_utf8(&bytes[i..j]).unwrap().to_string();
                i = j;
                toks.push(Token { tok: Tok::Ident(name), offset: start });
                continue;
            }
            other => {
                return Err(syntax(
                    i,
                    format!("unexpected character `{}`", other as char),
                ))
            }
        };
        i += 1;
        toks.push(Token { tok, offset: start });
    }
    Ok(toks)
}

pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: &'a [&'a str],
    /// Byte offset reported for unexpected end of input.
    end: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: &'a [Token], end: usize, vars: &'a [&'a str]) -> Self {
        Parser { toks, pos: 0, vars, end }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    /// Looks `k` tokens past the cursor (`peek_at(0)` == `peek()`).
    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.offset).unwrap_or(self.end)
    }

    pub(crate) fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return Err(syntax(self.offset(), "unexpected trailing input"));
        }
        Ok(())
    }

    pub(crate) fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc + self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc * self.factor()?;
            } else if self.peek() == Some(&Tok::Slash) {
                let slash_at = self.offset();
                self.pos += 1;
                let rhs = self.factor()?;
                if rhs.is_zero() == Zeroness::ProvenZero {
                    return Err(syntax(slash_at, "division by a provably zero expression"));
                }
                acc = acc / rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    pub(crate) fn factor(&mut self) -> Result<ScalarExpr, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.eat(&Tok::Caret) {
            let neg = self.eat(&Tok::Minus);
            let at = self.offset();
            match self.bump().map(|t| &t.tok) {
                Some(Tok::Num(n)) => {
                    let exp: i32 = i32::try_from(n)
                        .map_err(|_| syntax(at, "exponent out of range"))?;
                    let exp = if neg { -exp } else { exp };
                    if exp < 0 && base.is_zero() == Zeroness::ProvenZero {
                        return Err(syntax(at, "zero raised to a negative power"));
                    }
                    return Ok(base.pow(exp));
                }
                _ => return Err(syntax(at, "expected integer exponent after `^`")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ScalarExpr, ParseError> {
        let at = self.offset();
        match self.bump().map(|t| &t.tok) {
            Some(Tok::Num(n)) => Ok(ScalarExpr::rational(BigRational::from_integer(n.clone()))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                if name == "D" && self.peek() == Some(&Tok::LBracket) {
                    return self.tagged_opaque(at);
                }
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.expr()?);
                    }
                    if !self.eat(&Tok::RParen) {
                        return Err(syntax(self.offset(), "expected `)` or `,`"));
                    }
                    if let Some(f) = Func::from_name(name) {
                        if args.len() != 1 {
                            return Err(syntax(
                                at,
                                format!("`{}` takes exactly one argument", name),
                            ));
                        }
                        return Ok(ScalarExpr::fun(f, args.pop().unwrap()));
                    }
                    return Ok(ScalarExpr::opaque_args(name.clone(), args));
                }
                match name.as_str() {
                    "c" => Ok(ScalarExpr::constant(PhysConst::C)),
                    "eps0" => Ok(ScalarExpr::constant(PhysConst::Eps0)),
                    "mu0" => Ok(ScalarExpr::constant(PhysConst::Mu0)),
                    "pi" => Ok(ScalarExpr::constant(PhysConst::Pi)),
                    _ if Func::from_name(name).is_some() => {
                        Err(syntax(at, format!("`{}` requires an argument list", name)))
                    }
                    _ if self.vars.contains(&name.as_str()) => {
                        Ok(ScalarExpr::var(name.clone()))
                    }
                    _ => Err(ParseError::UnknownIdent { offset: at, name: name.clone() }),
                }
            }
            Some(_) => Err(syntax(at, "expected expression")),
            None => Err(syntax(self.end, "expected expression")),
        }
    }

    /// Reads the printer's notation for a differentiated opaque symbol:
    /// `D[0,1](f)(x1,x2)`. The leading `D[` has been recognized (but only
    /// the `D` consumed); tags are 0-based argument positions.
    fn tagged_opaque(&mut self, at: usize) -> Result<ScalarExpr, ParseError> {
        self.pos += 1; // `[`
        let mut derivs = Vec::new();
        loop {
            let tag_at = self.offset();
            match self.bump().map(|t| &t.tok) {
                Some(Tok::Num(n)) => {
                    let tag = u32::try_from(n)
                        .map_err(|_| syntax(tag_at, "derivative tag out of range"))?;
                    derivs.push(tag);
                }
                _ => return Err(syntax(tag_at, "expected derivative tag")),
            }
            if self.eat(&Tok::RBracket) {
                break;
            }
            if !self.eat(&Tok::Comma) {
                return Err(syntax(self.offset(), "expected `,` or `]`"));
            }
        }
        if !self.eat(&Tok::LParen) {
            return Err(syntax(self.offset(), "expected `(` after derivative tags"));
        }
        let name_at = self.offset();
        let name = match self.bump().map(|t| &t.tok) {
            Some(Tok::Ident(name)) => name.clone(),
            _ => return Err(syntax(name_at, "expected function name")),
        };
        if !self.eat(&Tok::RParen) {
            return Err(syntax(self.offset(), "expected `)` after function name"));
        }
        if !self.eat(&Tok::LParen) {
            return Err(syntax(self.offset(), "expected argument list"));
        }
        let mut args = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        if !self.eat(&Tok::RParen) {
            return Err(syntax(self.offset(), "expected `)` or `,`"));
        }
        if let Some(&bad) = derivs.iter().find(|&&d| d as usize >= args.len()) {
            return Err(syntax(
                at,
                format!("derivative tag {} exceeds the argument count {}", bad, args.len()),
            ));
        }
        Ok(ScalarExpr::opaque_tagged(name, args, derivs))
    }
}

/// Parses `text` against the expression grammar. `vars` lists the variable
/// names in scope (the active chart's coordinates, plus `t` where time
/// parametrization applies).
pub fn parse_expr(text: &str, vars: &[&str]) -> Result<ScalarExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser::new(&toks, text.len(), vars);
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}


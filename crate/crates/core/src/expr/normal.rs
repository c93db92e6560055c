//! Expanded sum-of-products normal form.
//!
//! A normal form is a sorted list of terms; each term is a rational
//! coefficient times a sorted list of (atom, integer exponent) factors.
//! Atoms are constants, variables, elementary-function applications with
//! normalized arguments, opaque symbols, and inverted irreducible sums.
//!
//! Rewrites applied here, and nothing else:
//! * constant folding over exact rationals,
//! * `mu0 -> c^-2 * eps0^-1` (one direction of `c^2*mu0*eps0 = 1`),
//! * argument sign canonicalization: `sin(-u) = -sin(u)`, `cos(-u) = cos(u)`,
//!   likewise for `sinh`/`cosh`, and `exp(-u) = exp(u)^-1`,
//! * fusion of `exp` factors within a term: `exp(u)^a * exp(v)^b = exp(a*u + b*v)`,
//! * `cos^2(u) -> 1 - sin^2(u)` and `cosh^2(u) -> 1 + sinh^2(u)` for powers
//!   of at least two, which decides the Pythagorean and hyperbolic
//!   identities.
//!
//! Inverted sums are kept monic (leading coefficient 1) so that e.g.
//! `1/(2*x + 2*y)` and `(1/2)/(x + y)` collide.

use super::{Func, Node, OpaqueFn, PhysConst, ScalarExpr, Zeroness};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum Atom {
    Const(PhysConst),
    Var(String),
    Fun(Func, NormalForm),
    Opaque {
        name: String,
        args: Vec<NormalForm>,
        derivs: Vec<u32>,
    },
    /// A monic sum of at least two terms; appears only with negative
    /// exponents (positive powers of sums are expanded).
    SumPow(NormalForm),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct Term {
    pub factors: Vec<(Atom, i32)>,
    pub coef: BigRational,
}

/// The normal form of a [`ScalarExpr`]. Structural equality of normal forms
/// is the engine's notion of identity up to the documented rewrite set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NormalForm {
    terms: Vec<Term>,
}

impl NormalForm {
    pub(crate) fn zero() -> Self {
        NormalForm { terms: Vec::new() }
    }

    fn rat(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        NormalForm { terms: vec![Term { factors: Vec::new(), coef: r }] }
    }

    fn one() -> Self {
        Self::rat(BigRational::one())
    }

    fn atom(a: Atom) -> Self {
        NormalForm {
            terms: vec![Term { factors: vec![(a, 1)], coef: BigRational::one() }],
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True when the normal form is literally the zero polynomial.
    pub fn is_literally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn leading_coef_negative(&self) -> bool {
        self.terms.first().map(|t| t.coef.is_negative()).unwrap_or(false)
    }

    pub fn contains_opaque(&self) -> bool {
        self.terms.iter().any(|t| {
            t.factors.iter().any(|(a, _)| match a {
                Atom::Opaque { .. } => true,
                Atom::Fun(_, arg) => arg.contains_opaque(),
                Atom::SumPow(s) => s.contains_opaque(),
                Atom::Const(_) | Atom::Var(_) => false,
            })
        })
    }

    /// Sound three-valued zero test: literal zero is `ProvenZero`; otherwise
    /// a deterministic set of sample evaluations (with the consistent
    /// constant assignment c=2, eps0=1/2, mu0=1/2) may prove nonzeroness.
    pub fn is_zero(&self) -> Zeroness {
        if self.is_literally_zero() {
            return Zeroness::ProvenZero;
        }
        if self.contains_opaque() {
            return Zeroness::Unknown;
        }
        let expr = self.to_expr();
        let vars: Vec<String> = expr.variables().into_iter().collect();
        let consts = super::ConstVals { c: 2.0, eps0: 0.5, mu0: 0.5 };
        for round in 0..SAMPLE_ROUNDS {
            let mut bindings = BTreeMap::new();
            for (i, v) in vars.iter().enumerate() {
                bindings.insert(v.clone(), SAMPLE_VALUES[(i * 7 + round * 5) % 16]);
            }
            if let Ok(val) = expr.eval(&bindings, &consts) {
                if val.is_finite() && val.abs() > 1e-9 {
                    return Zeroness::ProvenNonzero;
                }
            }
        }
        Zeroness::Unknown
    }

    /// Rebuilds an expression tree from the normal form. Deterministic:
    /// terms and factors are emitted in their canonical order.
    pub fn to_expr(&self) -> ScalarExpr {
        if self.terms.is_empty() {
            return ScalarExpr::zero();
        }
        let mut acc: Option<ScalarExpr> = None;
        for term in &self.terms {
            let positive = !term.coef.is_negative();
            let body = term_to_expr(term);
            acc = Some(match (acc, positive) {
                (None, true) => body,
                (None, false) => -body,
                (Some(a), true) => a + body,
                (Some(a), false) => a - body,
            });
        }
        acc.unwrap()
    }
}

const SAMPLE_ROUNDS: usize = 4;

/// Awkward, pairwise-distinct sample coordinates; strides 7 and 5 are
/// coprime with 16 so distinct variables get distinct values each round.
const SAMPLE_VALUES: [f64; 16] = [
    0.537, -1.289, 2.113, -0.764, 1.831, -2.457, 0.293, 1.177, -0.611, 2.719, -1.953,
    0.871, -0.149, 1.523, -2.081, 0.419,
];

fn term_to_expr(term: &Term) -> ScalarExpr {
    let coef = term.coef.abs();
    let mut num: Option<ScalarExpr> = None;
    let mut den: Option<ScalarExpr> = None;
    let numer = coef.numer().clone();
    let denom = coef.denom().clone();
    if !numer.is_one() || term.factors.iter().all(|(_, e)| *e < 0) {
        num = Some(ScalarExpr::rational(BigRational::from_integer(numer)));
    }
    if !denom.is_one() {
        den = Some(ScalarExpr::rational(BigRational::from_integer(denom)));
    }
    for (atom, e) in &term.factors {
        let base = atom_to_expr(atom);
        if *e > 0 {
            let f = base.pow(*e);
            num = Some(match num {
                None => f,
                Some(n) => n * f,
            });
        } else {
            let f = base.pow(-*e);
            den = Some(match den {
                None => f,
                Some(d) => d * f,
            });
        }
    }
    let num = num.unwrap_or_else(ScalarExpr::one);
    match den {
        None => num,
        Some(d) => num / d,
    }
}

fn atom_to_expr(atom: &Atom) -> ScalarExpr {
    match atom {
        Atom::Const(k) => ScalarExpr::constant(*k),
        Atom::Var(v) => ScalarExpr::var(v.clone()),
        Atom::Fun(f, arg) => ScalarExpr::fun(*f, arg.to_expr()),
        Atom::Opaque { name, args, derivs } => ScalarExpr(std::sync::Arc::new(Node::Opaque(
            OpaqueFn {
                name: name.clone(),
                args: args.iter().map(|a| a.to_expr()).collect(),
                derivs: derivs.clone(),
            },
        ))),
        Atom::SumPow(s) => s.to_expr(),
    }
}

pub(crate) fn normalize(e: &ScalarExpr) -> NormalForm {
    match e.node() {
        Node::Rat(r) => NormalForm::rat(r.clone()),
        Node::Const(PhysConst::Mu0) => NormalForm {
            // mu0 = 1/(c^2 eps0); this single orientation makes
            // c^2*mu0*eps0 collapse to 1 during collection.
            terms: vec![Term {
                factors: vec![(Atom::Const(PhysConst::C), -2), (Atom::Const(PhysConst::Eps0), -1)],
                coef: BigRational::one(),
            }],
        },
        Node::Const(k) => NormalForm::atom(Atom::Const(*k)),
        Node::Var(v) => NormalForm::atom(Atom::Var(v.clone())),
        Node::Neg(a) => nf_neg(normalize(a)),
        Node::Add(a, b) => nf_add(normalize(a), normalize(b)),
        Node::Sub(a, b) => nf_add(normalize(a), nf_neg(normalize(b))),
        Node::Mul(a, b) => nf_mul(&normalize(a), &normalize(b)),
        Node::Div(a, b) => nf_mul(&normalize(a), &nf_inv(&normalize(b))),
        Node::Pow(a, n) => nf_int_pow(&normalize(a), *n),
        Node::Fun(f, a) => fun_nf(*f, normalize(a)),
        Node::Opaque(op) => NormalForm::atom(Atom::Opaque {
            name: op.name.clone(),
            args: op.args.iter().map(normalize).collect(),
            derivs: op.derivs.clone(),
        }),
    }
}

fn nf_neg(mut a: NormalForm) -> NormalForm {
    for t in &mut a.terms {
        t.coef = -t.coef.clone();
    }
    a
}

fn nf_scale(mut a: NormalForm, s: &BigRational) -> NormalForm {
    if s.is_zero() {
        return NormalForm::zero();
    }
    for t in &mut a.terms {
        t.coef *= s;
    }
    a
}

fn nf_add(a: NormalForm, b: NormalForm) -> NormalForm {
    let mut terms = a.terms;
    terms.extend(b.terms);
    terms.sort_by(|x, y| x.factors.cmp(&y.factors));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.factors == t.factors => {
                last.coef += t.coef;
                if last.coef.is_zero() {
                    out.pop();
                }
            }
            _ => out.push(t),
        }
    }
    NormalForm { terms: out }
}

fn nf_mul(a: &NormalForm, b: &NormalForm) -> NormalForm {
    let mut acc = NormalForm::zero();
    for s in &a.terms {
        for t in &b.terms {
            let mut factors = s.factors.clone();
            factors.extend(t.factors.iter().cloned());
            acc = nf_add(acc, reduce_term(s.coef.clone() * t.coef.clone(), factors));
        }
    }
    acc
}

fn nf_int_pow(a: &NormalForm, n: i32) -> NormalForm {
    if n == 0 {
        return NormalForm::one();
    }
    let base = if n < 0 { nf_inv(a) } else { a.clone() };
    let mut acc = NormalForm::one();
    for _ in 0..n.unsigned_abs() {
        acc = nf_mul(&acc, &base);
    }
    acc
}

/// Inverts a normal form. A single term inverts factor-by-factor; a genuine
/// sum becomes a monic `SumPow` atom with exponent -1.
///
/// Panics when the normal form is zero; well-formed inputs cannot reach this
/// because division by provably-zero expressions is rejected at construction.
fn nf_inv(a: &NormalForm) -> NormalForm {
    if a.terms.is_empty() {
        panic!("division by an expression that normalizes to zero");
    }
    if a.terms.len() == 1 {
        let t = &a.terms[0];
        let factors: Vec<(Atom, i32)> =
            t.factors.iter().map(|(atom, e)| (atom.clone(), -e)).collect();
        return reduce_term(t.coef.recip(), factors);
    }
    let lead = a.terms[0].coef.clone();
    let monic = nf_scale(a.clone(), &lead.recip());
    NormalForm {
        terms: vec![Term {
            factors: vec![(Atom::SumPow(monic), -1)],
            coef: lead.recip(),
        }],
    }
}

fn fun_nf(f: Func, arg: NormalForm) -> NormalForm {
    if arg.is_literally_zero() {
        return match f {
            Func::Sin | Func::Sinh => NormalForm::zero(),
            Func::Cos | Func::Cosh | Func::Exp => NormalForm::one(),
        };
    }
    let flip = arg.leading_coef_negative();
    let arg = if flip { nf_neg(arg) } else { arg };
    match (f, flip) {
        (Func::Sin | Func::Sinh, true) => nf_neg(NormalForm::atom(Atom::Fun(f, arg))),
        (Func::Exp, true) => NormalForm {
            terms: vec![Term {
                factors: vec![(Atom::Fun(Func::Exp, arg), -1)],
                coef: BigRational::one(),
            }],
        },
        _ => NormalForm::atom(Atom::Fun(f, arg)),
    }
}

/// Merges a raw factor list into canonical shape and applies the in-term
/// rewrites (exp fusion, positive sum powers, Pythagorean reductions). The
/// reductions can introduce sums, hence the result is a full normal form.
fn reduce_term(coef: BigRational, mut factors: Vec<(Atom, i32)>) -> NormalForm {
    if coef.is_zero() {
        return NormalForm::zero();
    }
    factors.sort_by(|x, y| x.0.cmp(&y.0));
    let mut merged: Vec<(Atom, i32)> = Vec::with_capacity(factors.len());
    for (atom, e) in factors {
        match merged.last_mut() {
            Some((last, le)) if *last == atom => {
                *le += e;
                if *le == 0 {
                    merged.pop();
                }
            }
            _ => merged.push((atom, e)),
        }
    }

    // Fuse exp factors: exp(u)^a * exp(v)^b = exp(a*u + b*v).
    let mut exp_arg = NormalForm::zero();
    let mut fused = false;
    merged.retain(|(atom, e)| {
        if let Atom::Fun(Func::Exp, u) = atom {
            exp_arg = nf_add(
                std::mem::replace(&mut exp_arg, NormalForm::zero()),
                nf_scale(u.clone(), &BigRational::from_integer((*e).into())),
            );
            fused = true;
            false
        } else {
            true
        }
    });
    if fused && !exp_arg.is_literally_zero() {
        let flip = exp_arg.leading_coef_negative();
        let (arg, e) = if flip { (nf_neg(exp_arg), -1) } else { (exp_arg, 1) };
        let atom = Atom::Fun(Func::Exp, arg);
        let pos = merged.binary_search_by(|(a, _)| a.cmp(&atom)).unwrap_or_else(|p| p);
        merged.insert(pos, (atom, e));
    }

    // Expand positive powers of inverted sums (arising from nested division)
    // and reduce even powers of cos/cosh through the Pythagorean identities.
    let mut multipliers: Vec<NormalForm> = Vec::new();
    let mut kept: Vec<(Atom, i32)> = Vec::with_capacity(merged.len());
    for (atom, e) in merged {
        match &atom {
            Atom::SumPow(s) if e > 0 => {
                multipliers.push(nf_int_pow(s, e));
            }
            Atom::Fun(Func::Cos, u) if e >= 2 => {
                let k = e / 2;
                let sin2 = NormalForm {
                    terms: vec![Term {
                        factors: vec![(Atom::Fun(Func::Sin, u.clone()), 2)],
                        coef: BigRational::one(),
                    }],
                };
                multipliers.push(nf_int_pow(&nf_add(NormalForm::one(), nf_neg(sin2)), k));
                if e % 2 != 0 {
                    kept.push((atom, 1));
                }
            }
            Atom::Fun(Func::Cosh, u) if e >= 2 => {
                let k = e / 2;
                let sinh2 = NormalForm {
                    terms: vec![Term {
                        factors: vec![(Atom::Fun(Func::Sinh, u.clone()), 2)],
                        coef: BigRational::one(),
                    }],
                };
                multipliers.push(nf_int_pow(&nf_add(NormalForm::one(), sinh2), k));
                if e % 2 != 0 {
                    kept.push((atom, 1));
                }
            }
            _ => kept.push((atom, e)),
        }
    }
    let mut out = NormalForm { terms: vec![Term { factors: kept, coef }] };
    for m in multipliers {
        out = nf_mul(&out, &m);
    }
    out
}

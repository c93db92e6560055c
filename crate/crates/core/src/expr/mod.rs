//! Exact scalar expressions.
//!
//! [`ScalarExpr`] is an immutable expression tree over arbitrary-precision
//! rationals, the named constants `c`, `eps0`, `mu0`, `pi`, coordinate
//! variables, the elementary functions `sin`, `cos`, `exp`, `sinh`, `cosh`,
//! integer powers, and opaque function symbols such as `E1(x0,x1,x2,x3)`.
//! Opaque symbols carry unevaluated partial-derivative tags; the tags are
//! kept sorted because mixed partials commute.
//!
//! Zero testing is three-valued, see [`Zeroness`]. [`ScalarExpr::normalize`]
//! produces an expanded sum-of-products normal form with a deliberately
//! small rewrite set: constant folding, `mu0 -> 1/(c^2*eps0)` (so that
//! `c^2*mu0*eps0` collapses to `1`), the Pythagorean identities
//! `sin^2 + cos^2 = 1` and `cosh^2 - sinh^2 = 1`, and fusion of `exp`
//! factors. `ProvenZero` is reported only when the normal form is literally
//! empty, so the test is sound but not complete.

mod display;
mod normal;
pub(crate) mod parse;

pub use normal::NormalForm;
pub use parse::{parse_expr, ParseError};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

/// Three-valued outcome of a zero test.
///
/// `ProvenZero` means the normal form is literally zero and is never reported
/// for an expression that is nonzero as a function. `ProvenNonzero` is backed
/// by a sample point with |value| > 1e-9 and requires the expression to be
/// free of opaque symbols. Everything else is `Unknown`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Zeroness {
    ProvenZero,
    ProvenNonzero,
    Unknown,
}

impl Zeroness {
    pub fn is_proven_zero(self) -> bool {
        self == Zeroness::ProvenZero
    }

    /// Combines verdicts about parts of a compound object that is zero iff
    /// every part is zero (e.g. the coefficients of a form).
    pub fn all<I: IntoIterator<Item = Zeroness>>(parts: I) -> Zeroness {
        let mut out = Zeroness::ProvenZero;
        for z in parts {
            match z {
                Zeroness::ProvenNonzero => return Zeroness::ProvenNonzero,
                Zeroness::Unknown => out = Zeroness::Unknown,
                Zeroness::ProvenZero => {}
            }
        }
        out
    }
}

/// The named physical constants understood by the kernel.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PhysConst {
    C,
    Eps0,
    Mu0,
    Pi,
}

impl PhysConst {
    pub fn name(self) -> &'static str {
        match self {
            PhysConst::C => "c",
            PhysConst::Eps0 => "eps0",
            PhysConst::Mu0 => "mu0",
            PhysConst::Pi => "pi",
        }
    }
}

/// Built-in elementary functions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sinh,
    Cosh,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub(crate) fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }
}

/// An opaque function symbol application, e.g. `Lambda(t, x1)`.
///
/// `derivs` holds 0-based argument positions of accumulated partial
/// derivatives, sorted ascending with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpaqueFn {
    pub name: String,
    pub args: Vec<ScalarExpr>,
    pub derivs: Vec<u32>,
}

#[derive(PartialEq, Eq, Debug)]
pub(crate) enum Node {
    Rat(BigRational),
    Const(PhysConst),
    Var(String),
    Neg(ScalarExpr),
    Add(ScalarExpr, ScalarExpr),
    Sub(ScalarExpr, ScalarExpr),
    Mul(ScalarExpr, ScalarExpr),
    Div(ScalarExpr, ScalarExpr),
    Pow(ScalarExpr, i32),
    Fun(Func, ScalarExpr),
    Opaque(OpaqueFn),
}

/// An immutable exact scalar expression.
///
/// Cloning is cheap (shared subtrees). Equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarExpr(Arc<Node>);

/// Numeric values for the physical constants used by [`ScalarExpr::eval`].
///
/// `pi` always evaluates to `std::f64::consts::PI`. The default is the
/// normalized system `c = eps0 = mu0 = 1`.
#[derive(Clone, Copy, Debug)]
pub struct ConstVals {
    pub c: f64,
    pub eps0: f64,
    pub mu0: f64,
}

impl Default for ConstVals {
    fn default() -> Self {
        ConstVals { c: 1.0, eps0: 1.0, mu0: 1.0 }
    }
}

impl ConstVals {
    /// SI values (exact c, 2018 CODATA eps0; mu0 from c^2*mu0*eps0 = 1).
    pub fn si() -> Self {
        let c = 299_792_458.0_f64;
        let eps0 = 8.854_187_812_8e-12_f64;
        ConstVals { c, eps0, mu0: 1.0 / (c * c * eps0) }
    }
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("opaque symbol `{0}` cannot be evaluated")]
    OpaqueSymbol(String),
    #[error("division by zero at evaluation point")]
    DivisionByZero,
}

fn rat_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ScalarExpr {
    fn new(node: Node) -> Self {
        ScalarExpr(Arc::new(node))
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0
    }

    pub fn int(n: i64) -> Self {
        Self::new(Node::Rat(rat_i64(n)))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(Node::Rat(r))
    }

    /// The exact fraction `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(Node::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn constant(k: PhysConst) -> Self {
        Self::new(Node::Const(k))
    }

    pub fn c() -> Self {
        Self::constant(PhysConst::C)
    }

    pub fn eps0() -> Self {
        Self::constant(PhysConst::Eps0)
    }

    pub fn mu0() -> Self {
        Self::constant(PhysConst::Mu0)
    }

    pub fn pi() -> Self {
        Self::constant(PhysConst::Pi)
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::new(Node::Var(name.into()))
    }

    /// An opaque symbol applied to the named coordinates, e.g.
    /// `ScalarExpr::opaque("E1", &["x0", "x1"])`.
    pub fn opaque(name: impl Into<String>, arg_names: &[&str]) -> Self {
        let args = arg_names.iter().map(|a| ScalarExpr::var(*a)).collect();
        Self::opaque_args(name, args)
    }

    pub fn opaque_args(name: impl Into<String>, args: Vec<ScalarExpr>) -> Self {
        Self::new(Node::Opaque(OpaqueFn { name: name.into(), args, derivs: Vec::new() }))
    }

    /// An opaque symbol carrying partial-derivative tags (0-based argument
    /// positions). Used by the parser to read back the `D[..](f)(..)`
    /// notation the printer emits; `derivs` is sorted to the canonical
    /// order differentiation produces.
    pub(crate) fn opaque_tagged(
        name: impl Into<String>,
        args: Vec<ScalarExpr>,
        mut derivs: Vec<u32>,
    ) -> Self {
        derivs.sort_unstable();
        Self::new(Node::Opaque(OpaqueFn { name: name.into(), args, derivs }))
    }

    pub fn fun(f: Func, arg: ScalarExpr) -> Self {
        Self::new(Node::Fun(f, arg))
    }

    pub fn sin(self) -> Self {
        Self::fun(Func::Sin, self)
    }

    pub fn cos(self) -> Self {
        Self::fun(Func::Cos, self)
    }

    pub fn exp(self) -> Self {
        Self::fun(Func::Exp, self)
    }

    pub fn sinh(self) -> Self {
        Self::fun(Func::Sinh, self)
    }

    pub fn cosh(self) -> Self {
        Self::fun(Func::Cosh, self)
    }

    /// Integer power. `pow(0)` is the constant 1.
    pub fn pow(self, n: i32) -> Self {
        match n {
            0 => Self::one(),
            1 => self,
            _ => {
                if let Node::Rat(r) = self.node() {
                    if n > 0 {
                        return Self::rational(pow_rat(r, n));
                    }
                    if !r.is_zero() {
                        return Self::rational(pow_rat(r, n));
                    }
                    panic!("zero raised to a negative power");
                }
                Self::new(Node::Pow(self, n))
            }
        }
    }

    pub fn is_literal_zero(&self) -> bool {
        matches!(self.node(), Node::Rat(r) if r.is_zero())
    }

    pub fn is_literal_one(&self) -> bool {
        matches!(self.node(), Node::Rat(r) if r.is_one())
    }

    /// Whether the root operation is a sum or difference, i.e. whether the
    /// printed expression needs parentheses when juxtaposed with a factor.
    pub fn is_sum_root(&self) -> bool {
        matches!(self.node(), Node::Add(_, _) | Node::Sub(_, _))
    }

    /// Split a syntactically negation-rooted expression into (true,
    /// magnitude); anything else returns (false, self). Used by display code
    /// to join terms with `-` instead of `+ -`.
    pub fn split_leading_sign(&self) -> (bool, ScalarExpr) {
        match self.node() {
            Node::Neg(a) => (true, a.clone()),
            Node::Rat(r) if r.is_negative() => (true, Self::rational(-r.clone())),
            Node::Mul(a, b) => {
                let (neg, mag) = a.split_leading_sign();
                if neg {
                    (true, mag * b.clone())
                } else {
                    (false, self.clone())
                }
            }
            Node::Div(a, b) => {
                let (neg, mag) = a.split_leading_sign();
                if neg {
                    (true, mag / b.clone())
                } else {
                    (false, self.clone())
                }
            }
            _ => (false, self.clone()),
        }
    }

    /// Partial derivative with respect to the variable `var`.
    ///
    /// Any other variable is held constant. Opaque symbols follow the chain
    /// rule over their argument list and gain sorted derivative tags.
    pub fn diff(&self, var: &str) -> ScalarExpr {
        match self.node() {
            Node::Rat(_) | Node::Const(_) => Self::zero(),
            Node::Var(v) => {
                if v == var {
                    Self::one()
                } else {
                    Self::zero()
                }
            }
            Node::Neg(a) => -a.diff(var),
            Node::Add(a, b) => a.diff(var) + b.diff(var),
            Node::Sub(a, b) => a.diff(var) - b.diff(var),
            Node::Mul(a, b) => a.diff(var) * b.clone() + a.clone() * b.diff(var),
            Node::Div(a, b) => {
                // (a/b)' = a'/b - a*b'/b^2
                let da = a.diff(var);
                let db = b.diff(var);
                if db.is_literal_zero() {
                    return da / b.clone();
                }
                da / b.clone() - a.clone() * db / b.clone().pow(2)
            }
            Node::Pow(a, n) => {
                let da = a.diff(var);
                if da.is_literal_zero() {
                    return Self::zero();
                }
                Self::int(*n as i64) * a.clone().pow(n - 1) * da
            }
            Node::Fun(f, a) => {
                let da = a.diff(var);
                if da.is_literal_zero() {
                    return Self::zero();
                }
                let outer = match f {
                    Func::Sin => a.clone().cos(),
                    Func::Cos => -a.clone().sin(),
                    Func::Exp => a.clone().exp(),
                    Func::Sinh => a.clone().cosh(),
                    Func::Cosh => a.clone().sinh(),
                };
                outer * da
            }
            Node::Opaque(op) => {
                let mut sum = Self::zero();
                for (i, arg) in op.args.iter().enumerate() {
                    let darg = arg.diff(var);
                    if darg.is_literal_zero() {
                        continue;
                    }
                    let mut derivs = op.derivs.clone();
                    derivs.push(i as u32);
                    derivs.sort_unstable();
                    let tagged = Self::new(Node::Opaque(OpaqueFn {
                        name: op.name.clone(),
                        args: op.args.clone(),
                        derivs,
                    }));
                    sum = sum + tagged * darg;
                }
                sum
            }
        }
    }

    /// Simultaneous substitution of variables by expressions.
    pub fn substitute(&self, map: &BTreeMap<String, ScalarExpr>) -> ScalarExpr {
        match self.node() {
            Node::Rat(_) | Node::Const(_) => self.clone(),
            Node::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Node::Neg(a) => -a.substitute(map),
            Node::Add(a, b) => a.substitute(map) + b.substitute(map),
            Node::Sub(a, b) => a.substitute(map) - b.substitute(map),
            Node::Mul(a, b) => a.substitute(map) * b.substitute(map),
            Node::Div(a, b) => a.substitute(map) / b.substitute(map),
            Node::Pow(a, n) => a.substitute(map).pow(*n),
            Node::Fun(f, a) => Self::fun(*f, a.substitute(map)),
            Node::Opaque(op) => Self::new(Node::Opaque(OpaqueFn {
                name: op.name.clone(),
                args: op.args.iter().map(|a| a.substitute(map)).collect(),
                derivs: op.derivs.clone(),
            })),
        }
    }

    /// All variable names appearing in the expression.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            Node::Rat(_) | Node::Const(_) => {}
            Node::Var(v) => {
                out.insert(v.clone());
            }
            Node::Neg(a) | Node::Pow(a, _) | Node::Fun(_, a) => a.collect_vars(out),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Node::Opaque(op) => {
                for a in &op.args {
                    a.collect_vars(out);
                }
            }
        }
    }

    pub fn contains_opaque(&self) -> bool {
        match self.node() {
            Node::Rat(_) | Node::Const(_) | Node::Var(_) => false,
            Node::Neg(a) | Node::Pow(a, _) | Node::Fun(_, a) => a.contains_opaque(),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.contains_opaque() || b.contains_opaque()
            }
            Node::Opaque(_) => true,
        }
    }

    /// Expanded, collected normal form. See the module docs for the rewrite
    /// set. Panics if a denominator normalizes to zero; the parser rejects
    /// provably-zero denominators up front.
    pub fn normalize(&self) -> NormalForm {
        normal::normalize(self)
    }

    /// Sound three-valued zero test on the normal form.
    pub fn is_zero(&self) -> Zeroness {
        self.normalize().is_zero()
    }

    /// Numeric evaluation at a point. `vars` binds coordinate variables,
    /// `consts` binds `c`, `eps0`, `mu0`; `pi` is built in.
    pub fn eval(
        &self,
        vars: &BTreeMap<String, f64>,
        consts: &ConstVals,
    ) -> Result<f64, EvalError> {
        match self.node() {
            Node::Rat(r) => Ok(rat_to_f64(r)),
            Node::Const(k) => Ok(match k {
                PhysConst::C => consts.c,
                PhysConst::Eps0 => consts.eps0,
                PhysConst::Mu0 => consts.mu0,
                PhysConst::Pi => std::f64::consts::PI,
            }),
            Node::Var(v) => vars
                .get(v)
                .copied()
                .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
            Node::Neg(a) => Ok(-a.eval(vars, consts)?),
            Node::Add(a, b) => Ok(a.eval(vars, consts)? + b.eval(vars, consts)?),
            Node::Sub(a, b) => Ok(a.eval(vars, consts)? - b.eval(vars, consts)?),
            Node::Mul(a, b) => Ok(a.eval(vars, consts)? * b.eval(vars, consts)?),
            Node::Div(a, b) => {
                let d = b.eval(vars, consts)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                Ok(a.eval(vars, consts)? / d)
            }
            Node::Pow(a, n) => {
                let base = a.eval(vars, consts)?;
                if base == 0.0 && *n < 0 {
                    return Err(EvalError::DivisionByZero);
                }
                Ok(base.powi(*n))
            }
            Node::Fun(f, a) => {
                let x = a.eval(vars, consts)?;
                Ok(match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                })
            }
            Node::Opaque(op) => Err(EvalError::OpaqueSymbol(op.name.clone())),
        }
    }
}

pub(crate) fn pow_rat(r: &BigRational, n: i32) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::one();
    for _ in 0..n.unsigned_abs() {
        acc *= r;
    }
    if n < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    // Good enough for sampling: fall back to string parsing only for
    // magnitudes beyond i128.
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
        return n as f64 / d as f64;
    }
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl std::ops::Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        match self.node() {
            Node::Rat(r) => ScalarExpr::rational(-r.clone()),
            Node::Neg(a) => a.clone(),
            _ => ScalarExpr::new(Node::Neg(self)),
        }
    }
}

impl std::ops::Add for ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: ScalarExpr) -> ScalarExpr {
        if self.is_literal_zero() {
            return rhs;
        }
        if rhs.is_literal_zero() {
            return self;
        }
        if let (Node::Rat(a), Node::Rat(b)) = (self.node(), rhs.node()) {
            return ScalarExpr::rational(a + b);
        }
        ScalarExpr::new(Node::Add(self, rhs))
    }
}

impl std::ops::Sub for ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: ScalarExpr) -> ScalarExpr {
        if rhs.is_literal_zero() {
            return self;
        }
        if self.is_literal_zero() {
            return -rhs;
        }
        if let (Node::Rat(a), Node::Rat(b)) = (self.node(), rhs.node()) {
            return ScalarExpr::rational(a - b);
        }
        ScalarExpr::new(Node::Sub(self, rhs))
    }
}

impl std::ops::Mul for ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: ScalarExpr) -> ScalarExpr {
        if self.is_literal_zero() || rhs.is_literal_zero() {
            return ScalarExpr::zero();
        }
        if self.is_literal_one() {
            return rhs;
        }
        if rhs.is_literal_one() {
            return self;
        }
        if let (Node::Rat(a), Node::Rat(b)) = (self.node(), rhs.node()) {
            return ScalarExpr::rational(a * b);
        }
        ScalarExpr::new(Node::Mul(self, rhs))
    }
}

impl std::ops::Div for ScalarExpr {
    type Output = ScalarExpr;
    /// Panics if `rhs` is the literal zero. Division by an expression whose
    /// normal form is zero panics later, inside `normalize`.
    fn div(self, rhs: ScalarExpr) -> ScalarExpr {
        if rhs.is_literal_zero() {
            panic!("division by zero");
        }
        if rhs.is_literal_one() {
            return self;
        }
        if self.is_literal_zero() {
            return ScalarExpr::zero();
        }
        if let (Node::Rat(a), Node::Rat(b)) = (self.node(), rhs.node()) {
            return ScalarExpr::rational(a / b);
        }
        ScalarExpr::new(Node::Div(self, rhs))
    }
}

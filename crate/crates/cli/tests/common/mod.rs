//! Shared machinery for the randomized suites: an exact multivariate
//! polynomial with its own calculus — so gauge-fixed constructions come
//! from independent arithmetic rather than the operators under test —
//! plus samplers for polynomial forms, opaque-coefficient forms, and
//! exact traveling-wave field states.
#![allow(dead_code)]

use maxform_core::em3::{constitutive_enforce, EmField3};
use maxform_core::expr::ScalarExpr;
use maxform_core::forms::{Chart, DifferentialForm};
use num_rational::Ratio;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A multivariate polynomial with exact rational coefficients over a fixed
/// variable list. Differentiation and antidifferentiation act directly on
/// the exponent vectors, independent of the expression engine.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    vars: Vec<&'static str>,
    /// Monomials as (coefficient, per-variable exponents), sorted by
    /// exponent vector with no zero coefficients and no duplicates.
    terms: Vec<(Ratio<i64>, Vec<u32>)>,
}

impl Poly {
    pub fn zero(vars: &[&'static str]) -> Self {
        Poly { vars: vars.to_vec(), terms: Vec::new() }
    }

    /// Up to `max_terms` monomials with coefficients in ±1..=4 and
    /// per-variable exponents at most 2.
    pub fn random(rng: &mut ChaCha8Rng, vars: &[&'static str], max_terms: usize) -> Self {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let magnitude = rng.gen_range(1i64..=4);
            let coeff = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
            let exps: Vec<u32> = vars.iter().map(|_| rng.gen_range(0..=2)).collect();
            terms.push((Ratio::from_integer(coeff), exps));
        }
        Poly { vars: vars.to_vec(), terms }.canon()
    }

    fn canon(mut self) -> Self {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(Ratio<i64>, Vec<u32>)> = Vec::new();
        for (c, e) in self.terms {
            match merged.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| *c != Ratio::from_integer(0));
        Poly { vars: self.vars, terms: merged }
    }

    fn var_index(&self, var: &str) -> usize {
        self.vars.iter().position(|v| *v == var).expect("variable not in this polynomial ring")
    }

    pub fn diff(&self, var: &str) -> Self {
        let i = self.var_index(var);
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| e[i] > 0)
            .map(|(c, e)| {
                let mut lowered = e.clone();
                lowered[i] -= 1;
                (c * Ratio::from_integer(i64::from(e[i])), lowered)
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }.canon()
    }

    /// The antiderivative in `var` with zero constant of integration.
    pub fn antiderivative(&self, var: &str) -> Self {
        let i = self.var_index(var);
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| {
                let mut raised = e.clone();
                raised[i] += 1;
                (c / Ratio::from_integer(i64::from(raised[i])), raised)
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }.canon()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "polynomials live over different rings");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Poly { vars: self.vars.clone(), terms }.canon()
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(c, e)| (-c, e.clone())).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The polynomial with each variable replaced by the paired expression.
    pub fn eval_at(&self, args: &[ScalarExpr]) -> ScalarExpr {
        assert_eq!(args.len(), self.vars.len(), "one argument per variable");
        let mut acc = ScalarExpr::zero();
        for (c, exps) in &self.terms {
            let mut term = ScalarExpr::ratio(*c.numer(), *c.denom());
            for (arg, &k) in args.iter().zip(exps) {
                if k > 0 {
                    term = term * arg.clone().pow(k as i32);
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn to_expr(&self) -> ScalarExpr {
        let args: Vec<ScalarExpr> = self.vars.iter().map(|v| ScalarExpr::var(*v)).collect();
        self.eval_at(&args)
    }
}

/// All strictly increasing multi-indices of length `k` drawn from `0..n`.
pub fn multi_indices(n: u8, k: u8) -> Vec<Vec<u8>> {
    fn rec(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, usize::from(k), 0, &mut Vec::new(), &mut out);
    out
}

/// A form with random polynomial coefficients over the chart variables;
/// each basis element is populated with probability 0.7.
pub fn random_form(rng: &mut ChaCha8Rng, chart: Chart, degree: u8) -> DifferentialForm {
    let vars = chart.variables();
    let mut f = DifferentialForm::zero(chart, degree);
    for idx in multi_indices(chart.dim(), degree) {
        if rng.gen_bool(0.7) {
            let coeff = Poly::random(rng, &vars, 3).to_expr();
            f = f.add(&DifferentialForm::from_terms(chart, degree, [(idx, coeff)]));
        }
    }
    f
}

/// A form whose coefficients are opaque functions of every chart variable,
/// one fresh symbol per basis element.
pub fn opaque_form(chart: Chart, degree: u8, prefix: &str) -> DifferentialForm {
    let vars = chart.variables();
    let terms = multi_indices(chart.dim(), degree)
        .into_iter()
        .enumerate()
        .map(|(i, idx)| (idx, ScalarExpr::opaque(format!("{prefix}{i}"), &vars)));
    DifferentialForm::from_terms(chart, degree, terms)
}

/// One exact traveling-wave state on the 3D chart: for distinct axes p, q
/// and a polynomial profile g, E = g(xₚ − ct)dx^q and B = (1/c)g dx^p∧dx^q,
/// with the constitutive D and H filled in. Satisfies all four field
/// equations with no sources.
pub fn traveling_wave3(rng: &mut ChaCha8Rng) -> EmField3 {
    let chart = Chart::Euclidean3;
    let p = rng.gen_range(0..3u8);
    let q = (p + rng.gen_range(1..3u8)) % 3;
    let g = Poly::random(rng, &["u"], 3);
    let u = ScalarExpr::var(chart.coord_name(p)) - ScalarExpr::c() * ScalarExpr::var("t");
    let profile = g.eval_at(std::slice::from_ref(&u));

    let e = DifferentialForm::from_terms(chart, 1, [(vec![q], profile.clone())]);
    let b_coeff = profile * ScalarExpr::c().pow(-1);
    let b = if p < q {
        DifferentialForm::from_terms(chart, 2, [(vec![p, q], b_coeff)])
    } else {
        DifferentialForm::from_terms(chart, 2, [(vec![q, p], -b_coeff)])
    };

    let z = |k| DifferentialForm::zero(chart, k);
    constitutive_enforce(&EmField3 { e, h: z(1), d: z(2), b, j: z(2), rho: z(3) })
}

/// A superposition of one or two traveling waves: still an exact
/// source-free solution by linearity.
pub fn random_vacuum_field3(rng: &mut ChaCha8Rng) -> EmField3 {
    let first = traveling_wave3(rng);
    if rng.gen_bool(0.5) {
        return first;
    }
    let second = traveling_wave3(rng);
    constitutive_enforce(&EmField3 {
        e: first.e.add(&second.e),
        h: first.h.add(&second.h),
        d: first.d.add(&second.d),
        b: first.b.add(&second.b),
        j: first.j,
        rho: first.rho,
    })
}

/// A generic field state: random polynomial E, B, J, ρ with the
/// constitutive D and H. Almost surely violates the field equations.
pub fn random_field3(rng: &mut ChaCha8Rng) -> EmField3 {
    let chart = Chart::Euclidean3;
    let f = EmField3 {
        e: random_form(rng, chart, 1),
        h: DifferentialForm::zero(chart, 1),
        d: DifferentialForm::zero(chart, 2),
        b: random_form(rng, chart, 2),
        j: random_form(rng, chart, 2),
        rho: random_form(rng, chart, 3),
    };
    constitutive_enforce(&f)
}

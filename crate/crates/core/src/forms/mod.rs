//! Differential forms on flat charts.
//!
//! A [`DifferentialForm`] is a sparse map from strictly increasing
//! multi-indices to [`ScalarExpr`] coefficients, tagged with a [`Chart`] and a
//! degree. The two charts are 3-dimensional Euclidean space (coordinates
//! `x1,x2,x3`, with `t` as an external parameter) and 4-dimensional flat
//! spacetime (coordinates `x0..x3`, metric `(+,-,-,-)`).
//!
//! Operations: wedge product, exterior derivative, Hodge star (hard-coded
//! basis tables per chart, cross-checked in tests against the defining
//! relation α∧∗β = g(α,β)·dvol), the codifferential δ = ∗d∗ applied
//! literally with no extra degree-dependent sign, the commutator Laplacian
//! dδ−δd (classical componentwise Laplacian at degree 0, where the
//! commutator picks up a sign), linear pullback, and the coefficient-wise
//! `t`-derivative for 3D time-parametrized families.

use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{ScalarExpr, Zeroness};

mod document;
mod hodge;
mod linear;
mod literal;

pub use document::{DocError, FormDoc, TermDoc};
pub use linear::{boost_beta, boost_gamma, boost_x, LinearMap};
pub use literal::parse_form;

/// A flat chart: dimension, coordinate names, and diagonal metric signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    /// 3-dimensional Euclidean space, coordinates `x1,x2,x3`, metric
    /// `(+,+,+)`. Time `t` is an external parameter of coefficients, not a
    /// coordinate.
    Euclidean3,
    /// 4-dimensional flat spacetime, coordinates `x0,x1,x2,x3` with
    /// `x0 = c*t`, metric `(+,-,-,-)`.
    Minkowski4,
}

impl Chart {
    pub fn dim(self) -> u8 {
        match self {
            Chart::Euclidean3 => 3,
            Chart::Minkowski4 => 4,
        }
    }

    /// Coordinate names, in orientation order.
    pub fn coords(self) -> &'static [&'static str] {
        match self {
            Chart::Euclidean3 => &["x1", "x2", "x3"],
            Chart::Minkowski4 => &["x0", "x1", "x2", "x3"],
        }
    }

    pub fn coord_name(self, i: u8) -> &'static str {
        self.coords()[usize::from(i)]
    }

    /// Diagonal entry g^{ii} of the (inverse) metric; ±1 on these charts.
    pub fn metric_sign(self, i: u8) -> i8 {
        match self {
            Chart::Euclidean3 => 1,
            Chart::Minkowski4 => {
                if i == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Lower-case chart name as used in documents and CLI flags.
    pub fn name(self) -> &'static str {
        match self {
            Chart::Euclidean3 => "euclidean3",
            Chart::Minkowski4 => "minkowski4",
        }
    }

    pub fn parse_name(s: &str) -> Option<Chart> {
        match s {
            "euclidean3" => Some(Chart::Euclidean3),
            "minkowski4" => Some(Chart::Minkowski4),
            _ => None,
        }
    }

    /// Variables admitted in coefficient expressions on this chart: the
    /// chart coordinates plus the external parameter `t`.
    pub fn variables(self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = self.coords().to_vec();
        v.push("t");
        v
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A differential form of fixed degree on a chart: a sparse map from
/// strictly increasing multi-indices (0-based coordinate positions) to
/// symbolic coefficients. An absent index means a zero coefficient; a
/// degree-0 form has at most the single key `[]`.
///
/// Forms are immutable values; every operation returns a new form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    chart: Chart,
    degree: u8,
    terms: BTreeMap<Vec<u8>, ScalarExpr>,
}

impl DifferentialForm {
    /// The zero form of the given degree.
    pub fn zero(chart: Chart, degree: u8) -> Self {
        assert!(
            degree <= chart.dim(),
            "degree {} exceeds chart dimension {}",
            degree,
            chart.dim()
        );
        DifferentialForm { chart, degree, terms: BTreeMap::new() }
    }

    /// A degree-0 form holding one scalar expression.
    pub fn scalar(chart: Chart, value: ScalarExpr) -> Self {
        let mut f = DifferentialForm::zero(chart, 0);
        f.insert(Vec::new(), value);
        f
    }

    /// The basis monomial dx^{i₁}∧…∧dx^{i_k} with coefficient 1. Indices
    /// must be strictly increasing.
    pub fn basis(chart: Chart, indices: &[u8]) -> Self {
        let mut f = DifferentialForm::zero(chart, indices.len() as u8);
        f.insert(indices.to_vec(), ScalarExpr::one());
        f
    }

    /// Build a form from (multi-index, coefficient) pairs. Panics if an
    /// index is out of range, not strictly increasing, of the wrong length,
    /// or repeated across pairs.
    pub fn from_terms<I>(chart: Chart, degree: u8, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, ScalarExpr)>,
    {
        let mut f = DifferentialForm::zero(chart, degree);
        for (idx, coeff) in terms {
            assert!(
                f.terms.insert(idx.clone(), ScalarExpr::zero()).is_none(),
                "duplicate multi-index {:?}",
                idx
            );
            f.terms.remove(&idx);
            f.insert(idx, coeff);
        }
        f
    }

    /// A 1-form from per-coordinate components `[w_0, …, w_{n-1}]`.
    pub fn one_form(chart: Chart, components: &[ScalarExpr]) -> Self {
        assert_eq!(components.len(), usize::from(chart.dim()));
        let mut f = DifferentialForm::zero(chart, 1);
        for (i, c) in components.iter().enumerate() {
            f.insert(vec![i as u8], c.clone());
        }
        f
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// The coefficient at a multi-index (zero if absent).
    pub fn coeff(&self, indices: &[u8]) -> ScalarExpr {
        self.terms.get(indices).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    /// The single coefficient of a degree-0 form.
    pub fn scalar_coeff(&self) -> ScalarExpr {
        assert_eq!(self.degree, 0, "scalar_coeff on a degree-{} form", self.degree);
        self.coeff(&[])
    }

    /// Iterate stored (multi-index, coefficient) pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &ScalarExpr)> {
        self.terms.iter()
    }

    fn insert(&mut self, idx: Vec<u8>, coeff: ScalarExpr) {
        assert_eq!(idx.len(), usize::from(self.degree), "multi-index length != degree");
        assert!(
            idx.windows(2).all(|w| w[0] < w[1]),
            "multi-index {:?} not strictly increasing",
            idx
        );
        assert!(
            idx.iter().all(|&i| i < self.chart.dim()),
            "multi-index {:?} out of range for {}",
            idx,
            self.chart
        );
        if !coeff.is_literal_zero() {
            self.terms.insert(idx, coeff);
        }
    }

    fn accumulate(&mut self, idx: Vec<u8>, coeff: ScalarExpr) {
        let sum = match self.terms.remove(&idx) {
            Some(old) => old + coeff,
            None => coeff,
        };
        self.insert(idx, sum);
    }

    fn assert_same_chart(&self, other: &Self) {
        assert_eq!(self.chart, other.chart, "chart mismatch: {} vs {}", self.chart, other.chart);
    }

    /// Apply a function to every coefficient, dropping literal zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        let mut out = DifferentialForm::zero(self.chart, self.degree);
        for (idx, c) in &self.terms {
            out.insert(idx.clone(), f(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_chart(other);
        assert_eq!(self.degree, other.degree, "degree mismatch in form addition");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.accumulate(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        if s.is_literal_zero() {
            return DifferentialForm::zero(self.chart, self.degree);
        }
        self.map_coeffs(|c| s.clone() * c.clone())
    }

    /// Wedge product. The sign comes from sorting the concatenated indices
    /// to increasing order; a repeated index annihilates the term. Beyond
    /// top degree the result is the canonical zero form (degree clamped to
    /// the chart dimension) so that algebraic identities stay total.
    pub fn wedge(&self, other: &Self) -> Self {
        self.assert_same_chart(other);
        let n = self.chart.dim();
        let sum = self.degree + other.degree;
        if sum > n {
            return DifferentialForm::zero(self.chart, n);
        }
        let mut out = DifferentialForm::zero(self.chart, sum);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                let mut idx: Vec<u8> = ia.iter().chain(ib.iter()).copied().collect();
                let Some(sign) = sort_sign(&mut idx) else { continue };
                let mut coeff = ca.clone() * cb.clone();
                if sign < 0 {
                    coeff = -coeff;
                }
                out.accumulate(idx, coeff);
            }
        }
        out
    }

    /// Exterior derivative: d(f·dx^I) = Σ_j ∂f/∂x^j dx^j ∧ dx^I. On a
    /// top-degree form the result is the canonical zero top-degree form
    /// (there is no higher degree to raise to).
    pub fn ext_d(&self) -> Self {
        let n = self.chart.dim();
        if self.degree == n {
            return DifferentialForm::zero(self.chart, n);
        }
        let mut out = DifferentialForm::zero(self.chart, self.degree + 1);
        for (idx, c) in &self.terms {
            for p in 0..n {
                if idx.contains(&p) {
                    continue;
                }
                let dc = c.diff(self.chart.coord_name(p));
                if dc.is_literal_zero() {
                    continue;
                }
                // dx^p moves past every index smaller than p.
                let pos = idx.iter().filter(|&&i| i < p).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, p);
                let signed = if pos % 2 == 1 { -dc } else { dc };
                out.accumulate(new_idx, signed);
            }
        }
        out
    }

    /// Hodge star, from the per-chart basis tables in [`hodge`].
    pub fn hodge(&self) -> Self {
        let n = self.chart.dim();
        let mut out = DifferentialForm::zero(self.chart, n - self.degree);
        for (idx, c) in &self.terms {
            let (sign, comp) = hodge::star_basis(self.chart, idx);
            let coeff = if sign < 0 { -c.clone() } else { c.clone() };
            out.accumulate(comp, coeff);
        }
        out
    }

    /// Codifferential δ = ∗d∗, applied literally with no extra sign.
    ///
    /// # Panics
    /// On degree-0 input; δ lowers degree by one.
    pub fn codiff(&self) -> Self {
        assert!(self.degree >= 1, "codifferential requires degree >= 1");
        self.hodge().ext_d().hodge()
    }

    /// Laplacian on the Euclidean chart: the commutator dδ−δd for degree
    /// ≥ 1, and the classical Σᵢ∂²/∂(xⁱ)² at degree 0, where the commutator
    /// would differ by a sign. With the literal δ = ∗d∗ the commutator
    /// anticommutes with ∗, so it acts componentwise as (−1)^{k+1}·Σᵢ∂² on
    /// degree k — in particular as the classical operator on 1-forms. At
    /// top degree the δd term vanishes identically (d of a top form is
    /// zero), leaving dδ.
    ///
    /// # Panics
    /// On a non-Euclidean chart.
    pub fn laplacian(&self) -> Self {
        assert_eq!(self.chart, Chart::Euclidean3, "laplacian requires the Euclidean chart");
        let n = self.chart.dim();
        if self.degree == 0 {
            let mut out = DifferentialForm::zero(self.chart, 0);
            for p in 0..n {
                let name = self.chart.coord_name(p);
                out.accumulate(Vec::new(), self.coeff(&[]).diff(name).diff(name));
            }
            return out;
        }
        let d_delta = self.codiff().ext_d();
        if self.degree == n {
            return d_delta;
        }
        d_delta.sub(&self.ext_d().codiff())
    }

    /// Coefficient-wise derivative with respect to the external time
    /// parameter `t` of a 3D time-parametrized family.
    ///
    /// # Panics
    /// On a non-3D chart, where `t` is not an external parameter.
    pub fn time_partial(&self) -> Self {
        assert_eq!(
            self.chart,
            Chart::Euclidean3,
            "time_partial requires the 3D chart (t is a coordinate function on spacetime)"
        );
        self.map_coeffs(|c| c.diff("t"))
    }

    /// Coefficient-wise partial derivative with respect to a variable.
    pub fn diff_coeffs(&self, var: &str) -> Self {
        self.map_coeffs(|c| c.diff(var))
    }

    /// Coefficient-wise simultaneous substitution.
    pub fn substitute(&self, map: &BTreeMap<String, ScalarExpr>) -> Self {
        self.map_coeffs(|c| c.substitute(map))
    }

    /// Pullback along the linear coordinate map x ↦ Lx: coefficients are
    /// composed with L and each basis covector transforms as
    /// dx^i ↦ Σ_j L_{ij} dx^j.
    ///
    /// # Panics
    /// If the map is on a different chart or provably singular.
    pub fn pullback(&self, map: &LinearMap) -> Self {
        assert_eq!(self.chart, map.chart(), "pullback chart mismatch");
        assert!(
            map.det().is_zero() != Zeroness::ProvenZero,
            "pullback along a provably singular linear map"
        );
        let n = self.chart.dim();
        let subst = map.coordinate_substitution();
        let mut out = DifferentialForm::zero(self.chart, self.degree);
        for (idx, c) in &self.terms {
            let composed = c.substitute(&subst);
            // Expand ∧_{i∈idx} (Σ_j L_{ij} dx^j) into basis monomials,
            // keeping factors in wedge order and sorting once at the end.
            let mut partial: Vec<(Vec<u8>, ScalarExpr)> =
                vec![(Vec::new(), composed)];
            for &i in idx {
                let mut next = Vec::new();
                for (prefix, coeff) in &partial {
                    for j in 0..n {
                        let entry = map.entry(i, j);
                        if entry.is_literal_zero() || prefix.contains(&j) {
                            continue;
                        }
                        let mut key = prefix.clone();
                        key.push(j);
                        next.push((key, coeff.clone() * entry.clone()));
                    }
                }
                partial = next;
            }
            for (mut key, coeff) in partial {
                let Some(sign) = sort_sign(&mut key) else { continue };
                let signed = if sign < 0 { -coeff } else { coeff };
                out.accumulate(key, signed);
            }
        }
        out
    }

    /// Combined zero verdict over all coefficients: provably zero only if
    /// every coefficient is, provably nonzero if any coefficient is.
    pub fn zeroness(&self) -> Zeroness {
        Zeroness::all(self.terms.values().map(|c| c.is_zero()))
    }

    pub fn is_provably_zero(&self) -> bool {
        self.zeroness() == Zeroness::ProvenZero
    }

    /// Normalize every coefficient and drop the ones that normalize to
    /// zero: the canonical printable representative.
    pub fn simplified(&self) -> Self {
        let mut out = DifferentialForm::zero(self.chart, self.degree);
        for (idx, c) in &self.terms {
            let nf = c.normalize();
            if !nf.is_literally_zero() {
                out.insert(idx.clone(), nf.to_expr());
            }
        }
        out
    }
}

/// Sort indices to increasing order, returning the permutation sign, or
/// `None` if an index repeats (the wedge monomial vanishes).
fn sort_sign(idx: &mut [u8]) -> Option<i8> {
    let mut sign = 1i8;
    // Insertion sort, counting swaps; multi-indices have at most 4 entries.
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl fmt::Display for DifferentialForm {
    /// Renders `coeff dxI^dxJ` terms joined by ` + ` / ` - `, e.g.
    /// `-1 dx2^dx3` or `eps0 dx1^dx2^dx3`; a degree-0 form prints its
    /// coefficient alone, and the zero form prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (idx, coeff) in &self.terms {
            let (neg, mag) = coeff.split_leading_sign();
            let printed = if first {
                first = false;
                if neg {
                    write!(f, "-")?;
                }
                mag
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
                mag
            };
            if printed.is_sum_root() {
                write!(f, "({})", printed)?;
            } else {
                write!(f, "{}", printed)?;
            }
            if !idx.is_empty() {
                write!(f, " ")?;
                for (pos, &i) in idx.iter().enumerate() {
                    if pos > 0 {
                        write!(f, "^")?;
                    }
                    write!(f, "d{}", self.chart.coord_name(i))?;
                }
            }
        }
        Ok(())
    }
}

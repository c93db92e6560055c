//! Linear coordinate maps (boosts, rotations, permutations) acting on
//! charts, stored as dense n×n matrices of symbolic entries.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::Chart;
use crate::expr::ScalarExpr;

/// An invertible linear map x ↦ Lx on a chart's coordinates. Entries are
/// exact symbolic expressions so that boost algebra (cosh/sinh of a rational
/// rapidity) stays exact.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    chart: Chart,
    /// Row-major n×n entries.
    entries: Vec<ScalarExpr>,
}

impl LinearMap {
    pub fn identity(chart: Chart) -> Self {
        let n = usize::from(chart.dim());
        let mut entries = vec![ScalarExpr::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ScalarExpr::one();
        }
        LinearMap { chart, entries }
    }

    /// Build from rows; panics unless the shape is n×n for the chart.
    pub fn from_rows(chart: Chart, rows: Vec<Vec<ScalarExpr>>) -> Self {
        let n = usize::from(chart.dim());
        assert_eq!(rows.len(), n, "expected {} rows", n);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "expected {} columns", n);
            entries.extend(row);
        }
        LinearMap { chart, entries }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn entry(&self, i: u8, j: u8) -> &ScalarExpr {
        let n = usize::from(self.chart.dim());
        &self.entries[usize::from(i) * n + usize::from(j)]
    }

    /// Matrix product self·other, i.e. the map x ↦ self(other(x)).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.chart, other.chart, "chart mismatch in composition");
        let n = self.chart.dim();
        let mut rows = Vec::with_capacity(usize::from(n));
        for i in 0..n {
            let mut row = Vec::with_capacity(usize::from(n));
            for j in 0..n {
                let mut acc = ScalarExpr::zero();
                for k in 0..n {
                    acc = acc + self.entry(i, k).clone() * other.entry(k, j).clone();
                }
                row.push(acc);
            }
            rows.push(row);
        }
        LinearMap::from_rows(self.chart, rows)
    }

    /// Determinant by Laplace expansion (n ≤ 4, so the expression stays
    /// small), returned in normalized printable form.
    pub fn det(&self) -> ScalarExpr {
        let n = usize::from(self.chart.dim());
        let rows: Vec<Vec<ScalarExpr>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i as u8, j as u8).clone()).collect())
            .collect();
        det_expand(&rows).normalize().to_expr()
    }

    /// The substitution x_i ↦ Σ_j L_{ij}·x_j used to compose coefficients
    /// with the map.
    pub(super) fn coordinate_substitution(&self) -> BTreeMap<String, ScalarExpr> {
        let n = self.chart.dim();
        let mut map = BTreeMap::new();
        for i in 0..n {
            let mut acc = ScalarExpr::zero();
            for j in 0..n {
                acc = acc
                    + self.entry(i, j).clone() * ScalarExpr::var(self.chart.coord_name(j));
            }
            map.insert(self.chart.coord_name(i).to_string(), acc);
        }
        map
    }
}

fn det_expand(rows: &[Vec<ScalarExpr>]) -> ScalarExpr {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = ScalarExpr::zero();
    for (j, pivot) in rows[0].iter().enumerate() {
        if pivot.is_literal_zero() {
            continue;
        }
        let minor: Vec<Vec<ScalarExpr>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(col, _)| *col != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = pivot.clone() * det_expand(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// The standard boost along the x1 axis with rapidity ζ:
/// x0' = cosh ζ·x0 − sinh ζ·x1, x1' = −sinh ζ·x0 + cosh ζ·x1.
/// The rapidity is kept exact; cosh/sinh stay symbolic and the normalizer's
/// cosh² − sinh² = 1 rewrite keeps the algebra closed.
pub fn boost_x(zeta: BigRational) -> LinearMap {
    let z = ScalarExpr::rational(zeta);
    let ch = z.clone().cosh();
    let sh = z.sinh();
    let o = ScalarExpr::zero;
    let l = ScalarExpr::one;
    LinearMap::from_rows(
        Chart::Minkowski4,
        vec![
            vec![ch.clone(), -sh.clone(), o(), o()],
            vec![-sh, ch, o(), o()],
            vec![o(), o(), l(), o()],
            vec![o(), o(), o(), l()],
        ],
    )
}

/// β = tanh ζ as the exact ratio sinh ζ / cosh ζ.
pub fn boost_beta(zeta: BigRational) -> ScalarExpr {
    let z = ScalarExpr::rational(zeta);
    z.clone().sinh() / z.cosh()
}

/// γ = (1−β²)^{−1/2} expressed without fractional powers: γ = cosh ζ.
pub fn boost_gamma(zeta: BigRational) -> ScalarExpr {
    ScalarExpr::rational(zeta).cosh()
}

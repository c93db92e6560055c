//! Hard-coded Hodge-star basis tables.
//!
//! Each table maps a strictly increasing multi-index to a sign and the
//! complementary multi-index. The tables are written out explicitly rather
//! than derived from a metric-contraction engine; the integration tests
//! recompute every entry independently from the defining relation
//! α∧∗β = g(α,β)·dvol and compare.
//!
//! Euclidean chart (orientation dx1∧dx2∧dx3 positive): the star is the
//! cyclic rule ∗dx1 = dx2∧dx3, ∗dx2 = dx3∧dx1, ∗dx3 = dx1∧dx2 and its
//! inverse; ∗∘∗ is the identity in every degree.
//!
//! Spacetime chart (metric (+,-,-,-), orientation dx0∧dx1∧dx2∧dx3): the
//! star satisfies ∗∗ω = (−1)^{k+1}ω on k-forms.

use super::Chart;

/// Star of a basis monomial: returns `(sign, complementary indices)`.
/// `idx` must be strictly increasing and in range for the chart.
pub(super) fn star_basis(chart: Chart, idx: &[u8]) -> (i8, Vec<u8>) {
    let (sign, comp): (i8, &[u8]) = match chart {
        Chart::Euclidean3 => match idx {
            [] => (1, &[0, 1, 2]),
            // ∗dx1 = dx2∧dx3, ∗dx2 = dx3∧dx1 = -(dx1∧dx3), ∗dx3 = dx1∧dx2
            [0] => (1, &[1, 2]),
            [1] => (-1, &[0, 2]),
            [2] => (1, &[0, 1]),
            // inverse rule: ∗(dx2∧dx3) = dx1, ∗(dx3∧dx1) = dx2, ∗(dx1∧dx2) = dx3
            [1, 2] => (1, &[0]),
            [0, 2] => (-1, &[1]),
            [0, 1] => (1, &[2]),
            [0, 1, 2] => (1, &[]),
            _ => panic!("invalid Euclidean multi-index {:?}", idx),
        },
        Chart::Minkowski4 => match idx {
            [] => (1, &[0, 1, 2, 3]),
            [0, 1, 2, 3] => (-1, &[]),
            // 1-forms and their complements
            [0] => (1, &[1, 2, 3]),
            [1] => (1, &[0, 2, 3]),
            [2] => (-1, &[0, 1, 3]), // ∗dx2 = dx0∧dx3∧dx1 = -(dx0∧dx1∧dx3)
            [3] => (1, &[0, 1, 2]),
            [1, 2, 3] => (1, &[0]),
            [0, 2, 3] => (1, &[1]),
            [0, 1, 3] => (-1, &[2]),
            [0, 1, 2] => (1, &[3]),
            // 2-forms
            [0, 1] => (-1, &[2, 3]),
            [0, 2] => (1, &[1, 3]), // ∗(dx0∧dx2) = -(dx3∧dx1) = dx1∧dx3
            [0, 3] => (-1, &[1, 2]),
            [1, 2] => (1, &[0, 3]),
            [1, 3] => (-1, &[0, 2]), // ∗(dx3∧dx1) = dx0∧dx2
            [2, 3] => (1, &[0, 1]),
            _ => panic!("invalid spacetime multi-index {:?}", idx),
        },
    };
    (sign, comp.to_vec())
}

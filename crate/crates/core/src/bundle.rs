//! Gauge-potential compatibility over a cover: charts with rational
//! interval regions, transition phase functions on overlaps, the abelian
//! cocycle equation, and global curvature agreement.
//!
//! A configuration is a family of local potential 1-forms A_U, one per
//! cover chart, glued by transition functions. With the circle group the
//! transition g = e^{iΛ} is a phase, its algebra is the real line, and the
//! general compatibility equation collapses to
//!
//! ```text
//!     A_V = A_U − dΛ_VU        (on U ∩ V)
//! ```
//!
//! The sign of Λ is a convention fixed here once: Λ_VU enters with −dΛ_VU
//! on the right-hand side, and swapping the roles of U and V negates it.
//! Overlap verdicts are produced per unordered chart pair; the family "is
//! a connection" when every overlap residual A_V − A_U + dΛ_VU is provably
//! zero. The curvature of each local potential is dA (the bracket term
//! [A,A] vanishes identically for real-valued 1-forms, which the
//! implementation asserts rather than assumes), and a passing family has a
//! single globally defined curvature 2-form.
//!
//! Region membership is a list of per-coordinate open intervals with
//! rational endpoints (±∞ when absent), so overlap nonemptiness is decided
//! exactly by interval arithmetic. Zero-testing "on the overlap" is global
//! zero-testing of the restricted expression: coefficients are globally
//! defined expressions and partial-domain zero-testing is out of scope.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::em4::EmField4;
use crate::expr::{parse_expr, ParseError, ScalarExpr, Zeroness};
use crate::forms::{Chart, DifferentialForm, DocError, FormDoc};

/// One open interval constraint on a single coordinate; `None` bounds are
/// unbounded sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordInterval {
    pub coord: u8,
    pub lower: Option<BigRational>,
    pub upper: Option<BigRational>,
}

impl CoordInterval {
    fn is_empty(&self) -> bool {
        match (&self.lower, &self.upper) {
            (Some(lo), Some(hi)) => lo >= hi,
            _ => false,
        }
    }

    fn intersect(&self, other: &CoordInterval) -> CoordInterval {
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (Some(a), None) => Some(a.clone()),
            (None, b) => b.clone(),
        };
        let upper = match (&self.upper, &other.upper) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) => Some(a.clone()),
            (None, b) => b.clone(),
        };
        CoordInterval { coord: self.coord, lower, upper }
    }
}

/// A named cover chart: a nonempty open box over the base chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverChart {
    name: String,
    base: Chart,
    /// One entry per constrained coordinate; unconstrained coordinates
    /// span the whole line.
    intervals: BTreeMap<u8, CoordInterval>,
}

impl CoverChart {
    /// Builds a chart region, intersecting repeated constraints on the
    /// same coordinate; rejects empty regions and out-of-range
    /// coordinates.
    pub fn new(
        name: impl Into<String>,
        base: Chart,
        constraints: Vec<CoordInterval>,
    ) -> Result<Self, BundleError> {
        let name = name.into();
        let mut intervals: BTreeMap<u8, CoordInterval> = BTreeMap::new();
        for c in constraints {
            if c.coord >= base.dim() {
                return Err(BundleError::CoordinateOutOfRange {
                    chart: name,
                    index: c.coord,
                    dim: base.dim(),
                });
            }
            let merged = match intervals.get(&c.coord) {
                Some(existing) => existing.intersect(&c),
                None => c,
            };
            intervals.insert(merged.coord, merged);
        }
        if let Some(bad) = intervals.values().find(|i| i.is_empty()) {
            return Err(BundleError::EmptyRegion {
                chart: name,
                coord: base.coord_name(bad.coord),
            });
        }
        Ok(CoverChart { name, base, intervals })
    }

    /// The whole base chart as a single cover chart.
    pub fn full(name: impl Into<String>, base: Chart) -> Self {
        CoverChart::new(name, base, Vec::new()).expect("unconstrained region is nonempty")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> Chart {
        self.base
    }

    /// Whether the two regions intersect (open boxes; same base only).
    pub fn overlaps(&self, other: &CoverChart) -> bool {
        if self.base != other.base {
            return false;
        }
        (0..self.base.dim()).all(|coord| {
            match (self.intervals.get(&coord), other.intervals.get(&coord)) {
                (Some(a), Some(b)) => !a.intersect(b).is_empty(),
                _ => true,
            }
        })
    }
}

/// A gauge potential 1-form attached to one cover chart.
#[derive(Clone, Debug)]
pub struct LocalPotential {
    pub chart: CoverChart,
    pub a: DifferentialForm,
}

impl LocalPotential {
    pub fn new(chart: CoverChart, a: DifferentialForm) -> Result<Self, BundleError> {
        if a.degree() != 1 {
            return Err(BundleError::PotentialDegree {
                chart: chart.name,
                degree: a.degree(),
            });
        }
        if a.chart() != chart.base {
            return Err(BundleError::PotentialBase { chart: chart.name });
        }
        Ok(LocalPotential { chart, a })
    }
}

/// The phase function Λ_VU gluing chart `u` to chart `v`:
/// A_V = A_U − dΛ_VU on the overlap.
#[derive(Clone, Debug)]
pub struct Transition {
    pub u: String,
    pub v: String,
    pub lambda_vu: ScalarExpr,
}

impl Transition {
    pub fn new(u: impl Into<String>, v: impl Into<String>, lambda_vu: ScalarExpr) -> Self {
        Transition { u: u.into(), v: v.into(), lambda_vu }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("cover chart `{chart}` declares an empty region on {coord}")]
    EmptyRegion { chart: String, coord: &'static str },
    #[error("cover chart `{chart}` constrains coordinate index {index}, but its base has dimension {dim}")]
    CoordinateOutOfRange { chart: String, index: u8, dim: u8 },
    #[error("cover chart `{chart}` constrains `{coord}`, which is not a coordinate of its base")]
    UnknownCoordinate { chart: String, coord: String },
    #[error("potential on `{chart}` must have degree 1, found degree {degree}")]
    PotentialDegree { chart: String, degree: u8 },
    #[error("potential on `{chart}` does not live on the chart's base")]
    PotentialBase { chart: String },
    #[error("cover charts `{a}` and `{b}` live on different bases")]
    MixedBases { a: String, b: String },
    #[error("duplicate cover chart `{0}`")]
    DuplicateChart(String),
    #[error("no transition declared for the overlap ({u}, {v})")]
    MissingTransition { u: String, v: String },
    #[error("unknown base chart `{0}`")]
    UnknownBase(String),
    #[error("chart `{0}`: cannot parse `{1}` as a rational bound")]
    BadRational(String, String),
    #[error("transition ({u}, {v}): {source}")]
    BadPhase {
        u: String,
        v: String,
        #[source]
        source: ParseError,
    },
    #[error("potential on `{chart}`: {source}")]
    BadForm {
        chart: String,
        #[source]
        source: DocError,
    },
}

/// One overlap's compatibility verdict.
#[derive(Clone, Debug)]
pub struct OverlapReport {
    /// Chart names (U, V) in the orientation the residual was formed.
    pub charts: (String, String),
    /// A_V − A_U + dΛ_VU on the overlap.
    pub residual: DifferentialForm,
    pub verdict: Zeroness,
}

/// One triple overlap's phase-consistency verdict: whether
/// Λ_WU − Λ_WV − Λ_VU is constant (all coordinate partials provably
/// zero).
#[derive(Clone, Debug)]
pub struct TripleReport {
    pub charts: (String, String, String),
    /// d(Λ_WU − Λ_WV − Λ_VU), the obstruction to constancy.
    pub residual: DifferentialForm,
    pub verdict: Zeroness,
}

/// Outcome of the compatibility check across the whole cover.
#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub overlaps: Vec<OverlapReport>,
    pub triples: Vec<TripleReport>,
    /// True exactly when every overlap residual is provably zero.
    pub is_connection: bool,
    /// True when every triple phase combination is constant.
    pub triples_consistent: bool,
}

fn ensure_common_base(potentials: &[LocalPotential]) -> Result<(), BundleError> {
    let mut seen = std::collections::BTreeSet::new();
    for p in potentials {
        if !seen.insert(p.chart.name.clone()) {
            return Err(BundleError::DuplicateChart(p.chart.name.clone()));
        }
    }
    for pair in potentials.windows(2) {
        if pair[0].chart.base != pair[1].chart.base {
            return Err(BundleError::MixedBases {
                a: pair[0].chart.name.clone(),
                b: pair[1].chart.name.clone(),
            });
        }
    }
    Ok(())
}

/// The phase Λ_VU for the ordered pair (u, v), negating a transition
/// stored in the opposite orientation.
fn lambda_for(transitions: &[Transition], u: &str, v: &str) -> Option<ScalarExpr> {
    transitions.iter().find_map(|t| {
        if t.u == u && t.v == v {
            Some(t.lambda_vu.clone())
        } else if t.u == v && t.v == u {
            Some(-t.lambda_vu.clone())
        } else {
            None
        }
    })
}

/// Checks the compatibility equation A_V = A_U − dΛ_VU on every
/// overlapping chart pair, and phase consistency on every triple
/// overlap. Errors when an overlapping pair has no transition.
pub fn cocycle_check(
    potentials: &[LocalPotential],
    transitions: &[Transition],
) -> Result<CocycleReport, BundleError> {
    ensure_common_base(potentials)?;

    let mut overlaps = Vec::new();
    for (i, pu) in potentials.iter().enumerate() {
        for pv in &potentials[i + 1..] {
            if !pu.chart.overlaps(&pv.chart) {
                continue;
            }
            let (u, v) = (pu.chart.name.clone(), pv.chart.name.clone());
            let lambda = lambda_for(transitions, &u, &v)
                .ok_or_else(|| BundleError::MissingTransition { u: u.clone(), v: v.clone() })?;
            let d_lambda = DifferentialForm::scalar(pu.chart.base, lambda).ext_d();
            let residual = pv.a.sub(&pu.a).add(&d_lambda);
            let verdict = residual.zeroness();
            overlaps.push(OverlapReport { charts: (u, v), residual, verdict });
        }
    }

    let mut triples = Vec::new();
    for (i, pu) in potentials.iter().enumerate() {
        for (j, pv) in potentials.iter().enumerate().skip(i + 1) {
            for pw in &potentials[j + 1..] {
                if !(pu.chart.overlaps(&pv.chart)
                    && pu.chart.overlaps(&pw.chart)
                    && pv.chart.overlaps(&pw.chart))
                {
                    continue;
                }
                let (u, v, w) =
                    (pu.chart.name.clone(), pv.chart.name.clone(), pw.chart.name.clone());
                let (Some(l_wu), Some(l_wv), Some(l_vu)) = (
                    lambda_for(transitions, &u, &w),
                    lambda_for(transitions, &v, &w),
                    lambda_for(transitions, &u, &v),
                ) else {
                    // Pairwise coverage was already enforced above.
                    continue;
                };
                let combo = l_wu - l_wv - l_vu;
                // Constant exactly when every coordinate partial vanishes.
                let residual = DifferentialForm::scalar(pu.chart.base, combo).ext_d();
                let verdict = residual.zeroness();
                triples.push(TripleReport { charts: (u, v, w), residual, verdict });
            }
        }
    }

    let is_connection = overlaps.iter().all(|o| o.verdict == Zeroness::ProvenZero);
    let triples_consistent = triples.iter().all(|t| t.verdict == Zeroness::ProvenZero);
    Ok(CocycleReport { overlaps, triples, is_connection, triples_consistent })
}

/// The curvature 2-form dA of one local potential. The bracket term
/// [A, A] = 2·A∧A is computed and asserted to vanish — for real-valued
/// 1-forms it does identically — so the abelian curvature is dA alone.
pub fn curvature(p: &LocalPotential) -> DifferentialForm {
    let bracket = p.a.wedge(&p.a).scale(&ScalarExpr::int(2));
    assert!(
        bracket.is_provably_zero(),
        "the bracket term of a real-valued potential must vanish"
    );
    p.a.ext_d()
}

/// Outcome of the global-curvature check.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    /// The compatibility verdicts (the stated precondition, re-verified).
    pub cocycle: CocycleReport,
    /// Per overlap: dA_U − dA_V and its verdict.
    pub overlaps: Vec<OverlapReport>,
    /// True exactly when every curvature difference is provably zero.
    pub globally_defined: bool,
    /// When the base is the spacetime chart and the curvature is globally
    /// defined: the common curvature packaged as a field state, whose
    /// component view recovers (E, B).
    pub faraday: Option<EmField4>,
}

/// Checks that the local curvatures agree on every overlap, naming any
/// offending pair, and identifies the common curvature with a spacetime
/// field state when the base is the spacetime chart.
pub fn curvature_agreement(
    potentials: &[LocalPotential],
    transitions: &[Transition],
) -> Result<CurvatureReport, BundleError> {
    let cocycle = cocycle_check(potentials, transitions)?;

    let mut overlaps = Vec::new();
    for (i, pu) in potentials.iter().enumerate() {
        for pv in &potentials[i + 1..] {
            if !pu.chart.overlaps(&pv.chart) {
                continue;
            }
            let residual = curvature(pu).sub(&curvature(pv));
            let verdict = residual.zeroness();
            overlaps.push(OverlapReport {
                charts: (pu.chart.name.clone(), pv.chart.name.clone()),
                residual,
                verdict,
            });
        }
    }
    let globally_defined = overlaps.iter().all(|o| o.verdict == Zeroness::ProvenZero);

    let faraday = potentials.first().and_then(|p| {
        (globally_defined && p.chart.base == Chart::Minkowski4)
            .then(|| EmField4::new(curvature(p)))
    });

    Ok(CurvatureReport { cocycle, overlaps, globally_defined, faraday })
}

/// Serialized bundle description: `charts`, `potentials`, `transitions`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BundleDoc {
    pub charts: Vec<ChartDoc>,
    pub potentials: Vec<PotentialDoc>,
    pub transitions: Vec<TransitionDoc>,
}

/// One cover chart: a base chart name plus interval constraints with
/// rational bounds written as strings ("-1", "3/2"); a missing bound is
/// unbounded.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChartDoc {
    pub name: String,
    pub base: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intervals: Vec<IntervalDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IntervalDoc {
    /// Coordinate name on the base chart, e.g. "x1".
    pub coord: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
}

/// A potential 1-form attached to a cover chart by name.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PotentialDoc {
    pub chart: String,
    pub a: FormDoc,
}

/// A transition phase attached to an ordered chart pair.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TransitionDoc {
    pub from: String,
    pub to: String,
    pub lambda: String,
}

impl BundleDoc {
    /// Resolves the document into potential and transition lists ready
    /// for [`cocycle_check`] / [`curvature_agreement`].
    pub fn resolve(&self) -> Result<(Vec<LocalPotential>, Vec<Transition>), BundleError> {
        let mut charts: BTreeMap<String, CoverChart> = BTreeMap::new();
        for cd in &self.charts {
            let base = Chart::parse_name(&cd.base)
                .ok_or_else(|| BundleError::UnknownBase(cd.base.clone()))?;
            let mut constraints = Vec::new();
            for iv in &cd.intervals {
                let coord = (0..base.dim())
                    .find(|&i| base.coord_name(i) == iv.coord)
                    .ok_or_else(|| BundleError::UnknownCoordinate {
                        chart: cd.name.clone(),
                        coord: iv.coord.clone(),
                    })?;
                let parse_bound = |text: &Option<String>| -> Result<Option<BigRational>, BundleError> {
                    text.as_deref()
                        .map(|s| {
                            BigRational::from_str(s).map_err(|_| {
                                BundleError::BadRational(cd.name.clone(), s.to_string())
                            })
                        })
                        .transpose()
                };
                constraints.push(CoordInterval {
                    coord,
                    lower: parse_bound(&iv.lower)?,
                    upper: parse_bound(&iv.upper)?,
                });
            }
            let chart = CoverChart::new(cd.name.clone(), base, constraints)?;
            if charts.insert(cd.name.clone(), chart).is_some() {
                return Err(BundleError::DuplicateChart(cd.name.clone()));
            }
        }

        let mut potentials = Vec::new();
        for pd in &self.potentials {
            let chart = charts
                .get(&pd.chart)
                .cloned()
                .ok_or_else(|| BundleError::UnknownBase(pd.chart.clone()))?;
            let a = pd.a.to_form().map_err(|source| BundleError::BadForm {
                chart: pd.chart.clone(),
                source,
            })?;
            potentials.push(LocalPotential::new(chart, a)?);
        }

        let mut transitions = Vec::new();
        for td in &self.transitions {
            let base = potentials
                .first()
                .map(|p| p.chart.base)
                .unwrap_or(Chart::Euclidean3);
            let lambda = parse_expr(&td.lambda, &base.variables()).map_err(|source| {
                BundleError::BadPhase { u: td.from.clone(), v: td.to.clone(), source }
            })?;
            transitions.push(Transition::new(td.from.clone(), td.to.clone(), lambda));
        }

        Ok((potentials, transitions))
    }
}

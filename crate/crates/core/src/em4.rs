//! Spacetime electromagnetic toolkit: the Faraday 2-form, the two-identity
//! field system `dF = 0`, `δF = (1/ε₀)J̃`, potential 1-forms with gauge and
//! Lorenz machinery, charge conservation, boost covariance, and the
//! component-matrix view of the field equations.
//!
//! All forms live on the spacetime chart with coordinates (x⁰, x¹, x², x³),
//! metric signature (+,−,−,−), and x⁰ = ct. The packaging conventions:
//!
//! * F = −E₁dx⁰∧dx¹ − E₂dx⁰∧dx² − E₃dx⁰∧dx³
//!   + c(B₁dx²∧dx³ + B₂dx³∧dx¹ + B₃dx¹∧dx²),
//! * M = ∗F = c(B₁dx⁰∧dx¹ + B₂dx⁰∧dx² + B₃dx⁰∧dx³)
//!   + E₁dx²∧dx³ + E₂dx³∧dx¹ + E₃dx¹∧dx²,
//! * J̃ = ρdx⁰ − (1/c)(J₁dx¹ + J₂dx² + J₃dx³),
//! * I = −Φdx⁰ + c(A₁dx¹ + A₂dx² + A₃dx³),
//!
//! with ρ a scalar function (not a 3-form). The homogeneous equations are
//! `dF = 0`; the inhomogeneous ones are `δF = (1/ε₀)J̃` with the literal
//! codifferential δ = ∗d∗.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::em3::{EmField3, Potential3};
use crate::expr::{ScalarExpr, Zeroness};
use crate::forms::{boost_x, Chart, DifferentialForm};

const M4: Chart = Chart::Minkowski4;

/// Spacetime field state: the Faraday 2-form `F`, its star image
/// `M = ∗F` (kept in sync), and optionally the 4-current 1-form `J̃`.
#[derive(Clone, Debug)]
pub struct EmField4 {
    f: DifferentialForm,
    m: DifferentialForm,
    jtilde: Option<DifferentialForm>,
}

impl EmField4 {
    /// Wraps a degree-2 spacetime form as the Faraday form; `M = ∗F` is
    /// computed eagerly.
    pub fn new(f: DifferentialForm) -> Self {
        assert_eq!(f.chart(), M4, "F must live on the spacetime chart");
        assert_eq!(f.degree(), 2, "F must have degree 2");
        let m = f.hodge();
        EmField4 { f, m, jtilde: None }
    }

    /// Attaches the 4-current 1-form.
    pub fn with_current(mut self, jtilde: DifferentialForm) -> Self {
        assert_eq!(jtilde.chart(), M4, "the 4-current must live on the spacetime chart");
        assert_eq!(jtilde.degree(), 1, "the 4-current must have degree 1");
        self.jtilde = Some(jtilde);
        self
    }

    /// The Faraday 2-form F.
    pub fn faraday(&self) -> &DifferentialForm {
        &self.f
    }

    /// The Maxwell 2-form M = ∗F.
    pub fn maxwell(&self) -> &DifferentialForm {
        &self.m
    }

    /// The 4-current 1-form, when attached.
    pub fn four_current_form(&self) -> Option<&DifferentialForm> {
        self.jtilde.as_ref()
    }

    /// The six field components (E₁,E₂,E₃), (B₁,B₂,B₃) read back from F.
    pub fn components(&self) -> ([ScalarExpr; 3], [ScalarExpr; 3]) {
        let inv_c = ScalarExpr::c().pow(-1);
        let e = [
            -self.f.coeff(&[0, 1]),
            -self.f.coeff(&[0, 2]),
            -self.f.coeff(&[0, 3]),
        ];
        let b = [
            self.f.coeff(&[2, 3]) * inv_c.clone(),
            -self.f.coeff(&[1, 3]) * inv_c.clone(),
            self.f.coeff(&[1, 2]) * inv_c,
        ];
        (e, b)
    }
}

/// Builds the Faraday form from electric and magnetic components
/// (functions of x⁰..x³), together with its star image. Panics if the
/// star image disagrees with the closed-form M above — that identity is
/// structural and holds for arbitrary components.
pub fn assemble_faraday(e: [ScalarExpr; 3], b: [ScalarExpr; 3]) -> EmField4 {
    let c = ScalarExpr::c;
    let f = DifferentialForm::from_terms(
        M4,
        2,
        vec![
            (vec![0, 1], -e[0].clone()),
            (vec![0, 2], -e[1].clone()),
            (vec![0, 3], -e[2].clone()),
            (vec![2, 3], c() * b[0].clone()),
            (vec![1, 3], -(c() * b[1].clone())),
            (vec![1, 2], c() * b[2].clone()),
        ],
    );
    let field = EmField4::new(f);
    let closed_form_m = DifferentialForm::from_terms(
        M4,
        2,
        vec![
            (vec![0, 1], c() * b[0].clone()),
            (vec![0, 2], c() * b[1].clone()),
            (vec![0, 3], c() * b[2].clone()),
            (vec![2, 3], e[0].clone()),
            (vec![1, 3], -e[1].clone()),
            (vec![1, 2], e[2].clone()),
        ],
    );
    assert!(
        field.m.sub(&closed_form_m).is_provably_zero(),
        "star image of F must match the closed-form M"
    );
    field
}

/// The 4-current 1-form J̃ = ρdx⁰ − (1/c)(J₁dx¹ + J₂dx² + J₃dx³).
pub fn four_current(rho: ScalarExpr, j: [ScalarExpr; 3]) -> DifferentialForm {
    let inv_c = ScalarExpr::c().pow(-1);
    DifferentialForm::from_terms(
        M4,
        1,
        vec![
            (vec![0], rho),
            (vec![1], -(inv_c.clone() * j[0].clone())),
            (vec![2], -(inv_c.clone() * j[1].clone())),
            (vec![3], -(inv_c * j[2].clone())),
        ],
    )
}

/// The residual pair of the spacetime field system.
#[derive(Clone, Debug)]
pub struct Maxwell4Residuals {
    /// dF, degree 3: the homogeneous half.
    pub homogeneous: DifferentialForm,
    /// δF − (1/ε₀)J̃, degree 1: the inhomogeneous half.
    pub inhomogeneous: DifferentialForm,
}

impl Maxwell4Residuals {
    /// Residuals paired with the equation labels used in reports.
    pub fn labeled(&self) -> [(&'static str, &DifferentialForm); 2] {
        [("dF=0", &self.homogeneous), ("deltaF=J", &self.inhomogeneous)]
    }

    pub fn all_provably_zero(&self) -> bool {
        self.homogeneous.is_provably_zero() && self.inhomogeneous.is_provably_zero()
    }
}

/// The 4-current is required (it may be zero, but must be stated) before
/// the inhomogeneous residual can be formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the field carries no 4-current; attach one (possibly zero) first")]
pub struct MissingFourCurrent;

/// Left-minus-right residuals `dF` and `δF − (1/ε₀)J̃`.
pub fn maxwell4_residuals(f: &EmField4) -> Result<Maxwell4Residuals, MissingFourCurrent> {
    let jtilde = f.jtilde.as_ref().ok_or(MissingFourCurrent)?;
    let delta_f = f.f.hodge().ext_d().hodge();
    Ok(Maxwell4Residuals {
        homogeneous: f.f.ext_d(),
        inhomogeneous: delta_f.sub(&jtilde.scale(&ScalarExpr::eps0().pow(-1))),
    })
}

/// Spacetime potential 1-form, conventionally
/// I = −Φdx⁰ + c(A₁dx¹ + A₂dx² + A₃dx³).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential4 {
    /// The potential 1-form itself.
    pub i: DifferentialForm,
}

impl Potential4 {
    pub fn new(i: DifferentialForm) -> Self {
        assert_eq!(i.chart(), M4, "the potential must live on the spacetime chart");
        assert_eq!(i.degree(), 1, "the potential must have degree 1");
        Potential4 { i }
    }

    pub fn zero() -> Self {
        Potential4::new(DifferentialForm::zero(M4, 1))
    }

    /// The component view (Φ, A₁, A₂, A₃) under the packaging convention:
    /// Φ = −I₀ and Aᵢ = Iᵢ/c.
    pub fn components(&self) -> (ScalarExpr, [ScalarExpr; 3]) {
        let inv_c = ScalarExpr::c().pow(-1);
        (
            -self.i.coeff(&[0]),
            [
                self.i.coeff(&[1]) * inv_c.clone(),
                self.i.coeff(&[2]) * inv_c.clone(),
                self.i.coeff(&[3]) * inv_c,
            ],
        )
    }
}

/// Everything the potential determines at first order.
#[derive(Clone, Debug)]
pub struct PotentialView4 {
    /// F = dI; closed identically, so the homogeneous equations hold for
    /// free.
    pub f: DifferentialForm,
    /// The Lorenz scalar, i.e. the single coefficient of ∗d∗I; for the
    /// component packaging above it equals ∂Φ/∂x⁰ + c∇·A.
    pub lorenz: ScalarExpr,
}

/// Derives the field and the Lorenz scalar from a potential.
pub fn potential_ops(p: &Potential4) -> PotentialView4 {
    PotentialView4 {
        f: p.i.ext_d(),
        lorenz: p.i.hodge().ext_d().hodge().scalar_coeff(),
    }
}

/// Gauge transformation I′ = I + dΛ. The induced field F = dI is
/// unchanged because d² = 0.
///
/// In components this shifts Φ by −∂Λ/∂x⁰ and Aᵢ by (1/c)∂Λ/∂xⁱ; the
/// conventional component transformation (A′ = A + ∇λ,
/// Φ′ = Φ − c∂λ/∂x⁰) is recovered by the substitution Λ = cλ.
pub fn gauge4(p: &Potential4, lambda: &ScalarExpr) -> Potential4 {
    let lam = DifferentialForm::scalar(M4, lambda.clone());
    Potential4::new(p.i.add(&lam.ext_d()))
}

/// The conservation residual: the single coefficient of δJ̃. Provably
/// zero for any current of the form J̃ = ε₀δF, since δδ = 0.
pub fn continuity_residual(jt: &DifferentialForm) -> ScalarExpr {
    assert_eq!(jt.chart(), M4, "the 4-current must live on the spacetime chart");
    assert_eq!(jt.degree(), 1, "the 4-current must have degree 1");
    jt.hodge().ext_d().hodge().scalar_coeff()
}

/// A 4×4 antisymmetric component matrix over symbolic entries.
#[derive(Clone, Debug)]
pub struct FaradayMatrix {
    entries: Vec<ScalarExpr>,
}

impl FaradayMatrix {
    fn from_rows(rows: [[ScalarExpr; 4]; 4]) -> Self {
        FaradayMatrix { entries: rows.into_iter().flatten().collect() }
    }

    pub fn entry(&self, row: usize, col: usize) -> &ScalarExpr {
        assert!(row < 4 && col < 4, "matrix indices must be below 4");
        &self.entries[row * 4 + col]
    }

    /// Whether every entry of M + Mᵀ is provably zero.
    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|r| {
            (0..4).all(|c| {
                (self.entry(r, c).clone() + self.entry(c, r).clone()).is_zero()
                    == Zeroness::ProvenZero
            })
        })
    }

    /// The four column divergences Σ_α ∂(entry(α,β))/∂x^α.
    pub fn four_divergence(&self) -> [ScalarExpr; 4] {
        [0, 1, 2, 3].map(|beta| {
            (0..4u8)
                .map(|alpha| self.entry(alpha as usize, beta).diff(M4.coord_name(alpha)))
                .fold(ScalarExpr::zero(), |acc, d| acc + d)
        })
    }
}

/// The two component matrices of the field: the electric-major matrix
/// (rows/columns indexed by x⁰..x³)
///
/// ```text
///   (  0    −E₁    −E₂    −E₃ )
///   (  E₁    0    −cB₃    cB₂ )
///   (  E₂   cB₃     0    −cB₁ )
///   (  E₃  −cB₂    cB₁     0  )
/// ```
///
/// and its magnetic-major dual
///
/// ```text
///   (  0    −cB₁   −cB₂   −cB₃ )
///   ( cB₁     0     E₃    −E₂  )
///   ( cB₂   −E₃     0      E₁  )
///   ( cB₃    E₂    −E₁     0   )
/// ```
///
/// The dual matrix carries the components of M = ∗F with the top row and
/// column negated: entry (0,i) = −M₀ᵢ while entry (i,j) = Mᵢⱼ for the
/// space–space block (the recorded star/dual correspondence).
///
/// Component field equations follow by column divergences, with the fixed
/// coefficient correspondence (β runs over columns):
///
/// * electric-major: column divergence minus (1/ε₀)(ρ, J₁/c, J₂/c, J₃/c)
///   equals the (dx⁰, −dx¹, −dx², −dx³) coefficients of δF − (1/ε₀)J̃;
/// * magnetic-major: column divergences equal the (+, −, +, −)-signed
///   coefficients of dF on (dx¹²³, dx⁰²³, dx⁰¹³, dx⁰¹²).
pub fn faraday_matrix(f: &EmField4) -> (FaradayMatrix, FaradayMatrix) {
    let (e, b) = f.components();
    let z = ScalarExpr::zero;
    let cb = [0, 1, 2].map(|i| ScalarExpr::c() * b[i].clone());
    let electric = FaradayMatrix::from_rows([
        [z(), -e[0].clone(), -e[1].clone(), -e[2].clone()],
        [e[0].clone(), z(), -cb[2].clone(), cb[1].clone()],
        [e[1].clone(), cb[2].clone(), z(), -cb[0].clone()],
        [e[2].clone(), -cb[1].clone(), cb[0].clone(), z()],
    ]);
    let magnetic = FaradayMatrix::from_rows([
        [z(), -cb[0].clone(), -cb[1].clone(), -cb[2].clone()],
        [cb[0].clone(), z(), e[2].clone(), -e[1].clone()],
        [cb[1].clone(), -e[2].clone(), z(), e[0].clone()],
        [cb[2].clone(), e[1].clone(), -e[0].clone(), z()],
    ]);
    (electric, magnetic)
}

/// Outcome of boosting a field along x¹ with rapidity ζ.
#[derive(Clone, Debug)]
pub struct BoostReport {
    /// The pulled-back field (current included when present).
    pub boosted: EmField4,
    /// Whether the interval x₀² − x₁² − x₂² − x₃² is preserved.
    pub interval_preserved: bool,
    /// Whether d commutes with the pullback on this field.
    pub natural: bool,
    /// When the input satisfies the vacuum field equations (zero current,
    /// both residuals provably zero): whether the boosted field does too.
    /// `None` when the input is not a vacuum solution.
    pub vacuum_preserved: Option<bool>,
}

/// Pulls the field back along the rapidity-ζ boost in the (x⁰,x¹) plane
/// and checks interval invariance, naturality of d, and preservation of
/// vacuum solutions.
pub fn boost_covariance(f: &EmField4, zeta: &BigRational) -> BoostReport {
    let map = boost_x(zeta.clone());
    let boosted_f = f.f.pullback(&map);
    let boosted = match &f.jtilde {
        Some(jt) => EmField4::new(boosted_f.clone()).with_current(jt.pullback(&map)),
        None => EmField4::new(boosted_f.clone()),
    };

    let x = |i: u8| ScalarExpr::var(M4.coord_name(i));
    let interval = x(0).pow(2) - x(1).pow(2) - x(2).pow(2) - x(3).pow(2);
    let interval_form = DifferentialForm::scalar(M4, interval);
    let interval_preserved = interval_form
        .pullback(&map)
        .sub(&interval_form)
        .is_provably_zero();

    let natural = boosted_f.ext_d().sub(&f.f.ext_d().pullback(&map)).is_provably_zero();

    let zero_current = || four_current(ScalarExpr::zero(), [ScalarExpr::zero(), ScalarExpr::zero(), ScalarExpr::zero()]);
    let input_is_vacuum = f
        .jtilde
        .as_ref()
        .is_none_or(DifferentialForm::is_provably_zero)
        && maxwell4_residuals(&f.clone().with_current(zero_current()))
            .expect("current attached")
            .all_provably_zero();
    let vacuum_preserved = input_is_vacuum.then(|| {
        maxwell4_residuals(&EmField4::new(boosted_f).with_current(zero_current()))
            .expect("current attached")
            .all_provably_zero()
    });

    BoostReport { boosted, interval_preserved, natural, vacuum_preserved }
}

/// Outcome of comparing the second-order potential equation δdI = (1/ε₀)J̃
/// with the componentwise wave equations □A^α = (1/ε₀)J^α, where
/// □ = ∂²/∂(x⁰)² − ∇², A^α = (Φ, cA₁, cA₂, cA₃) and
/// J^α = (ρ, J₁/c, J₂/c, J₃/c).
#[derive(Clone, Debug)]
pub struct WaveLorenzReport {
    /// The Lorenz scalar ∗d∗I of the input potential.
    pub lorenz: ScalarExpr,
    /// `"lorenz"` when the Lorenz scalar is provably zero, else
    /// `"non-Lorenz"`.
    pub label: &'static str,
    /// δdI − (1/ε₀)J̃, degree 1.
    pub form_residual: DifferentialForm,
    /// □A^α − (1/ε₀)J^α for α = 0..3.
    pub component_residuals: [ScalarExpr; 4],
    /// In the Lorenz case: whether the two residual sets agree
    /// component-by-component (the dx⁰ coefficient with +W⁰, the dxⁱ
    /// coefficients with −Wⁱ). `None` when the gate condition fails.
    pub agreement: Option<bool>,
}

/// The d'Alembertian ∂₀²g − (∂₁² + ∂₂² + ∂₃²)g.
fn box_operator(g: &ScalarExpr) -> ScalarExpr {
    let dd = |name: &str| g.diff(name).diff(name);
    dd("x0") - dd("x1") - dd("x2") - dd("x3")
}

/// Forms δdI − (1/ε₀)J̃ alongside the componentwise wave residuals, and
/// checks their agreement when the potential is in Lorenz gauge.
pub fn wave_under_lorenz(p: &Potential4, jt: &DifferentialForm) -> WaveLorenzReport {
    assert_eq!(jt.chart(), M4, "the 4-current must live on the spacetime chart");
    assert_eq!(jt.degree(), 1, "the 4-current must have degree 1");

    let lorenz = potential_ops(p).lorenz;
    let is_lorenz = lorenz.is_zero() == Zeroness::ProvenZero;

    let inv_eps0 = ScalarExpr::eps0().pow(-1);
    let form_residual = p.i.ext_d().hodge().ext_d().hodge().sub(&jt.scale(&inv_eps0));

    // A^0 = Φ = −I₀ and A^i = cAᵢ = Iᵢ; J^0 = ρ = J̃₀ and J^i = Jᵢ/c = −J̃ᵢ.
    let a_up = [-p.i.coeff(&[0]), p.i.coeff(&[1]), p.i.coeff(&[2]), p.i.coeff(&[3])];
    let j_up = [jt.coeff(&[0]), -jt.coeff(&[1]), -jt.coeff(&[2]), -jt.coeff(&[3])];
    let component_residuals =
        [0, 1, 2, 3].map(|a| box_operator(&a_up[a]) - inv_eps0.clone() * j_up[a].clone());

    let agreement = is_lorenz.then(|| {
        [0u8, 1, 2, 3].iter().all(|&a| {
            let r = form_residual.coeff(&[a]);
            let w = component_residuals[a as usize].clone();
            let diff = if a == 0 { r - w } else { r + w };
            diff.is_zero() == Zeroness::ProvenZero
        })
    });

    WaveLorenzReport {
        lorenz,
        label: if is_lorenz { "lorenz" } else { "non-Lorenz" },
        form_residual,
        component_residuals,
        agreement,
    }
}

/// The substitution t = x⁰/c used to re-express 3D-chart coefficients
/// (functions of x¹,x²,x³ and the external time t) on the spacetime chart.
fn time_to_x0() -> BTreeMap<String, ScalarExpr> {
    BTreeMap::from([(
        "t".to_string(),
        ScalarExpr::var("x0") * ScalarExpr::c().pow(-1),
    )])
}

/// Repackages a 3D field state as a spacetime field: the (E,B) components
/// are read off the 1-form E and 2-form B, ρ and J off the source forms,
/// every coefficient is re-expressed via t = x⁰/c, and the results are
/// assembled into F and J̃.
pub fn spacetime_field(f: &EmField3) -> EmField4 {
    let sub = time_to_x0();
    let lift = |expr: ScalarExpr| expr.substitute(&sub);
    let e = [0u8, 1, 2].map(|i| lift(f.e.coeff(&[i])));
    let b = [
        lift(f.b.coeff(&[1, 2])),
        lift(-f.b.coeff(&[0, 2])),
        lift(f.b.coeff(&[0, 1])),
    ];
    let rho = lift(f.rho.coeff(&[0, 1, 2]));
    let j = [
        lift(f.j.coeff(&[1, 2])),
        lift(-f.j.coeff(&[0, 2])),
        lift(f.j.coeff(&[0, 1])),
    ];
    assemble_faraday(e, b).with_current(four_current(rho, j))
}

/// Repackages a 3D potential pair (A, Φ) as the spacetime potential
/// I = −Φdx⁰ + c(A₁dx¹ + A₂dx² + A₃dx³) with t = x⁰/c.
pub fn spacetime_potential(p: &Potential3) -> Potential4 {
    let sub = time_to_x0();
    let phi = p.phi.scalar_coeff().substitute(&sub);
    let a = [0u8, 1, 2].map(|i| p.a.coeff(&[i]).substitute(&sub));
    Potential4::new(DifferentialForm::from_terms(
        M4,
        1,
        vec![
            (vec![0], -phi),
            (vec![1], ScalarExpr::c() * a[0].clone()),
            (vec![2], ScalarExpr::c() * a[1].clone()),
            (vec![3], ScalarExpr::c() * a[2].clone()),
        ],
    ))
}

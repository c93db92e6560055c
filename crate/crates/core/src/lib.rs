//! Symbolic exterior calculus for electromagnetic field equations.
//!
//! The crate is organized around a small expression kernel and a sparse
//! representation of differential forms on two fixed flat charts:
//!
//! * [`expr`] — exact scalar expressions (rational constants, coordinate
//!   variables, elementary functions, opaque field symbols) with
//!   differentiation, substitution, normalization and a sound three-valued
//!   zero test.
//! * [`forms`] — differential k-forms as sparse multi-index maps, with wedge
//!   product, exterior derivative, Hodge star, codifferential, form Laplacian
//!   and pullback along linear maps.
//! * [`em3`] — the classical field and potential equations on the Euclidean
//!   3-chart with external time.
//! * [`em4`] — the spacetime formulation on the Minkowski 4-chart: Faraday
//!   2-form, four-current, gauge and boost machinery, and the component
//!   matrix bridge.
//! * [`bundle`] — U(1) principal-bundle bookkeeping: chart covers, local
//!   potentials, transition checks and curvature agreement.
//!
//! Everything is exact: coefficients are trees over arbitrary-precision
//! rationals and no floating point enters any identity check. Verdicts are
//! three-valued ([`expr::Zeroness`]); `ProvenZero` is only reported when a
//! normal form is literally zero, so identity checks are sound.

pub mod bundle;
pub mod em3;
pub mod em4;
pub mod expr;
pub mod forms;

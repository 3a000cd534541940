//! Exact twisted dynamical zeta functions of self-maps over finite fields.
//!
//! The central object is the series Z(t) = exp(sum_n Tr((f F^n)*) t^n / n)
//! attached to a graded pair of commuting linear actions (a self-map f and
//! a Frobenius F). Everything is computed in exact rational arithmetic:
//! traces, the truncated series, its reconstruction as a rational function,
//! and the alternating product of characteristic polynomials it must equal.
//! On top of that sit certified-interval spectral verdicts (parity spectral
//! radii, attaining weights, disc containment, weight bounds) and the
//! positivity diagnostics that connect coefficient signs to those radii.
//!
//! Modules, roughly bottom-up:
//! - [`rational`], [`poly`], [`series`], [`ratfun`]: exact scalars,
//!   polynomials, truncated power series with exp/log, and rational-function
//!   reconstruction from series coefficients.
//! - [`matrix`], [`snf`], [`smallfield`]: exact linear algebra (charpoly,
//!   Kronecker and exterior powers), Smith normal form over the integers,
//!   and small finite fields with discrete-log tables.
//! - [`dyadic`], [`graeffe`]: directed dyadic rounding and Graeffe root
//!   squaring, producing certified root-modulus enclosures.
//! - [`models`]: torus, abelian-product, and constant model families as
//!   graded actions, plus brute-force fixed-point oracles.
//! - [`zeta`], [`spectral`], [`positivity`]: the zeta pipeline, the
//!   spectral report with its inequality verdicts, and positivity checks.

pub mod dyadic;
pub mod error;
pub mod graeffe;
pub mod matrix;
pub mod models;
pub mod poly;
pub mod positivity;
pub mod ratfun;
pub mod rational;
pub mod series;
pub mod smallfield;
pub mod snf;
pub mod spectral;
pub mod zeta;

pub use error::{Error, Result};
pub use graeffe::{max_root_modulus, min_root_modulus, ModulusInterval};
pub use matrix::{exterior_power, QMatrix};
pub use models::{
    abelian_graded_action, constant_map_action, elliptic_point_count_bruteforce,
    lefschetz_determinant_identity, torus_fixed_count_bruteforce, torus_fixed_count_formula,
    torus_graded_action, trace_sequence, AbelianProductModel, GradedAction, GradedPiece,
    IntMatrix, TorusModel,
};
pub use poly::Polynomial;
pub use positivity::{
    bell_polynomials, derivative_domination_check, nonneg_check, radius_estimate, BellPolynomial,
    Positivity, RadiusEstimate,
};
pub use ratfun::{reconstruct_rational, RationalFunction};
pub use rational::{rat, rat_int, Rational};
pub use series::TruncatedSeries;
pub use smallfield::SmallField;
pub use snf::smith_normal_form;
pub use spectral::{
    disc_lemma_check, spectral_report, weight_bound_check, DiscCheck, SpectralReport, Verdict,
    ViolationKind, WeightBoundViolation,
};
pub use zeta::{n0_estimate, product_formula, zeta, zeta_series, CountedModel, ZetaResult};
